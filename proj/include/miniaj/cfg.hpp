#pragma once

#include <set>
#include <vector>

#include "miniaj/model.hpp"

namespace miniaj {

namespace detail {

// Builds both CFG variants in one walk. `cont` is where control continues
// after the current block; loops pass themselves as the standard continuation
// of their body and their own continuation as the iteration-order one.
class CfgBuilder {
public:
    explicit CfgBuilder(int entryNo) { cfg_.entry = entryNo; }

    Cfg build(const Block& body) {
        cfg_.succ[cfg_.entry] = {firstOf(body, Cfg::ExitNode)};
        cfg_.iterSucc[cfg_.entry] = cfg_.succ[cfg_.entry];
        wire(body, Cfg::ExitNode, Cfg::ExitNode);
        return std::move(cfg_);
    }

private:
    Cfg cfg_;

    static int firstOf(const Block& b, int cont) { return b.empty() ? cont : b.front()->no; }

    void edge(int from, int to, int iterTo) {
        cfg_.succ[from].push_back(to);
        cfg_.iterSucc[from].push_back(iterTo);
    }

    void wire(const Block& b, int cont, int iterCont) {
        for (size_t i = 0; i < b.size(); i++) {
            bool last = i + 1 == b.size();
            int next = last ? cont : b[i + 1]->no;
            int iterNext = last ? iterCont : b[i + 1]->no;
            wireStmt(*b[i], next, iterNext);
        }
    }

    void wireStmt(const Stmt& s, int next, int iterNext) {
        int no = s.no;
        if (auto* i = s.as<IfStmt>()) {
            edge(no, firstOf(i->thenBody, next), firstOf(i->thenBody, iterNext));
            wire(i->thenBody, next, iterNext);
            if (i->elseBody.empty()) {
                edge(no, next, iterNext);
            } else {
                edge(no, i->elseBody.front()->no, i->elseBody.front()->no);
                wire(i->elseBody, next, iterNext);
            }
        } else if (auto* w = s.as<WhileStmt>()) {
            edge(no, firstOf(w->body, no), firstOf(w->body, iterNext));
            edge(no, next, iterNext);
            wire(w->body, no, iterNext);
        } else if (auto* f = s.as<ForStmt>()) {
            edge(no, firstOf(f->body, no), firstOf(f->body, iterNext));
            edge(no, next, iterNext);
            wire(f->body, no, iterNext);
        } else if (s.as<ReturnStmt>()) {
            edge(no, Cfg::ExitNode, Cfg::ExitNode);
        } else {
            edge(no, next, iterNext);
        }
    }
};

// Postdominator sets over the acyclic variant. Every iterSucc edge leads to a
// higher statement number or to the exit, so one descending sweep settles them.
inline std::map<int, std::set<int>> postDominators(const Cfg& cfg) {
    std::map<int, std::set<int>> pdom;
    pdom[Cfg::ExitNode] = {Cfg::ExitNode};
    std::vector<int> nodes;
    for (auto& [n, _] : cfg.iterSucc) nodes.push_back(n);
    std::sort(nodes.rbegin(), nodes.rend());
    for (int n : nodes) {
        std::set<int> common;
        bool first = true;
        for (int s : cfg.iterSucc.at(n)) {
            const std::set<int>& ps = pdom.at(s);
            if (first) {
                common = ps;
                first = false;
            } else {
                std::set<int> tmp;
                std::set_intersection(common.begin(), common.end(), ps.begin(), ps.end(),
                                      std::inserter(tmp, tmp.begin()));
                common = std::move(tmp);
            }
        }
        common.insert(n);
        pdom[n] = std::move(common);
    }
    return pdom;
}

}  // namespace detail

// Control parent of every statement in one body: the highest-numbered
// predicate the statement is control dependent on in the iteration-order
// graph, or the body's entry when there is none.
inline std::map<int, int> controlParents(const Cfg& cfg) {
    auto pdom = detail::postDominators(cfg);
    std::map<int, int> parent;
    for (auto& [w, _] : cfg.iterSucc) {
        if (w == cfg.entry) continue;
        int best = cfg.entry;
        for (auto& [a, succs] : cfg.iterSucc) {
            if (a == w || a == cfg.entry) continue;
            bool onSome = false;
            for (int s : succs)
                if (pdom.at(s).count(w)) { onSome = true; break; }
            if (!onSome) continue;
            const std::set<int>& pa = pdom.at(a);
            if (pa.count(w) && w != a) continue;  // postdominates a, not dependent
            best = std::max(best, a);
        }
        parent[w] = best;
    }
    return parent;
}

// Reachability and return checks on the standard graph, then control parents
// from the acyclic variant. Fills StatementInfo::parent.
inline void analyzeBody(Program& prog, const Block& body, int entryNo, bool nonVoid) {
    Cfg cfg = detail::CfgBuilder(entryNo).build(body);

    std::set<int> seen;
    std::vector<int> work{entryNo};
    while (!work.empty()) {
        int n = work.back();
        work.pop_back();
        if (!seen.insert(n).second) continue;
        if (n == Cfg::ExitNode) continue;
        for (int s : cfg.succ.at(n)) work.push_back(s);
    }
    for (auto& [n, _] : cfg.succ) {
        if (!seen.count(n))
            fail(ErrorKind::Semantic, "unreachable statement", prog.stmts[n].pos);
    }
    if (nonVoid) {
        for (auto& [n, succs] : cfg.succ) {
            bool isReturn = n != entryNo && prog.stmts[n].ast && prog.stmts[n].ast->as<ReturnStmt>();
            for (int s : succs)
                if (s == Cfg::ExitNode && !isReturn)
                    fail(ErrorKind::Semantic, "method can fall off the end without returning",
                         prog.stmts[n == entryNo ? entryNo : n].pos);
        }
    }

    for (auto& [w, p] : controlParents(cfg)) prog.stmts[w].parent = p;
    prog.cfgs[entryNo] = std::move(cfg);
}

inline void analyzeControlFlow(Program& prog) {
    for (auto& cls : prog.unit.classes)
        for (auto& m : cls.methods)
            analyzeBody(prog, m.body, m.no, m.ret.base != Type::Void);
    for (auto& asp : prog.unit.aspects)
        for (auto& adv : asp.advices) analyzeBody(prog, adv.body, adv.no, false);
}

}  // namespace miniaj
