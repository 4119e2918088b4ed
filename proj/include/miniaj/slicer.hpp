#pragma once

#include <set>
#include <unordered_map>

#include "miniaj/aosg.hpp"
#include "miniaj/events.hpp"

namespace miniaj {

// Dynamic slicer over the dependence graph. Control edges are marked once and
// stay marked; every other kind is marked and unmarked as execution reaches
// the construct it models. When a vertex executes, the engine replaces the
// vertex's accumulated set with the union over its currently marked in-edges,
// so a slice query is a set lookup and never walks the graph.
class SliceEngine {
public:
    SliceEngine(const Program& prog, const Aosg& g) : prog_(prog), g_(g) { initialize(); }

    void initialize() {
        marked_.assign(g_.edgeCount(), 0);
        for (int e = 0; e < g_.edgeCount(); e++)
            marked_[e] = g_.edges[e].kind == EdgeKind::ControlDep;
        sets_.assign(g_.vertices.size(), {});
        lastContribs_.assign(g_.vertices.size(), {});
        executed_.assign(g_.vertices.size(), 0);
        edgeVisits_ = 0;
        globalDef_.clear();
        frames_.clear();
        ran_ = false;
    }

    void processRun(const RunResult& run) {
        initialize();
        forEachTraceEntry(prog_, run.events, [&](const TraceEntry& t) { step(t); });
        ran_ = true;
    }

    // The query side. Constant work: validates the criterion, then unions the
    // statement itself into its stored set.
    std::set<int> slice(int stmt, const std::string& var) const {
        if (stmt < 1 || stmt > prog_.statementCount())
            fail(ErrorKind::Criterion, "no statement numbered " + std::to_string(stmt));
        if (!ran_) fail(ErrorKind::NotExecuted, "no execution has been processed");
        if (!executed_[stmt])
            fail(ErrorKind::NotExecuted,
                 "statement " + std::to_string(stmt) + " did not execute in this run", {}, stmt);
        const StatementInfo& s = prog_.stmts[stmt];
        bool known = false;
        for (int sym : s.defs) known = known || prog_.syms.at(sym).name == var;
        for (int sym : s.uses) known = known || prog_.syms.at(sym).name == var;
        if (!known)
            fail(ErrorKind::Criterion,
                 "variable '" + var + "' is neither defined nor used at statement " +
                     std::to_string(stmt), {}, stmt);
        std::set<int> out = sets_[stmt];
        out.insert(stmt);
        return out;
    }

    const Aosg& graph() const { return g_; }
    const std::set<int>& dslice(int v) const { return sets_.at(v); }
    const std::set<int>& lastContributors(int v) const { return lastContribs_.at(v); }
    bool executed(int v) const { return executed_.at(v) != 0; }
    bool edgeMarked(int e) const { return marked_.at(e) != 0; }
    long long edgeVisits() const { return edgeVisits_; }
    const std::vector<char>& edgeMarks() const { return marked_; }
    const std::vector<std::set<int>>& vertexSets() const { return sets_; }

private:
    const Program& prog_;
    const Aosg& g_;
    std::vector<char> marked_;
    std::vector<std::set<int>> sets_;
    std::vector<std::set<int>> lastContribs_;
    std::vector<char> executed_;
    long long edgeVisits_ = 0;
    std::unordered_map<int, int> globalDef_;
    std::vector<std::unordered_map<int, int>> frames_;
    bool ran_ = false;

    // ---- marking primitives ----

    template <class Pred>
    void unmarkIn(int v, Pred keep) {
        for (int e : g_.inEdges(v)) {
            edgeVisits_++;
            if (keep(g_.edges[e])) marked_[e] = 0;
        }
    }

    void mark(int src, int dst, EdgeKind kind, EdgeRole role, int var = -1) {
        edgeVisits_++;
        marked_[g_.edgeId(src, dst, kind, role, var)] = 1;
    }

    // Union over marked in-edges, replacing the old set. A self edge carries
    // the vertex's previous set forward without listing the vertex as its own
    // contributor. C-node edges order the weaving statically and are skipped.
    // Extras are return statements whose value did not flow this time; they
    // join bare, with whatever set their last execution left behind.
    void collect(int u, const std::vector<int>& extras = {}) {
        std::set<int> contribs;
        bool self = false;
        for (int e : g_.inEdges(u)) {
            edgeVisits_++;
            if (!marked_[e]) continue;
            int src = g_.edges[e].src;
            if (g_.vertices[src].kind == VertexKind::CNode) continue;
            if (src == u) {
                self = true;
                continue;
            }
            contribs.insert(src);
        }
        std::set<int> out;
        if (self) out = sets_[u];
        for (int c : contribs) {
            out.insert(c);
            out.insert(sets_[c].begin(), sets_[c].end());
        }
        for (int r : extras) {
            contribs.insert(r);
            out.insert(r);
            out.insert(sets_[r].begin(), sets_[r].end());
        }
        lastContribs_[u] = std::move(contribs);
        sets_[u] = std::move(out);
        executed_[u] = 1;
    }

    // ---- definition bookkeeping ----

    int recentDef(int sym) const {
        if (prog_.syms.at(sym).kind == SymKind::Global) {
            auto it = globalDef_.find(sym);
            return it == globalDef_.end() ? 0 : it->second;
        }
        require(!frames_.empty(), "definition lookup outside any activation");
        auto it = frames_.back().find(sym);
        return it == frames_.back().end() ? 0 : it->second;
    }

    void noteDefs(int u) {
        for (int sym : prog_.stmts[u].defs) {
            if (prog_.syms.at(sym).kind == SymKind::Global)
                globalDef_[sym] = u;
            else
                frames_.back()[sym] = u;
        }
    }

    void pushFrame() { frames_.emplace_back(); }

    void popFrame() {
        require(!frames_.empty(), "activation stack underflow");
        frames_.pop_back();
    }

    std::vector<int> otherReturns(int callee, int executedReturn) const {
        std::vector<int> out;
        for (int r : prog_.methods.at(callee).returns)
            if (r != executedReturn) out.push_back(r);
        return out;
    }

    // ---- one trace entry ----

    void step(const TraceEntry& t) {
        switch (t.kind) {
            case TraceKind::Fire: fire(t); break;
            case TraceKind::PointcutActivated: activate(t); break;
            case TraceKind::MethodEnter: methodEnter(t); break;
            case TraceKind::MethodExit: methodExit(t); break;
            case TraceKind::AdviceEnter: adviceEnter(t); break;
            case TraceKind::AdviceExit: adviceExit(t); break;
            case TraceKind::Statement:
                if (t.completion)
                    completeCall(t);
                else
                    statement(t);
                break;
        }
    }

    // The call site consumes its argument values here, in the caller's frame,
    // before any advice runs. Edges of the previous instance are cleared:
    // the data, return and after-weave channels of the site, the argument
    // channels, and the before-weave channel into the callee.
    void fire(const TraceEntry& t) {
        int site = t.vertex;
        unmarkIn(site, [](const Edge& e) {
            return e.role == EdgeRole::Var || e.role == EdgeRole::Ret ||
                   e.role == EdgeRole::WeaveAfter;
        });
        unmarkIn(t.callee, [](const Edge& e) { return e.role == EdgeRole::WeaveBefore; });
        const CallInfo& call = prog_.stmts[site].call;
        for (size_t p = 0; p < call.args.size(); p++) {
            int ai = g_.actualIn(site, (int)p);
            unmarkIn(ai, [](const Edge& e) { return e.role == EdgeRole::Var; });
        }
        if (t.consumes)
            unmarkIn(g_.actualOut(site), [](const Edge&) { return true; });

        for (int sym : prog_.stmts[site].uses) {
            int d = recentDef(sym);
            if (d) mark(d, site, EdgeKind::DataDep, EdgeRole::Var, sym);
        }
        for (size_t p = 0; p < call.args.size(); p++) {
            int ai = g_.actualIn(site, (int)p);
            for (int sym : call.argUses[p]) {
                int d = recentDef(sym);
                if (d) mark(d, ai, EdgeKind::DataDep, EdgeRole::Var, sym);
            }
            collect(ai);
        }
        collect(site);
    }

    // Membership is exclusive per activation: only the firing site's edge into
    // the pointcut stays marked, alongside the aspect's own membership edge.
    void activate(const TraceEntry& t) {
        int pcNo = t.vertex;
        const PointcutInfo& pc = prog_.pointcuts.at(pcNo);
        unmarkIn(pcNo, [&](const Edge& e) {
            return e.kind == EdgeKind::AspectMembership && e.src != pc.aspect;
        });
        mark(pc.aspect, pcNo, EdgeKind::AspectMembership, EdgeRole::Member);
        mark(t.site, pcNo, EdgeKind::AspectMembership, EdgeRole::Member);
        if (pc.before) mark(pcNo, pc.before, EdgeKind::AdviceEdge, EdgeRole::Advice);
        if (pc.after) mark(pcNo, pc.after, EdgeKind::AdviceEdge, EdgeRole::Advice);
        for (size_t p = 0; p < pc.params.size(); p++) {
            int pcFi = g_.formalIn(pcNo, (int)p);
            int ai = g_.actualIn(t.site, (int)p);
            unmarkIn(pcFi, [](const Edge& e) { return e.kind == EdgeKind::ParamIn; });
            mark(ai, pcFi, EdgeKind::ParamIn, EdgeRole::Param);
            collect(pcFi);
            if (pc.before) {
                mark(pcFi, g_.formalIn(pc.before, (int)p), EdgeKind::ParamIn, EdgeRole::Param);
                collect(g_.formalIn(pc.before, (int)p));
            }
            if (pc.after) {
                mark(pcFi, g_.formalIn(pc.after, (int)p), EdgeKind::ParamIn, EdgeRole::Param);
                collect(g_.formalIn(pc.after, (int)p));
            }
        }
        collect(pcNo);
    }

    void methodEnter(const TraceEntry& t) {
        int entry = t.vertex;
        if (t.site != 0) {
            const MethodInfo& m = prog_.methods.at(entry);
            unmarkIn(entry, [](const Edge& e) { return e.kind == EdgeKind::Call; });
            mark(t.site, entry, EdgeKind::Call, EdgeRole::None);
            for (size_t p = 0; p < m.formals.size(); p++) {
                int fi = g_.formalIn(entry, (int)p);
                int ai = g_.actualIn(t.site, (int)p);
                unmarkIn(fi, [](const Edge& e) { return e.kind == EdgeKind::ParamIn; });
                mark(ai, fi, EdgeKind::ParamIn, EdgeRole::Param);
                collect(fi);
                if (t.consumes)
                    mark(ai, g_.actualOut(t.site), EdgeKind::Summary, EdgeRole::None);
            }
        }
        collect(entry);
        pushFrame();
        noteDefs(entry);
    }

    void methodExit(const TraceEntry& t) {
        popFrame();
        if (t.site == 0) return;
        const MethodInfo& m = prog_.methods.at(t.vertex);
        if (!m.nonVoid) return;
        int fo = g_.formalOut(t.vertex);
        unmarkIn(fo, [](const Edge& e) { return e.role == EdgeRole::Ret; });
        mark(t.executedReturn, fo, EdgeKind::DataDep, EdgeRole::Ret);
        collect(fo, otherReturns(t.vertex, t.executedReturn));
        if (t.consumes) {
            unmarkIn(t.site, [](const Edge& e) { return e.role == EdgeRole::Ret; });
            mark(t.executedReturn, t.site, EdgeKind::DataDep, EdgeRole::Ret);
            int ao = g_.actualOut(t.site);
            unmarkIn(ao, [](const Edge& e) { return e.kind == EdgeKind::ParamOut; });
            mark(fo, ao, EdgeKind::ParamOut, EdgeRole::Param);
            collect(ao);
        }
    }

    void adviceEnter(const TraceEntry& t) {
        int adv = t.vertex;
        if (t.adviceKind == AdviceKind::AfterReturning) {
            unmarkIn(adv, [](const Edge& e) { return e.role == EdgeRole::Ret; });
            mark(t.executedReturn, adv, EdgeKind::DataDep, EdgeRole::Ret);
            int ri = g_.resultIn(adv);
            int fo = g_.formalOut(t.callee);
            unmarkIn(ri, [](const Edge& e) { return e.kind == EdgeKind::ParamOut; });
            mark(fo, ri, EdgeKind::ParamOut, EdgeRole::Param);
            collect(ri);
            collect(adv, otherReturns(t.callee, t.executedReturn));
        } else {
            collect(adv);
        }
        pushFrame();
        noteDefs(adv);
    }

    void adviceExit(const TraceEntry& t) {
        popFrame();
        const AdviceInfo& adv = prog_.advices.at(t.vertex);
        if (t.adviceKind == AdviceKind::Before)
            mark(adv.lastStmt, t.callee, EdgeKind::AdviceEdge, EdgeRole::WeaveBefore);
        else
            mark(adv.lastStmt, t.site, EdgeKind::AdviceEdge, EdgeRole::WeaveAfter);
    }

    void statement(const TraceEntry& t) {
        int u = t.vertex;
        unmarkIn(u, [](const Edge& e) { return e.role == EdgeRole::Var; });
        for (int sym : prog_.stmts[u].uses) {
            int d = recentDef(sym);
            if (d) mark(d, u, EdgeKind::DataDep, EdgeRole::Var, sym);
        }
        collect(u);
        noteDefs(u);
    }

    // The site's own data edges were marked at fire time and survive the call;
    // the return and after-weave channels were marked on the way back out.
    void completeCall(const TraceEntry& t) {
        int u = t.vertex;
        if (t.consumes)
            collect(u, otherReturns(t.callee, t.executedReturn));
        else
            collect(u);
        noteDefs(u);
    }
};

}  // namespace miniaj
