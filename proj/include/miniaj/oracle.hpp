#pragma once

#include <set>
#include <unordered_map>

#include "miniaj/events.hpp"

namespace miniaj {

// Reference slicer used to cross-check the marking engine. Instead of edge
// marks it records one node per vertex occurrence with explicit dependences
// on earlier occurrences, then answers a query by walking the closure of the
// queried statement's last occurrence. Dependences on vertices that never
// executed are kept as bare vertex ids; they join the slice without a tail.
class SliceOracle {
public:
    explicit SliceOracle(const Program& prog) : prog_(prog) {}

    void processRun(const RunResult& run) {
        occs_.clear();
        lastOcc_.clear();
        fireDefs_.clear();
        globalDef_.clear();
        frames_.clear();
        ran_ = true;
        forEachTraceEntry(prog_, run.events, [&](const TraceEntry& t) { step(t); });
    }

    bool executed(int vertex) const { return lastOcc_.count(vertex) != 0; }

    std::set<int> slice(int stmt) const {
        if (!ran_ || !executed(stmt))
            fail(ErrorKind::NotExecuted,
                 "statement " + std::to_string(stmt) + " did not execute in this run", {}, stmt);
        std::set<int> out = closure(lastOcc_.at(stmt));
        out.insert(stmt);
        return out;
    }

private:
    struct Occ {
        int vertex = 0;
        std::vector<int> deps;  // indices of earlier occurrences
        std::vector<int> bare;  // vertex ids that never occurred
    };

    const Program& prog_;
    std::vector<Occ> occs_;
    std::unordered_map<int, int> lastOcc_;
    std::unordered_map<int, std::vector<int>> fireDefs_;  // site -> def vertices, last fire
    std::unordered_map<int, int> globalDef_;
    std::vector<std::unordered_map<int, int>> frames_;
    bool ran_ = false;

    std::set<int> closure(int start) const {
        std::set<int> out;
        std::vector<char> seen(occs_.size(), 0);
        std::vector<int> work{start};
        seen[start] = 1;
        while (!work.empty()) {
            const Occ& o = occs_[work.back()];
            work.pop_back();
            out.insert(o.vertex);
            for (int b : o.bare) out.insert(b);
            for (int d : o.deps) {
                if (seen[d]) continue;
                seen[d] = 1;
                work.push_back(d);
            }
        }
        return out;
    }

    int recentDef(int sym) const {
        if (prog_.syms.at(sym).kind == SymKind::Global) {
            auto it = globalDef_.find(sym);
            return it == globalDef_.end() ? 0 : it->second;
        }
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

    void depOn(Occ& o, int vertex) {
        auto it = lastOcc_.find(vertex);
        if (it == lastOcc_.end())
            o.bare.push_back(vertex);
        else
            o.deps.push_back(it->second);
    }

    void depOnParent(Occ& o, int u) {
        int parent = prog_.stmts[u].parent;
        if (parent > 0) depOn(o, parent);
    }

    void commit(Occ o) {
        int idx = static_cast<int>(occs_.size());
        int vertex = o.vertex;
        occs_.push_back(std::move(o));
        lastOcc_[vertex] = idx;
    }

    void step(const TraceEntry& t) {
        switch (t.kind) {
            case TraceKind::Fire: {
                Occ o{t.vertex, {}, {}};
                depOnParent(o, t.vertex);
                std::vector<int> defs;
                for (int sym : prog_.stmts[t.vertex].uses) {
                    int d = recentDef(sym);
                    if (!d) continue;
                    depOn(o, d);
                    defs.push_back(d);
                }
                fireDefs_[t.vertex] = std::move(defs);
                commit(std::move(o));
                break;
            }
            case TraceKind::PointcutActivated: {
                const PointcutInfo& pc = prog_.pointcuts.at(t.vertex);
                Occ o{t.vertex, {}, {}};
                o.bare.push_back(pc.aspect);
                depOn(o, t.site);
                commit(std::move(o));
                break;
            }
            case TraceKind::MethodEnter: {
                Occ o{t.vertex, {}, {}};
                if (t.site != 0) {
                    depOn(o, t.site);
                    if (t.pointcut) {
                        const PointcutInfo& pc = prog_.pointcuts.at(t.pointcut);
                        if (pc.before) depOn(o, prog_.advices.at(pc.before).lastStmt);
                    }
                }
                commit(std::move(o));
                frames_.emplace_back();
                noteDefs(t.vertex);
                break;
            }
            case TraceKind::MethodExit:
            case TraceKind::AdviceExit:
                frames_.pop_back();
                break;
            case TraceKind::AdviceEnter: {
                Occ o{t.vertex, {}, {}};
                depOn(o, t.pointcut);
                if (t.adviceKind == AdviceKind::AfterReturning) {
                    depOn(o, t.executedReturn);
                    for (int r : prog_.methods.at(t.callee).returns)
                        if (r != t.executedReturn) depOn(o, r);
                }
                commit(std::move(o));
                frames_.emplace_back();
                noteDefs(t.vertex);
                break;
            }
            case TraceKind::Statement: {
                Occ o{t.vertex, {}, {}};
                depOnParent(o, t.vertex);
                if (t.completion) {
                    for (int d : fireDefs_[t.site]) depOn(o, d);
                    if (t.consumes) {
                        depOn(o, t.executedReturn);
                        for (int r : prog_.methods.at(t.callee).returns)
                            if (r != t.executedReturn) depOn(o, r);
                    }
                    if (t.pointcut) {
                        const PointcutInfo& pc = prog_.pointcuts.at(t.pointcut);
                        if (pc.after) depOn(o, prog_.advices.at(pc.after).lastStmt);
                    }
                } else {
                    for (int sym : prog_.stmts[t.vertex].uses) {
                        int d = recentDef(sym);
                        if (d) depOn(o, d);
                    }
                }
                commit(std::move(o));
                noteDefs(t.vertex);
                break;
            }
        }
    }
};

}  // namespace miniaj
