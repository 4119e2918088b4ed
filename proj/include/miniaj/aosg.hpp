#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "miniaj/model.hpp"

namespace miniaj {

enum class VertexKind {
    MethodEntry,
    AdviceEntry,
    AspectEntry,
    PointcutStart,
    Statement,
    Predicate,
    CallSite,
    ActualIn,
    ActualOut,
    FormalIn,
    FormalOut,
    CNode,
};

inline const char* vertexKindName(VertexKind k) {
    switch (k) {
        case VertexKind::MethodEntry: return "MethodEntry";
        case VertexKind::AdviceEntry: return "AdviceEntry";
        case VertexKind::AspectEntry: return "AspectEntry";
        case VertexKind::PointcutStart: return "PointcutStart";
        case VertexKind::Statement: return "Statement";
        case VertexKind::Predicate: return "Predicate";
        case VertexKind::CallSite: return "CallSite";
        case VertexKind::ActualIn: return "ActualIn";
        case VertexKind::ActualOut: return "ActualOut";
        case VertexKind::FormalIn: return "FormalIn";
        case VertexKind::FormalOut: return "FormalOut";
        case VertexKind::CNode: return "CNode";
    }
    return "?";
}

enum class EdgeKind : int {
    ControlDep = 0,
    DataDep = 1,
    Call = 2,
    ParamIn = 3,
    ParamOut = 4,
    Summary = 5,
    AspectMembership = 6,
    AdviceEdge = 7,
};

// A call edge is also the entry edge of the called method's dependence graph.
inline constexpr EdgeKind MethodEntryEdge = EdgeKind::Call;

inline const char* edgeKindName(EdgeKind k) {
    switch (k) {
        case EdgeKind::ControlDep: return "ControlDep";
        case EdgeKind::DataDep: return "DataDep";
        case EdgeKind::Call: return "Call";
        case EdgeKind::ParamIn: return "ParamIn";
        case EdgeKind::ParamOut: return "ParamOut";
        case EdgeKind::Summary: return "Summary";
        case EdgeKind::AspectMembership: return "AspectMembership";
        case EdgeKind::AdviceEdge: return "AdviceEdge";
    }
    return "?";
}

// Distinguishes the dynamic marking channels that share an edge kind. Internal
// to the engine; exports carry only the kind.
enum class EdgeRole : int {
    None = 0,
    Var = 1,          // data dependence on one variable
    Ret = 2,          // return value channel
    WeaveBefore = 3,  // before-advice body feeds the method entry
    WeaveAfter = 4,   // after-advice body feeds the call site
    Member = 5,
    Advice = 6,
    Param = 7,
};

struct Vertex {
    int id = 0;
    VertexKind kind = VertexKind::Statement;
    int stmt = 0;       // the carrying statement: itself, the call site, or the header
    int pos = -1;       // parameter position for Actual/Formal-in vertices, -1 result
    std::string label;
};

struct Edge {
    int src = 0, dst = 0;
    EdgeKind kind = EdgeKind::ControlDep;
    EdgeRole role = EdgeRole::None;
    int var = -1;  // symbol for Var edges
};

class Aosg {
public:
    std::vector<Vertex> vertices;  // index == id, slot 0 unused
    std::vector<Edge> edges;

    int statementCount() const { return stmtCount_; }
    int vertexCount() const { return static_cast<int>(vertices.size()) - 1; }
    int edgeCount() const { return static_cast<int>(edges.size()); }

    const std::vector<int>& inEdges(int v) const { return in_[v]; }
    const std::vector<int>& outEdges(int v) const { return out_[v]; }

    int findEdge(int src, int dst, EdgeKind kind, EdgeRole role, int var = -1) const {
        auto it = index_.find(std::make_tuple(src, dst, (int)kind, (int)role, var));
        return it == index_.end() ? -1 : it->second;
    }

    int edgeId(int src, int dst, EdgeKind kind, EdgeRole role, int var = -1) const {
        int id = findEdge(src, dst, kind, role, var);
        require(id >= 0, "expected edge is missing from the graph");
        return id;
    }

    int actualIn(int site, int pos) const { return at(actualIn_, {site, pos}, "actual-in"); }
    int actualOut(int site) const { return at(actualOut_, site, "actual-out"); }
    int formalIn(int header, int pos) const { return at(formalIn_, {header, pos}, "formal-in"); }
    int formalOut(int method) const { return at(formalOut_, method, "formal-out"); }
    int resultIn(int advice) const { return at(resultIn_, advice, "result-in"); }
    int cnode(int site) const { return at(cnode_, site, "c-node"); }
    bool hasCnode(int site) const { return cnode_.count(site) != 0; }

private:
    friend class AosgBuilder;
    int stmtCount_ = 0;
    std::vector<std::vector<int>> in_, out_;
    std::map<std::tuple<int, int, int, int, int>, int> index_;
    std::map<std::pair<int, int>, int> actualIn_, formalIn_;
    std::map<int, int> actualOut_, formalOut_, resultIn_, cnode_;

    template <class M>
    static int at(const M& m, typename M::key_type key, const char* what) {
        auto it = m.find(key);
        if (it == m.end()) fail(ErrorKind::Internal, std::string("no such ") + what + " vertex");
        return it->second;
    }
};

class AosgBuilder {
public:
    explicit AosgBuilder(const Program& prog) : prog_(prog) {}

    Aosg build() {
        addStatementVertices();
        addParameterVertices();
        g_.in_.resize(g_.vertices.size());
        g_.out_.resize(g_.vertices.size());

        addControlEdges();
        addDataEdges();
        addCallAndParamEdges();
        addAspectEdges();
        return std::move(g_);
    }

private:
    const Program& prog_;
    Aosg g_;

    int newVertex(VertexKind kind, int stmt, int pos, std::string label) {
        int id = static_cast<int>(g_.vertices.size());
        g_.vertices.push_back(Vertex{id, kind, stmt, pos, std::move(label)});
        return id;
    }

    void addEdge(int src, int dst, EdgeKind kind, EdgeRole role, int var = -1) {
        auto key = std::make_tuple(src, dst, (int)kind, (int)role, var);
        if (g_.index_.count(key)) return;
        int id = static_cast<int>(g_.edges.size());
        g_.edges.push_back(Edge{src, dst, kind, role, var});
        g_.index_[key] = id;
        g_.out_[src].push_back(id);
        g_.in_[dst].push_back(id);
    }

    void addStatementVertices() {
        int n = prog_.statementCount();
        g_.stmtCount_ = n;
        g_.vertices.push_back(Vertex{});  // slot 0
        for (int no = 1; no <= n; no++) {
            const StatementInfo& s = prog_.stmts[no];
            VertexKind kind = VertexKind::Statement;
            switch (s.cls) {
                case StmtClass::MethodHeader: kind = VertexKind::MethodEntry; break;
                case StmtClass::AdviceHeader: kind = VertexKind::AdviceEntry; break;
                case StmtClass::AspectHeader: kind = VertexKind::AspectEntry; break;
                case StmtClass::PointcutHeader: kind = VertexKind::PointcutStart; break;
                case StmtClass::Body:
                    kind = s.hasCall ? VertexKind::CallSite
                                     : s.predicate ? VertexKind::Predicate : VertexKind::Statement;
                    break;
            }
            int id = newVertex(kind, no, -1, s.text);
            require(id == no, "statement vertex ids must equal statement numbers");
        }
    }

    void addParameterVertices() {
        for (auto& [no, m] : prog_.methods) {
            for (size_t p = 0; p < m.formals.size(); p++)
                g_.formalIn_[{no, (int)p}] = newVertex(
                    VertexKind::FormalIn, no, (int)p,
                    "f_in " + prog_.syms.at(m.formals[p]).name);
            if (m.nonVoid)
                g_.formalOut_[no] = newVertex(VertexKind::FormalOut, no, -1,
                                              "f_out " + m.decl->name);
        }
        for (auto& [no, pc] : prog_.pointcuts) {
            for (size_t p = 0; p < pc.params.size(); p++)
                g_.formalIn_[{no, (int)p}] = newVertex(
                    VertexKind::FormalIn, no, (int)p,
                    "f_in " + prog_.syms.at(pc.params[p]).name);
        }
        for (auto& [no, adv] : prog_.advices) {
            for (size_t p = 0; p < adv.params.size(); p++)
                g_.formalIn_[{no, (int)p}] = newVertex(
                    VertexKind::FormalIn, no, (int)p,
                    "f_in " + prog_.syms.at(adv.params[p]).name);
            if (adv.resultSym >= 0)
                g_.resultIn_[no] = newVertex(VertexKind::FormalIn, no, -1,
                                             "f_in " + prog_.syms.at(adv.resultSym).name);
        }
        for (int site : prog_.callSites) {
            const CallInfo& call = prog_.stmts[site].call;
            for (size_t p = 0; p < call.args.size(); p++)
                g_.actualIn_[{site, (int)p}] = newVertex(VertexKind::ActualIn, site, (int)p,
                                                         "a_in " + renderExpr(*call.args[p]));
            if (call.consumes)
                g_.actualOut_[site] = newVertex(VertexKind::ActualOut, site, -1, "a_out");
            if (call.pointcut)
                g_.cnode_[site] = newVertex(VertexKind::CNode, site, -1, "C");
        }
    }

    // Control dependences are the statically decided part of the graph; they
    // stay marked for the whole run. The C-node fans out to the three entries
    // it sequences, recording the weaving order around an advised call.
    void addControlEdges() {
        for (int no = 1; no <= g_.stmtCount_; no++) {
            int parent = prog_.stmts[no].parent;
            if (parent > 0) addEdge(parent, no, EdgeKind::ControlDep, EdgeRole::None);
        }
        for (int site : prog_.callSites) {
            const CallInfo& call = prog_.stmts[site].call;
            if (!call.pointcut) continue;
            int c = g_.cnode_.at(site);
            const PointcutInfo& pc = prog_.pointcuts.at(call.pointcut);
            addEdge(site, c, EdgeKind::ControlDep, EdgeRole::None);
            if (pc.before) addEdge(c, pc.before, EdgeKind::ControlDep, EdgeRole::None);
            addEdge(c, call.callee, EdgeKind::ControlDep, EdgeRole::None);
            if (pc.after) addEdge(c, pc.after, EdgeKind::ControlDep, EdgeRole::None);
        }
    }

    // One edge per (definition site, use site, variable). Symbol identity does
    // the scoping: a statement can only use symbols visible to it, and headers
    // act as the definition site of their own parameters.
    void addDataEdges() {
        std::map<int, std::vector<int>> defSites;
        for (int no = 1; no <= g_.stmtCount_; no++)
            for (int sym : prog_.stmts[no].defs) defSites[sym].push_back(no);

        for (int no = 1; no <= g_.stmtCount_; no++) {
            for (int sym : prog_.stmts[no].uses) {
                auto it = defSites.find(sym);
                if (it == defSites.end()) continue;  // only ever read, default value
                for (int d : it->second)
                    addEdge(d, no, EdgeKind::DataDep, EdgeRole::Var, sym);
            }
        }
        for (int site : prog_.callSites) {
            const CallInfo& call = prog_.stmts[site].call;
            for (size_t p = 0; p < call.args.size(); p++) {
                int ai = g_.actualIn_.at({site, (int)p});
                for (int sym : call.argUses[p]) {
                    auto it = defSites.find(sym);
                    if (it == defSites.end()) continue;
                    for (int d : it->second)
                        addEdge(d, ai, EdgeKind::DataDep, EdgeRole::Var, sym);
                }
            }
        }
    }

    void addCallAndParamEdges() {
        for (int site : prog_.callSites) {
            const CallInfo& call = prog_.stmts[site].call;
            const MethodInfo& callee = prog_.methods.at(call.callee);
            addEdge(site, call.callee, EdgeKind::Call, EdgeRole::None);
            for (size_t p = 0; p < call.args.size(); p++)
                addEdge(g_.actualIn_.at({site, (int)p}), g_.formalIn_.at({call.callee, (int)p}),
                        EdgeKind::ParamIn, EdgeRole::Param);
            if (call.consumes) {
                int ao = g_.actualOut_.at(site);
                for (int r : callee.returns) addEdge(r, site, EdgeKind::DataDep, EdgeRole::Ret);
                addEdge(g_.formalOut_.at(call.callee), ao, EdgeKind::ParamOut, EdgeRole::Param);
                for (size_t p = 0; p < call.args.size(); p++)
                    addEdge(g_.actualIn_.at({site, (int)p}), ao, EdgeKind::Summary,
                            EdgeRole::None);
            }
        }
        for (auto& [no, m] : prog_.methods) {
            if (!m.nonVoid) continue;
            int fo = g_.formalOut_.at(no);
            for (int r : m.returns) addEdge(r, fo, EdgeKind::DataDep, EdgeRole::Ret);
        }
    }

    void addAspectEdges() {
        for (auto& [no, pc] : prog_.pointcuts) {
            addEdge(pc.aspect, no, EdgeKind::AspectMembership, EdgeRole::Member);
            if (pc.before) addEdge(no, pc.before, EdgeKind::AdviceEdge, EdgeRole::Advice);
            if (pc.after) addEdge(no, pc.after, EdgeKind::AdviceEdge, EdgeRole::Advice);
            const MethodInfo& target = prog_.methods.at(pc.targetMethod);
            // pointcut formals feed both advice entries' formals
            for (size_t p = 0; p < pc.params.size(); p++) {
                int pcFi = g_.formalIn_.at({no, (int)p});
                if (pc.before)
                    addEdge(pcFi, g_.formalIn_.at({pc.before, (int)p}), EdgeKind::ParamIn,
                            EdgeRole::Param);
                if (pc.after)
                    addEdge(pcFi, g_.formalIn_.at({pc.after, (int)p}), EdgeKind::ParamIn,
                            EdgeRole::Param);
            }
            if (pc.after) {
                const AdviceInfo& after = prog_.advices.at(pc.after);
                for (int r : target.returns) addEdge(r, pc.after, EdgeKind::DataDep, EdgeRole::Ret);
                addEdge(g_.formalOut_.at(pc.targetMethod), g_.resultIn_.at(pc.after),
                        EdgeKind::ParamOut, EdgeRole::Param);
                (void)after;
            }
            if (pc.before) {
                const AdviceInfo& before = prog_.advices.at(pc.before);
                addEdge(before.lastStmt, pc.targetMethod, EdgeKind::AdviceEdge,
                        EdgeRole::WeaveBefore);
            }
        }
        for (int site : prog_.callSites) {
            const CallInfo& call = prog_.stmts[site].call;
            if (!call.pointcut) continue;
            const PointcutInfo& pc = prog_.pointcuts.at(call.pointcut);
            addEdge(site, call.pointcut, EdgeKind::AspectMembership, EdgeRole::Member);
            for (size_t p = 0; p < call.args.size(); p++)
                addEdge(g_.actualIn_.at({site, (int)p}), g_.formalIn_.at({call.pointcut, (int)p}),
                        EdgeKind::ParamIn, EdgeRole::Param);
            if (pc.after) {
                const AdviceInfo& after = prog_.advices.at(pc.after);
                addEdge(after.lastStmt, site, EdgeKind::AdviceEdge, EdgeRole::WeaveAfter);
            }
        }
    }
};

inline Aosg buildAosg(const Program& prog) { return AosgBuilder(prog).build(); }

}  // namespace miniaj
