#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "miniaj/sema.hpp"

namespace miniaj {

enum class StmtClass {
    MethodHeader,
    AdviceHeader,
    AspectHeader,
    PointcutHeader,
    Body,
};

struct CallInfo {
    int callee = 0;                       // entry statement of the called method
    std::vector<const Expr*> args;        // positional argument expressions
    std::vector<std::vector<int>> argUses;  // symbols read by each argument
    bool consumes = false;                // result feeds the statement (assign / if)
    int pointcut = 0;                     // advising pointcut, 0 if the callee is unadvised
};

struct StatementInfo {
    int no = 0;
    StmtClass cls = StmtClass::Body;
    bool predicate = false;     // if / while / for
    std::string text;
    SourcePos pos;
    int owner = 0;              // enclosing method or advice header; aspect for its members
    int parent = 0;             // control parent, set by the control-dependence pass
    const Stmt* ast = nullptr;  // body statements only
    std::vector<int> defs, uses;  // symbol ids, sorted
    CallInfo call;              // valid when hasCall
    bool hasCall = false;

    bool readsOrWrites(int sym) const {
        return std::binary_search(uses.begin(), uses.end(), sym) ||
               std::binary_search(defs.begin(), defs.end(), sym);
    }
};

struct MethodInfo {
    int no = 0;
    const MethodDecl* decl = nullptr;
    std::vector<int> formals;     // symbol per parameter position
    std::vector<int> returns;     // return statements, source order
    std::vector<int> bodyStmts;   // all body statements, ascending
    bool nonVoid = false;
};

struct AdviceInfo {
    int no = 0;
    const AdviceDecl* decl = nullptr;
    int aspect = 0;
    int pointcut = 0;
    std::vector<int> params;
    int resultSym = -1;
    std::vector<int> bodyStmts;
    int lastStmt = 0;  // highest-numbered body statement, the weave carrier source
};

struct PointcutInfo {
    int no = 0;
    const PointcutDecl* decl = nullptr;
    int aspect = 0;
    std::vector<int> params;
    int targetMethod = 0;
    int before = 0;  // advice entry statements, 0 if absent
    int after = 0;
};

struct AspectInfo {
    int no = 0;
    const AspectDecl* decl = nullptr;
};

// Per-body control flow graph over statement numbers. `succ` is the ordinary
// graph, loop back edges included; `iterSucc` replaces each back edge with an
// edge to the loop continuation, which makes the graph acyclic and orders the
// nodes by statement number. Successor order: taken branch first.
struct Cfg {
    static constexpr int ExitNode = -1;
    int entry = 0;
    std::map<int, std::vector<int>> succ;
    std::map<int, std::vector<int>> iterSucc;
};

struct Program {
    SourceUnit unit;
    SymbolTable syms;
    std::vector<StatementInfo> stmts;  // indexed by statement number, slot 0 unused
    std::map<int, MethodInfo> methods;
    std::map<int, AdviceInfo> advices;
    std::map<int, PointcutInfo> pointcuts;
    std::map<int, AspectInfo> aspects;
    std::map<int, Cfg> cfgs;  // per method and advice body, keyed by entry
    int mainNo = 0;
    std::vector<int> callSites;

    int statementCount() const { return static_cast<int>(stmts.size()) - 1; }

    const StatementInfo& stmt(int no) const {
        require(no >= 1 && no <= statementCount(), "statement number out of range");
        return stmts[no];
    }

    const MethodInfo& method(int no) const {
        auto it = methods.find(no);
        require(it != methods.end(), "not a method entry");
        return it->second;
    }

    // Pointcut advising the given method, 0 if none.
    int advisingPointcut(int methodNo) const {
        for (auto& [no, pc] : pointcuts)
            if (pc.targetMethod == methodNo) return no;
        return 0;
    }
};

namespace detail {

inline void collectVars(const Expr& e, std::vector<int>& out) {
    if (const VarRef* v = e.as<VarRef>()) {
        out.push_back(v->sym);
    } else if (const ArgRead* a = e.as<ArgRead>()) {
        out.push_back(a->sym);
    } else if (const Unary* u = e.as<Unary>()) {
        collectVars(*u->operand, out);
    } else if (const Binary* b = e.as<Binary>()) {
        collectVars(*b->lhs, out);
        collectVars(*b->rhs, out);
    } else if (const CallExpr* c = e.as<CallExpr>()) {
        for (auto& arg : c->args) collectVars(*arg, out);
    }
}

inline std::vector<int> varsOf(const Expr& e) {
    std::vector<int> out;
    collectVars(e, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline void sortUnique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

class ModelBuilder {
public:
    ModelBuilder(SourceUnit&& unit, SymbolTable&& syms) {
        prog_.unit = std::move(unit);
        prog_.syms = std::move(syms);
    }

    Program build() {
        int count = 0;
        forEachNumbered([&](int no) { count = std::max(count, no); });
        prog_.stmts.resize(count + 1);

        for (auto& cls : prog_.unit.classes)
            for (auto& m : cls.methods) addMethod(m);
        for (auto& asp : prog_.unit.aspects) addAspect(asp);

        resolvePointcutLinks();
        return std::move(prog_);
    }

private:
    Program prog_;

    void forEachNumbered(auto&& fn) {
        for (auto& cls : prog_.unit.classes)
            for (auto& m : cls.methods) {
                fn(m.no);
                forEachInBlock(m.body, fn);
            }
        for (auto& asp : prog_.unit.aspects) {
            fn(asp.no);
            for (auto& pc : asp.pointcuts) fn(pc.no);
            for (auto& adv : asp.advices) {
                fn(adv.no);
                forEachInBlock(adv.body, fn);
            }
        }
    }

    void forEachInBlock(const Block& b, auto&& fn) {
        for (auto& s : b) {
            fn(s->no);
            if (auto* i = s->as<IfStmt>()) {
                forEachInBlock(i->thenBody, fn);
                forEachInBlock(i->elseBody, fn);
            } else if (auto* w = s->as<WhileStmt>()) {
                forEachInBlock(w->body, fn);
            } else if (auto* f = s->as<ForStmt>()) {
                forEachInBlock(f->body, fn);
            }
        }
    }

    StatementInfo& slot(int no) { return prog_.stmts[no]; }

    void addMethod(const MethodDecl& m) {
        MethodInfo info;
        info.no = m.no;
        info.decl = &m;
        info.nonVoid = m.ret.base != Type::Void;

        StatementInfo& h = slot(m.no);
        h.no = m.no;
        h.cls = StmtClass::MethodHeader;
        h.pos = m.pos;
        std::string params = m.isMain ? "String[] " + m.argsName : renderParams(m.params);
        h.text = "static " + typeName(m.ret) + " " + m.name + "(" + params + ")";
        if (m.isMain) h.defs.push_back(m.argsSym);
        for (auto& p : m.params) {
            h.defs.push_back(p.sym);
            info.formals.push_back(p.sym);
        }
        sortUnique(h.defs);

        walkBlock(m.body, m.no, &info, nullptr);
        prog_.methods[m.no] = std::move(info);
        if (m.isMain) prog_.mainNo = m.no;
    }

    void addAspect(const AspectDecl& asp) {
        StatementInfo& h = slot(asp.no);
        h.no = asp.no;
        h.cls = StmtClass::AspectHeader;
        h.pos = asp.pos;
        h.text = "aspect " + asp.name;
        prog_.aspects[asp.no] = AspectInfo{asp.no, &asp};

        for (auto& pc : asp.pointcuts) addPointcut(pc, asp.no);
        for (auto& adv : asp.advices) addAdvice(adv, asp.no);
    }

    void addPointcut(const PointcutDecl& pc, int aspectNo) {
        StatementInfo& h = slot(pc.no);
        h.no = pc.no;
        h.cls = StmtClass::PointcutHeader;
        h.pos = pc.pos;
        h.owner = aspectNo;
        std::string types;
        for (size_t i = 0; i < pc.target.paramTypes.size(); i++) {
            if (i) types += ", ";
            types += typeName(pc.target.paramTypes[i]);
        }
        std::string names;
        for (size_t i = 0; i < pc.argNames.size(); i++) {
            if (i) names += ", ";
            names += pc.argNames[i];
        }
        h.text = "pointcut " + pc.name + "(" + renderParams(pc.params) + "): call(" +
                 typeName(pc.target.ret) + " " + pc.target.className + "." +
                 pc.target.methodName + "(" + types + ")) && args(" + names + ")";

        PointcutInfo info;
        info.no = pc.no;
        info.decl = &pc;
        info.aspect = aspectNo;
        info.targetMethod = pc.targetMethod;
        for (auto& p : pc.params) {
            info.params.push_back(p.sym);
            h.defs.push_back(p.sym);
        }
        sortUnique(h.defs);
        prog_.pointcuts[pc.no] = std::move(info);
    }

    void addAdvice(const AdviceDecl& adv, int aspectNo) {
        StatementInfo& h = slot(adv.no);
        h.no = adv.no;
        h.cls = StmtClass::AdviceHeader;
        h.pos = adv.pos;
        h.owner = aspectNo;
        std::string binding;
        for (size_t i = 0; i < adv.pointcutArgs.size(); i++) {
            if (i) binding += ", ";
            binding += adv.pointcutArgs[i];
        }
        if (adv.kind == AdviceKind::Before) {
            h.text = "before(" + renderParams(adv.params) + "): " + adv.pointcutName + "(" +
                     binding + ")";
        } else {
            h.text = "after(" + renderParams(adv.params) + ") returning(" +
                     typeName(adv.result.type) + " " + adv.result.name + "): " +
                     adv.pointcutName + "(" + binding + ")";
        }

        AdviceInfo info;
        info.no = adv.no;
        info.decl = &adv;
        info.aspect = aspectNo;
        info.pointcut = adv.pointcut;
        for (auto& p : adv.params) {
            info.params.push_back(p.sym);
            h.defs.push_back(p.sym);
        }
        if (adv.kind == AdviceKind::AfterReturning) {
            info.resultSym = adv.result.sym;
            h.defs.push_back(adv.result.sym);
        }
        sortUnique(h.defs);

        walkBlock(adv.body, adv.no, nullptr, &info);
        require(!info.bodyStmts.empty(), "advice body unexpectedly empty");
        info.lastStmt = info.bodyStmts.back();
        prog_.advices[adv.no] = std::move(info);
    }

    void walkBlock(const Block& b, int owner, MethodInfo* method, AdviceInfo* advice) {
        for (auto& s : b) walkStmt(*s, owner, method, advice);
    }

    void walkStmt(const Stmt& s, int owner, MethodInfo* method, AdviceInfo* advice) {
        StatementInfo& info = slot(s.no);
        info.no = s.no;
        info.cls = StmtClass::Body;
        info.pos = s.pos;
        info.owner = owner;
        info.ast = &s;
        info.text = renderStmt(s);
        if (method) method->bodyStmts.push_back(s.no);
        if (advice) advice->bodyStmts.push_back(s.no);

        if (auto* d = s.as<VarDeclStmt>()) {
            info.defs = {d->sym};
            info.uses = varsOf(*d->init);
        } else if (auto* a = s.as<AssignStmt>()) {
            info.defs = {a->sym};
            info.uses = varsOf(*a->value);
            if (auto* c = a->value->as<CallExpr>()) noteCall(info, *c, true);
        } else if (auto* nw = s.as<NewStmt>()) {
            info.defs = {nw->sym};
        } else if (auto* i = s.as<IfStmt>()) {
            info.predicate = true;
            info.uses = varsOf(*i->cond);
            const Expr* condCall = i->cond.get();
            if (auto* u = i->cond->as<Unary>()) condCall = u->operand.get();
            if (auto* c = condCall->as<CallExpr>()) noteCall(info, *c, true);
            walkBlock(i->thenBody, owner, method, advice);
            walkBlock(i->elseBody, owner, method, advice);
        } else if (auto* w = s.as<WhileStmt>()) {
            info.predicate = true;
            info.uses = varsOf(*w->cond);
            walkBlock(w->body, owner, method, advice);
        } else if (auto* f = s.as<ForStmt>()) {
            info.predicate = true;
            info.defs = {f->varSym, f->updateSym};
            sortUnique(info.defs);
            std::vector<int> uses;
            collectVars(*f->init, uses);
            collectVars(*f->cond, uses);
            collectVars(*f->update, uses);
            sortUnique(uses);
            info.uses = std::move(uses);
            walkBlock(f->body, owner, method, advice);
        } else if (auto* r = s.as<ReturnStmt>()) {
            if (r->value) info.uses = varsOf(*r->value);
            if (method) method->returns.push_back(s.no);
        } else if (auto* p = s.as<PrintStmt>()) {
            info.uses = varsOf(*p->arg);
        } else if (auto* c = s.as<CallStmt>()) {
            info.uses = varsOf(*c->call);
            noteCall(info, *c->call->as<CallExpr>(), false);
        }
    }

    void noteCall(StatementInfo& info, const CallExpr& c, bool consumes) {
        info.hasCall = true;
        info.call.callee = c.method;
        info.call.consumes = consumes;
        for (auto& arg : c.args) {
            info.call.args.push_back(arg.get());
            info.call.argUses.push_back(varsOf(*arg));
        }
        prog_.callSites.push_back(info.no);
    }

    void resolvePointcutLinks() {
        for (auto& [no, adv] : prog_.advices) {
            PointcutInfo& pc = prog_.pointcuts.at(adv.pointcut);
            (adv.decl->kind == AdviceKind::Before ? pc.before : pc.after) = no;
        }
        for (int site : prog_.callSites) {
            StatementInfo& info = prog_.stmts[site];
            info.call.pointcut = prog_.advisingPointcut(info.call.callee);
        }
        std::sort(prog_.callSites.begin(), prog_.callSites.end());
        // A discarded non-void result produces no return-value dependence.
        // Void callees never produce one.
        for (int site : prog_.callSites) {
            StatementInfo& info = prog_.stmts[site];
            if (!prog_.methods.at(info.call.callee).nonVoid) info.call.consumes = false;
        }
    }
};

}  // namespace detail

inline Program buildModel(SourceUnit&& unit, SymbolTable&& syms) {
    return detail::ModelBuilder(std::move(unit), std::move(syms)).build();
}

}  // namespace miniaj
