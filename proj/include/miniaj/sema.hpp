#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "miniaj/ast.hpp"

namespace miniaj {

enum class SymKind { Global, Local, Formal, AdviceParam, AdviceResult, PointcutParam, ArgsParam };

struct Symbol {
    int id = -1;
    std::string name;
    SymKind kind = SymKind::Global;
    TypeRef type;
    int owner = 0;  // declaring header statement; 0 for globals
};

class SymbolTable {
public:
    int add(std::string name, SymKind kind, TypeRef type, int owner) {
        int id = static_cast<int>(symbols_.size());
        symbols_.push_back(Symbol{id, std::move(name), kind, std::move(type), owner});
        return id;
    }

    const Symbol& at(int id) const {
        require(id >= 0 && id < static_cast<int>(symbols_.size()), "symbol id out of range");
        return symbols_[id];
    }

    int size() const { return static_cast<int>(symbols_.size()); }

private:
    std::vector<Symbol> symbols_;
};

// Resolves names, assigns symbol ids and types, and enforces the static rules:
// unique global names, one main, call placement targets, pointcut and advice
// signatures. Mutates the AST in place.
class Checker {
public:
    explicit Checker(SourceUnit& unit) : unit_(unit) {}

    SymbolTable run() {
        collectTopLevel();
        for (auto& cls : unit_.classes)
            for (auto& m : cls.methods) checkMethod(m);
        for (auto& asp : unit_.aspects) checkAspect(asp);
        if (!main_) fail(ErrorKind::Semantic, "program has no main method");
        return std::move(syms_);
    }

private:
    SourceUnit& unit_;
    SymbolTable syms_;
    std::unordered_map<std::string, ClassDecl*> classes_;
    std::unordered_map<std::string, MethodDecl*> methods_;
    std::unordered_map<std::string, int> globals_;
    std::unordered_map<std::string, PointcutDecl*> pointcutTargets_;  // target method -> pointcut
    MethodDecl* main_ = nullptr;

    // current body scope
    std::unordered_map<std::string, int> scope_;
    MethodDecl* curMethod_ = nullptr;
    AdviceDecl* curAdvice_ = nullptr;

    void collectTopLevel() {
        for (auto& cls : unit_.classes) {
            if (!classes_.emplace(cls.name, &cls).second)
                fail(ErrorKind::Semantic, "duplicate class " + cls.name, cls.pos);
        }
        for (auto& asp : unit_.aspects) {
            if (classes_.count(asp.name))
                fail(ErrorKind::Semantic, "aspect " + asp.name + " collides with a class name",
                     asp.pos);
        }
        // Globals and methods share one program-wide namespace each, so calls
        // and field accesses stay unqualified.
        for (auto& cls : unit_.classes) {
            for (auto& f : cls.fields) {
                if (globals_.count(f.name))
                    fail(ErrorKind::Semantic, "duplicate field " + f.name, f.pos);
                f.sym = syms_.add(f.name, SymKind::Global, f.type, 0);
                globals_[f.name] = f.sym;
            }
            for (auto& m : cls.methods) {
                if (m.name == "parseInt")
                    fail(ErrorKind::Semantic, "parseInt is reserved", m.pos);
                if (!methods_.emplace(m.name, &m).second)
                    fail(ErrorKind::Semantic, "duplicate method " + m.name, m.pos);
                if (m.name == "main") {
                    if (m.ret.base != Type::Void || !m.params.empty() || m.argsName.empty())
                        fail(ErrorKind::Semantic, "main must be static void main(String[] args)",
                             m.pos);
                    m.isMain = true;
                    main_ = &m;
                } else if (!m.argsName.empty()) {
                    fail(ErrorKind::Semantic, "only main takes String[] args", m.pos);
                }
            }
        }
    }

    // ---- scope helpers ----

    void declareLocal(const std::string& name, int sym, SourcePos pos) {
        if (!scope_.emplace(name, sym).second)
            fail(ErrorKind::Semantic, "duplicate variable " + name + " in this body", pos);
    }

    const Symbol* resolve(const std::string& name) const {
        auto it = scope_.find(name);
        if (it != scope_.end()) return &syms_.at(it->second);
        auto g = globals_.find(name);
        if (g != globals_.end()) return &syms_.at(g->second);
        return nullptr;
    }

    // ---- methods ----

    void checkMethod(MethodDecl& m) {
        curMethod_ = &m;
        curAdvice_ = nullptr;
        scope_.clear();
        if (m.isMain) {
            m.argsSym = syms_.add(m.argsName, SymKind::ArgsParam, TypeRef{Type::Str, {}}, m.no);
            declareLocal(m.argsName, m.argsSym, m.pos);
        }
        for (auto& p : m.params) {
            p.sym = syms_.add(p.name, SymKind::Formal, p.type, m.no);
            declareLocal(p.name, p.sym, p.pos);
        }
        checkBlock(m.body, m.no);
        curMethod_ = nullptr;
    }

    void checkBlock(Block& b, int ownerNo) {
        for (auto& s : b) checkStmt(*s, ownerNo);
    }

    void checkStmt(Stmt& s, int ownerNo) {
        if (auto* d = s.as<VarDeclStmt>()) {
            checkExpr(*d->init, false);
            expectType(*d->init, d->declType, "initializer");
            d->sym = syms_.add(d->name, SymKind::Local, d->declType, ownerNo);
            declareLocal(d->name, d->sym, s.pos);
        } else if (auto* a = s.as<AssignStmt>()) {
            const Symbol* sym = resolve(a->name);
            if (!sym) fail(ErrorKind::Semantic, "unknown variable " + a->name, s.pos);
            if (sym->kind == SymKind::ArgsParam || sym->type.base == Type::Object)
                fail(ErrorKind::Semantic, a->name + " cannot be assigned", s.pos);
            if (sym->kind == SymKind::AdviceResult)
                fail(ErrorKind::Semantic, "the advice result is read-only", s.pos);
            a->sym = sym->id;
            if (auto* c = a->value->as<CallExpr>()) {
                const MethodDecl& callee = checkCall(*a->value, *c);
                if (callee.ret.base == Type::Void)
                    fail(ErrorKind::Semantic, "cannot assign a void call", s.pos);
                if (!(callee.ret == sym->type))
                    fail(ErrorKind::Semantic, "call result type does not match " + a->name, s.pos);
            } else {
                checkExpr(*a->value, false);
                expectType(*a->value, sym->type, "assignment");
            }
        } else if (auto* nw = s.as<NewStmt>()) {
            if (!classes_.count(nw->className))
                fail(ErrorKind::Semantic, "unknown class " + nw->className, s.pos);
            nw->sym = syms_.add(nw->name, SymKind::Local, TypeRef{Type::Object, nw->className},
                                ownerNo);
            declareLocal(nw->name, nw->sym, s.pos);
        } else if (auto* i = s.as<IfStmt>()) {
            if (auto* c = i->cond->as<CallExpr>()) {
                const MethodDecl& callee = checkCall(*i->cond, *c);
                if (callee.ret.base != Type::Bool)
                    fail(ErrorKind::Semantic, "an if condition call must return boolean", s.pos);
            } else if (auto* u = i->cond->as<Unary>(); u && u->operand->as<CallExpr>()) {
                const MethodDecl& callee = checkCall(*u->operand, *u->operand->as<CallExpr>());
                if (callee.ret.base != Type::Bool)
                    fail(ErrorKind::Semantic, "an if condition call must return boolean", s.pos);
                i->cond->type = boolType();
            } else {
                checkExpr(*i->cond, false);
                expectType(*i->cond, boolType(), "if condition");
            }
            checkBlock(i->thenBody, ownerNo);
            checkBlock(i->elseBody, ownerNo);
        } else if (auto* w = s.as<WhileStmt>()) {
            checkExpr(*w->cond, false);
            expectType(*w->cond, boolType(), "while condition");
            checkBlock(w->body, ownerNo);
        } else if (auto* f = s.as<ForStmt>()) {
            checkExpr(*f->init, false);
            if (f->declares) {
                expectType(*f->init, f->declType, "for initializer");
                f->varSym = syms_.add(f->var, SymKind::Local, f->declType, ownerNo);
                declareLocal(f->var, f->varSym, s.pos);
            } else {
                const Symbol* sym = resolveAssignable(f->var, s.pos);
                f->varSym = sym->id;
                expectType(*f->init, sym->type, "for initializer");
            }
            checkExpr(*f->cond, false);
            expectType(*f->cond, boolType(), "for condition");
            const Symbol* up = resolveAssignable(f->updateVar, s.pos);
            f->updateSym = up->id;
            checkExpr(*f->update, false);
            expectType(*f->update, up->type, "for update");
            checkBlock(f->body, ownerNo);
        } else if (auto* r = s.as<ReturnStmt>()) {
            if (curAdvice_)
                fail(ErrorKind::Semantic, "return is not allowed in advice", s.pos);
            if (curMethod_->ret.base == Type::Void) {
                if (r->value) fail(ErrorKind::Semantic, "void method cannot return a value", s.pos);
            } else {
                if (!r->value) fail(ErrorKind::Semantic, "missing return value", s.pos);
                checkExpr(*r->value, false);
                expectType(*r->value, curMethod_->ret, "return value");
            }
        } else if (auto* p = s.as<PrintStmt>()) {
            checkExpr(*p->arg, true);
            if (p->arg->type.base == Type::Object || p->arg->type.base == Type::Void)
                fail(ErrorKind::Semantic, "print takes int, boolean or string values", s.pos);
        } else if (auto* c = s.as<CallStmt>()) {
            checkCall(*c->call, *c->call->as<CallExpr>());
        }
    }

    const Symbol* resolveAssignable(const std::string& name, SourcePos pos) {
        const Symbol* sym = resolve(name);
        if (!sym) fail(ErrorKind::Semantic, "unknown variable " + name, pos);
        if (sym->kind == SymKind::ArgsParam || sym->type.base == Type::Object ||
            sym->kind == SymKind::AdviceResult)
            fail(ErrorKind::Semantic, name + " cannot be assigned", pos);
        return sym;
    }

    const MethodDecl& checkCall(Expr& e, CallExpr& c) {
        auto it = methods_.find(c.callee);
        if (it == methods_.end())
            fail(ErrorKind::Semantic, "unknown method " + c.callee, e.pos);
        MethodDecl& callee = *it->second;
        if (callee.isMain) fail(ErrorKind::Semantic, "main cannot be called", e.pos);
        if (c.args.size() != callee.params.size())
            fail(ErrorKind::Semantic, c.callee + " expects " +
                                          std::to_string(callee.params.size()) + " arguments",
                 e.pos);
        for (size_t i = 0; i < c.args.size(); i++) {
            checkExpr(*c.args[i], false);
            expectType(*c.args[i], callee.params[i].type, "argument");
        }
        c.method = callee.no;
        e.type = callee.ret;
        return callee;
    }

    void expectType(const Expr& e, const TypeRef& want, const char* what) {
        if (!(e.type == want))
            fail(ErrorKind::Semantic, std::string(what) + " must be " + typeName(want) +
                                          ", found " + typeName(e.type), e.pos);
    }

    void checkExpr(Expr& e, bool allowStrings) {
        if (e.as<IntLit>()) {
            e.type = intType();
        } else if (e.as<BoolLit>()) {
            e.type = boolType();
        } else if (e.as<StrLit>()) {
            e.type = TypeRef{Type::Str, {}};
        } else if (auto* v = e.as<VarRef>()) {
            const Symbol* sym = resolve(v->name);
            if (!sym) fail(ErrorKind::Semantic, "unknown variable " + v->name, e.pos);
            if (sym->kind == SymKind::ArgsParam)
                fail(ErrorKind::Semantic, v->name + " can only be read via parseInt", e.pos);
            if (sym->type.base == Type::Object)
                fail(ErrorKind::Semantic, "object variables cannot be read", e.pos);
            v->sym = sym->id;
            e.type = sym->type;
        } else if (auto* a = e.as<ArgRead>()) {
            if (!curMethod_ || !curMethod_->isMain)
                fail(ErrorKind::Semantic, "parseInt(...) arguments can only be read in main",
                     e.pos);
            if (a->arrayName != curMethod_->argsName)
                fail(ErrorKind::Semantic, "unknown array " + a->arrayName, e.pos);
            if (a->index < 0) fail(ErrorKind::Semantic, "negative argument index", e.pos);
            a->sym = curMethod_->argsSym;
            e.type = intType();
        } else if (auto* u = e.as<Unary>()) {
            checkExpr(*u->operand, false);
            if (u->op == UnOp::Not) {
                expectType(*u->operand, boolType(), "operand of !");
                e.type = boolType();
            } else {
                expectType(*u->operand, intType(), "operand of -");
                e.type = intType();
            }
        } else if (auto* b = e.as<Binary>()) {
            checkExpr(*b->lhs, allowStrings);
            checkExpr(*b->rhs, allowStrings);
            const TypeRef& lt = b->lhs->type;
            const TypeRef& rt = b->rhs->type;
            switch (b->op) {
                case BinOp::Add:
                    if (allowStrings && (lt.base == Type::Str || rt.base == Type::Str)) {
                        // string concatenation, print arguments only
                        if (lt.base == Type::Object || rt.base == Type::Object)
                            fail(ErrorKind::Semantic, "cannot concatenate objects", e.pos);
                        e.type = TypeRef{Type::Str, {}};
                        break;
                    }
                    [[fallthrough]];
                case BinOp::Sub:
                case BinOp::Mul:
                case BinOp::Div:
                case BinOp::Mod:
                    expectType(*b->lhs, intType(), "arithmetic operand");
                    expectType(*b->rhs, intType(), "arithmetic operand");
                    e.type = intType();
                    break;
                case BinOp::Eq:
                case BinOp::Ne:
                    if (!(lt == rt) || (lt.base != Type::Int && lt.base != Type::Bool))
                        fail(ErrorKind::Semantic, "== and != compare two ints or two booleans",
                             e.pos);
                    e.type = boolType();
                    break;
                case BinOp::Lt:
                case BinOp::Le:
                case BinOp::Gt:
                case BinOp::Ge:
                    expectType(*b->lhs, intType(), "comparison operand");
                    expectType(*b->rhs, intType(), "comparison operand");
                    e.type = boolType();
                    break;
                case BinOp::And:
                case BinOp::Or:
                    expectType(*b->lhs, boolType(), "logical operand");
                    expectType(*b->rhs, boolType(), "logical operand");
                    e.type = boolType();
                    break;
            }
        } else if (e.as<CallExpr>()) {
            fail(ErrorKind::Internal, "call outside its allowed positions", e.pos);
        }
    }

    // ---- aspects ----

    void checkAspect(AspectDecl& asp) {
        std::unordered_map<std::string, PointcutDecl*> byName;
        for (auto& pc : asp.pointcuts) {
            if (!byName.emplace(pc.name, &pc).second)
                fail(ErrorKind::Semantic, "duplicate pointcut " + pc.name, pc.pos);
            checkPointcut(pc);
        }
        std::map<int, int> beforeCount, afterCount;
        for (auto& adv : asp.advices) {
            auto it = byName.find(adv.pointcutName);
            if (it == byName.end())
                fail(ErrorKind::Semantic, "unknown pointcut " + adv.pointcutName, adv.pos);
            checkAdvice(adv, *it->second);
            int& count = adv.kind == AdviceKind::Before ? beforeCount[adv.pointcut]
                                                        : afterCount[adv.pointcut];
            if (++count > 1)
                fail(ErrorKind::Semantic, "pointcut " + adv.pointcutName +
                                              " already has advice of this kind", adv.pos);
        }
    }

    void checkPointcut(PointcutDecl& pc) {
        auto mit = methods_.find(pc.target.methodName);
        if (mit == methods_.end())
            fail(ErrorKind::Semantic, "pointcut targets unknown method " + pc.target.methodName,
                 pc.pos);
        MethodDecl& target = *mit->second;
        if (target.isMain) fail(ErrorKind::Semantic, "main cannot be advised", pc.pos);
        if (target.className != pc.target.className)
            fail(ErrorKind::Semantic, pc.target.methodName + " belongs to class " +
                                          target.className, pc.pos);
        if (!(pc.target.ret == target.ret))
            fail(ErrorKind::Semantic, "pointcut return type does not match " + target.name,
                 pc.pos);
        if (pc.target.paramTypes.size() != target.params.size())
            fail(ErrorKind::Semantic, "pointcut signature does not match " + target.name, pc.pos);
        for (size_t i = 0; i < target.params.size(); i++)
            if (!(pc.target.paramTypes[i] == target.params[i].type))
                fail(ErrorKind::Semantic, "pointcut signature does not match " + target.name,
                     pc.pos);
        // args(...) binds every call argument, positionally, to a pointcut parameter.
        if (pc.params.size() != target.params.size() || pc.argNames.size() != pc.params.size())
            fail(ErrorKind::Semantic, "args(...) must bind every parameter of " + target.name,
                 pc.pos);
        for (size_t i = 0; i < pc.params.size(); i++) {
            if (!(pc.params[i].type == target.params[i].type))
                fail(ErrorKind::Semantic, "pointcut parameter types must match " + target.name,
                     pc.pos);
            if (pc.argNames[i] != pc.params[i].name)
                fail(ErrorKind::Semantic, "args(...) must list the pointcut parameters in order",
                     pc.pos);
        }
        if (!pointcutTargets_.emplace(target.name, &pc).second)
            fail(ErrorKind::Semantic, "method " + target.name + " is advised by two pointcuts",
                 pc.pos);
        pc.targetMethod = target.no;
        for (auto& p : pc.params)
            p.sym = syms_.add(p.name, SymKind::PointcutParam, p.type, pc.no);
    }

    void checkAdvice(AdviceDecl& adv, PointcutDecl& pc) {
        adv.pointcut = pc.no;
        if (adv.params.size() != pc.params.size())
            fail(ErrorKind::Semantic, "advice parameters must match pointcut " + pc.name, adv.pos);
        if (adv.pointcutArgs.size() != adv.params.size())
            fail(ErrorKind::Semantic, "advice must bind every pointcut parameter", adv.pos);
        for (size_t i = 0; i < adv.params.size(); i++) {
            if (!(adv.params[i].type == pc.params[i].type))
                fail(ErrorKind::Semantic, "advice parameter types must match pointcut " + pc.name,
                     adv.pos);
            if (adv.pointcutArgs[i] != adv.params[i].name)
                fail(ErrorKind::Semantic, "advice must list its parameters in pointcut order",
                     adv.pos);
        }
        curMethod_ = nullptr;
        curAdvice_ = &adv;
        scope_.clear();
        for (auto& p : adv.params) {
            p.sym = syms_.add(p.name, SymKind::AdviceParam, p.type, adv.no);
            declareLocal(p.name, p.sym, p.pos);
        }
        if (adv.kind == AdviceKind::AfterReturning) {
            MethodDecl& target = *methods_.at(pc.target.methodName);
            if (target.ret.base == Type::Void)
                fail(ErrorKind::Semantic, "after-returning advice needs a non-void method",
                     adv.pos);
            if (!(adv.result.type == target.ret))
                fail(ErrorKind::Semantic, "returning(...) type must match " + target.name,
                     adv.pos);
            adv.result.sym = syms_.add(adv.result.name, SymKind::AdviceResult, adv.result.type,
                                       adv.no);
            declareLocal(adv.result.name, adv.result.sym, adv.result.pos);
        }
        checkBlock(adv.body, adv.no);
        curAdvice_ = nullptr;
    }
};

inline SymbolTable checkSource(SourceUnit& unit) { return Checker(unit).run(); }

}  // namespace miniaj
