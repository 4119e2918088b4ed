#pragma once

#include <climits>
#include <unordered_map>
#include <variant>

#include "miniaj/events.hpp"

namespace miniaj {

struct ObjRef {
    std::string className;
    int id = 0;
};

using Value = std::variant<std::monostate, long long, bool, std::string, ObjRef>;

struct RunInput {
    std::vector<long long> args;
    long long stepBudget = 1'000'000;
};

// Direct AST interpreter. Around an advised call it runs, in order: before
// advice, the method, after-returning advice, then the call statement itself
// completes. Every StatementExecuted event marks a completed statement, so an
// assignment target is written before its event and after any after advice.
class Interp {
public:
    explicit Interp(const Program& prog) : prog_(prog) {}

    RunResult run(const RunInput& input) {
        input_ = &input;
        result_ = RunResult{};
        result_.args = input.args;
        frames_.clear();
        globals_.clear();
        steps_ = 0;
        objCount_ = 0;
        for (int id = 0; id < prog_.syms.size(); id++) {
            const Symbol& s = prog_.syms.at(id);
            if (s.kind != SymKind::Global) continue;
            globals_[id] = s.type.base == Type::Bool ? Value(false) : Value(0LL);
        }
        try {
            const MethodInfo& main = prog_.methods.at(prog_.mainNo);
            Event ev;
            ev.kind = EventKind::MethodEntered;
            ev.method = main.no;
            ev.site = 0;
            emit(ev);
            pushFrame();
            Flow flow = execBlock(main.decl->body);
            popFrame();
            Event ex;
            ex.kind = EventKind::MethodExited;
            ex.method = main.no;
            ex.site = 0;
            ex.returnStmt = flow.returned ? flow.retStmt : 0;
            emit(ex);
        } catch (const Error& e) {
            result_.ok = false;
            result_.errorKind = e.kind();
            result_.errorMessage = e.what();
            result_.errorStmt = e.stmt() ? e.stmt() : curStmt_;
        }
        result_.steps = steps_;
        return std::move(result_);
    }

private:
    struct Flow {
        bool returned = false;
        int retStmt = 0;
        Value value;
    };

    const Program& prog_;
    const RunInput* input_ = nullptr;
    RunResult result_;
    std::unordered_map<int, Value> globals_;
    std::vector<std::unordered_map<int, Value>> frames_;
    long long steps_ = 0;
    int objCount_ = 0;
    int curStmt_ = 0;

    // Each language frame costs a handful of native frames, so the cap has to
    // leave the host stack generous headroom.
    static constexpr int kMaxFrames = 2'000;

    void emit(Event ev) {
        if (ev.kind == EventKind::StatementExecuted) {
            if (++steps_ > input_->stepBudget)
                fail(ErrorKind::Runtime, "step budget exceeded", {}, ev.stmt);
        }
        ev.seq = static_cast<int>(result_.events.size());
        result_.events.push_back(std::move(ev));
    }

    void emitStmt(int no) {
        Event ev;
        ev.kind = EventKind::StatementExecuted;
        ev.stmt = no;
        emit(ev);
    }

    void pushFrame() {
        if (frames_.size() >= kMaxFrames)
            fail(ErrorKind::Runtime, "call depth exceeded", {}, curStmt_);
        frames_.emplace_back();
    }

    void popFrame() { frames_.pop_back(); }

    void store(int sym, Value v) {
        if (prog_.syms.at(sym).kind == SymKind::Global)
            globals_[sym] = std::move(v);
        else
            frames_.back()[sym] = std::move(v);
    }

    const Value& load(int sym) const {
        if (prog_.syms.at(sym).kind == SymKind::Global) {
            auto it = globals_.find(sym);
            require(it != globals_.end(), "global without a value");
            return it->second;
        }
        auto it = frames_.back().find(sym);
        if (it == frames_.back().end())
            fail(ErrorKind::Runtime,
                 "variable '" + prog_.syms.at(sym).name + "' used before initialization", {},
                 curStmt_);
        return it->second;
    }

    static long long asInt(const Value& v) {
        const long long* p = std::get_if<long long>(&v);
        require(p != nullptr, "int value expected");
        return *p;
    }

    static bool asBool(const Value& v) {
        const bool* p = std::get_if<bool>(&v);
        require(p != nullptr, "boolean value expected");
        return *p;
    }

    static std::string stringify(const Value& v) {
        struct S {
            std::string operator()(std::monostate) const { return "void"; }
            std::string operator()(long long n) const { return std::to_string(n); }
            std::string operator()(bool b) const { return b ? "true" : "false"; }
            std::string operator()(const std::string& s) const { return s; }
            std::string operator()(const ObjRef& o) const {
                return o.className + "@" + std::to_string(o.id);
            }
        };
        return std::visit(S{}, v);
    }

    // ---- statements ----

    Flow execBlock(const Block& b) {
        for (const StmtPtr& s : b) {
            Flow f = execStmt(*s);
            if (f.returned) return f;
        }
        return {};
    }

    Flow execStmt(const Stmt& s) {
        curStmt_ = s.no;
        if (auto* d = s.as<VarDeclStmt>()) {
            store(d->sym, eval(*d->init));
            emitStmt(s.no);
        } else if (auto* a = s.as<AssignStmt>()) {
            Value v = a->value->as<CallExpr>() ? runCall(prog_.stmts[s.no]) : eval(*a->value);
            curStmt_ = s.no;
            store(a->sym, std::move(v));
            emitStmt(s.no);
        } else if (auto* nw = s.as<NewStmt>()) {
            store(nw->sym, ObjRef{nw->className, ++objCount_});
            Event ev;
            ev.kind = EventKind::ObjectCreated;
            ev.stmt = s.no;
            ev.className = nw->className;
            emit(ev);
            emitStmt(s.no);
        } else if (auto* i = s.as<IfStmt>()) {
            bool cond;
            const Unary* neg = i->cond->as<Unary>();
            if (i->cond->as<CallExpr>()) {
                cond = asBool(runCall(prog_.stmts[s.no]));
            } else if (neg && neg->operand->as<CallExpr>()) {
                cond = !asBool(runCall(prog_.stmts[s.no]));
            } else {
                cond = asBool(eval(*i->cond));
            }
            curStmt_ = s.no;
            emitStmt(s.no);
            return execBlock(cond ? i->thenBody : i->elseBody);
        } else if (auto* w = s.as<WhileStmt>()) {
            for (;;) {
                curStmt_ = s.no;
                bool cond = asBool(eval(*w->cond));
                emitStmt(s.no);
                if (!cond) break;
                Flow f = execBlock(w->body);
                if (f.returned) return f;
            }
        } else if (auto* f = s.as<ForStmt>()) {
            store(f->varSym, eval(*f->init));
            for (;;) {
                curStmt_ = s.no;
                bool cond = asBool(eval(*f->cond));
                emitStmt(s.no);
                if (!cond) break;
                Flow fl = execBlock(f->body);
                if (fl.returned) return fl;
                curStmt_ = s.no;
                store(f->updateSym, eval(*f->update));
            }
        } else if (auto* r = s.as<ReturnStmt>()) {
            Flow flow;
            flow.returned = true;
            flow.retStmt = s.no;
            if (r->value) flow.value = eval(*r->value);
            emitStmt(s.no);
            return flow;
        } else if (auto* p = s.as<PrintStmt>()) {
            result_.output.push_back(stringify(eval(*p->arg)));
            emitStmt(s.no);
        } else if (s.as<CallStmt>()) {
            runCall(prog_.stmts[s.no]);
            curStmt_ = s.no;
            emitStmt(s.no);
        }
        return {};
    }

    // ---- the advised call protocol ----

    Value runCall(const StatementInfo& site) {
        const CallInfo& call = site.call;
        std::vector<Value> argv;
        for (const Expr* arg : call.args) argv.push_back(eval(*arg));

        const MethodInfo& callee = prog_.methods.at(call.callee);
        const PointcutInfo* pc = call.pointcut ? &prog_.pointcuts.at(call.pointcut) : nullptr;

        if (pc && pc->before) runAdvice(prog_.advices.at(pc->before), site.no, argv, Value{});

        Event en;
        en.kind = EventKind::MethodEntered;
        en.method = callee.no;
        en.site = site.no;
        en.pointcut = call.pointcut;
        emit(en);
        pushFrame();
        for (size_t p = 0; p < callee.formals.size(); p++)
            frames_.back()[callee.formals[p]] = argv[p];
        Flow flow = execBlock(callee.decl->body);
        popFrame();
        Event ex;
        ex.kind = EventKind::MethodExited;
        ex.method = callee.no;
        ex.site = site.no;
        ex.pointcut = call.pointcut;
        ex.returnStmt = flow.returned ? flow.retStmt : 0;
        emit(ex);

        if (pc && pc->after) runAdvice(prog_.advices.at(pc->after), site.no, argv, flow.value);
        return std::move(flow.value);
    }

    void runAdvice(const AdviceInfo& adv, int siteNo, const std::vector<Value>& argv,
                   Value result) {
        Event en;
        en.kind = EventKind::AdviceEntered;
        en.advice = adv.no;
        en.adviceKind = adv.decl->kind;
        en.site = siteNo;
        en.pointcut = adv.pointcut;
        emit(en);
        pushFrame();
        for (size_t p = 0; p < adv.params.size(); p++) frames_.back()[adv.params[p]] = argv[p];
        if (adv.resultSym >= 0) frames_.back()[adv.resultSym] = std::move(result);
        execBlock(adv.decl->body);
        popFrame();
        Event ex = en;
        ex.kind = EventKind::AdviceExited;
        emit(ex);
    }

    // ---- expressions ----

    Value eval(const Expr& e) {
        if (auto* n = e.as<IntLit>()) return Value(n->value);
        if (auto* b = e.as<BoolLit>()) return Value(b->value);
        if (auto* s = e.as<StrLit>()) return Value(s->value);
        if (auto* v = e.as<VarRef>()) return load(v->sym);
        if (auto* a = e.as<ArgRead>()) {
            if (a->index >= static_cast<int>(input_->args.size()))
                fail(ErrorKind::Runtime,
                     "missing program argument " + a->arrayName + "[" +
                         std::to_string(a->index) + "]", {}, curStmt_);
            return Value(input_->args[a->index]);
        }
        if (auto* u = e.as<Unary>()) {
            if (u->op == UnOp::Not) return Value(!asBool(eval(*u->operand)));
            return Value(wrapNeg(asInt(eval(*u->operand))));
        }
        if (auto* b = e.as<Binary>()) return evalBinary(*b);
        fail(ErrorKind::Internal, "call evaluated outside a call statement", e.pos, curStmt_);
    }

    Value evalBinary(const Binary& b) {
        if (b.op == BinOp::And) {
            if (!asBool(eval(*b.lhs))) return Value(false);
            return Value(asBool(eval(*b.rhs)));
        }
        if (b.op == BinOp::Or) {
            if (asBool(eval(*b.lhs))) return Value(true);
            return Value(asBool(eval(*b.rhs)));
        }
        Value lv = eval(*b.lhs);
        Value rv = eval(*b.rhs);
        if (b.op == BinOp::Add &&
            (std::holds_alternative<std::string>(lv) || std::holds_alternative<std::string>(rv)))
            return Value(stringify(lv) + stringify(rv));
        switch (b.op) {
            case BinOp::Add: return Value(wrapAdd(asInt(lv), asInt(rv)));
            case BinOp::Sub: return Value(wrapSub(asInt(lv), asInt(rv)));
            case BinOp::Mul: return Value(wrapMul(asInt(lv), asInt(rv)));
            case BinOp::Div: {
                long long d = asInt(rv);
                if (d == 0) fail(ErrorKind::Runtime, "division by zero", {}, curStmt_);
                long long n = asInt(lv);
                if (n == LLONG_MIN && d == -1) return Value(n);
                return Value(n / d);
            }
            case BinOp::Mod: {
                long long d = asInt(rv);
                if (d == 0) fail(ErrorKind::Runtime, "division by zero", {}, curStmt_);
                long long n = asInt(lv);
                if (n == LLONG_MIN && d == -1) return Value(0LL);
                return Value(n % d);
            }
            case BinOp::Eq: return Value(valueEq(lv, rv));
            case BinOp::Ne: return Value(!valueEq(lv, rv));
            case BinOp::Lt: return Value(asInt(lv) < asInt(rv));
            case BinOp::Le: return Value(asInt(lv) <= asInt(rv));
            case BinOp::Gt: return Value(asInt(lv) > asInt(rv));
            case BinOp::Ge: return Value(asInt(lv) >= asInt(rv));
            default: fail(ErrorKind::Internal, "unhandled operator");
        }
    }

    static bool valueEq(const Value& a, const Value& b) {
        if (std::holds_alternative<bool>(a)) return asBool(a) == asBool(b);
        return asInt(a) == asInt(b);
    }

    // Arithmetic wraps instead of overflowing.
    static long long wrapAdd(long long a, long long b) {
        return (long long)((unsigned long long)a + (unsigned long long)b);
    }
    static long long wrapSub(long long a, long long b) {
        return (long long)((unsigned long long)a - (unsigned long long)b);
    }
    static long long wrapMul(long long a, long long b) {
        return (long long)((unsigned long long)a * (unsigned long long)b);
    }
    static long long wrapNeg(long long a) { return (long long)(0ULL - (unsigned long long)a); }
};

inline RunResult runProgram(const Program& prog, const RunInput& input) {
    return Interp(prog).run(input);
}

}  // namespace miniaj
