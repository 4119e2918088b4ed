#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

// Random well-formed programs for differential testing. Everything here is
// valid by construction and always terminates: loops count a dedicated
// variable up to a small literal bound, divisors are nonzero literals, and
// helpers only call helpers with a larger index, so the call graph is acyclic.
// When an aspect is generated its advice bodies only call helpers past the
// advised one, which keeps advice from re-entering itself.

namespace miniaj::testing {

class ProgramGen {
public:
    explicit ProgramGen(unsigned seed) : rng_(seed) {}

    std::string generate() {
        aspect_ = chance(50);
        int nh = pick(0, 3);
        if (aspect_ && nh == 0) nh = 1;
        for (int i = 0; i < nh; i++) {
            Helper h;
            h.name = "f" + std::to_string(i + 1);
            h.params = pick(0, 2);
            int r = pick(1, 100);
            h.ret = r <= 45 ? "int" : r <= 70 ? "boolean" : "void";
            helpers_.push_back(h);
        }
        if (aspect_) {
            advised_ = pick(0, nh - 1);
            if (helpers_[advised_].ret == "void" && chance(80))
                helpers_[advised_].ret = chance(50) ? "int" : "boolean";
            bool nonVoid = helpers_[advised_].ret != "void";
            int form = pick(1, 100);
            before_ = !nonVoid || form <= 80;
            after_ = nonVoid && form > 40;
        }

        // keep room for every mandatory statement before filling bodies
        reserved_ = 0;
        for (const Helper& h : helpers_)
            if (h.ret != "void") reserved_++;
        if (aspect_) reserved_ += 1 + (before_ ? 1 : 0) + (after_ ? 1 : 0);  // call + bodies

        int headers = 1 + nh + (aspect_ ? 2 + (before_ ? 1 : 0) + (after_ ? 1 : 0) : 0);
        stmts_ = headers;

        out_ << "class p {\n";
        out_ << "    static int g0;\n    static int g1;\n    static int g2;\n";
        emitMain();
        for (int i = 0; i < nh; i++) emitHelper(i);
        out_ << "}\n";
        if (aspect_) emitAspect();
        return out_.str();
    }

private:
    struct Helper {
        std::string name;
        std::string ret;
        int params = 0;
    };

    struct Scope {
        std::vector<std::string> ints;    // readable and writable
        std::vector<std::string> frozen;  // loop counters: readable only
        std::vector<std::string> bools;
        std::vector<std::string> frozenBools;  // advice result: readable only
        int callFrom = 0;   // helpers with index >= callFrom may be called
        bool inMain = false;
        int nextLocal = 0;
    };

    std::mt19937 rng_;
    std::ostringstream out_;
    std::vector<Helper> helpers_;
    bool aspect_ = false, before_ = false, after_ = false;
    int advised_ = -1;
    int stmts_ = 0;
    int reserved_ = 0;

    static constexpr int kMaxStmts = 40;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int pct) { return pick(1, 100) <= pct; }
    template <class T>
    const T& choose(const std::vector<T>& v) {
        return v[pick(0, (int)v.size() - 1)];
    }

    int room() const { return kMaxStmts - stmts_ - reserved_; }

    void line(int depth, const std::string& text, bool counts = true) {
        for (int i = 0; i < depth; i++) out_ << "    ";
        out_ << text << "\n";
        if (counts) stmts_++;
    }

    // ---- expressions ----

    std::string intAtom(const Scope& sc) {
        std::vector<std::string> vars = sc.ints;
        vars.insert(vars.end(), sc.frozen.begin(), sc.frozen.end());
        if (!vars.empty() && chance(65)) return choose(vars);
        return std::to_string(pick(0, 9));
    }

    std::string intExpr(const Scope& sc) {
        int form = pick(1, 100);
        if (form <= 40) return intAtom(sc);
        static const char* ops[] = {" + ", " - ", " * "};
        if (form <= 55) {
            std::vector<std::string> vars = sc.ints;
            vars.insert(vars.end(), sc.frozen.begin(), sc.frozen.end());
            std::string base = vars.empty() ? std::to_string(pick(1, 9)) : choose(vars);
            return base + (chance(50) ? " / " : " % ") + std::to_string(pick(2, 7));
        }
        if (form <= 85) return intAtom(sc) + ops[pick(0, 2)] + intAtom(sc);
        return "(" + intAtom(sc) + ops[pick(0, 2)] + intAtom(sc) + ")" + ops[pick(0, 2)] +
               intAtom(sc);
    }

    std::string cmpExpr(const Scope& sc) {
        static const char* ops[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
        return intAtom(sc) + ops[pick(0, 5)] + intAtom(sc);
    }

    std::string boolExpr(const Scope& sc) {
        int form = pick(1, 100);
        std::vector<std::string> readable = sc.bools;
        readable.insert(readable.end(), sc.frozenBools.begin(), sc.frozenBools.end());
        if (!readable.empty() && form <= 15) return choose(readable);
        if (form <= 70) return cmpExpr(sc);
        if (form <= 85) return cmpExpr(sc) + (chance(50) ? " && " : " || ") + cmpExpr(sc);
        return "!(" + cmpExpr(sc) + ")";
    }

    // ---- statements ----

    std::string freshLocal(Scope& sc) { return "v" + std::to_string(sc.nextLocal++); }

    std::string callText(Scope& sc, int idx) {
        const Helper& h = helpers_[idx];
        std::string args;
        for (int p = 0; p < h.params; p++) {
            if (p) args += ", ";
            args += intExpr(sc);
        }
        return h.name + "(" + args + ")";
    }

    // A call lands as its own statement, as a whole right-hand side, or as a
    // whole if condition, matching the shapes the language permits.
    void emitCall(Scope& sc, int depth) {
        std::vector<int> callable;
        for (int i = sc.callFrom; i < (int)helpers_.size(); i++) callable.push_back(i);
        if (callable.empty()) {
            emitAssign(sc, depth);
            return;
        }
        int idx = choose(callable);
        const Helper& h = helpers_[idx];
        std::string call = callText(sc, idx);
        if (h.ret == "void" || chance(30)) {
            line(depth, call + ";");
        } else if (h.ret == "int") {
            line(depth, choose(sc.ints) + " = " + call + ";");
        } else if (!sc.bools.empty() && chance(40)) {
            line(depth, choose(sc.bools) + " = " + call + ";");
        } else if (room() >= 2) {
            std::string cond = chance(25) ? "!" + call : call;
            line(depth, "if (" + cond + ") {");
            fillScoped(sc, depth + 1, 1);
            line(depth, "}", false);
        } else {
            line(depth, call + ";");
        }
    }

    void emitAssign(Scope& sc, int depth) {
        if (!sc.bools.empty() && chance(20))
            line(depth, choose(sc.bools) + " = " + boolExpr(sc) + ";");
        else
            line(depth, choose(sc.ints) + " = " + intExpr(sc) + ";");
    }

    void emitDecl(Scope& sc, int depth) {
        if (chance(25)) {
            std::string name = freshLocal(sc);
            line(depth, "boolean " + name + " = " + boolExpr(sc) + ";");
            sc.bools.push_back(name);
        } else {
            std::string name = freshLocal(sc);
            line(depth, "int " + name + " = " + intExpr(sc) + ";");
            sc.ints.push_back(name);
        }
    }

    void emitPrint(Scope& sc, int depth) {
        if (chance(30)) {
            std::vector<std::string> vars = sc.ints;
            vars.insert(vars.end(), sc.frozen.begin(), sc.frozen.end());
            std::string v = vars.empty() ? std::to_string(pick(0, 9)) : choose(vars);
            line(depth, "print(\"v:\" + " + v + ");");
        } else {
            line(depth, "print(" + intExpr(sc) + ");");
        }
    }

    // Declarations made inside a branch stay usable only there: a sibling
    // statement would read a variable the branch may never have initialized.
    void fillScoped(Scope& sc, int depth, int count) {
        size_t ints = sc.ints.size(), bools = sc.bools.size();
        fill(sc, depth, count);
        sc.ints.resize(ints);
        sc.bools.resize(bools);
    }

    void emitIf(Scope& sc, int depth) {
        line(depth, "if (" + boolExpr(sc) + ") {");
        fillScoped(sc, depth + 1, pick(1, 2));
        if (room() >= 1 && chance(50)) {
            line(depth, "} else {", false);
            fillScoped(sc, depth + 1, pick(1, 2));
        }
        line(depth, "}", false);
    }

    void emitLoop(Scope& sc, int depth) {
        std::string t = freshLocal(sc);
        int bound = pick(1, 3);
        if (chance(50)) {
            line(depth, "int " + t + " = 0;");
            line(depth, "while (" + t + " < " + std::to_string(bound) + ") {");
            sc.frozen.push_back(t);
            fillScoped(sc, depth + 1, pick(1, 2));
            sc.frozen.pop_back();
            line(depth + 1, t + " = " + t + " + 1;");
            line(depth, "}", false);
        } else {
            line(depth, "for (int " + t + " = 0; " + t + " < " + std::to_string(bound) + "; " +
                            t + " = " + t + " + 1) {");
            sc.frozen.push_back(t);
            fillScoped(sc, depth + 1, pick(1, 2));
            sc.frozen.pop_back();
            line(depth, "}", false);
        }
        sc.ints.push_back(t);  // the counter was initialized at this level
    }

    void emitNew(Scope& sc, int depth) {
        line(depth, "p " + freshLocal(sc) + " = new p();");
    }

    void emitOne(Scope& sc, int depth) {
        int form = pick(1, 100);
        if (form <= 30) {
            emitAssign(sc, depth);
        } else if (form <= 45) {
            emitDecl(sc, depth);
        } else if (form <= 60 && depth <= 2 && room() >= 4) {
            emitIf(sc, depth);
        } else if (form <= 70 && depth <= 2 && room() >= 5) {
            emitLoop(sc, depth);
        } else if (form <= 85) {
            emitCall(sc, depth);
        } else if (form <= 90 && sc.inMain) {
            emitNew(sc, depth);
        } else {
            emitPrint(sc, depth);
        }
    }

    void fill(Scope& sc, int depth, int count) {
        for (int i = 0; i < count; i++) {
            if (room() <= 0 && i > 0) return;
            if (room() <= 0) {
                line(depth, "print(0);");  // blocks must hold at least one statement
                return;
            }
            emitOne(sc, depth);
        }
    }

    void emitMain() {
        Scope sc;
        sc.inMain = true;
        sc.ints = {"g0", "g1", "g2"};
        line(1, "static void main(String[] args) {");
        line(2, "g0 = parseInt(args[0]);");
        if (chance(60)) line(2, "g1 = parseInt(args[1]);");
        if (aspect_) {
            reserved_--;  // the one guaranteed advised call
            const Helper& h = helpers_[advised_];
            std::string call = callText(sc, advised_);
            if (h.ret == "int")
                line(2, "g2 = " + call + ";");
            else
                line(2, call + ";");
        }
        int allowance = pick(2, 7);
        fill(sc, 2, allowance);
        line(1, "}", false);
    }

    void emitHelper(int idx) {
        Helper& h = helpers_[idx];
        Scope sc;
        sc.callFrom = idx + 1;
        std::string params;
        for (int p = 0; p < h.params; p++) {
            if (p) params += ", ";
            std::string name = p == 0 ? "a" : "b";
            params += "int " + name;
            sc.ints.push_back(name);
        }
        std::vector<std::string> globals = {"g0", "g1", "g2"};
        sc.ints.insert(sc.ints.end(), globals.begin(), globals.end());
        line(1, "static " + h.ret + " " + h.name + "(" + params + ") {");
        // an early conditional return leaves other return statements unexecuted
        if (h.ret != "void" && room() >= 2 && chance(40)) {
            line(2, "if (" + boolExpr(sc) + ") {");
            line(3, "return " + (h.ret == "int" ? intExpr(sc) : boolExpr(sc)) + ";");
            line(2, "}", false);
        } else if (h.ret == "void" && room() >= 2 && chance(20)) {
            line(2, "if (" + boolExpr(sc) + ") {");
            line(3, "return;");
            line(2, "}", false);
        }
        int allowance = pick(1, 4);
        fill(sc, 2, allowance);
        if (h.ret == "int") {
            reserved_--;
            line(2, "return " + intExpr(sc) + ";");
        } else if (h.ret == "boolean") {
            reserved_--;
            line(2, "return " + boolExpr(sc) + ";");
        }
        line(1, "}", false);
    }

    void emitAdviceBody(Scope& sc, bool isAfter) {
        int n = room() >= 1 ? pick(1, 2) : 1;
        for (int i = 0; i < n && (i == 0 || room() > 0); i++) {
            reserved_ -= i == 0 ? 1 : 0;
            int form = pick(1, 100);
            if (!sc.ints.empty() && form <= 35) {
                line(2, "g" + std::to_string(pick(0, 2)) + " = " + intAtom(sc) + " + 1;");
            } else if (form <= 55 && advised_ + 1 < (int)helpers_.size() && room() > 0) {
                emitCall(sc, 2);
            } else if (isAfter && !sc.frozenBools.empty() && form <= 70) {
                line(2, "if (w) {");
                line(3, "print(\"set\");");
                line(2, "}", false);
            } else {
                emitPrint(sc, 2);
            }
        }
    }

    void emitAspect() {
        const Helper& h = helpers_[advised_];
        std::string pcParams, pcArgs, callSig;
        for (int p = 0; p < h.params; p++) {
            if (p) {
                pcParams += ", ";
                pcArgs += ", ";
                callSig += ", ";
            }
            pcParams += "int q" + std::to_string(p);
            pcArgs += "q" + std::to_string(p);
            callSig += "int";
        }
        out_ << "aspect obs {\n";
        line(1, "pointcut pc0(" + pcParams + "): call(" + h.ret + " p." + h.name + "(" +
                    callSig + ")) && args(" + pcArgs + ");");
        auto adviceScope = [&] {
            Scope sc;
            sc.callFrom = advised_ + 1;
            for (int p = 0; p < h.params; p++) sc.ints.push_back("q" + std::to_string(p));
            sc.ints.push_back("g0");
            sc.ints.push_back("g1");
            sc.ints.push_back("g2");
            return sc;
        };
        if (before_) {
            line(1, "before(" + pcParams + "): pc0(" + pcArgs + ") {");
            Scope sc = adviceScope();
            emitAdviceBody(sc, false);
            line(1, "}", false);
        }
        if (after_) {
            std::string resTy = h.ret;
            line(1, "after(" + pcParams + ") returning(" + resTy + " w): pc0(" + pcArgs + ") {");
            Scope sc = adviceScope();
            if (resTy == "int")
                sc.frozen.push_back("w");  // readable, never written
            else
                sc.frozenBools.push_back("w");
            emitAdviceBody(sc, true);
            line(1, "}", false);
        }
        out_ << "}\n";
    }
};

inline std::string randomProgram(unsigned seed) { return ProgramGen(seed).generate(); }

// Straight-line dependence chain: each declaration reads the two before it,
// so slice sizes grow linearly down the program.
inline std::string chainProgram(int n) {
    std::ostringstream out;
    out << "class chain {\n    static void main(String[] args) {\n";
    out << "        int x1 = 1;\n        int x2 = 1;\n";
    for (int i = 3; i <= n; i++)
        out << "        int x" << i << " = x" << (i - 1) << " + x" << (i - 2) << ";\n";
    out << "        print(x" << n << ");\n    }\n}\n";
    return out.str();
}

}  // namespace miniaj::testing
