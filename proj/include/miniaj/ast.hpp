#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "miniaj/diag.hpp"

namespace miniaj {

enum class Type { Int, Bool, Void, Str, Object };

struct TypeRef {
    Type base = Type::Void;
    std::string className;  // set when base == Object

    bool operator==(const TypeRef& o) const {
        return base == o.base && (base != Type::Object || className == o.className);
    }
};

inline TypeRef intType() { return {Type::Int, {}}; }
inline TypeRef boolType() { return {Type::Bool, {}}; }
inline TypeRef voidType() { return {Type::Void, {}}; }

inline std::string typeName(const TypeRef& t) {
    switch (t.base) {
        case Type::Int: return "int";
        case Type::Bool: return "boolean";
        case Type::Void: return "void";
        case Type::Str: return "String";
        case Type::Object: return t.className;
    }
    return "?";
}

// ---- expressions ----

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class UnOp { Not, Neg };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

struct IntLit { long long value = 0; };
struct BoolLit { bool value = false; };
struct StrLit { std::string value; };          // print arguments only
struct VarRef { std::string name; int sym = -1; };
struct ArgRead { std::string arrayName; int index = 0; int sym = -1; };  // parseInt(args[K])
struct Unary { UnOp op; ExprPtr operand; };
struct Binary { BinOp op; ExprPtr lhs, rhs; };
// Calls may only appear as a whole statement, a whole assignment rhs, or a whole
// if condition (optionally negated). The parser enforces the placement.
struct CallExpr { std::string callee; std::vector<ExprPtr> args; int method = 0; };

struct Expr {
    std::variant<IntLit, BoolLit, StrLit, VarRef, ArgRead, Unary, Binary, CallExpr> node;
    SourcePos pos;
    TypeRef type;  // filled by the checker

    template <class T> T* as() { return std::get_if<T>(&node); }
    template <class T> const T* as() const { return std::get_if<T>(&node); }
};

inline ExprPtr makeExpr(SourcePos pos, auto&& node) {
    auto e = std::make_unique<Expr>();
    e->pos = pos;
    e->node = std::forward<decltype(node)>(node);
    return e;
}

// ---- statements ----

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct VarDeclStmt { TypeRef declType; std::string name; int sym = -1; ExprPtr init; };
struct AssignStmt { std::string name; int sym = -1; ExprPtr value; };
struct NewStmt { std::string className; std::string name; int sym = -1; };  // C x = new C();
struct IfStmt { ExprPtr cond; Block thenBody; Block elseBody; };
struct WhileStmt { ExprPtr cond; Block body; };
struct ForStmt {
    // Header is a single numbered statement: init, condition and update together.
    bool declares = false;
    TypeRef declType;
    std::string var; int varSym = -1; ExprPtr init;
    ExprPtr cond;
    std::string updateVar; int updateSym = -1; ExprPtr update;
    Block body;
};
struct ReturnStmt { ExprPtr value; };  // null in void methods
struct PrintStmt { ExprPtr arg; };
struct CallStmt { ExprPtr call; };     // bare call, result discarded

struct Stmt {
    std::variant<VarDeclStmt, AssignStmt, NewStmt, IfStmt, WhileStmt, ForStmt,
                 ReturnStmt, PrintStmt, CallStmt> node;
    int no = 0;  // statement number, assigned in source order
    SourcePos pos;

    template <class T> T* as() { return std::get_if<T>(&node); }
    template <class T> const T* as() const { return std::get_if<T>(&node); }
};

// ---- declarations ----

struct Param { TypeRef type; std::string name; int sym = -1; SourcePos pos; };

struct MethodDecl {
    TypeRef ret;
    std::string name;
    std::vector<Param> params;
    Block body;
    int no = 0;
    bool isMain = false;
    std::string argsName;  // main's String[] parameter
    int argsSym = -1;
    std::string className;
    SourcePos pos;
};

struct FieldDecl { TypeRef type; std::string name; int sym = -1; SourcePos pos; };

struct ClassDecl {
    std::string name;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    SourcePos pos;
};

struct PointcutTarget {
    TypeRef ret;
    std::string className;
    std::string methodName;
    std::vector<TypeRef> paramTypes;
};

struct PointcutDecl {
    std::string name;
    std::vector<Param> params;
    PointcutTarget target;
    std::vector<std::string> argNames;  // args(...) binding, positional
    int no = 0;
    int targetMethod = 0;  // entry statement of the designated method
    SourcePos pos;
};

enum class AdviceKind { Before, AfterReturning };

struct AdviceDecl {
    AdviceKind kind = AdviceKind::Before;
    std::vector<Param> params;
    Param result;               // after-returning only
    std::string pointcutName;
    std::vector<std::string> pointcutArgs;
    Block body;
    int no = 0;
    int pointcut = 0;           // resolved pointcut statement number
    SourcePos pos;
};

struct AspectDecl {
    std::string name;
    std::vector<PointcutDecl> pointcuts;
    std::vector<AdviceDecl> advices;
    int no = 0;
    SourcePos pos;
};

struct SourceUnit {
    std::vector<ClassDecl> classes;
    std::vector<AspectDecl> aspects;
};

// ---- single-line rendering, used for listings and graph labels ----

inline std::string renderExpr(const Expr& e);

inline std::string renderBinOp(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
    }
    return "?";
}

inline int binOpRank(BinOp op) {
    switch (op) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq: case BinOp::Ne: return 3;
        case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 4;
        case BinOp::Add: case BinOp::Sub: return 5;
        default: return 6;
    }
}

inline std::string renderOperand(const Expr& e, int parentRank, bool rightSide) {
    std::string s = renderExpr(e);
    if (const Binary* b = e.as<Binary>()) {
        int r = binOpRank(b->op);
        if (r < parentRank || (r == parentRank && rightSide)) return "(" + s + ")";
    }
    return s;
}

inline std::string renderExpr(const Expr& e) {
    struct V {
        const Expr& e;
        std::string operator()(const IntLit& n) const { return std::to_string(n.value); }
        std::string operator()(const BoolLit& n) const { return n.value ? "true" : "false"; }
        std::string operator()(const StrLit& n) const {
            std::string out = "\"";
            for (char c : n.value) {
                switch (c) {
                    case '"': out += "\\\""; break;
                    case '\\': out += "\\\\"; break;
                    case '\n': out += "\\n"; break;
                    case '\t': out += "\\t"; break;
                    default: out += c;
                }
            }
            return out + "\"";
        }
        std::string operator()(const VarRef& n) const { return n.name; }
        std::string operator()(const ArgRead& n) const {
            return "parseInt(" + n.arrayName + "[" + std::to_string(n.index) + "])";
        }
        std::string operator()(const Unary& n) const {
            std::string inner = renderExpr(*n.operand);
            if (n.operand->as<Binary>()) inner = "(" + inner + ")";
            return (n.op == UnOp::Not ? "!" : "-") + inner;
        }
        std::string operator()(const Binary& n) const {
            int r = binOpRank(n.op);
            return renderOperand(*n.lhs, r, false) + " " + renderBinOp(n.op) + " " +
                   renderOperand(*n.rhs, r, true);
        }
        std::string operator()(const CallExpr& n) const {
            std::string out = n.callee + "(";
            for (size_t i = 0; i < n.args.size(); i++) {
                if (i) out += ", ";
                out += renderExpr(*n.args[i]);
            }
            return out + ")";
        }
    };
    return std::visit(V{e}, e.node);
}

inline std::string renderParams(const std::vector<Param>& ps) {
    std::string out;
    for (size_t i = 0; i < ps.size(); i++) {
        if (i) out += ", ";
        out += typeName(ps[i].type) + " " + ps[i].name;
    }
    return out;
}

// Header text of a compound statement, or the whole statement for simple ones.
inline std::string renderStmt(const Stmt& s) {
    struct V {
        std::string operator()(const VarDeclStmt& n) const {
            return typeName(n.declType) + " " + n.name + " = " + renderExpr(*n.init) + ";";
        }
        std::string operator()(const AssignStmt& n) const {
            return n.name + " = " + renderExpr(*n.value) + ";";
        }
        std::string operator()(const NewStmt& n) const {
            return n.className + " " + n.name + " = new " + n.className + "();";
        }
        std::string operator()(const IfStmt& n) const {
            return "if (" + renderExpr(*n.cond) + ")";
        }
        std::string operator()(const WhileStmt& n) const {
            return "while (" + renderExpr(*n.cond) + ")";
        }
        std::string operator()(const ForStmt& n) const {
            std::string init = n.declares ? typeName(n.declType) + " " : "";
            init += n.var + " = " + renderExpr(*n.init);
            return "for (" + init + "; " + renderExpr(*n.cond) + "; " + n.updateVar + " = " +
                   renderExpr(*n.update) + ")";
        }
        std::string operator()(const ReturnStmt& n) const {
            return n.value ? "return " + renderExpr(*n.value) + ";" : "return;";
        }
        std::string operator()(const PrintStmt& n) const {
            return "print(" + renderExpr(*n.arg) + ");";
        }
        std::string operator()(const CallStmt& n) const { return renderExpr(*n.call) + ";"; }
    };
    return std::visit(V{}, s.node);
}

}  // namespace miniaj
