#pragma once

#include <string>
#include <vector>

#include "miniaj/ast.hpp"
#include "miniaj/lexer.hpp"

namespace miniaj {

// Recursive descent parser. Statement numbers are assigned in source order as
// declarations and statements are consumed: method, aspect, pointcut and advice
// headers count, as does every body statement. Class headers, field
// declarations, `else` and braces do not.
//
// Calls are only accepted in three positions, each spanning the whole
// construct: a bare call statement, the right-hand side of an assignment, and
// an if condition (optionally under a single `!`).
class Parser {
public:
    explicit Parser(std::string_view src) : toks_(Lexer(src).tokenize()) {}

    SourceUnit parseUnit() {
        SourceUnit unit;
        while (!at(Tok::End)) {
            if (at(Tok::KwClass)) {
                unit.classes.push_back(parseClass());
            } else if (at(Tok::KwAspect)) {
                unit.aspects.push_back(parseAspect());
            } else {
                fail(ErrorKind::Syntax, std::string("expected 'class' or 'aspect', found ") +
                                            tokenName(cur().kind), cur().pos);
            }
        }
        if (unit.classes.empty())
            fail(ErrorKind::Syntax, "a program needs at least one class");
        return unit;
    }

    int statementCount() const { return nextNo_ - 1; }

private:
    std::vector<Token> toks_;
    size_t idx_ = 0;
    int nextNo_ = 1;

    const Token& cur() const { return toks_[idx_]; }
    const Token& peek(size_t ahead) const {
        size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return cur().kind == k; }

    Token eat(Tok k) {
        if (!at(k))
            fail(ErrorKind::Syntax, std::string("expected ") + tokenName(k) + ", found " +
                                        tokenName(cur().kind), cur().pos);
        return toks_[idx_++];
    }

    bool accept(Tok k) {
        if (!at(k)) return false;
        idx_++;
        return true;
    }

    int number() { return nextNo_++; }

    // ---- declarations ----

    ClassDecl parseClass() {
        ClassDecl cls;
        cls.pos = eat(Tok::KwClass).pos;
        cls.name = eat(Tok::Ident).text;
        eat(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
            SourcePos mpos = eat(Tok::KwStatic).pos;
            TypeRef type = parseReturnType();
            Token name = eat(Tok::Ident);
            if (at(Tok::LParen)) {
                cls.methods.push_back(parseMethodRest(type, name.text, cls.name, mpos));
            } else {
                if (type.base != Type::Int && type.base != Type::Bool)
                    fail(ErrorKind::Syntax, "fields must be int or boolean", mpos);
                eat(Tok::Semi);
                cls.fields.push_back(FieldDecl{type, name.text, -1, name.pos});
            }
        }
        return cls;
    }

    TypeRef parseReturnType() {
        if (accept(Tok::KwVoid)) return voidType();
        return parseValueType();
    }

    TypeRef parseValueType() {
        if (accept(Tok::KwInt)) return intType();
        if (accept(Tok::KwBoolean)) return boolType();
        fail(ErrorKind::Syntax, std::string("expected a type, found ") + tokenName(cur().kind),
             cur().pos);
    }

    MethodDecl parseMethodRest(TypeRef ret, std::string name, const std::string& className,
                               SourcePos pos) {
        MethodDecl m;
        m.ret = ret;
        m.name = std::move(name);
        m.className = className;
        m.pos = pos;
        m.no = number();  // the header is a numbered statement
        eat(Tok::LParen);
        if (!at(Tok::RParen)) {
            do {
                if (at(Tok::KwString)) {
                    // String[] args, accepted syntactically for any method;
                    // the checker restricts it to main.
                    eat(Tok::KwString);
                    eat(Tok::LBracket);
                    eat(Tok::RBracket);
                    Token n = eat(Tok::Ident);
                    if (!m.argsName.empty())
                        fail(ErrorKind::Syntax, "at most one String[] parameter", n.pos);
                    m.argsName = n.text;
                } else {
                    TypeRef t = parseValueType();
                    Token n = eat(Tok::Ident);
                    m.params.push_back(Param{t, n.text, -1, n.pos});
                }
            } while (accept(Tok::Comma));
        }
        eat(Tok::RParen);
        m.body = parseBlock();
        return m;
    }

    AspectDecl parseAspect() {
        AspectDecl a;
        a.pos = eat(Tok::KwAspect).pos;
        a.name = eat(Tok::Ident).text;
        a.no = number();
        eat(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
            if (at(Tok::KwPointcut)) {
                a.pointcuts.push_back(parsePointcut());
            } else if (at(Tok::KwBefore) || at(Tok::KwAfter)) {
                a.advices.push_back(parseAdvice());
            } else {
                fail(ErrorKind::Syntax,
                     std::string("expected 'pointcut', 'before' or 'after', found ") +
                         tokenName(cur().kind), cur().pos);
            }
        }
        return a;
    }

    std::vector<Param> parseParamList() {
        std::vector<Param> ps;
        eat(Tok::LParen);
        if (!at(Tok::RParen)) {
            do {
                TypeRef t = parseValueType();
                Token n = eat(Tok::Ident);
                ps.push_back(Param{t, n.text, -1, n.pos});
            } while (accept(Tok::Comma));
        }
        eat(Tok::RParen);
        return ps;
    }

    std::vector<std::string> parseNameList() {
        std::vector<std::string> names;
        eat(Tok::LParen);
        if (!at(Tok::RParen)) {
            do names.push_back(eat(Tok::Ident).text);
            while (accept(Tok::Comma));
        }
        eat(Tok::RParen);
        return names;
    }

    PointcutDecl parsePointcut() {
        PointcutDecl pc;
        pc.pos = eat(Tok::KwPointcut).pos;
        pc.no = number();
        pc.name = eat(Tok::Ident).text;
        pc.params = parseParamList();
        eat(Tok::Colon);
        eat(Tok::KwCall);
        eat(Tok::LParen);
        pc.target.ret = parseReturnType();
        pc.target.className = eat(Tok::Ident).text;
        eat(Tok::Dot);
        pc.target.methodName = eat(Tok::Ident).text;
        eat(Tok::LParen);
        if (!at(Tok::RParen)) {
            do pc.target.paramTypes.push_back(parseValueType());
            while (accept(Tok::Comma));
        }
        eat(Tok::RParen);
        eat(Tok::RParen);
        eat(Tok::AndAnd);
        Token argsKw = eat(Tok::Ident);
        if (argsKw.text != "args")
            fail(ErrorKind::Syntax, "expected 'args' after '&&'", argsKw.pos);
        pc.argNames = parseNameList();
        eat(Tok::Semi);
        return pc;
    }

    AdviceDecl parseAdvice() {
        AdviceDecl adv;
        if (at(Tok::KwBefore)) {
            adv.pos = eat(Tok::KwBefore).pos;
            adv.kind = AdviceKind::Before;
            adv.no = number();
            adv.params = parseParamList();
        } else {
            adv.pos = eat(Tok::KwAfter).pos;
            adv.kind = AdviceKind::AfterReturning;
            adv.no = number();
            adv.params = parseParamList();
            eat(Tok::KwReturning);
            eat(Tok::LParen);
            TypeRef t = parseValueType();
            Token n = eat(Tok::Ident);
            adv.result = Param{t, n.text, -1, n.pos};
            eat(Tok::RParen);
        }
        eat(Tok::Colon);
        adv.pointcutName = eat(Tok::Ident).text;
        adv.pointcutArgs = parseNameList();
        adv.body = parseBlock();
        if (adv.body.empty())
            fail(ErrorKind::Syntax, "advice body must not be empty", adv.pos);
        return adv;
    }

    // ---- statements ----

    Block parseBlock() {
        Block b;
        eat(Tok::LBrace);
        while (!accept(Tok::RBrace)) b.push_back(parseStmt());
        return b;
    }

    Block parseBody(const char* what) {
        // Either a braced block or a single statement.
        if (at(Tok::LBrace)) {
            Block b = parseBlock();
            if (b.empty())
                fail(ErrorKind::Syntax, std::string(what) + " must not be empty", cur().pos);
            return b;
        }
        Block b;
        b.push_back(parseStmt());
        return b;
    }

    StmtPtr finishStmt(SourcePos pos, int no, auto&& node) {
        auto s = std::make_unique<Stmt>();
        s->pos = pos;
        s->no = no;
        s->node = std::forward<decltype(node)>(node);
        return s;
    }

    StmtPtr parseStmt() {
        SourcePos pos = cur().pos;
        switch (cur().kind) {
            case Tok::KwInt:
            case Tok::KwBoolean: {
                int no = number();
                VarDeclStmt d;
                d.declType = parseValueType();
                d.name = eat(Tok::Ident).text;
                eat(Tok::Assign);
                d.init = parseExpr();
                eat(Tok::Semi);
                return finishStmt(pos, no, std::move(d));
            }
            case Tok::KwIf: return parseIf();
            case Tok::KwWhile: return parseWhile();
            case Tok::KwFor: return parseFor();
            case Tok::KwReturn: {
                int no = number();
                eat(Tok::KwReturn);
                ReturnStmt r;
                if (!at(Tok::Semi)) r.value = parseExpr();
                eat(Tok::Semi);
                return finishStmt(pos, no, std::move(r));
            }
            case Tok::KwPrint: {
                int no = number();
                eat(Tok::KwPrint);
                eat(Tok::LParen);
                PrintStmt p;
                p.arg = parseExpr(/*allowStrings=*/true);
                eat(Tok::RParen);
                eat(Tok::Semi);
                return finishStmt(pos, no, std::move(p));
            }
            case Tok::Ident: {
                if (peek(1).kind == Tok::Ident) {
                    // ClassName var = new ClassName();
                    int no = number();
                    NewStmt n;
                    n.className = eat(Tok::Ident).text;
                    n.name = eat(Tok::Ident).text;
                    eat(Tok::Assign);
                    eat(Tok::KwNew);
                    Token cls = eat(Tok::Ident);
                    if (cls.text != n.className)
                        fail(ErrorKind::Syntax, "object type and new expression disagree", cls.pos);
                    eat(Tok::LParen);
                    eat(Tok::RParen);
                    eat(Tok::Semi);
                    return finishStmt(pos, no, std::move(n));
                }
                if (peek(1).kind == Tok::LParen && cur().text != "parseInt") {
                    int no = number();
                    CallStmt c;
                    c.call = parseCallExpr();
                    eat(Tok::Semi);
                    return finishStmt(pos, no, std::move(c));
                }
                if (peek(1).kind == Tok::Assign) {
                    int no = number();
                    AssignStmt a;
                    a.name = eat(Tok::Ident).text;
                    eat(Tok::Assign);
                    a.value = isCallAhead() ? parseCallExpr() : parseExpr();
                    eat(Tok::Semi);
                    return finishStmt(pos, no, std::move(a));
                }
                fail(ErrorKind::Syntax, "expected a statement", pos);
            }
            default:
                fail(ErrorKind::Syntax, std::string("expected a statement, found ") +
                                            tokenName(cur().kind), pos);
        }
    }

    StmtPtr parseIf() {
        SourcePos pos = cur().pos;
        int no = number();
        eat(Tok::KwIf);
        eat(Tok::LParen);
        IfStmt node;
        node.cond = parseCondition();
        eat(Tok::RParen);
        node.thenBody = parseBody("if branch");
        if (accept(Tok::KwElse)) node.elseBody = parseBody("else branch");
        return finishStmt(pos, no, std::move(node));
    }

    StmtPtr parseWhile() {
        SourcePos pos = cur().pos;
        int no = number();
        eat(Tok::KwWhile);
        eat(Tok::LParen);
        WhileStmt node;
        requireNoCallAhead("a while condition");
        node.cond = parseExpr();
        eat(Tok::RParen);
        node.body = parseBody("loop body");
        return finishStmt(pos, no, std::move(node));
    }

    StmtPtr parseFor() {
        SourcePos pos = cur().pos;
        int no = number();
        eat(Tok::KwFor);
        eat(Tok::LParen);
        ForStmt node;
        if (at(Tok::KwInt) || at(Tok::KwBoolean)) {
            node.declares = true;
            node.declType = parseValueType();
        }
        node.var = eat(Tok::Ident).text;
        eat(Tok::Assign);
        requireNoCallAhead("a for header");
        node.init = parseExpr();
        eat(Tok::Semi);
        requireNoCallAhead("a for header");
        node.cond = parseExpr();
        eat(Tok::Semi);
        node.updateVar = eat(Tok::Ident).text;
        eat(Tok::Assign);
        requireNoCallAhead("a for header");
        node.update = parseExpr();
        eat(Tok::RParen);
        node.body = parseBody("loop body");
        return finishStmt(pos, no, std::move(node));
    }

    // ---- expressions ----

    bool isCallAhead() const {
        return at(Tok::Ident) && peek(1).kind == Tok::LParen && cur().text != "parseInt";
    }

    void requireNoCallAhead(const char* where) {
        if (isCallAhead())
            fail(ErrorKind::Syntax, std::string("calls are not allowed in ") + where, cur().pos);
    }

    ExprPtr parseCondition() {
        // `if (f(x))` and `if (!f(x))` take a call as the whole condition.
        if (isCallAhead()) return parseWholeCall(nullptr);
        if (at(Tok::Not) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::LParen &&
            peek(1).text != "parseInt") {
            Token bang = eat(Tok::Not);
            return parseWholeCall(&bang);
        }
        return parseExpr();
    }

    ExprPtr parseWholeCall(const Token* bang) {
        ExprPtr call = parseCallExpr();
        if (!at(Tok::RParen))
            fail(ErrorKind::Syntax, "a call must be the whole condition", cur().pos);
        if (!bang) return call;
        Unary u{UnOp::Not, std::move(call)};
        return makeExpr(bang->pos, std::move(u));
    }

    ExprPtr parseCallExpr() {
        Token name = eat(Tok::Ident);
        CallExpr c;
        c.callee = name.text;
        eat(Tok::LParen);
        if (!at(Tok::RParen)) {
            do {
                requireNoCallAhead("call arguments");
                c.args.push_back(parseExpr());
            } while (accept(Tok::Comma));
        }
        eat(Tok::RParen);
        return makeExpr(name.pos, std::move(c));
    }

    ExprPtr parseExpr(bool allowStrings = false) { return parseOr(allowStrings); }

    ExprPtr parseBinaryChain(auto&& next, auto&& opFor) {
        ExprPtr lhs = next();
        for (;;) {
            SourcePos pos = cur().pos;
            BinOp op;
            if (!opFor(cur().kind, op)) return lhs;
            idx_++;
            Binary b{op, std::move(lhs), next()};
            lhs = makeExpr(pos, std::move(b));
        }
    }

    ExprPtr parseOr(bool allowStrings) {
        return parseBinaryChain([&] { return parseAnd(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    if (t != Tok::OrOr) return false;
                                    op = BinOp::Or;
                                    return true;
                                });
    }

    ExprPtr parseAnd(bool allowStrings) {
        return parseBinaryChain([&] { return parseEquality(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    if (t != Tok::AndAnd) return false;
                                    op = BinOp::And;
                                    return true;
                                });
    }

    ExprPtr parseEquality(bool allowStrings) {
        return parseBinaryChain([&] { return parseRelational(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    if (t == Tok::Eq) op = BinOp::Eq;
                                    else if (t == Tok::Ne) op = BinOp::Ne;
                                    else return false;
                                    return true;
                                });
    }

    ExprPtr parseRelational(bool allowStrings) {
        return parseBinaryChain([&] { return parseAdditive(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    switch (t) {
                                        case Tok::Lt: op = BinOp::Lt; return true;
                                        case Tok::Le: op = BinOp::Le; return true;
                                        case Tok::Gt: op = BinOp::Gt; return true;
                                        case Tok::Ge: op = BinOp::Ge; return true;
                                        default: return false;
                                    }
                                });
    }

    ExprPtr parseAdditive(bool allowStrings) {
        return parseBinaryChain([&] { return parseMultiplicative(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    if (t == Tok::Plus) op = BinOp::Add;
                                    else if (t == Tok::Minus) op = BinOp::Sub;
                                    else return false;
                                    return true;
                                });
    }

    ExprPtr parseMultiplicative(bool allowStrings) {
        return parseBinaryChain([&] { return parseUnary(allowStrings); },
                                [](Tok t, BinOp& op) {
                                    switch (t) {
                                        case Tok::Star: op = BinOp::Mul; return true;
                                        case Tok::Slash: op = BinOp::Div; return true;
                                        case Tok::Percent: op = BinOp::Mod; return true;
                                        default: return false;
                                    }
                                });
    }

    ExprPtr parseUnary(bool allowStrings) {
        SourcePos pos = cur().pos;
        if (accept(Tok::Not)) {
            Unary u{UnOp::Not, parseUnary(allowStrings)};
            return makeExpr(pos, std::move(u));
        }
        if (accept(Tok::Minus)) {
            Unary u{UnOp::Neg, parseUnary(allowStrings)};
            return makeExpr(pos, std::move(u));
        }
        return parsePrimary(allowStrings);
    }

    ExprPtr parsePrimary(bool allowStrings) {
        SourcePos pos = cur().pos;
        switch (cur().kind) {
            case Tok::IntLit: {
                Token t = eat(Tok::IntLit);
                return makeExpr(pos, IntLit{t.intValue});
            }
            case Tok::KwTrue:
                idx_++;
                return makeExpr(pos, BoolLit{true});
            case Tok::KwFalse:
                idx_++;
                return makeExpr(pos, BoolLit{false});
            case Tok::StrLit: {
                if (!allowStrings)
                    fail(ErrorKind::Syntax, "string literals may only appear in print", pos);
                Token t = eat(Tok::StrLit);
                return makeExpr(pos, StrLit{t.text});
            }
            case Tok::LParen: {
                eat(Tok::LParen);
                ExprPtr e = parseExpr(allowStrings);
                eat(Tok::RParen);
                return e;
            }
            case Tok::Ident: {
                if (cur().text == "parseInt" && peek(1).kind == Tok::LParen)
                    return parseArgRead();
                if (peek(1).kind == Tok::LParen)
                    fail(ErrorKind::Syntax, "calls cannot appear inside expressions", pos);
                Token t = eat(Tok::Ident);
                return makeExpr(pos, VarRef{t.text, -1});
            }
            default:
                fail(ErrorKind::Syntax, std::string("expected an expression, found ") +
                                            tokenName(cur().kind), pos);
        }
    }

    ExprPtr parseArgRead() {
        SourcePos pos = eat(Tok::Ident).pos;  // parseInt
        eat(Tok::LParen);
        ArgRead a;
        a.arrayName = eat(Tok::Ident).text;
        eat(Tok::LBracket);
        Token idx = eat(Tok::IntLit);
        a.index = static_cast<int>(idx.intValue);
        eat(Tok::RBracket);
        eat(Tok::RParen);
        return makeExpr(pos, std::move(a));
    }
};

inline SourceUnit parseSource(std::string_view src) { return Parser(src).parseUnit(); }

}  // namespace miniaj
