#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "miniaj/diag.hpp"

namespace miniaj {

enum class Tok {
    End,
    Ident,
    IntLit,
    StrLit,
    // keywords
    KwClass, KwStatic, KwVoid, KwInt, KwBoolean, KwString,
    KwIf, KwElse, KwWhile, KwFor, KwReturn, KwPrint, KwNew,
    KwAspect, KwPointcut, KwBefore, KwAfter, KwReturning, KwCall,
    KwTrue, KwFalse,
    // punctuation and operators
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Semi, Comma, Colon, Dot,
    Assign, Eq, Ne, Lt, Le, Gt, Ge,
    Plus, Minus, Star, Slash, Percent,
    AndAnd, OrOr, Not,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;     // identifier spelling or string literal contents
    long long intValue = 0;
    SourcePos pos;
};

inline const std::unordered_map<std::string_view, Tok>& keywordTable() {
    static const std::unordered_map<std::string_view, Tok> table = {
        {"class", Tok::KwClass},     {"static", Tok::KwStatic},
        {"void", Tok::KwVoid},       {"int", Tok::KwInt},
        {"boolean", Tok::KwBoolean}, {"String", Tok::KwString},
        {"if", Tok::KwIf},           {"else", Tok::KwElse},
        {"while", Tok::KwWhile},     {"for", Tok::KwFor},
        {"return", Tok::KwReturn},   {"print", Tok::KwPrint},
        {"new", Tok::KwNew},         {"aspect", Tok::KwAspect},
        {"pointcut", Tok::KwPointcut}, {"before", Tok::KwBefore},
        {"after", Tok::KwAfter},     {"returning", Tok::KwReturning},
        {"call", Tok::KwCall},       {"true", Tok::KwTrue},
        {"false", Tok::KwFalse},
    };
    return table;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            bool done = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (done) return out;
        }
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') { line_++; col_ = 1; } else { col_++; }
        return c;
    }

    void skipTrivia() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (peek() != '\n' && peek() != '\0') advance();
            } else if (c == '/' && peek(1) == '*') {
                SourcePos open{line_, col_};
                advance(); advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (peek() == '\0') fail(ErrorKind::Lexical, "unterminated comment", open);
                    advance();
                }
                advance(); advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        skipTrivia();
        Token t;
        t.pos = {line_, col_};
        char c = peek();
        if (c == '\0') { t.kind = Tok::End; return t; }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') word += advance();
            auto it = keywordTable().find(word);
            if (it != keywordTable().end()) {
                t.kind = it->second;
            } else {
                t.kind = Tok::Ident;
                t.text = std::move(word);
            }
            return t;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + (advance() - '0');
                if (v > 2147483647LL) fail(ErrorKind::Lexical, "integer literal too large", t.pos);
            }
            t.kind = Tok::IntLit;
            t.intValue = v;
            return t;
        }

        if (c == '"') {
            advance();
            std::string s;
            for (;;) {
                char d = peek();
                if (d == '\0' || d == '\n') fail(ErrorKind::Lexical, "unterminated string literal", t.pos);
                advance();
                if (d == '"') break;
                if (d == '\\') {
                    char e = peek();
                    if (e == '\0') fail(ErrorKind::Lexical, "unterminated string literal", t.pos);
                    advance();
                    switch (e) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '"': s += '"'; break;
                        case '\\': s += '\\'; break;
                        default: fail(ErrorKind::Lexical, std::string("unknown escape \\") + e, t.pos);
                    }
                } else {
                    s += d;
                }
            }
            t.kind = Tok::StrLit;
            t.text = std::move(s);
            return t;
        }

        advance();
        switch (c) {
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case '[': t.kind = Tok::LBracket; return t;
            case ']': t.kind = Tok::RBracket; return t;
            case ';': t.kind = Tok::Semi; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ':': t.kind = Tok::Colon; return t;
            case '.': t.kind = Tok::Dot; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '%': t.kind = Tok::Percent; return t;
            case '=':
                if (peek() == '=') { advance(); t.kind = Tok::Eq; } else { t.kind = Tok::Assign; }
                return t;
            case '!':
                if (peek() == '=') { advance(); t.kind = Tok::Ne; } else { t.kind = Tok::Not; }
                return t;
            case '<':
                if (peek() == '=') { advance(); t.kind = Tok::Le; } else { t.kind = Tok::Lt; }
                return t;
            case '>':
                if (peek() == '=') { advance(); t.kind = Tok::Ge; } else { t.kind = Tok::Gt; }
                return t;
            case '&':
                if (peek() == '&') { advance(); t.kind = Tok::AndAnd; return t; }
                fail(ErrorKind::Lexical, "stray '&', expected '&&'", t.pos);
            case '|':
                if (peek() == '|') { advance(); t.kind = Tok::OrOr; return t; }
                fail(ErrorKind::Lexical, "stray '|', expected '||'", t.pos);
            default:
                fail(ErrorKind::Lexical, std::string("unexpected character '") + c + "'", t.pos);
        }
    }
};

inline const char* tokenName(Tok k) {
    switch (k) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::IntLit: return "integer literal";
        case Tok::StrLit: return "string literal";
        case Tok::KwClass: return "'class'";
        case Tok::KwStatic: return "'static'";
        case Tok::KwVoid: return "'void'";
        case Tok::KwInt: return "'int'";
        case Tok::KwBoolean: return "'boolean'";
        case Tok::KwString: return "'String'";
        case Tok::KwIf: return "'if'";
        case Tok::KwElse: return "'else'";
        case Tok::KwWhile: return "'while'";
        case Tok::KwFor: return "'for'";
        case Tok::KwReturn: return "'return'";
        case Tok::KwPrint: return "'print'";
        case Tok::KwNew: return "'new'";
        case Tok::KwAspect: return "'aspect'";
        case Tok::KwPointcut: return "'pointcut'";
        case Tok::KwBefore: return "'before'";
        case Tok::KwAfter: return "'after'";
        case Tok::KwReturning: return "'returning'";
        case Tok::KwCall: return "'call'";
        case Tok::KwTrue: return "'true'";
        case Tok::KwFalse: return "'false'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Semi: return "';'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::Assign: return "'='";
        case Tok::Eq: return "'=='";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Percent: return "'%'";
        case Tok::AndAnd: return "'&&'";
        case Tok::OrOr: return "'||'";
        case Tok::Not: return "'!'";
    }
    return "token";
}

}  // namespace miniaj
