#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace miniaj {

struct SourcePos {
    int line = 0;   // 1-based; 0 means "no position"
    int col = 0;
};

enum class ErrorKind {
    Lexical,
    Syntax,
    Semantic,
    Input,        // bad program arguments or CLI-level input
    Runtime,      // raised while executing the subject program
    Criterion,    // malformed slicing criterion
    NotExecuted,  // criterion statement did not run for this input
    Internal,
};

inline const char* errorKindName(ErrorKind k) {
    switch (k) {
        case ErrorKind::Lexical: return "lexical error";
        case ErrorKind::Syntax: return "syntax error";
        case ErrorKind::Semantic: return "semantic error";
        case ErrorKind::Input: return "input error";
        case ErrorKind::Runtime: return "runtime error";
        case ErrorKind::Criterion: return "criterion error";
        case ErrorKind::NotExecuted: return "criterion error";
        case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, SourcePos pos = {}, int stmt = 0)
        : std::runtime_error(std::move(message)), kind_(kind), pos_(pos), stmt_(stmt) {}

    ErrorKind kind() const { return kind_; }
    SourcePos pos() const { return pos_; }
    int stmt() const { return stmt_; }

    // "line 3:7: syntax error: ..." or "statement 12: runtime error: ..."
    std::string format() const {
        std::string out;
        if (pos_.line > 0) {
            out += "line " + std::to_string(pos_.line) + ":" + std::to_string(pos_.col) + ": ";
        } else if (stmt_ > 0) {
            out += "statement " + std::to_string(stmt_) + ": ";
        }
        out += errorKindName(kind_);
        out += ": ";
        out += what();
        return out;
    }

private:
    ErrorKind kind_;
    SourcePos pos_;
    int stmt_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, SourcePos pos = {}, int stmt = 0) {
    throw Error(kind, std::move(message), pos, stmt);
}

// Invariant violations inside the engine itself, never user-facing input problems.
inline void require(bool cond, const char* what) {
    if (!cond) throw Error(ErrorKind::Internal, what);
}

}  // namespace miniaj
