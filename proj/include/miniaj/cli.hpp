#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "miniaj/export.hpp"
#include "miniaj/pipeline.hpp"

namespace miniaj {

namespace detail {

inline std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const char* errorKindSlug(ErrorKind k) {
    switch (k) {
        case ErrorKind::Lexical: return "lexical";
        case ErrorKind::Syntax: return "syntax";
        case ErrorKind::Semantic: return "semantic";
        case ErrorKind::Input: return "input";
        case ErrorKind::Runtime: return "runtime";
        case ErrorKind::Criterion: return "criterion";
        case ErrorKind::NotExecuted: return "not-executed";
        case ErrorKind::Internal: return "internal";
    }
    return "error";
}

inline const char* stmtClassName(StmtClass c) {
    switch (c) {
        case StmtClass::MethodHeader: return "method";
        case StmtClass::AdviceHeader: return "advice";
        case StmtClass::AspectHeader: return "aspect";
        case StmtClass::PointcutHeader: return "pointcut";
        case StmtClass::Body: return "body";
    }
    return "?";
}

inline std::string runErrorText(const RunResult& r) {
    std::string out;
    if (r.errorStmt > 0) out += "statement " + std::to_string(r.errorStmt) + ": ";
    out += errorKindName(r.errorKind);
    out += ": ";
    out += r.errorMessage;
    return out;
}

// --budget beats the environment, the environment beats the default.
inline long long resolveBudget(long long flagValue) {
    if (flagValue > 0) return flagValue;
    if (const char* s = std::getenv("MAJSLICE_STEP_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return RunInput{}.stepBudget;
}

inline std::string joinSlice(const std::set<int>& s) {
    std::string out;
    for (int v : s) {
        if (!out.empty()) out += " ";
        out += std::to_string(v);
    }
    return out;
}

}  // namespace detail

// The whole command-line surface, callable in-process. Arguments come in
// program order, without the binary name. Exit status: 0 on success (for
// slice: at least one criterion answered), 1 on user-level errors, 2 on
// internal ones.
inline int cliMain(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dynamic slicing for aspect-oriented MiniAJ programs"};
    app.set_version_flag("--version", "majslice 1.0.0");
    app.require_subcommand(1);

    std::string pFile;
    bool pJson = false;
    CLI::App* parseCmd =
        app.add_subcommand("parse", "check a program and list its numbered statements");
    parseCmd->add_option("file", pFile, "program source file")->required();
    parseCmd->add_flag("--json", pJson, "emit the listing as JSON");

    std::string gFile, gFormat = "json";
    CLI::App* graphCmd = app.add_subcommand("graph", "export the static dependence graph");
    graphCmd->add_option("file", gFile, "program source file")->required();
    graphCmd->add_option("--format", gFormat, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));

    std::string rFile, rTrace;
    std::vector<long long> rArgs;
    long long rBudget = 0;
    CLI::App* runCmd = app.add_subcommand("run", "execute a program");
    runCmd->add_option("file", rFile, "program source file")->required();
    runCmd->add_option("--args", rArgs, "integer program arguments")->expected(-1);
    runCmd->add_option("--trace-out", rTrace, "write the event trace as JSON lines");
    runCmd->add_option("--budget", rBudget, "statement step budget");

    std::string sFile, sFormat = "text";
    std::vector<long long> sArgs;
    std::vector<int> sAts;
    std::vector<std::string> sVars;
    long long sBudget = 0;
    CLI::App* sliceCmd = app.add_subcommand("slice", "execute and answer slicing criteria");
    sliceCmd->add_option("file", sFile, "program source file")->required();
    sliceCmd->add_option("--args", sArgs, "integer program arguments")->expected(-1);
    sliceCmd->add_option("--at", sAts, "criterion statement number (repeatable)")->required();
    sliceCmd->add_option("--var", sVars, "criterion variable name (repeatable)")->required();
    sliceCmd->add_option("--format", sFormat, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sliceCmd->add_option("--budget", sBudget, "statement step budget");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (parseCmd->parsed()) {
            Program prog = buildProgram(detail::readFile(pFile));
            if (pJson) {
                Json doc;
                doc["statements"] = prog.statementCount();
                Json list = Json::array();
                for (int no = 1; no <= prog.statementCount(); no++) {
                    Json row;
                    row["no"] = no;
                    row["class"] = detail::stmtClassName(prog.stmts[no].cls);
                    row["text"] = prog.stmts[no].text;
                    list.push_back(std::move(row));
                }
                doc["list"] = std::move(list);
                out << doc.dump(2) << "\n";
            } else {
                for (int no = 1; no <= prog.statementCount(); no++)
                    out << no << "\t" << prog.stmts[no].text << "\n";
            }
            return 0;
        }

        if (graphCmd->parsed()) {
            Analysis an = analyze(detail::readFile(gFile));
            if (gFormat == "dot")
                out << graphDot(an.graph());
            else
                out << graphJson(an.graph()).dump(2) << "\n";
            return 0;
        }

        if (runCmd->parsed()) {
            Analysis an = analyze(detail::readFile(rFile));
            RunInput in;
            in.args = rArgs;
            in.stepBudget = detail::resolveBudget(rBudget);
            RunResult r = an.run(in);
            for (const std::string& line : r.output) out << line << "\n";
            if (!rTrace.empty()) {
                std::ofstream f(rTrace, std::ios::binary);
                if (!f) fail(ErrorKind::Input, "cannot write " + rTrace);
                for (const Event& e : r.events) f << eventJson(e).dump() << "\n";
            }
            if (!r.ok) {
                err << detail::runErrorText(r) << "\n";
                return r.errorKind == ErrorKind::Internal ? 2 : 1;
            }
            return 0;
        }

        if (sliceCmd->parsed()) {
            if (sAts.size() != sVars.size())
                fail(ErrorKind::Input, "each --at needs a matching --var");
            Analysis an = analyze(detail::readFile(sFile));
            RunInput in;
            in.args = sArgs;
            in.stepBudget = detail::resolveBudget(sBudget);
            RunResult r = an.runAndSlice(in);
            if (!r.ok) {
                err << detail::runErrorText(r) << "\n";
                return r.errorKind == ErrorKind::Internal ? 2 : 1;
            }
            const SliceEngine& eng = an.engine();

            struct Row {
                int at;
                std::string var;
                bool ok = false;
                std::set<int> slice;
                ErrorKind ekind = ErrorKind::Criterion;
                std::string etext, emsg;
            };
            std::vector<Row> rows;
            std::set<int> unionSlice;
            int answered = 0;
            for (size_t i = 0; i < sAts.size(); i++) {
                Row row;
                row.at = sAts[i];
                row.var = sVars[i];
                try {
                    row.slice = eng.slice(row.at, row.var);
                    row.ok = true;
                    answered++;
                    unionSlice.insert(row.slice.begin(), row.slice.end());
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::Internal) throw;
                    row.ekind = e.kind();
                    row.etext = e.format();
                    row.emsg = e.what();
                }
                rows.push_back(std::move(row));
            }

            if (sFormat == "json") {
                Json doc;
                doc["input"]["args"] = sArgs;
                Json crits = Json::array();
                for (const Row& row : rows) {
                    Json c;
                    c["at"] = row.at;
                    c["var"] = row.var;
                    if (row.ok) {
                        c["slice"] = row.slice;
                    } else {
                        c["error"]["kind"] = detail::errorKindSlug(row.ekind);
                        c["error"]["message"] = row.emsg;
                    }
                    crits.push_back(std::move(c));
                }
                doc["criteria"] = std::move(crits);
                doc["union"] = unionSlice;
                Json ex = Json::array();
                for (int no = 1; no <= an.program().statementCount(); no++)
                    if (eng.executed(no)) ex.push_back(no);
                doc["executed"] = std::move(ex);
                out << doc.dump(2) << "\n";
            } else {
                for (const Row& row : rows) {
                    if (row.ok)
                        out << "<" << row.at << "," << row.var
                            << ">: " << detail::joinSlice(row.slice) << "\n";
                    else
                        err << row.etext << "\n";
                }
                if (rows.size() > 1 && answered > 0)
                    out << "union: " << detail::joinSlice(unionSlice) << "\n";
            }
            return answered > 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        err << e.format() << "\n";
        return e.kind() == ErrorKind::Internal ? 2 : 1;
    }
    return 0;
}

inline int cliMain(int argc, char** argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    return cliMain(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace miniaj
