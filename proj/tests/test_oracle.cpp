#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include <miniaj/miniaj.hpp>

#include "support/fixtures.hpp"

using namespace miniaj;
using namespace miniaj::testing;

namespace {

std::vector<TraceEntry> traceOf(const Program& prog, const RunResult& run) {
    std::vector<TraceEntry> out;
    forEachTraceEntry(prog, run.events, [&](const TraceEntry& t) { out.push_back(t); });
    return out;
}

std::string traceString(const std::vector<TraceEntry>& trace) {
    std::string out;
    for (const TraceEntry& t : trace) {
        if (!out.empty()) out += ' ';
        switch (t.kind) {
            case TraceKind::Fire: out += "FI:"; break;
            case TraceKind::PointcutActivated: out += "PA:"; break;
            case TraceKind::MethodEnter: out += "ME:"; break;
            case TraceKind::MethodExit: out += "MX:"; break;
            case TraceKind::AdviceEnter: out += "AE:"; break;
            case TraceKind::AdviceExit: out += "AX:"; break;
            case TraceKind::Statement: out += t.completion ? "SEC:" : "SE:"; break;
        }
        out += std::to_string(t.vertex);
    }
    return out;
}

// Engine and reference must agree on every executed statement.
void agree(const std::string& src, const std::vector<long long>& args) {
    Analysis an = analyze(src);
    RunResult run = an.run(RunInput{args, 1'000'000});
    REQUIRE(run.ok);
    an.engine().processRun(run);
    SliceOracle oracle(an.program());
    oracle.processRun(run);

    for (int v = 1; v <= an.program().statementCount(); v++) {
        INFO("statement " << v);
        REQUIRE(an.engine().executed(v) == oracle.executed(v));
        if (!an.engine().executed(v)) continue;
        std::set<int> mine = an.engine().dslice(v);
        mine.insert(v);
        CHECK(mine == oracle.slice(v));
    }
}

}  // namespace

TEST_CASE("the reference slicer reproduces the golden slice") {
    Analysis an = analyze(primeSource());
    RunResult run = an.run(RunInput{{7}, 1'000'000});
    SliceOracle oracle(an.program());
    oracle.processRun(run);

    CHECK(oracle.slice(16) == primeGolden);
    CHECK(oracle.slice(2) == std::set<int>{1, 2});
    CHECK_FALSE(oracle.executed(9));
    try {
        oracle.slice(9);
        FAIL("sliced an unexecuted statement");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotExecuted);
    }
}

TEST_CASE("engine and reference agree on the worked examples") {
    for (long long arg : {0, 1, 2, 3, 4, 5, 6, 7, 9}) agree(primeSource(), {arg});
    for (long long arg : {0, 1, 3}) agree(tallySource(), {arg});
    for (long long arg : {1, 10}) agree(accountSource(), {arg});
    for (long long arg : {0, 1, 4}) agree(countdownSource(), {arg});
}

TEST_CASE("engine and reference agree without aspects") {
    std::string nested =
        "class p {"
        " static int inner(int a) { return a * 2; }"
        " static int outer(int a) { int t = 0; t = inner(a + 1); return t + 1; }"
        " static void main(String[] args) {"
        " int x = 0; x = parseInt(args[0]); int y = 0; y = outer(x); print(y); } }";
    for (long long arg : {0, 3, 7}) agree(nested, {arg});
}

TEST_CASE("the trace inserts fire and activation at the first boundary") {
    Analysis an = analyze(primeSource());
    RunResult four = an.run(RunInput{{4}, 1'000'000});
    auto trace = traceOf(an.program(), four);

    CHECK(traceString(trace) ==
          "ME:1 SE:2 FI:3 PA:12 AE:13 SE:14 AX:13 ME:6 SE:7 SE:8 SE:9 MX:6 "
          "AE:15 SE:16 AX:15 SEC:3 SE:5 MX:1");

    const TraceEntry& fire = trace.at(2);
    CHECK(fire.site == 3);
    CHECK(fire.callee == 6);
    CHECK(fire.pointcut == 12);
    CHECK(fire.consumes);

    const TraceEntry& afterEnter = trace.at(12);
    CHECK(afterEnter.adviceKind == AdviceKind::AfterReturning);
    CHECK(afterEnter.executedReturn == 9);

    const TraceEntry& completion = trace.at(15);
    CHECK(completion.completion);
    CHECK(completion.consumes);
    CHECK(completion.executedReturn == 9);
    CHECK(completion.callee == 6);
    CHECK(completion.pointcut == 12);
}

TEST_CASE("statement and method-enter entries count the run") {
    Analysis an = analyze(primeSource());
    RunResult seven = an.run(RunInput{{7}, 1'000'000});
    auto trace = traceOf(an.program(), seven);

    int stmtOrEnter = 0;
    for (const TraceEntry& t : trace)
        if (t.kind == TraceKind::Statement || t.kind == TraceKind::MethodEnter) stmtOrEnter++;
    CHECK(stmtOrEnter == 13);
}

TEST_CASE("unadvised sites fire without an activation") {
    Analysis an = analyze(
        "class p { static int f(int a) { return a + 1; }"
        " static void main(String[] args) { int x = 0; x = f(parseInt(args[0])); print(x); } }");
    RunResult run = an.run(RunInput{{5}, 1'000'000});
    auto trace = traceOf(an.program(), run);

    bool sawFire = false;
    for (size_t i = 0; i < trace.size(); i++) {
        if (trace[i].kind == TraceKind::PointcutActivated) FAIL("activation without a pointcut");
        if (trace[i].kind == TraceKind::Fire) {
            sawFire = true;
            CHECK(trace[i].pointcut == 0);
            REQUIRE(i + 1 < trace.size());
            CHECK(trace[i + 1].kind == TraceKind::MethodEnter);
        }
    }
    CHECK(sawFire);
}

TEST_CASE("recursive instances nest properly") {
    Analysis an = analyze(countdownSource());
    RunResult run = an.run(RunInput{{2}, 1'000'000});
    auto trace = traceOf(an.program(), run);

    int depth = 0, maxDepth = 0, completions = 0;
    for (const TraceEntry& t : trace) {
        if (t.kind == TraceKind::Fire) {
            depth++;
            maxDepth = std::max(maxDepth, depth);
        }
        if (t.kind == TraceKind::Statement && t.completion) {
            depth--;
            completions++;
        }
    }
    CHECK(depth == 0);
    CHECK(maxDepth == 3);   // sum(2) -> sum(1) -> sum(0)
    CHECK(completions == 3);
}
