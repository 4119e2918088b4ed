#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <miniaj/miniaj.hpp>

#include "support/fixtures.hpp"

using namespace miniaj;
using namespace miniaj::testing;

namespace {

std::vector<std::string> names(const Program& p, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int id : ids) out.push_back(p.syms.at(id).name);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("def and use sets") {
    auto prog = makeProgram(primeSource());

    CHECK(names(prog, prog.stmt(2).defs) == std::vector<std::string>{"n"});
    CHECK(names(prog, prog.stmt(2).uses) == std::vector<std::string>{"args"});
    CHECK(prog.stmt(3).defs.empty());
    CHECK(names(prog, prog.stmt(3).uses) == std::vector<std::string>{"n"});
    CHECK(prog.stmt(4).uses.empty());
    CHECK(names(prog, prog.stmt(7).defs) == std::vector<std::string>{"i"});
    CHECK(names(prog, prog.stmt(7).uses) == std::vector<std::string>{"i", "n"});
    CHECK(names(prog, prog.stmt(8).uses) == std::vector<std::string>{"i", "n"});
    CHECK(prog.stmt(9).uses.empty());
    CHECK(prog.stmt(10).uses.empty());
    CHECK(names(prog, prog.stmt(14).uses) == std::vector<std::string>{"n"});
    CHECK(names(prog, prog.stmt(16).uses) == std::vector<std::string>{"n"});
}

TEST_CASE("the global n and the formal n are distinct symbols") {
    auto prog = makeProgram(primeSource());
    int globalN = prog.stmt(3).uses.at(0);
    int formalN = prog.methods.at(6).formals.at(0);

    CHECK(prog.syms.at(globalN).name == "n");
    CHECK(prog.syms.at(formalN).name == "n");
    CHECK(globalN != formalN);
    CHECK(prog.stmt(8).uses != prog.stmt(3).uses);
    CHECK(sorted(prog.stmt(7).uses) != sorted(prog.stmt(3).uses));
}

TEST_CASE("owners") {
    auto prog = makeProgram(primeSource());
    for (int s : {2, 3, 4, 5}) CHECK(prog.stmt(s).owner == 1);
    for (int s : {7, 8, 9, 10}) CHECK(prog.stmt(s).owner == 6);
    CHECK(prog.stmt(12).owner == 11);
    CHECK(prog.stmt(14).owner == 13);
    CHECK(prog.stmt(16).owner == 15);
}

TEST_CASE("control parents") {
    auto prog = makeProgram(primeSource());
    std::map<int, int> want{{2, 1}, {3, 1}, {4, 3},   {5, 3},   {7, 6},
                            {8, 7}, {9, 8}, {10, 8},  {14, 13}, {16, 15}};
    for (auto [no, parent] : want) {
        INFO("statement " << no);
        CHECK(prog.stmt(no).parent == parent);
    }
}

TEST_CASE("standard and iteration-order control flow") {
    auto prog = makeProgram(primeSource());
    const Cfg& mainCfg = prog.cfgs.at(1);
    const Cfg& primeCfg = prog.cfgs.at(6);

    CHECK(mainCfg.succ.at(1) == std::vector<int>{2});
    CHECK(sorted(mainCfg.succ.at(3)) == std::vector<int>{4, 5});
    CHECK(mainCfg.succ.at(4) == std::vector<int>{Cfg::ExitNode});
    CHECK(mainCfg.succ.at(5) == std::vector<int>{Cfg::ExitNode});

    // The loop closes 8 -> 7 in the standard graph; the iteration-order graph
    // replaces the back edge with the statement after the loop.
    CHECK(sorted(primeCfg.succ.at(7)) == std::vector<int>{8, 10});
    CHECK(sorted(primeCfg.succ.at(8)) == std::vector<int>{7, 9});
    CHECK(sorted(primeCfg.iterSucc.at(7)) == std::vector<int>{8, 10});
    CHECK(sorted(primeCfg.iterSucc.at(8)) == std::vector<int>{9, 10});
    CHECK(primeCfg.succ.at(9) == std::vector<int>{Cfg::ExitNode});
    CHECK(primeCfg.succ.at(10) == std::vector<int>{Cfg::ExitNode});
}

TEST_CASE("while loops close to the header") {
    auto prog = makeProgram(tallySource());
    REQUIRE(prog.statementCount() == 13);
    const Cfg& mainCfg = prog.cfgs.at(1);

    CHECK(sorted(mainCfg.succ.at(4)) == std::vector<int>{5, 7});
    CHECK(mainCfg.succ.at(6) == std::vector<int>{4});
    CHECK(mainCfg.iterSucc.at(6) == std::vector<int>{7});
    CHECK(prog.stmt(5).parent == 4);
    CHECK(prog.stmt(6).parent == 4);
    CHECK(prog.stmt(7).parent == 1);
}

TEST_CASE("call sites") {
    auto prog = makeProgram(primeSource());
    CHECK(prog.callSites == std::vector<int>{3});

    const StatementInfo& site = prog.stmt(3);
    REQUIRE(site.hasCall);
    CHECK(site.call.callee == 6);
    CHECK(site.call.consumes);
    CHECK(site.call.pointcut == 12);
    REQUIRE(site.call.argUses.size() == 1);
    CHECK(names(prog, site.call.argUses[0]) == std::vector<std::string>{"n"});
}

TEST_CASE("a discarded or void result is not consumed") {
    auto prog = makeProgram(tallySource());
    CHECK(prog.callSites == std::vector<int>{5});
    CHECK_FALSE(prog.stmt(5).call.consumes);
    CHECK(prog.stmt(5).call.pointcut == 11);
    CHECK(prog.pointcuts.at(11).before == 12);
    CHECK(prog.pointcuts.at(11).after == 0);
}

TEST_CASE("method and advice tables") {
    auto prog = makeProgram(primeSource());
    const MethodInfo& isprime = prog.methods.at(6);

    CHECK(isprime.returns == std::vector<int>{9, 10});
    CHECK(isprime.bodyStmts == std::vector<int>{7, 8, 9, 10});
    CHECK(isprime.formals.size() == 1);
    CHECK(prog.methods.at(1).bodyStmts == std::vector<int>{2, 3, 4, 5});
    CHECK(prog.advices.at(13).lastStmt == 14);
    CHECK(prog.advices.at(15).lastStmt == 16);
    CHECK(prog.advices.at(15).params.size() == 1);
}

TEST_CASE("object creation and multiple returns") {
    auto prog = makeProgram(accountSource());
    REQUIRE(prog.statementCount() == 17);

    CHECK(prog.stmt(2).text == "account a = new account();");
    CHECK(names(prog, prog.stmt(2).defs) == std::vector<std::string>{"a"});
    CHECK(prog.stmt(2).uses.empty());
    CHECK(prog.methods.at(8).returns == std::vector<int>{10, 11});
    // The then branch returns, so the trailing return can be bypassed and
    // hangs under the if rather than the entry.
    CHECK(prog.stmt(10).parent == 9);
    CHECK(prog.stmt(11).parent == 9);
    CHECK(prog.stmt(6).call.consumes);
    CHECK(prog.stmt(6).call.pointcut == 13);
}

TEST_CASE("recursive call sites") {
    auto prog = makeProgram(countdownSource());
    REQUIRE(prog.statementCount() == 16);

    CHECK(prog.callSites == std::vector<int>{4, 11});
    CHECK(prog.stmt(4).call.callee == 6);
    CHECK(prog.stmt(11).call.callee == 6);
    CHECK(prog.stmt(4).call.pointcut == 14);
    CHECK(prog.stmt(11).call.pointcut == 14);
    CHECK(names(prog, prog.stmt(11).call.argUses[0]) == std::vector<std::string>{"n"});
    CHECK(prog.methods.at(6).returns == std::vector<int>{8, 12});
}
