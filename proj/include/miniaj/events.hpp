#pragma once

#include <string>
#include <vector>

#include "miniaj/model.hpp"

namespace miniaj {

enum class EventKind {
    StatementExecuted,
    MethodEntered,
    MethodExited,
    AdviceEntered,
    AdviceExited,
    ObjectCreated,
};

inline const char* eventKindName(EventKind k) {
    switch (k) {
        case EventKind::StatementExecuted: return "StatementExecuted";
        case EventKind::MethodEntered: return "MethodEntered";
        case EventKind::MethodExited: return "MethodExited";
        case EventKind::AdviceEntered: return "AdviceEntered";
        case EventKind::AdviceExited: return "AdviceExited";
        case EventKind::ObjectCreated: return "ObjectCreated";
    }
    return "?";
}

struct Event {
    EventKind kind = EventKind::StatementExecuted;
    int seq = 0;
    int stmt = 0;        // StatementExecuted / ObjectCreated
    int method = 0;      // MethodEntered / MethodExited
    int advice = 0;      // AdviceEntered / AdviceExited
    AdviceKind adviceKind = AdviceKind::Before;
    int site = 0;        // the call statement; 0 for the main invocation
    int pointcut = 0;
    int returnStmt = 0;  // MethodExited: the executed return, 0 in void methods
    std::string className;  // ObjectCreated
};

struct RunResult {
    std::vector<Event> events;
    std::vector<std::string> output;
    std::vector<long long> args;
    long long steps = 0;
    bool ok = true;
    ErrorKind errorKind = ErrorKind::Runtime;
    std::string errorMessage;
    int errorStmt = 0;

    std::vector<bool> executedStmts(int stmtCount) const {
        std::vector<bool> ex(stmtCount + 1, false);
        for (const Event& e : events) {
            switch (e.kind) {
                case EventKind::StatementExecuted: ex[e.stmt] = true; break;
                case EventKind::MethodEntered: ex[e.method] = true; break;
                case EventKind::AdviceEntered: ex[e.advice] = true; break;
                default: break;
            }
        }
        return ex;
    }
};

// ---- the join point trace ----
//
// The raw event stream only reports boundaries. The trace inserts the two
// derived steps the dependence machinery needs, both pinned to the first
// boundary event of a call instance: the fire step of the call site (its
// argument values are consumed there) and the activation of the advising
// pointcut. Entries are properly nested, so one stack recovers the instances,
// recursion included.

enum class TraceKind {
    Fire,
    PointcutActivated,
    MethodEnter,
    MethodExit,
    AdviceEnter,
    AdviceExit,
    Statement,
};

struct TraceEntry {
    TraceKind kind = TraceKind::Statement;
    int vertex = 0;        // site, pointcut, method entry, advice entry, or statement
    int site = 0;
    int callee = 0;
    int pointcut = 0;
    AdviceKind adviceKind = AdviceKind::Before;
    bool completion = false;   // Statement entry that completes a call instance
    bool consumes = false;
    int executedReturn = 0;    // MethodExit, after-advice enter, completion
    int seq = 0;               // seq of the driving event
};

namespace detail {

enum class Phase { InBefore, BeforeDone, InMethod, MethodDone, InAfter, AfterDone };

struct InstanceCtx {
    int site = 0;
    int callee = 0;
    int pointcut = 0;
    bool consumes = false;
    int executedReturn = 0;
    Phase phase = Phase::InBefore;
};

}  // namespace detail

template <class Fn>
void forEachTraceEntry(const Program& prog, const std::vector<Event>& events, Fn&& fn) {
    std::vector<detail::InstanceCtx> stack;

    auto startInstance = [&](int site, int seq) {
        const CallInfo& call = prog.stmts[site].call;
        detail::InstanceCtx ctx;
        ctx.site = site;
        ctx.callee = call.callee;
        ctx.pointcut = call.pointcut;
        ctx.consumes = call.consumes;
        stack.push_back(ctx);
        TraceEntry fire;
        fire.kind = TraceKind::Fire;
        fire.vertex = site;
        fire.site = site;
        fire.callee = ctx.callee;
        fire.pointcut = ctx.pointcut;
        fire.consumes = ctx.consumes;
        fire.seq = seq;
        fn(fire);
        if (ctx.pointcut) {
            TraceEntry act;
            act.kind = TraceKind::PointcutActivated;
            act.vertex = ctx.pointcut;
            act.site = site;
            act.callee = ctx.callee;
            act.pointcut = ctx.pointcut;
            act.seq = seq;
            fn(act);
        }
    };

    for (const Event& ev : events) {
        switch (ev.kind) {
            case EventKind::MethodEntered: {
                TraceEntry t;
                t.kind = TraceKind::MethodEnter;
                t.vertex = ev.method;
                t.site = ev.site;
                t.seq = ev.seq;
                if (ev.site != 0) {
                    bool joined = !stack.empty() && stack.back().site == ev.site &&
                                  stack.back().phase == detail::Phase::BeforeDone;
                    if (!joined) startInstance(ev.site, ev.seq);
                    stack.back().phase = detail::Phase::InMethod;
                    t.callee = stack.back().callee;
                    t.pointcut = stack.back().pointcut;
                    t.consumes = stack.back().consumes;
                }
                fn(t);
                break;
            }
            case EventKind::MethodExited: {
                TraceEntry t;
                t.kind = TraceKind::MethodExit;
                t.vertex = ev.method;
                t.site = ev.site;
                t.executedReturn = ev.returnStmt;
                t.seq = ev.seq;
                if (ev.site != 0 && !stack.empty()) {
                    stack.back().phase = detail::Phase::MethodDone;
                    stack.back().executedReturn = ev.returnStmt;
                    t.callee = stack.back().callee;
                    t.pointcut = stack.back().pointcut;
                    t.consumes = stack.back().consumes;
                }
                fn(t);
                break;
            }
            case EventKind::AdviceEntered: {
                if (ev.adviceKind == AdviceKind::Before) {
                    startInstance(ev.site, ev.seq);
                    stack.back().phase = detail::Phase::InBefore;
                } else if (!stack.empty()) {
                    stack.back().phase = detail::Phase::InAfter;
                }
                TraceEntry t;
                t.kind = TraceKind::AdviceEnter;
                t.vertex = ev.advice;
                t.site = ev.site;
                t.pointcut = ev.pointcut;
                t.adviceKind = ev.adviceKind;
                t.seq = ev.seq;
                if (!stack.empty()) {
                    t.callee = stack.back().callee;
                    t.executedReturn = stack.back().executedReturn;
                }
                fn(t);
                break;
            }
            case EventKind::AdviceExited: {
                if (!stack.empty()) {
                    stack.back().phase = ev.adviceKind == AdviceKind::Before
                                             ? detail::Phase::BeforeDone
                                             : detail::Phase::AfterDone;
                }
                TraceEntry t;
                t.kind = TraceKind::AdviceExit;
                t.vertex = ev.advice;
                t.site = ev.site;
                t.pointcut = ev.pointcut;
                t.adviceKind = ev.adviceKind;
                t.seq = ev.seq;
                if (!stack.empty()) t.callee = stack.back().callee;
                fn(t);
                break;
            }
            case EventKind::StatementExecuted: {
                TraceEntry t;
                t.kind = TraceKind::Statement;
                t.vertex = ev.stmt;
                t.seq = ev.seq;
                if (!stack.empty() && stack.back().site == ev.stmt &&
                    (stack.back().phase == detail::Phase::MethodDone ||
                     stack.back().phase == detail::Phase::AfterDone)) {
                    const detail::InstanceCtx& ctx = stack.back();
                    t.completion = true;
                    t.site = ctx.site;
                    t.callee = ctx.callee;
                    t.pointcut = ctx.pointcut;
                    t.consumes = ctx.consumes;
                    t.executedReturn = ctx.executedReturn;
                    stack.pop_back();
                }
                fn(t);
                break;
            }
            case EventKind::ObjectCreated:
                break;  // the paired StatementExecuted drives the dependence step
        }
    }
}

inline std::vector<TraceEntry> buildTrace(const Program& prog, const std::vector<Event>& events) {
    std::vector<TraceEntry> out;
    forEachTraceEntry(prog, events, [&](const TraceEntry& t) { out.push_back(t); });
    return out;
}

}  // namespace miniaj
