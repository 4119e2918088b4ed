#pragma once

#include <memory>

#include "miniaj/aosg.hpp"
#include "miniaj/cfg.hpp"
#include "miniaj/interp.hpp"
#include "miniaj/parser.hpp"
#include "miniaj/sema.hpp"
#include "miniaj/slicer.hpp"

namespace miniaj {

inline Program buildProgram(const std::string& source) {
    SourceUnit unit = parseSource(source);
    SymbolTable syms = checkSource(unit);
    Program prog = buildModel(std::move(unit), std::move(syms));
    analyzeControlFlow(prog);
    return prog;
}

// Owns the program, its dependence graph, and a slicing engine wired to both.
// Heap members keep the engine's references stable across moves.
class Analysis {
public:
    explicit Analysis(const std::string& source)
        : prog_(std::make_unique<Program>(buildProgram(source))),
          graph_(std::make_unique<Aosg>(buildAosg(*prog_))),
          engine_(std::make_unique<SliceEngine>(*prog_, *graph_)) {}

    const Program& program() const { return *prog_; }
    const Aosg& graph() const { return *graph_; }
    SliceEngine& engine() { return *engine_; }
    const SliceEngine& engine() const { return *engine_; }

    RunResult run(const RunInput& input) const { return runProgram(*prog_, input); }

    // One shot: execute, then feed the whole event stream through the engine.
    RunResult runAndSlice(const RunInput& input) {
        RunResult r = run(input);
        engine_->processRun(r);
        return r;
    }

private:
    std::unique_ptr<Program> prog_;
    std::unique_ptr<Aosg> graph_;
    std::unique_ptr<SliceEngine> engine_;
};

inline Analysis analyze(const std::string& source) { return Analysis(source); }

}  // namespace miniaj
