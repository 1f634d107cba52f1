#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "xpathlog/ast.hpp"
#include "xpathlog/bindings.hpp"
#include "xpathlog/xstructure.hpp"

namespace xpathlog {

struct Limits {
  std::size_t max_iterations = 10000;
  std::size_t max_nodes = 10'000'000;
};

// Rule index within the stratum and the full body assignment it fired with.
using Firing = std::pair<std::size_t, Tuple>;

struct EngineState {
  XStructure structure;
  std::set<Firing> fired;
  std::size_t iteration = 0;
  Limits limits;
};

struct StepResult {
  bool changed = false;
  std::size_t fired = 0;
  std::size_t new_nodes = 0;
  std::vector<std::string> warnings;
};

using TraceSink = std::function<void(const std::string&)>;

// One application of the operator: every new (rule, assignment) of the
// current structure fires, and all heads are inserted as one batch. On
// error the state is left unchanged.
StepResult tx_step(EngineState& st, const std::vector<Rule>& rules);

// Iterates tx_step until nothing fires. Throws DivergenceError when the
// iteration or node limit is reached.
void tx_fixpoint(EngineState& st, const std::vector<Rule>& rules, const TraceSink& trace = {});

// Runs the strata in order, each to fixpoint with a fresh dictionary.
XStructure run_program(XStructure s, const Program& p, const Limits& limits = {}, const TraceSink& trace = {});

}  // namespace xpathlog
