#include "xpathlog/fixpoint.hpp"

#include "xpathlog/errors.hpp"
#include "xpathlog/eval.hpp"
#include "xpathlog/update.hpp"

namespace xpathlog {

StepResult tx_step(EngineState& st, const std::vector<Rule>& rules) {
  StepResult r;
  std::vector<std::pair<std::size_t, Tuple>> firings;
  {
    Evaluator ev(st.structure);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      BindingSet b = rules[i].body.empty() ? BindingSet::truth() : ev.answers(rules[i].body);
      for (const auto& t : b) {
        if (!st.fired.count({i, t})) firings.emplace_back(i, t);
      }
    }
  }
  if (firings.empty()) return r;

  XStructure next = st.structure;
  std::size_t before = next.node_count();
  std::vector<GroundAtom> batch;
  for (const auto& [i, beta] : firings) {
    InsertionPlan plan = instantiate_head(st.structure, rules[i].head, beta);
    auto atoms = realize(next, plan);
    std::move(atoms.begin(), atoms.end(), std::back_inserter(batch));
    if (next.node_count() > st.limits.max_nodes) {
      throw DivergenceError("node limit " + std::to_string(st.limits.max_nodes) + " exceeded at iteration " +
                            std::to_string(st.iteration + 1));
    }
  }
  ExtendReport rep = extend(next, batch);

  st.structure = std::move(next);
  for (auto& f : firings) st.fired.insert(std::move(f));
  ++st.iteration;
  r.changed = true;
  r.fired = firings.size();
  r.new_nodes = st.structure.node_count() - before;
  r.warnings = std::move(rep.warnings);
  return r;
}

void tx_fixpoint(EngineState& st, const std::vector<Rule>& rules, const TraceSink& trace) {
  for (std::size_t n = 0;; ++n) {
    if (n >= st.limits.max_iterations) {
      throw DivergenceError("no fixpoint after " + std::to_string(n) + " iterations");
    }
    StepResult r = tx_step(st, rules);
    if (trace) {
      for (const auto& w : r.warnings) trace("warning: " + w);
      trace("iter=" + std::to_string(n + 1) + " fired=" + std::to_string(r.fired) +
            " new_nodes=" + std::to_string(r.new_nodes));
    }
    if (!r.changed) return;
  }
}

XStructure run_program(XStructure s, const Program& p, const Limits& limits, const TraceSink& trace) {
  EngineState st;
  st.structure = std::move(s);
  st.limits = limits;
  for (const auto& stratum : p.strata) {
    st.fired.clear();
    st.iteration = 0;
    tx_fixpoint(st, stratum, trace);
  }
  return std::move(st.structure);
}

}  // namespace xpathlog
