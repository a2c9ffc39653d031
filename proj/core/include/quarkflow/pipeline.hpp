#ifndef QUARKFLOW_PIPELINE_HPP
#define QUARKFLOW_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "quarkflow/decompose.hpp"
#include "quarkflow/flow.hpp"
#include "quarkflow/verify.hpp"

namespace quarkflow {

/// Full run over one graph: model, dual network, exact solve, assignment,
/// staged decomposition.
struct PipelineResult {
  DecompositionModel model;
  FlowNetwork network;
  FlowSolution solution;
  Assignment assignment;
  Decomposition decomposition;
  std::int64_t objective = 0;  // wk*K + total sharing, equals -solution.objective
  double solve_ms = 0.0;       // model through decomposition, wall clock
};

PipelineResult decompose_graph(const ComputationalGraph& graph,
                               std::int64_t wk);

/// One bundled example by name: heat1d, heat3d, euler3d, manu-a .. manu-f.
/// Traced metadata is present for the three formula-derived examples.
struct ExampleGraph {
  ComputationalGraph graph;
  std::optional<TracedGraph> traced;
};

struct UnknownExampleError : std::runtime_error {
  explicit UnknownExampleError(const std::string& name)
      : std::runtime_error("unknown example \"" + name + "\"") {}
};

ExampleGraph example_graph(const std::string& name);
std::vector<std::string> example_names();

/// Seeded random-graph sweep cross-checking the solver against the
/// brute-force oracle and the structural verifier. Used by the CLI bench
/// and the acceptance suite.
struct CrossCheckResult {
  int total = 0;
  int objective_matches = 0;
  int verified = 0;
  int duality_ok = 0;        // wk*K + sharing == -(flow objective), exact
  int optimality_ok = 0;     // reduced-cost conditions on every arc
  int k_lower_bound_ok = 0;  // K >= swept depth
  std::string first_failure;

  bool all_ok() const {
    return objective_matches == total && verified == total &&
           duality_ok == total && optimality_ok == total &&
           k_lower_bound_ok == total;
  }
};

CrossCheckResult run_oracle_cross_check(std::uint64_t seed_begin,
                                        std::uint64_t seed_end,
                                        std::int64_t wk);

}  // namespace quarkflow

#endif  // QUARKFLOW_PIPELINE_HPP
