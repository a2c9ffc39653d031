#include <chrono>

#include "quarkflow/pipeline.hpp"

namespace quarkflow {

PipelineResult decompose_graph(const ComputationalGraph& graph,
                               std::int64_t wk) {
  const auto start = std::chrono::steady_clock::now();
  PipelineResult result;
  result.model = build_model(graph, wk);
  result.network = build_network(result.model);
  result.solution = solve_mcnf(result.network);
  result.assignment = extract_assignment(result.network, result.solution);
  result.decomposition = decompose(graph, result.assignment);
  result.objective = objective_value(result.model, result.assignment);
  const auto end = std::chrono::steady_clock::now();
  result.solve_ms =
      std::chrono::duration<double, std::milli>(end - start).count();
  return result;
}

std::vector<std::string> example_names() {
  return {"heat1d", "heat3d", "euler3d", "manu-a", "manu-b",
          "manu-c", "manu-d", "manu-e", "manu-f"};
}

ExampleGraph example_graph(const std::string& name) {
  ExampleGraph ex;
  if (name == "heat1d") {
    ex.traced = gen_heat1d_midpoint();
  } else if (name == "heat3d") {
    ex.traced = gen_heat3d_midpoint();
  } else if (name == "euler3d") {
    ex.traced = gen_euler3d_rk4();
  } else if (name.size() == 6 && name.rfind("manu-", 0) == 0 &&
             name[5] >= 'a' && name[5] <= 'f') {
    ex.graph = manufactured_case(name[5]);
    return ex;
  } else {
    throw UnknownExampleError(name);
  }
  ex.graph = ex.traced->graph;
  return ex;
}

CrossCheckResult run_oracle_cross_check(std::uint64_t seed_begin,
                                        std::uint64_t seed_end,
                                        std::int64_t wk) {
  CrossCheckResult result;
  for (std::uint64_t seed = seed_begin; seed < seed_end; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const double edge_prob = 0.30 + 0.15 * static_cast<double>(seed % 3);
    const double swept_prob = 0.25 + 0.15 * static_cast<double>(seed % 4);
    ComputationalGraph graph = random_graph(seed, n, edge_prob, swept_prob);
    ++result.total;
    auto note = [&](const std::string& what) {
      if (result.first_failure.empty())
        result.first_failure = "seed " + std::to_string(seed) + ": " + what;
    };
    try {
      PipelineResult run = decompose_graph(graph, wk);
      OracleResult oracle = brute_force_optimum(graph, wk);
      if (run.objective == oracle.objective)
        ++result.objective_matches;
      else
        note("solver objective " + std::to_string(run.objective) +
             " != oracle " + std::to_string(oracle.objective));
      if (verify(graph, run.decomposition).overall)
        ++result.verified;
      else
        note("verifier rejected the decomposition");
      if (run.objective == -run.solution.objective)
        ++result.duality_ok;
      else
        note("duality gap");
      if (check_optimality(run.network, run.solution).empty())
        ++result.optimality_ok;
      else
        note(check_optimality(run.network, run.solution));
      if (run.assignment.stage_count >= swept_depth(graph))
        ++result.k_lower_bound_ok;
      else
        note("K below swept depth");
    } catch (const std::exception& err) {
      note(err.what());
    }
  }
  return result;
}

}  // namespace quarkflow
