#ifndef QUARKFLOW_VERIFY_HPP
#define QUARKFLOW_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quarkflow/decompose.hpp"
#include "quarkflow/graph.hpp"
#include "quarkflow/model.hpp"

namespace quarkflow {

struct CriterionResult {
  bool pass = true;
  std::string witness;  // first failure found, empty when passing
};

/// Independent check of a (possibly untrusted) decomposition against the
/// three structural criteria. Works purely from the stage lists; never
/// trusts the create/discard/effective labels.
struct VerificationReport {
  CriterionResult edge_partition;  // every edge in exactly one stage
  CriterionResult chaining;        // stage inputs come from the previous stage
  CriterionResult atomicity;       // no stage path with two swept edges
  bool overall = false;

  std::string to_json() const;
};

VerificationReport verify(const ComputationalGraph& graph,
                          const Decomposition& decomposition);

/// A stage's subgraph re-indexed to dense ids, with the original vertex ids
/// kept for reporting.
struct StageSubgraph {
  ComputationalGraph graph;
  std::vector<VertexId> original;
};

StageSubgraph stage_subgraph(const ComputationalGraph& graph,
                             const Stage& stage);

/// The per-vertex path labels of the atomicity DP (max swept edges over
/// incoming paths). A stage is atomic iff every label is 0 or 1.
std::vector<int> atomic_labels(const ComputationalGraph& stage_subgraph);

struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OracleLimits {
  int max_vertices = 8;
  int extra_stages = 1;  // search stage counts depth .. depth + extra
};

struct OracleResult {
  std::int64_t objective = 0;
  Assignment assignment;
};

/// Exhaustive optimum of the decomposition program for small graphs.
/// Enumerates creating stages in topological order (pruned by the edge
/// ordering constraints and source pinning), derives the minimal discarding
/// stages, and keeps candidates admitting a feasible effective labeling.
/// Independent of the flow solver by construction.
OracleResult brute_force_optimum(const ComputationalGraph& graph,
                                 std::int64_t wk, OracleLimits limits = {});

/// Deterministic random DAG: edges only run from lower to higher ids, at
/// least one edge (an id-order chain is substituted if none were drawn),
/// weights in 1..3. Same seed, same graph.
ComputationalGraph random_graph(std::uint64_t seed, int n_vertices,
                                double edge_prob, double swept_prob);

}  // namespace quarkflow

#endif  // QUARKFLOW_VERIFY_HPP
