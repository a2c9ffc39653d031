#ifndef QUARKFLOW_DECOMPOSE_HPP
#define QUARKFLOW_DECOMPOSE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "quarkflow/model.hpp"
#include "quarkflow/stencil.hpp"

namespace quarkflow {

/// One atomic stage. Stage inputs are the vertices used but not created
/// here (plus the graph sources, in stage 1); stage outputs are the vertices
/// passed on to later stages (plus the graph sinks, in the last stage).
struct Stage {
  int index = 1;  // 1-based
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
  std::vector<VertexId> shared_in;   // created earlier, still live here
  std::vector<VertexId> shared_out;  // live beyond this stage
  int swept_count = 0;
};

struct Decomposition {
  std::int64_t stage_count = 1;
  std::vector<std::int64_t> create, discard, effective;  // per vertex
  std::vector<Stage> stages;
};

struct InfeasibleAssignmentError : std::runtime_error {
  InfeasibleAssignmentError(const std::string& msg,
                            std::vector<DiffConstraint> v)
      : std::runtime_error(msg), violations(std::move(v)) {}
  std::vector<DiffConstraint> violations;
};

/// Materializes the staged decomposition from a feasible assignment:
/// stage k owns the vertices with create <= k <= discard and the edges whose
/// target is created in k. Every edge lands in exactly one stage.
Decomposition decompose(const ComputationalGraph& graph,
                        const Assignment& assignment);

struct SharingRow {
  VertexId id = 0;
  std::int64_t weight = 1;
  std::int64_t span = 0;          // discard - create
  std::int64_t contribution = 0;  // weight * span
};

struct SharingReport {
  std::vector<SharingRow> rows;  // every vertex, id order
  std::int64_t total = 0;
  std::int64_t stage_count = 1;
  int shared_vertex_count = 0;       // rows with span > 0
  std::int64_t shared_weight = 0;    // sum of weights with span > 0
};

SharingReport sharing_report(const ComputationalGraph& graph,
                             const Decomposition& decomposition);

/// Deterministic DOT rendering: stage colors from a fixed 12-color palette,
/// swept edges at penwidth 3, shared vertices double-circled.
std::string render_dot(const ComputationalGraph& graph,
                       const Decomposition& decomposition);

struct MissingExprMetadataError : std::runtime_error {
  explicit MissingExprMetadataError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Per-stage kernel text: one single-assignment statement per vertex created
/// in the stage, in dependency order. Neighbor reads render as
/// IN(name, i-1); constants print exactly. Concatenating all stages
/// reproduces every non-input vertex exactly once.
std::vector<std::string> emit_stage_kernels(const TracedGraph& traced,
                                            const Decomposition& decomposition);

std::string write_decomposition_json(const Decomposition& decomposition);
Decomposition read_decomposition_json(std::string_view text);

}  // namespace quarkflow

#endif  // QUARKFLOW_DECOMPOSE_HPP
