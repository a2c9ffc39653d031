#ifndef QUARKFLOW_GRAPH_HPP
#define QUARKFLOW_GRAPH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quarkflow {

/// Dense vertex ids, 0..|V|-1, assigned in creation order.
using VertexId = int;

struct Vertex {
  VertexId id = 0;
  std::int64_t weight = 1;  // storage units per grid point, >= 1
  std::string label;        // advisory only
};

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  bool swept = false;  // dependency on a neighboring grid point
};

/// Weighted DAG of intermediate values in one update formula. Immutable by
/// convention once built; all operations below are pure.
struct ComputationalGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int swept_count() const {
    int n = 0;
    for (const Edge& e : edges) n += e.swept ? 1 : 0;
    return n;
  }
};

bool operator==(const Vertex& a, const Vertex& b);
bool operator==(const Edge& a, const Edge& b);
bool operator==(const ComputationalGraph& a, const ComputationalGraph& b);

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CycleError : GraphError {
  CycleError(const std::string& msg, std::vector<VertexId> cycle_vertices)
      : GraphError(msg), cycle(std::move(cycle_vertices)) {}
  std::vector<VertexId> cycle;
};

struct ParseError : std::runtime_error {
  ParseError(int line_number, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
        line(line_number),
        message(msg) {}
  int line;
  std::string message;
};

struct SchemaError : std::runtime_error {
  SchemaError(std::string field_name, const std::string& msg)
      : std::runtime_error(msg + " (field: " + field_name + ")"),
        field(std::move(field_name)) {}
  std::string field;
};

struct ValidationReport {
  bool empty_graph = false;
  std::vector<VertexId> bad_ids;          // ids not dense 0..n-1 / duplicated
  std::vector<VertexId> bad_weights;      // weight < 1
  std::vector<std::pair<VertexId, VertexId>> duplicate_edges;
  std::vector<VertexId> self_loops;
  std::vector<std::pair<VertexId, VertexId>> bad_endpoints;  // edge refs unknown id
  std::vector<VertexId> cycle;            // one witness cycle if not acyclic
  std::vector<VertexId> isolated;         // informational, not an error
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;

  bool ok() const {
    return !empty_graph && bad_ids.empty() && bad_weights.empty() &&
           duplicate_edges.empty() && self_loops.empty() &&
           bad_endpoints.empty() && cycle.empty();
  }
  std::string first_error() const;
};

/// Checks every structural invariant; never throws. Sources/sinks/isolated
/// are filled in even for graphs that fail other checks, when meaningful.
ValidationReport validate(const ComputationalGraph& graph);

/// Throws GraphError / CycleError with the report's first problem.
void require_valid(const ComputationalGraph& graph);

/// Deterministic topological order, ties broken by ascending vertex id.
/// Throws CycleError when no order exists.
std::vector<VertexId> topological_order(const ComputationalGraph& graph);

/// Maximum number of swept edges on any directed path. Lower bound on the
/// achievable stage count.
int swept_depth(const ComputationalGraph& graph);

/// Per-vertex maximum swept-edge count over incoming paths (the label DP that
/// swept_depth maximizes over). Exposed for atomicity checks.
std::vector<int> swept_path_labels(const ComputationalGraph& graph);

ComputationalGraph read_graph_json(std::string_view text);
std::string write_graph_json(const ComputationalGraph& graph);

/// Adjacency index over an immutable graph.
struct GraphIndex {
  explicit GraphIndex(const ComputationalGraph& graph);

  std::vector<std::vector<int>> out_edges;  // vertex -> edge indices
  std::vector<std::vector<int>> in_edges;
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
  std::vector<bool> has_swept_in;  // some incoming edge is swept
};

}  // namespace quarkflow

#endif  // QUARKFLOW_GRAPH_HPP
