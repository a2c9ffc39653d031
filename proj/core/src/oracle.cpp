#include <optional>
#include <random>

#include "quarkflow/verify.hpp"

namespace quarkflow {

namespace {

struct OracleSearch {
  const ComputationalGraph& graph;
  const GraphIndex index;
  const std::vector<VertexId> order;  // topological
  std::int64_t wk;
  std::int64_t k_count = 1;
  std::vector<std::int64_t> create;
  std::optional<OracleResult> best;

  OracleSearch(const ComputationalGraph& g, std::int64_t wk_arg)
      : graph(g), index(g), order(topological_order(g)), wk(wk_arg),
        create(g.vertex_count(), 0) {}

  // Minimal effective labels for the fixed creating stages, or nullopt.
  std::optional<std::vector<std::int64_t>> effective_labels() const {
    std::vector<std::int64_t> eff(graph.vertex_count(), 0);
    for (VertexId v : order) {
      std::int64_t lb = create[v] + (index.has_swept_in[v] ? 1 : 0);
      for (int ei : index.in_edges[v]) {
        const Edge& e = graph.edges[ei];
        lb = std::max(lb, eff[e.src] + (e.swept ? 1 : 0));
      }
      if (lb > create[v] + 1) return std::nullopt;
      eff[v] = std::max(lb, create[v]);
    }
    return eff;
  }

  void finish_candidate() {
    auto eff = effective_labels();
    if (!eff) return;
    std::vector<std::int64_t> discard(graph.vertex_count());
    std::int64_t sharing = 0;
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      std::int64_t d = create[v];
      for (int ei : index.out_edges[v])
        d = std::max(d, create[graph.edges[ei].dst]);
      if (index.out_edges[v].empty()) d = k_count;  // sink pinning
      discard[v] = d;
      sharing += graph.vertices[v].weight * (d - create[v]);
    }
    std::int64_t objective = wk * k_count + sharing;
    if (best && best->objective <= objective) return;
    OracleResult result;
    result.objective = objective;
    result.assignment.stage_count = k_count;
    result.assignment.create = create;
    result.assignment.discard = std::move(discard);
    result.assignment.effective = std::move(*eff);
    best = std::move(result);
  }

  void enumerate(std::size_t pos) {
    if (pos == order.size()) {
      finish_candidate();
      return;
    }
    VertexId v = order[pos];
    if (index.in_edges[v].empty()) {
      create[v] = 1;  // source pinning
      enumerate(pos + 1);
      return;
    }
    std::int64_t lb = 1;
    for (int ei : index.in_edges[v])
      lb = std::max(lb, create[graph.edges[ei].src]);
    for (std::int64_t k = lb; k <= k_count; ++k) {
      create[v] = k;
      enumerate(pos + 1);
    }
    create[v] = 0;
  }
};

}  // namespace

OracleResult brute_force_optimum(const ComputationalGraph& graph,
                                 std::int64_t wk, OracleLimits limits) {
  require_valid(graph);
  if (graph.vertex_count() > limits.max_vertices)
    throw TooLargeError("graph has " + std::to_string(graph.vertex_count()) +
                        " vertices, oracle limit is " +
                        std::to_string(limits.max_vertices));
  const int depth = swept_depth(graph);
  OracleSearch search(graph, wk);
  const std::int64_t k_min = std::max(depth, 1);
  for (std::int64_t k = k_min; k <= k_min + limits.extra_stages; ++k) {
    search.k_count = k;
    search.enumerate(0);
  }
  if (!search.best)
    throw GraphError("oracle found no feasible stage labeling (bug: the "
                     "swept-depth construction always exists)");
  return *search.best;
}

ComputationalGraph random_graph(std::uint64_t seed, int n_vertices,
                                double edge_prob, double swept_prob) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  ComputationalGraph g;
  for (VertexId v = 0; v < n_vertices; ++v)
    g.vertices.push_back({v, static_cast<std::int64_t>(rng() % 3) + 1, ""});
  for (VertexId i = 0; i < n_vertices; ++i)
    for (VertexId j = i + 1; j < n_vertices; ++j)
      if (uniform() < edge_prob)
        g.edges.push_back({i, j, uniform() < swept_prob});
  if (g.edges.empty() && n_vertices > 1) {
    // Documented fallback: all-isolated graphs are replaced by a chain.
    for (VertexId v = 0; v + 1 < n_vertices; ++v)
      g.edges.push_back({v, v + 1, uniform() < swept_prob});
  }
  return g;
}

}  // namespace quarkflow
