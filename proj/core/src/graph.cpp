#include "quarkflow/graph.hpp"

#include <algorithm>
#include <queue>

namespace quarkflow {

bool operator==(const Vertex& a, const Vertex& b) {
  return a.id == b.id && a.weight == b.weight && a.label == b.label;
}

bool operator==(const Edge& a, const Edge& b) {
  return a.src == b.src && a.dst == b.dst && a.swept == b.swept;
}

bool operator==(const ComputationalGraph& a, const ComputationalGraph& b) {
  return a.vertices == b.vertices && a.edges == b.edges;
}

std::string ValidationReport::first_error() const {
  if (empty_graph) return "graph has no vertices";
  if (!bad_ids.empty())
    return "vertex ids must be unique and dense 0..n-1 (offending id " +
           std::to_string(bad_ids.front()) + ")";
  if (!bad_weights.empty())
    return "vertex " + std::to_string(bad_weights.front()) +
           " has weight < 1";
  if (!bad_endpoints.empty())
    return "edge (" + std::to_string(bad_endpoints.front().first) + "," +
           std::to_string(bad_endpoints.front().second) +
           ") references an unknown vertex";
  if (!self_loops.empty())
    return "self-loop on vertex " + std::to_string(self_loops.front());
  if (!duplicate_edges.empty())
    return "duplicate edge (" + std::to_string(duplicate_edges.front().first) +
           "," + std::to_string(duplicate_edges.front().second) + ")";
  if (!cycle.empty()) {
    std::string s = "cycle found:";
    for (VertexId v : cycle) s += " " + std::to_string(v);
    return s;
  }
  return "";
}

namespace {

// One witness cycle in a graph known to be cyclic, rotated so the smallest
// vertex comes first. Iterative DFS over the not-yet-eliminated vertices.
std::vector<VertexId> find_cycle(const ComputationalGraph& graph,
                                 const std::vector<bool>& in_play) {
  const int n = graph.vertex_count();
  std::vector<std::vector<VertexId>> out(n);
  for (const Edge& e : graph.edges)
    if (in_play[e.src] && in_play[e.dst]) out[e.src].push_back(e.dst);
  for (auto& v : out) std::sort(v.begin(), v.end());

  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<VertexId> parent(n, -1);
  for (VertexId start = 0; start < n; ++start) {
    if (!in_play[start] || state[start] != 0) continue;
    std::vector<std::pair<VertexId, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < out[v].size()) {
        VertexId w = out[v][next++];
        if (state[w] == 0) {
          state[w] = 1;
          parent[w] = v;
          stack.push_back({w, 0});
        } else if (state[w] == 1) {
          std::vector<VertexId> cyc{w};
          for (VertexId u = v; u != w; u = parent[u]) cyc.push_back(u);
          std::reverse(cyc.begin() + 1, cyc.end());
          auto smallest = std::min_element(cyc.begin(), cyc.end());
          std::rotate(cyc.begin(), smallest, cyc.end());
          return cyc;
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

ValidationReport validate(const ComputationalGraph& graph) {
  ValidationReport report;
  const int n = graph.vertex_count();
  if (n == 0) {
    report.empty_graph = true;
    return report;
  }

  std::vector<int> id_count(n, 0);
  for (const Vertex& v : graph.vertices) {
    if (v.id < 0 || v.id >= n || id_count[v.id]++ > 0) {
      report.bad_ids.push_back(v.id);
      continue;
    }
    if (v.weight < 1) report.bad_weights.push_back(v.id);
  }
  if (!report.bad_ids.empty()) return report;

  std::vector<std::vector<VertexId>> seen(n);
  std::vector<int> in_deg(n, 0), out_deg(n, 0);
  for (const Edge& e : graph.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      report.bad_endpoints.emplace_back(e.src, e.dst);
      continue;
    }
    if (e.src == e.dst) {
      report.self_loops.push_back(e.src);
      continue;
    }
    auto& row = seen[e.src];
    if (std::find(row.begin(), row.end(), e.dst) != row.end())
      report.duplicate_edges.emplace_back(e.src, e.dst);
    else
      row.push_back(e.dst);
    ++out_deg[e.src];
    ++in_deg[e.dst];
  }

  for (VertexId v = 0; v < n; ++v) {
    if (in_deg[v] == 0 && out_deg[v] == 0) report.isolated.push_back(v);
    if (in_deg[v] == 0) report.sources.push_back(v);
    if (out_deg[v] == 0) report.sinks.push_back(v);
  }

  // Kahn elimination; leftovers witness a cycle.
  std::vector<int> deg = in_deg;
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < n; ++v)
    if (deg[v] == 0) ready.push_back(v);
  std::vector<bool> in_play(n, true);
  std::size_t eliminated = 0, head = 0;
  while (head < ready.size()) {
    VertexId v = ready[head++];
    in_play[v] = false;
    ++eliminated;
    for (const VertexId w : seen[v])
      if (--deg[w] == 0) ready.push_back(w);
  }
  if (eliminated != static_cast<std::size_t>(n))
    report.cycle = find_cycle(graph, in_play);
  return report;
}

void require_valid(const ComputationalGraph& graph) {
  ValidationReport report = validate(graph);
  if (report.ok()) return;
  if (!report.cycle.empty())
    throw CycleError(report.first_error(), report.cycle);
  throw GraphError(report.first_error());
}

std::vector<VertexId> topological_order(const ComputationalGraph& graph) {
  const int n = graph.vertex_count();
  std::vector<int> in_deg(n, 0);
  std::vector<std::vector<VertexId>> out(n);
  for (const Edge& e : graph.edges) {
    out[e.src].push_back(e.dst);
    ++in_deg[e.dst];
  }
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < n; ++v)
    if (in_deg[v] == 0) ready.push(v);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (VertexId w : out[v])
      if (--in_deg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != n) {
    std::vector<bool> in_play(n, false);
    for (VertexId v = 0; v < n; ++v) in_play[v] = in_deg[v] > 0;
    throw CycleError("graph is cyclic", find_cycle(graph, in_play));
  }
  return order;
}

std::vector<int> swept_path_labels(const ComputationalGraph& graph) {
  const std::vector<VertexId> order = topological_order(graph);
  const int n = graph.vertex_count();
  std::vector<std::vector<int>> in_edges(n);
  for (int i = 0; i < graph.edge_count(); ++i)
    in_edges[graph.edges[i].dst].push_back(i);
  std::vector<int> label(n, 0);
  for (VertexId v : order) {
    int best = 0;
    for (int ei : in_edges[v]) {
      const Edge& e = graph.edges[ei];
      best = std::max(best, label[e.src] + (e.swept ? 1 : 0));
    }
    label[v] = best;
  }
  return label;
}

int swept_depth(const ComputationalGraph& graph) {
  const std::vector<int> labels = swept_path_labels(graph);
  int depth = 0;
  for (int s : labels) depth = std::max(depth, s);
  return depth;
}

GraphIndex::GraphIndex(const ComputationalGraph& graph)
    : out_edges(graph.vertex_count()),
      in_edges(graph.vertex_count()),
      has_swept_in(graph.vertex_count(), false) {
  for (int i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges[i];
    out_edges[e.src].push_back(i);
    in_edges[e.dst].push_back(i);
    if (e.swept) has_swept_in[e.dst] = true;
  }
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (in_edges[v].empty()) sources.push_back(v);
    if (out_edges[v].empty()) sinks.push_back(v);
  }
}

}  // namespace quarkflow
