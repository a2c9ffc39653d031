#include <json.hpp>

#include <algorithm>
#include <map>

#include "quarkflow/verify.hpp"

namespace quarkflow {

std::string VerificationReport::to_json() const {
  nlohmann::json root;
  auto fill = [](const CriterionResult& r) {
    nlohmann::json j;
    j["pass"] = r.pass;
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
  };
  root["criterion1"] = fill(edge_partition);
  root["criterion2"] = fill(chaining);
  root["criterion3"] = fill(atomicity);
  root["overall"] = overall;
  return root.dump(2) + "\n";
}

StageSubgraph stage_subgraph(const ComputationalGraph& graph,
                             const Stage& stage) {
  StageSubgraph sub;
  std::map<VertexId, VertexId> dense;
  for (VertexId v : stage.vertices) {
    if (dense.count(v)) continue;
    VertexId id = static_cast<VertexId>(sub.graph.vertices.size());
    dense[v] = id;
    Vertex copy = v >= 0 && v < graph.vertex_count()
                      ? graph.vertices[v]
                      : Vertex{};
    copy.id = id;
    sub.graph.vertices.push_back(copy);
    sub.original.push_back(v);
  }
  std::map<std::pair<VertexId, VertexId>, bool> swept_of;
  for (const Edge& e : graph.edges) swept_of[{e.src, e.dst}] = e.swept;
  for (const auto& [src, dst] : stage.edges) {
    auto a = dense.find(src), b = dense.find(dst);
    if (a == dense.end() || b == dense.end()) continue;  // caught by verify
    auto it = swept_of.find({src, dst});
    sub.graph.edges.push_back(
        {a->second, b->second, it != swept_of.end() && it->second});
  }
  return sub;
}

std::vector<int> atomic_labels(const ComputationalGraph& stage_sub) {
  return swept_path_labels(stage_sub);  // throws CycleError on cyclic input
}

namespace {

std::string edge_str(VertexId a, VertexId b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

CriterionResult check_edge_partition(const ComputationalGraph& graph,
                                     const Decomposition& d) {
  std::map<std::pair<VertexId, VertexId>, int> stage_of;  // edge -> stage
  std::map<std::pair<VertexId, VertexId>, bool> known;
  for (const Edge& e : graph.edges) known[{e.src, e.dst}] = true;

  for (const Stage& stage : d.stages) {
    std::vector<bool> member(graph.vertex_count() + 1, false);
    for (VertexId v : stage.vertices) {
      if (v < 0 || v >= graph.vertex_count())
        return {false, "stage " + std::to_string(stage.index) +
                           " lists unknown vertex " + std::to_string(v)};
      member[v] = true;
    }
    for (const auto& [src, dst] : stage.edges) {
      if (!known.count({src, dst}))
        return {false, "stage " + std::to_string(stage.index) + " edge " +
                           edge_str(src, dst) + " is not a graph edge"};
      if (!member[src] || !member[dst])
        return {false, "stage " + std::to_string(stage.index) + " edge " +
                           edge_str(src, dst) +
                           " has an endpoint outside the stage"};
      auto [it, inserted] = stage_of.insert({{src, dst}, stage.index});
      if (!inserted)
        return {false, "edge " + edge_str(src, dst) + " appears in stages " +
                           std::to_string(it->second) + " and " +
                           std::to_string(stage.index)};
    }
  }
  for (const Edge& e : graph.edges)
    if (!stage_of.count({e.src, e.dst}))
      return {false, "edge " + edge_str(e.src, e.dst) + " is in no stage"};

  // All incoming edges of a vertex must land in one stage.
  std::vector<int> in_stage(graph.vertex_count(), 0);
  for (const Edge& e : graph.edges) {
    int k = stage_of.at({e.src, e.dst});
    if (in_stage[e.dst] == 0) in_stage[e.dst] = k;
    if (in_stage[e.dst] != k)
      return {false, "vertex " + std::to_string(e.dst) +
                         " has incoming edges in stages " +
                         std::to_string(in_stage[e.dst]) + " and " +
                         std::to_string(k)};
  }
  return {true, ""};
}

CriterionResult check_chaining(const ComputationalGraph& graph,
                               const Decomposition& d) {
  GraphIndex index(graph);
  std::vector<std::vector<bool>> member(d.stages.size());
  for (std::size_t s = 0; s < d.stages.size(); ++s) {
    member[s].assign(graph.vertex_count(), false);
    for (VertexId v : d.stages[s].vertices)
      if (v >= 0 && v < graph.vertex_count()) member[s][v] = true;
  }
  for (std::size_t s = 0; s < d.stages.size(); ++s) {
    const Stage& stage = d.stages[s];
    std::vector<bool> has_in(graph.vertex_count(), false);
    for (const auto& [src, dst] : stage.edges) {
      (void)src;
      if (dst >= 0 && dst < graph.vertex_count()) has_in[dst] = true;
    }
    for (VertexId v : stage.vertices) {
      if (has_in[v]) continue;
      if (s == 0) {
        if (!index.in_edges[v].empty())
          return {false, "stage 1 source " + std::to_string(v) +
                             " is not a source of the graph"};
      } else if (!member[s - 1][v]) {
        return {false, "stage " + std::to_string(stage.index) + " source " +
                           std::to_string(v) + " is not in stage " +
                           std::to_string(stage.index - 1)};
      }
    }
  }
  if (!d.stages.empty()) {
    for (VertexId v : index.sources)
      if (!member[0][v])
        return {false,
                "graph source " + std::to_string(v) + " is not in stage 1"};
    for (VertexId v : index.sinks)
      if (!member.back()[v])
        return {false, "graph sink " + std::to_string(v) +
                           " is not in the last stage"};
  }
  return {true, ""};
}

CriterionResult check_atomicity(const ComputationalGraph& graph,
                                const Decomposition& d) {
  for (const Stage& stage : d.stages) {
    StageSubgraph sub = stage_subgraph(graph, stage);
    if (sub.graph.vertices.empty()) continue;
    std::vector<int> labels = atomic_labels(sub.graph);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] > 1)
        return {false, "stage " + std::to_string(stage.index) +
                           " has a path with " + std::to_string(labels[i]) +
                           " swept edges ending at vertex " +
                           std::to_string(sub.original[i])};
  }
  return {true, ""};
}

}  // namespace

VerificationReport verify(const ComputationalGraph& graph,
                          const Decomposition& d) {
  VerificationReport report;
  report.edge_partition = check_edge_partition(graph, d);
  report.chaining = check_chaining(graph, d);
  report.atomicity = check_atomicity(graph, d);
  report.overall = report.edge_partition.pass && report.chaining.pass &&
                   report.atomicity.pass;
  return report;
}

}  // namespace quarkflow
