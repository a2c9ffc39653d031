#include <json.hpp>


#include "quarkflow/decompose.hpp"

namespace quarkflow {

Decomposition decompose(const ComputationalGraph& graph,
                        const Assignment& assignment) {
  DecompositionModel model = build_model(graph, 1);
  std::vector<DiffConstraint> violations = check_feasible(model, assignment);
  if (!violations.empty()) {
    std::string msg = "assignment violates " +
                      std::to_string(violations.size()) +
                      " constraint(s), first: " + violations.front().to_string();
    throw InfeasibleAssignmentError(msg, std::move(violations));
  }

  const int n = graph.vertex_count();
  const std::int64_t k_count = assignment.stage_count;
  for (VertexId i = 0; i < n; ++i) {
    if (assignment.create[i] < 1 || assignment.discard[i] > k_count)
      throw InfeasibleAssignmentError(
          "vertex " + std::to_string(i) + " lies outside stages 1.." +
              std::to_string(k_count),
          {});
  }

  Decomposition d;
  d.stage_count = k_count;
  d.create = assignment.create;
  d.discard = assignment.discard;
  d.effective = assignment.effective;

  GraphIndex index(graph);
  std::vector<bool> is_source(n, false), is_sink(n, false);
  for (VertexId v : index.sources) is_source[v] = true;
  for (VertexId v : index.sinks) is_sink[v] = true;

  for (std::int64_t k = 1; k <= k_count; ++k) {
    Stage stage;
    stage.index = static_cast<int>(k);
    for (VertexId i = 0; i < n; ++i) {
      if (assignment.create[i] > k || assignment.discard[i] < k) continue;
      stage.vertices.push_back(i);
      if (assignment.create[i] < k) stage.shared_in.push_back(i);
      if (assignment.discard[i] > k) stage.shared_out.push_back(i);
      if (assignment.create[i] < k || (k == 1 && is_source[i]))
        stage.sources.push_back(i);
      if (assignment.discard[i] > k || (k == k_count && is_sink[i]))
        stage.sinks.push_back(i);
    }
    for (const Edge& e : graph.edges) {
      if (assignment.create[e.dst] != k) continue;
      stage.edges.emplace_back(e.src, e.dst);
      if (e.swept) ++stage.swept_count;
    }
    d.stages.push_back(std::move(stage));
  }
  return d;
}

SharingReport sharing_report(const ComputationalGraph& graph,
                             const Decomposition& decomposition) {
  SharingReport report;
  report.stage_count = decomposition.stage_count;
  for (const Vertex& v : graph.vertices) {
    SharingRow row;
    row.id = v.id;
    row.weight = v.weight;
    row.span = decomposition.discard[v.id] - decomposition.create[v.id];
    row.contribution = row.weight * row.span;
    report.total += row.contribution;
    if (row.span > 0) {
      ++report.shared_vertex_count;
      report.shared_weight += row.weight;
    }
    report.rows.push_back(row);
  }
  return report;
}

namespace {

using nlohmann::json;

int line_of_offset(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string write_decomposition_json(const Decomposition& d) {
  json root;
  root["K"] = d.stage_count;
  root["assignment"] = json::array();
  for (std::size_t i = 0; i < d.create.size(); ++i)
    root["assignment"].push_back(json{{"id", i},
                                      {"c", d.create[i]},
                                      {"d", d.discard[i]},
                                      {"e", d.effective[i]}});
  root["stages"] = json::array();
  for (const Stage& stage : d.stages) {
    json js;
    js["k"] = stage.index;
    js["vertices"] = stage.vertices;
    js["edges"] = json::array();
    for (const auto& [src, dst] : stage.edges)
      js["edges"].push_back(json::array({src, dst}));
    js["shared_out"] = stage.shared_out;
    root["stages"].push_back(std::move(js));
  }
  return root.dump(2) + "\n";
}

Decomposition read_decomposition_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(line_of_offset(text, err.byte), err.what());
  }
  if (!root.is_object() || !root.contains("K") ||
      !root.contains("assignment") || !root.contains("stages"))
    throw SchemaError("(root)",
                      "decomposition JSON needs K, assignment, and stages");
  Decomposition d;
  d.stage_count = root["K"].get<std::int64_t>();
  const json& asg = root["assignment"];
  if (!asg.is_array()) throw SchemaError("assignment", "must be an array");
  d.create.assign(asg.size(), 0);
  d.discard.assign(asg.size(), 0);
  d.effective.assign(asg.size(), 0);
  for (const json& row : asg) {
    if (!row.is_object() || !row.contains("id") || !row.contains("c") ||
        !row.contains("d") || !row.contains("e"))
      throw SchemaError("assignment[]", "rows need id, c, d, e");
    std::size_t id = row["id"].get<std::size_t>();
    if (id >= d.create.size())
      throw SchemaError("assignment[].id", "id out of range");
    d.create[id] = row["c"].get<std::int64_t>();
    d.discard[id] = row["d"].get<std::int64_t>();
    d.effective[id] = row["e"].get<std::int64_t>();
  }
  for (const json& js : root["stages"]) {
    if (!js.is_object() || !js.contains("k") || !js.contains("vertices") ||
        !js.contains("edges"))
      throw SchemaError("stages[]", "stages need k, vertices, edges");
    Stage stage;
    stage.index = js["k"].get<int>();
    stage.vertices = js["vertices"].get<std::vector<VertexId>>();
    for (const json& pair : js["edges"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw SchemaError("stages[].edges", "edges must be [src, dst] pairs");
      stage.edges.emplace_back(pair[0].get<VertexId>(), pair[1].get<VertexId>());
    }
    if (js.contains("shared_out"))
      stage.shared_out = js["shared_out"].get<std::vector<VertexId>>();
    d.stages.push_back(std::move(stage));
  }
  return d;
}

}  // namespace quarkflow
