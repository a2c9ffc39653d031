#include <json.hpp>

#include "quarkflow/graph.hpp"

namespace quarkflow {

namespace {

using nlohmann::json;

int line_of_offset(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void reject_unknown_fields(const json& obj, const char* where,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known)
      throw SchemaError(std::string(where) + "." + it.key(),
                        "unknown field \"" + it.key() + "\" in " + where);
  }
}

std::int64_t require_int(const json& obj, const char* where, const char* key) {
  if (!obj.contains(key))
    throw SchemaError(std::string(where) + "." + key,
                      std::string("missing field \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw SchemaError(std::string(where) + "." + key,
                      std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

ComputationalGraph read_graph_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(line_of_offset(text, err.byte), err.what());
  }
  if (!root.is_object())
    throw SchemaError("(root)", "graph JSON must be a single object");
  reject_unknown_fields(root, "graph", {"vertices", "edges"});
  if (!root.contains("vertices") || !root["vertices"].is_array())
    throw SchemaError("vertices", "\"vertices\" must be an array");
  if (!root.contains("edges") || !root["edges"].is_array())
    throw SchemaError("edges", "\"edges\" must be an array");

  ComputationalGraph graph;
  for (const json& jv : root["vertices"]) {
    if (!jv.is_object())
      throw SchemaError("vertices[]", "vertex entries must be objects");
    reject_unknown_fields(jv, "vertex", {"id", "weight", "label"});
    Vertex v;
    v.id = static_cast<VertexId>(require_int(jv, "vertex", "id"));
    v.weight = require_int(jv, "vertex", "weight");
    if (v.weight < 1) throw SchemaError("vertex.weight", "weight must be >= 1");
    if (jv.contains("label")) {
      if (!jv["label"].is_string())
        throw SchemaError("vertex.label", "label must be a string");
      v.label = jv["label"].get<std::string>();
    }
    graph.vertices.push_back(std::move(v));
  }
  const int n = graph.vertex_count();
  for (const json& je : root["edges"]) {
    if (!je.is_object())
      throw SchemaError("edges[]", "edge entries must be objects");
    reject_unknown_fields(je, "edge", {"src", "dst", "swept"});
    Edge e;
    e.src = static_cast<VertexId>(require_int(je, "edge", "src"));
    e.dst = static_cast<VertexId>(require_int(je, "edge", "dst"));
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw SchemaError("edge", "edge references an unknown vertex id");
    if (!je.contains("swept") || !je["swept"].is_boolean())
      throw SchemaError("edge.swept", "\"swept\" must be a boolean");
    e.swept = je["swept"].get<bool>();
    graph.edges.push_back(e);
  }
  return graph;
}

std::string write_graph_json(const ComputationalGraph& graph) {
  json root;
  root["vertices"] = json::array();
  for (const Vertex& v : graph.vertices) {
    json jv{{"id", v.id}, {"weight", v.weight}};
    if (!v.label.empty()) jv["label"] = v.label;
    root["vertices"].push_back(std::move(jv));
  }
  root["edges"] = json::array();
  for (const Edge& e : graph.edges)
    root["edges"].push_back(json{{"src", e.src}, {"dst", e.dst}, {"swept", e.swept}});
  return root.dump(2) + "\n";
}

}  // namespace quarkflow
