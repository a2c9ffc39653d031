#include "quarkflow/decompose.hpp"

namespace quarkflow {

namespace {

// Fixed 12-color palette (ColorBrewer Paired), cycled per stage.
const char* const kStagePalette[12] = {
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99",
    "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00", "#6a3d9a", "#b15928"};

const char* stage_color(std::int64_t stage) {
  return kStagePalette[(stage - 1) % 12];
}

}  // namespace

std::string render_dot(const ComputationalGraph& graph,
                       const Decomposition& d) {
  std::string out;
  out += "digraph quarkflow {\n";
  out += "  rankdir=TB;\n";
  out += "  node [shape=circle, style=filled, fontsize=11];\n";
  for (const Vertex& v : graph.vertices) {
    std::string label = std::to_string(v.id);
    if (v.weight != 1) label += "\\nw=" + std::to_string(v.weight);
    if (!v.label.empty()) label += "\\n" + v.label;
    out += "  v" + std::to_string(v.id) + " [label=\"" + label + "\"";
    out += ", fillcolor=\"" + std::string(stage_color(d.create[v.id])) + "\"";
    if (d.discard[v.id] > d.create[v.id]) out += ", peripheries=2";
    out += "];\n";
  }
  for (const Edge& e : graph.edges) {
    out += "  v" + std::to_string(e.src) + " -> v" + std::to_string(e.dst);
    // Edges belong to the stage creating their target.
    out += " [color=\"" + std::string(stage_color(d.create[e.dst])) + "\"";
    if (e.swept) out += ", penwidth=3";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace quarkflow
