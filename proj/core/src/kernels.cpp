#include "quarkflow/decompose.hpp"

namespace quarkflow {

namespace {

const char* shift_offset(ShiftDir dir) {
  switch (dir) {
    case ShiftDir::Im: return "i-1";
    case ShiftDir::Ip: return "i+1";
    case ShiftDir::Jm: return "j-1";
    case ShiftDir::Jp: return "j+1";
    case ShiftDir::Km: return "k-1";
    case ShiftDir::Kp: return "k+1";
    default: return "";
  }
}

std::string sym_read(const std::string& name, char axis) {
  return "IN(" + name + ", " + axis + "-1) + IN(" + name + ", " + axis + "+1)";
}

}  // namespace

std::vector<std::string> emit_stage_kernels(const TracedGraph& traced,
                                            const Decomposition& d) {
  const ComputationalGraph& graph = traced.graph;
  if (static_cast<int>(traced.ops.size()) != graph.vertex_count())
    throw MissingExprMetadataError(
        "graph carries no expression metadata (not produced by the frontend)");

  // Canonical names: named vertices (inputs, lets, outputs) keep their
  // labels, interior vertices become t<id>. An output that lands on an
  // already-named vertex (a pass-through input, or a second name for the
  // same value) becomes an alias statement in the last stage.
  std::vector<std::string> name(graph.vertex_count());
  for (VertexId v = 0; v < graph.vertex_count(); ++v)
    name[v] = graph.vertices[v].label.empty() ? "t" + std::to_string(v)
                                              : graph.vertices[v].label;
  std::vector<std::pair<std::string, VertexId>> aliases;
  for (const auto& [out_name, v] : traced.outputs)
    if (name[v] != out_name) aliases.emplace_back(out_name, v);

  auto operand = [&](const VertexOperand& a) {
    return a.is_const ? "(" + a.value.to_string() + ")" : name[a.vertex];
  };
  auto statement = [&](VertexId v) -> std::string {
    const VertexOp& op = traced.ops[v];
    std::string rhs;
    switch (op.kind) {
      case ExprKind::Input:
        return "";
      case ExprKind::Constant:
        rhs = operand(op.args[0]);
        break;
      case ExprKind::Negate:
        rhs = "-" + operand(op.args[0]);
        break;
      case ExprKind::Add:
        rhs = operand(op.args[0]) + " + " + operand(op.args[1]);
        break;
      case ExprKind::Sub:
        rhs = operand(op.args[0]) + " - " + operand(op.args[1]);
        break;
      case ExprKind::Mul:
        rhs = operand(op.args[0]) + " * " + operand(op.args[1]);
        break;
      case ExprKind::Div:
        rhs = operand(op.args[0]) + " / " + operand(op.args[1]);
        break;
      case ExprKind::Shift: {
        const std::string src = operand(op.args[0]);
        switch (op.dir) {
          case ShiftDir::SymI: rhs = sym_read(src, 'i'); break;
          case ShiftDir::SymJ: rhs = sym_read(src, 'j'); break;
          case ShiftDir::SymK: rhs = sym_read(src, 'k'); break;
          default:
            rhs = "IN(" + src + ", " + shift_offset(op.dir) + ")";
        }
        break;
      }
    }
    return name[v] + " = " + rhs + ";";
  };

  const std::vector<VertexId> order = topological_order(graph);
  std::vector<std::string> kernels;
  for (const Stage& stage : d.stages) {
    std::string text;
    text += "// stage " + std::to_string(stage.index) + " of " +
            std::to_string(d.stage_count) + "\n";
    text += "// in:";
    for (VertexId v : stage.sources) text += " " + name[v];
    text += "\n// out:";
    for (VertexId v : stage.sinks) text += " " + name[v];
    text += "\n";
    for (VertexId v : order) {
      if (d.create[v] != stage.index) continue;
      std::string line = statement(v);
      if (!line.empty()) text += line + "\n";
    }
    if (stage.index == d.stage_count)
      for (const auto& [alias, v] : aliases)
        text += alias + " = " + name[v] + ";\n";
    kernels.push_back(std::move(text));
  }
  return kernels;
}

}  // namespace quarkflow
