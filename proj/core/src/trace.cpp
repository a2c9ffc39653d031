#include <algorithm>
#include <unordered_map>

#include "quarkflow/stencil.hpp"

namespace quarkflow {

namespace {

// Non-constant children of an expression node, in syntactic order.
std::vector<ExprId> expr_children(const ExprNode& node) {
  std::vector<ExprId> out;
  if (node.lhs >= 0) out.push_back(node.lhs);
  if (node.rhs >= 0) out.push_back(node.rhs);
  return out;
}

}  // namespace

TracedGraph trace(const StencilProgram& program) {
  const ExprPool& pool = program.pool;

  // Reachability from the outputs, skipping folded constants.
  std::vector<bool> reachable(pool.size(), false);
  std::vector<ExprId> stack;
  for (const NamedExpr& out : program.outputs) {
    if (pool.node(out.expr).kind == ExprKind::Constant)
      throw GraphError("output \"" + out.name +
                       "\" folds to a constant and has no graph vertex");
    stack.push_back(out.expr);
  }
  while (!stack.empty()) {
    ExprId id = stack.back();
    stack.pop_back();
    if (reachable[id] || pool.node(id).kind == ExprKind::Constant) continue;
    reachable[id] = true;
    for (ExprId child : expr_children(pool.node(id))) stack.push_back(child);
  }

  // Dense vertex ids in pool-creation order keeps tracing deterministic.
  std::unordered_map<ExprId, VertexId> vertex_of;
  TracedGraph traced;
  std::unordered_map<std::string, std::int64_t> input_weight;
  for (const ProgramInput& in : program.inputs) input_weight[in.name] = in.weight;

  for (ExprId id = 0; id < pool.size(); ++id) {
    if (!reachable[id]) continue;
    const ExprNode& node = pool.node(id);
    Vertex v;
    v.id = static_cast<VertexId>(traced.graph.vertices.size());
    if (node.kind == ExprKind::Input) v.weight = input_weight.at(node.name);
    vertex_of[id] = v.id;
    traced.graph.vertices.push_back(std::move(v));

    VertexOp op;
    op.kind = node.kind;
    op.dir = node.dir;
    if (node.lhs >= 0) {
      const ExprNode& child = pool.node(node.lhs);
      VertexOperand a;
      if (child.kind == ExprKind::Constant) {
        a.is_const = true;
        a.value = child.value;
      } else {
        a.vertex = vertex_of.at(node.lhs);
      }
      op.args.push_back(a);
    }
    if (node.rhs >= 0) {
      const ExprNode& child = pool.node(node.rhs);
      VertexOperand b;
      if (child.kind == ExprKind::Constant) {
        b.is_const = true;
        b.value = child.value;
      } else {
        b.vertex = vertex_of.at(node.rhs);
      }
      op.args.push_back(b);
    }
    traced.ops.push_back(std::move(op));
  }

  // Edges: one per distinct non-constant child; swept into shift nodes.
  for (ExprId id = 0; id < pool.size(); ++id) {
    if (!reachable[id]) continue;
    const ExprNode& node = pool.node(id);
    VertexId dst = vertex_of.at(id);
    std::vector<VertexId> seen;
    for (ExprId child : expr_children(node)) {
      if (pool.node(child).kind == ExprKind::Constant) continue;
      VertexId src = vertex_of.at(child);
      if (std::find(seen.begin(), seen.end(), src) != seen.end()) continue;
      seen.push_back(src);
      traced.graph.edges.push_back({src, dst, node.kind == ExprKind::Shift});
    }
  }

  // Names: inputs first, then lets, then outputs; first binding labels the
  // vertex.
  for (const ProgramInput& in : program.inputs) {
    auto it = vertex_of.find(in.expr);
    if (it == vertex_of.end()) continue;  // unused input, not part of the formula
    traced.inputs.emplace_back(in.name, it->second);
    if (traced.graph.vertices[it->second].label.empty())
      traced.graph.vertices[it->second].label = in.name;
  }
  for (const NamedExpr& let : program.lets) {
    auto it = vertex_of.find(let.expr);
    if (it == vertex_of.end()) continue;
    if (traced.graph.vertices[it->second].label.empty())
      traced.graph.vertices[it->second].label = let.name;
  }
  for (const NamedExpr& out : program.outputs) {
    VertexId v = vertex_of.at(out.expr);
    traced.outputs.emplace_back(out.name, v);
    if (traced.graph.vertices[v].label.empty())
      traced.graph.vertices[v].label = out.name;
  }
  return traced;
}

}  // namespace quarkflow
