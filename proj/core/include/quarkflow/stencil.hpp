#ifndef QUARKFLOW_STENCIL_HPP
#define QUARKFLOW_STENCIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quarkflow/graph.hpp"
#include "quarkflow/rational.hpp"

namespace quarkflow {

enum class ExprKind { Input, Constant, Negate, Add, Sub, Mul, Div, Shift };

/// Neighbor-access directions. Im..Kp read one neighbor (i-1, i+1, j-1, ...),
/// and are the only directions the text DSL exposes. SymI/SymJ/SymK read the
/// centered pair along one axis (value[i-1] + value[i+1]) as a single node;
/// they are available to programmatic builders only.
enum class ShiftDir { Im, Ip, Jm, Jp, Km, Kp, SymI, SymJ, SymK };

std::string_view shift_name(ShiftDir dir);

using ExprId = int;

struct ExprNode {
  ExprKind kind;
  ShiftDir dir = ShiftDir::Im;  // Shift only
  Rational value;               // Constant only
  std::string name;             // Input only
  ExprId lhs = -1;
  ExprId rhs = -1;
};

/// Hash-consing expression arena: structurally equal subtrees are the same
/// node, and constant (x) constant operations fold at build time.
class ExprPool {
 public:
  ExprId input(const std::string& name);
  ExprId constant(Rational value);
  ExprId negate(ExprId a);
  ExprId add(ExprId a, ExprId b);
  ExprId sub(ExprId a, ExprId b);
  ExprId mul(ExprId a, ExprId b);
  ExprId div(ExprId a, ExprId b);  // throws ParseError on constant zero divisor
  ExprId shift(ShiftDir dir, ExprId a);

  const ExprNode& node(ExprId id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  ExprId binary(ExprKind kind, ExprId a, ExprId b);
  ExprId intern(ExprNode node);

  std::vector<ExprNode> nodes_;
  std::unordered_map<std::string, ExprId> intern_;
};

struct ProgramInput {
  std::string name;
  std::int64_t weight = 1;
  ExprId expr = -1;
};

struct NamedExpr {
  std::string name;
  ExprId expr = -1;
};

struct StencilProgram {
  ExprPool pool;
  std::vector<ProgramInput> inputs;
  std::vector<NamedExpr> lets;
  std::vector<NamedExpr> outputs;
};

/// Parses the stencil DSL:
///   program := (decl ";")+
///   decl    := "input" NAME ("weight" INT)? | "let" NAME "=" expr
///            | "output" NAME "=" expr
///   expr    := term (("+"|"-") term)*
///   term    := factor (("*"|"/") factor)*
///   factor  := NUMBER | NAME | "-" factor | SHIFT "(" expr ")" | "(" expr ")"
///   SHIFT   := "im"|"ip"|"jm"|"jp"|"km"|"kp"
/// Throws ParseError (with line numbers) on syntax errors, unknown names,
/// duplicate names, or division by a zero constant.
StencilProgram parse_stencil(std::string_view text);

/// One operand of a vertex operation: either another vertex or a folded
/// scalar constant.
struct VertexOperand {
  bool is_const = false;
  VertexId vertex = -1;
  Rational value;
};

struct VertexOp {
  ExprKind kind = ExprKind::Input;
  ShiftDir dir = ShiftDir::Im;
  std::vector<VertexOperand> args;
};

/// A computational graph plus the per-vertex expression metadata needed for
/// kernel emission.
struct TracedGraph {
  ComputationalGraph graph;
  std::vector<VertexOp> ops;  // indexed by vertex id
  std::vector<std::pair<std::string, VertexId>> inputs;
  std::vector<std::pair<std::string, VertexId>> outputs;
};

/// Builds the computational graph: one vertex per distinct non-constant
/// expression node reachable from an output, one edge per direct dependency,
/// swept edges into shift nodes. Inputs become sources, outputs sinks.
TracedGraph trace(const StencilProgram& program);

// Bundled benchmark formulas, built through the same tracing path.
TracedGraph gen_heat1d_midpoint();
TracedGraph gen_heat3d_midpoint();
TracedGraph gen_euler3d_rk4();

/// Manufactured chain fixtures 'a'..'f' (8-vertex chains with hand-picked
/// weights and extra edges).
ComputationalGraph manufactured_case(char which);

}  // namespace quarkflow

#endif  // QUARKFLOW_STENCIL_HPP
