#ifndef QUARKFLOW_FLOW_HPP
#define QUARKFLOW_FLOW_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quarkflow/model.hpp"

namespace quarkflow {

struct FlowNode {
  ModelVar var;
  std::int64_t supply = 0;  // required (outflow - inflow) at this node
};

struct FlowArc {
  int from = -1;
  int to = -1;
  std::int64_t cost = 0;   // the difference-constraint bound
  bool free_lower = false;  // equality constraint: flow may be negative
};

/// Minimum-cost transshipment instance whose optimal node potentials solve
/// the decomposition program.
struct FlowNetwork {
  std::vector<FlowNode> nodes;
  std::vector<FlowArc> arcs;
  int ground = -1;                       // reference node, potential 0
  std::vector<int> source_create_nodes;  // c-nodes pinned to stage 1
};

struct FlowSolution {
  std::vector<std::int64_t> flow;       // per arc; negative only on free arcs
  std::vector<std::int64_t> potential;  // per node
  std::int64_t objective = 0;           // sum over arcs of cost * flow
  std::int64_t pivots = 0;
};

struct SolveError : std::runtime_error {
  enum class Code { Unbalanced, NegativeCycle, NonConvergence, Inconsistent };
  SolveError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Code code;
};

/// Mechanical transform of the model into its dual flow network.
///
/// Every difference constraint u - v <= b becomes the arc (u -> v) with cost
/// b; equality constraints become free arcs (flow unrestricted in sign).
/// Node supplies are the negated objective coefficients, so that the flow
/// optimum's node potentials are an optimal assignment. Per constraint
/// family:
///
///   family                     arc            cost  lower
///   1  c_i - d_i <= 0          c_i -> d_i       0   0
///   2  c_i - ground == 1       c_i -> ground    1   free
///   3  d_i - K == 0            d_i -> K         0   free
///   4  c_i - c_j <= 0          c_i -> c_j       0   0     per edge (i,j)
///      c_j - d_i <= 0          c_j -> d_i       0   0     per edge (i,j)
///   5  c_i - e_i <= 0          c_i -> e_i       0   0
///      e_i - c_i <= 1          e_i -> c_i       1   0
///   6  e_i - e_j <= 0          e_i -> e_j       0   0     non-swept edges
///   7  e_i - e_j <= -1         e_i -> e_j      -1   0     swept edges
///   8  c_i - e_i <= -1         c_i -> e_i      -1   0     swept-in vertices
///
/// Supplies: +w_i at c_i, -w_i at d_i, 0 at e_i, -wk at K, +wk at ground
/// (ground absorbs the stage-count coefficient; total supply is zero).
FlowNetwork build_network(const DecompositionModel& model);

/// Exact-integer minimum-cost flow via network simplex on a spanning-tree
/// basis. Deterministic: arc selection is index-ordered. The returned
/// potentials satisfy every arc's reduced-cost optimality condition
///   cost - potential[from] + potential[to] >= 0, with equality wherever
/// flow is off its lower bound (free arcs therefore always at equality).
///
/// The optimal value of the decomposition program equals -objective of the
/// returned solution (the two linear programs are duals with opposite
/// reading direction).
FlowSolution solve_mcnf(const FlowNetwork& network);

/// Potentials, shifted so ground sits at 0 (which pins every source's
/// creating stage to exactly 1), repackaged as an assignment. Throws
/// SolveError{Inconsistent} if the source pins disagree.
Assignment extract_assignment(const FlowNetwork& network,
                              const FlowSolution& solution);

/// Empty string when balance and every arc's reduced-cost optimality
/// condition hold exactly, otherwise a description of the first violation.
std::string check_optimality(const FlowNetwork& network,
                             const FlowSolution& solution);

/// DIMACS-min dump for cross-checking against third-party solvers. Free arcs
/// are printed with explicit symmetric bounds +-M.
std::string dump_dimacs(const FlowNetwork& network);

}  // namespace quarkflow

#endif  // QUARKFLOW_FLOW_HPP
