#include "quarkflow/flow.hpp"

#include <algorithm>

namespace quarkflow {

FlowNetwork build_network(const DecompositionModel& model) {
  FlowNetwork net;
  const int n = model.vertex_count();
  // Node order: ground, K, then (c_i, d_i, e_i) per vertex.
  net.ground = 0;
  net.nodes.push_back({ground_var(), model.wk});
  net.nodes.push_back({stage_count_var(), -model.wk});
  std::vector<int> c_node(n), d_node(n), e_node(n);
  for (VertexId i = 0; i < n; ++i) {
    c_node[i] = static_cast<int>(net.nodes.size());
    net.nodes.push_back({create_var(i), model.weights[i]});
    d_node[i] = static_cast<int>(net.nodes.size());
    net.nodes.push_back({discard_var(i), -model.weights[i]});
    e_node[i] = static_cast<int>(net.nodes.size());
    net.nodes.push_back({effective_var(i), 0});
  }
  auto node_of = [&](const ModelVar& var) {
    switch (var.kind) {
      case VarKind::Ground: return 0;
      case VarKind::StageCount: return 1;
      case VarKind::Create: return c_node[var.vertex];
      case VarKind::Discard: return d_node[var.vertex];
      case VarKind::Effective: return e_node[var.vertex];
    }
    return -1;
  };
  for (const DiffConstraint& c : model.constraints)
    net.arcs.push_back({node_of(c.u), node_of(c.v), c.bound, c.equality});
  for (VertexId i : model.sources) net.source_create_nodes.push_back(c_node[i]);
  return net;
}

namespace {

/// Network simplex over a spanning-tree basis. Uncapacitated arcs with lower
/// bound 0; free arcs are split into an antiparallel pair so every working
/// arc has lower bound 0. Initial basis is an artificial star around a root
/// node with Big-M costs. Anti-cycling: round-robin entering-arc scan that
/// falls back to Bland's rule (lowest index) after a long degenerate run.
class NetworkSimplex {
 public:
  explicit NetworkSimplex(const FlowNetwork& net) : net_(net) {
    const int n = static_cast<int>(net.nodes.size());
    std::int64_t total = 0, pos = 0, cost_sum = 0;
    for (const FlowNode& node : net.nodes) {
      total += node.supply;
      if (node.supply > 0) pos += node.supply;
    }
    if (total != 0)
      throw SolveError(SolveError::Code::Unbalanced,
                       "node supplies sum to " + std::to_string(total) +
                           ", expected 0");
    for (const FlowArc& a : net.arcs)
      cost_sum += a.cost < 0 ? -a.cost : a.cost;
    // Any basic solution's real-arc cost lies within +-pos*cost_sum (tree
    // flows are bounded by the total positive supply), so one unit of
    // artificial flow must cost more than that whole range.
    big_m_ = 2 * pos * cost_sum + pos + cost_sum + 1;

    for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
      const FlowArc& a = net.arcs[i];
      if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n || a.from == a.to)
        throw SolveError(SolveError::Code::Unbalanced,
                         "arc " + std::to_string(i) + " has bad endpoints");
      from_.push_back(a.from);
      to_.push_back(a.to);
      cost_.push_back(a.cost);
      orig_.push_back(i + 1);  // +i+1: forward copy of arc i
      if (a.free_lower) {
        from_.push_back(a.to);
        to_.push_back(a.from);
        cost_.push_back(-a.cost);
        orig_.push_back(-(i + 1));  // reverse copy
      }
    }
    root_ = 0;
    for (int v = 0; v < n; ++v) {
      if (v == root_) continue;
      if (net.nodes[v].supply >= 0) {
        from_.push_back(v);
        to_.push_back(root_);
      } else {
        from_.push_back(root_);
        to_.push_back(v);
      }
      cost_.push_back(big_m_);
      orig_.push_back(0);  // artificial
    }

    const int m = static_cast<int>(from_.size());
    flow_.assign(m, 0);
    in_tree_.assign(m, false);
    first_artificial_ = m - (n - 1);
    for (int v = 0, a = first_artificial_; v < n; ++v) {
      if (v == root_) continue;
      std::int64_t s = net.nodes[v].supply;
      flow_[a] = s >= 0 ? s : -s;
      in_tree_[a] = true;
      ++a;
    }
    adj_.assign(n, {});
    for (int a = first_artificial_; a < m; ++a) {
      adj_[from_[a]].push_back(a);
      adj_[to_[a]].push_back(a);
    }
    parent_.assign(n, -1);
    parent_arc_.assign(n, -1);
    depth_.assign(n, 0);
    potential_.assign(n, 0);
    rebuild_tree();
  }

  FlowSolution run() {
    const int m = static_cast<int>(from_.size());
    const std::int64_t n_orig_arcs = static_cast<std::int64_t>(net_.arcs.size());
    const std::int64_t pivot_cap =
        std::max<std::int64_t>(1000, 50 * n_orig_arcs * n_orig_arcs);
    std::int64_t pivots = 0;
    std::int64_t degenerate_run = 0;
    int scan_from = 0;
    bool bland = false;

    while (true) {
      int entering = -1;
      if (bland) {
        for (int a = 0; a < m; ++a)
          if (!in_tree_[a] && reduced_cost(a) < 0) { entering = a; break; }
      } else {
        for (int k = 0; k < m; ++k) {
          int a = scan_from + k >= m ? scan_from + k - m : scan_from + k;
          if (!in_tree_[a] && reduced_cost(a) < 0) { entering = a; break; }
        }
      }
      if (entering < 0) break;
      if (++pivots > pivot_cap)
        throw SolveError(SolveError::Code::NonConvergence,
                         "pivot cap exceeded after " + std::to_string(pivots) +
                             " pivots");
      scan_from = entering + 1 >= m ? 0 : entering + 1;

      std::int64_t theta = pivot(entering);
      if (theta == 0) {
        if (++degenerate_run > 2LL * m) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }

    for (int a = first_artificial_; a < m; ++a)
      if (flow_[a] != 0)
        throw SolveError(SolveError::Code::Unbalanced,
                         "no feasible flow (network is effectively "
                         "disconnected with nonzero transfer)");

    FlowSolution sol;
    sol.pivots = pivots;
    sol.flow.assign(net_.arcs.size(), 0);
    for (int a = 0; a < first_artificial_; ++a) {
      int o = orig_[a];
      if (o > 0) sol.flow[o - 1] += flow_[a];
      else sol.flow[-o - 1] -= flow_[a];
    }
    sol.potential = potential_;
    sol.objective = 0;
    for (std::size_t i = 0; i < net_.arcs.size(); ++i)
      sol.objective += net_.arcs[i].cost * sol.flow[i];
    return sol;
  }

 private:
  std::int64_t reduced_cost(int a) const {
    return cost_[a] - potential_[from_[a]] + potential_[to_[a]];
  }

  // Recomputes parent/depth/potential from the tree adjacency, root first.
  void rebuild_tree() {
    if (visited_mark_.size() != adj_.size()) visited_mark_.assign(adj_.size(), 0);
    ++mark_;
    bfs_.clear();
    bfs_.push_back(root_);
    visited_mark_[root_] = mark_;
    parent_[root_] = -1;
    parent_arc_[root_] = -1;
    depth_[root_] = 0;
    potential_[root_] = 0;
    for (std::size_t head = 0; head < bfs_.size(); ++head) {
      int x = bfs_[head];
      for (int a : adj_[x]) {
        int y = from_[a] == x ? to_[a] : from_[a];
        if (visited_mark_[y] == mark_) continue;
        visited_mark_[y] = mark_;
        parent_[y] = x;
        parent_arc_[y] = a;
        depth_[y] = depth_[x] + 1;
        potential_[y] = from_[a] == x ? potential_[x] - cost_[a]
                                      : potential_[x] + cost_[a];
        bfs_.push_back(y);
      }
    }
  }

  // Pushes flow around the cycle closed by the entering arc; returns theta.
  std::int64_t pivot(int entering) {
    cycle_arcs_.clear();
    cycle_signs_.clear();
    int u = from_[entering], v = to_[entering];
    int x = v, y = u;
    while (x != y) {
      if (depth_[x] >= depth_[y]) {
        int a = parent_arc_[x];
        // walk direction x -> parent (same as cycle direction on the v-side)
        cycle_arcs_.push_back(a);
        cycle_signs_.push_back(from_[a] == x ? +1 : -1);
        x = parent_[x];
      } else {
        int a = parent_arc_[y];
        // cycle direction on the u-side runs parent -> y
        cycle_arcs_.push_back(a);
        cycle_signs_.push_back(to_[a] == y ? +1 : -1);
        y = parent_[y];
      }
    }

    std::int64_t theta = -1;
    int leaving = -1;
    for (std::size_t i = 0; i < cycle_arcs_.size(); ++i) {
      if (cycle_signs_[i] > 0) continue;
      std::int64_t f = flow_[cycle_arcs_[i]];
      if (theta < 0 || f < theta ||
          (f == theta && cycle_arcs_[i] < leaving)) {
        theta = f;
        leaving = cycle_arcs_[i];
      }
    }
    if (leaving < 0)
      throw SolveError(
          SolveError::Code::NegativeCycle,
          "negative-cost cycle with unbounded flow (infeasible or "
          "unbounded dual program)");

    flow_[entering] += theta;
    for (std::size_t i = 0; i < cycle_arcs_.size(); ++i)
      flow_[cycle_arcs_[i]] += cycle_signs_[i] * theta;

    in_tree_[leaving] = false;
    in_tree_[entering] = true;
    detach(adj_[from_[leaving]], leaving);
    detach(adj_[to_[leaving]], leaving);
    adj_[from_[entering]].push_back(entering);
    adj_[to_[entering]].push_back(entering);
    rebuild_tree();
    return theta;
  }

  static void detach(std::vector<int>& list, int arc) {
    auto it = std::find(list.begin(), list.end(), arc);
    if (it != list.end()) {
      *it = list.back();
      list.pop_back();
    }
  }

  const FlowNetwork& net_;
  std::int64_t big_m_ = 0;
  int root_ = 0;
  int first_artificial_ = 0;
  std::vector<int> from_, to_, orig_;
  std::vector<std::int64_t> cost_, flow_;
  std::vector<bool> in_tree_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> parent_, parent_arc_, depth_;
  std::vector<std::int64_t> potential_;
  std::vector<int> bfs_;
  std::vector<int> cycle_arcs_;
  std::vector<int> cycle_signs_;
  std::vector<std::uint32_t> visited_mark_;
  std::uint32_t mark_ = 1;
};

}  // namespace

FlowSolution solve_mcnf(const FlowNetwork& network) {
  if (network.nodes.empty())
    throw SolveError(SolveError::Code::Unbalanced, "empty network");
  NetworkSimplex simplex(network);
  return simplex.run();
}

Assignment extract_assignment(const FlowNetwork& network,
                              const FlowSolution& solution) {
  if (network.ground < 0 ||
      network.ground >= static_cast<int>(network.nodes.size()))
    throw SolveError(SolveError::Code::Inconsistent, "network has no ground node");
  const std::int64_t shift = -solution.potential[network.ground];

  int max_vertex = -1;
  for (const FlowNode& node : network.nodes)
    max_vertex = std::max(max_vertex, node.var.vertex);
  Assignment a;
  a.create.assign(max_vertex + 1, 0);
  a.discard.assign(max_vertex + 1, 0);
  a.effective.assign(max_vertex + 1, 0);
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    const ModelVar& var = network.nodes[i].var;
    const std::int64_t value = solution.potential[i] + shift;
    switch (var.kind) {
      case VarKind::Ground: break;
      case VarKind::StageCount: a.stage_count = value; break;
      case VarKind::Create: a.create[var.vertex] = value; break;
      case VarKind::Discard: a.discard[var.vertex] = value; break;
      case VarKind::Effective: a.effective[var.vertex] = value; break;
    }
  }
  for (int node : network.source_create_nodes)
    if (solution.potential[node] + shift != 1)
      throw SolveError(SolveError::Code::Inconsistent,
                       "source pinning disagrees: " +
                           network.nodes[node].var.name() + " = " +
                           std::to_string(solution.potential[node] + shift));
  return a;
}

std::string check_optimality(const FlowNetwork& network,
                             const FlowSolution& solution) {
  std::vector<std::int64_t> divergence(network.nodes.size(), 0);
  for (std::size_t i = 0; i < network.arcs.size(); ++i) {
    const FlowArc& a = network.arcs[i];
    const std::int64_t f = solution.flow[i];
    divergence[a.from] += f;
    divergence[a.to] -= f;
    if (!a.free_lower && f < 0)
      return "arc " + std::to_string(i) + " carries negative flow " +
             std::to_string(f);
    const std::int64_t rc =
        a.cost - solution.potential[a.from] + solution.potential[a.to];
    if (rc < 0)
      return "arc " + std::to_string(i) + " has negative reduced cost " +
             std::to_string(rc);
    const bool off_lower = a.free_lower || f > 0;
    if (off_lower && rc != 0)
      return "arc " + std::to_string(i) +
             " carries flow but has reduced cost " + std::to_string(rc);
  }
  for (std::size_t v = 0; v < network.nodes.size(); ++v)
    if (divergence[v] != network.nodes[v].supply)
      return "node " + std::to_string(v) + " balance is " +
             std::to_string(divergence[v]) + ", supply is " +
             std::to_string(network.nodes[v].supply);
  return "";
}

std::string dump_dimacs(const FlowNetwork& network) {
  std::int64_t max_cost = 0, supply_mag = 0;
  for (const FlowArc& a : network.arcs)
    max_cost = std::max(max_cost, a.cost < 0 ? -a.cost : a.cost);
  for (const FlowNode& n : network.nodes)
    supply_mag += n.supply < 0 ? -n.supply : n.supply;
  const std::int64_t m =
      (static_cast<std::int64_t>(network.nodes.size()) + 2) * (max_cost + 1) *
      std::max<std::int64_t>(supply_mag, 1);

  std::string out = "p min " + std::to_string(network.nodes.size()) + " " +
                    std::to_string(network.arcs.size()) + "\n";
  for (std::size_t i = 0; i < network.nodes.size(); ++i)
    if (network.nodes[i].supply != 0)
      out += "n " + std::to_string(i + 1) + " " +
             std::to_string(network.nodes[i].supply) + "\n";
  for (const FlowArc& a : network.arcs) {
    const std::int64_t lower = a.free_lower ? -m : 0;
    out += "a " + std::to_string(a.from + 1) + " " + std::to_string(a.to + 1) +
           " " + std::to_string(lower) + " " + std::to_string(m) + " " +
           std::to_string(a.cost) + "\n";
  }
  return out;
}

}  // namespace quarkflow
