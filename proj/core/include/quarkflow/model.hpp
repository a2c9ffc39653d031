#ifndef QUARKFLOW_MODEL_HPP
#define QUARKFLOW_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "quarkflow/graph.hpp"

namespace quarkflow {

enum class VarKind {
  Ground,      // fixed reference, value 0 by convention
  StageCount,  // K
  Create,      // first stage owning the vertex
  Discard,     // last stage using the vertex
  Effective,   // auxiliary per-vertex label enforcing stage atomicity
};

struct ModelVar {
  VarKind kind = VarKind::Ground;
  VertexId vertex = -1;  // Create/Discard/Effective only

  friend bool operator==(const ModelVar& a, const ModelVar& b) {
    return a.kind == b.kind && a.vertex == b.vertex;
  }
  std::string name() const;  // "ground", "K", "c3", "d7", "e2"
};

inline ModelVar ground_var() { return {VarKind::Ground, -1}; }
inline ModelVar stage_count_var() { return {VarKind::StageCount, -1}; }
inline ModelVar create_var(VertexId v) { return {VarKind::Create, v}; }
inline ModelVar discard_var(VertexId v) { return {VarKind::Discard, v}; }
inline ModelVar effective_var(VertexId v) { return {VarKind::Effective, v}; }

/// The constraint families of the decomposition program. Numbers match the
/// emission order in build_model.
enum class ConstraintFamily {
  CreateLeDiscard,   // 1: c_i - d_i <= 0
  SourcePin,         // 2: c_i - ground == 1 for sources
  SinkPin,           // 3: d_i - K == 0 for sinks
  EdgeCreateOrder,   // 4a: c_i - c_j <= 0 for edges (i,j)
  EdgeSpan,          // 4b: c_j - d_i <= 0 for edges (i,j)
  EffectiveLower,    // 5a: c_i - e_i <= 0
  EffectiveUpper,    // 5b: e_i - c_i <= 1
  EffectiveOrder,    // 6: e_i - e_j <= 0 for non-swept edges
  SweptSeparation,   // 7: e_i - e_j <= -1 for swept edges
  SweptTarget,       // 8: c_i - e_i <= -1 when some swept edge enters i
};

int family_number(ConstraintFamily family);

/// Two-variable difference constraint u - v <= bound (or == bound).
struct DiffConstraint {
  ModelVar u, v;
  std::int64_t bound = 0;
  bool equality = false;
  ConstraintFamily family = ConstraintFamily::CreateLeDiscard;

  std::string to_string() const;  // "c3 - d7 <= 0", "c0 - ground == 1"
};

/// Integer assignment of all model variables, ground pinned to 0.
struct Assignment {
  std::int64_t stage_count = 1;
  std::vector<std::int64_t> create, discard, effective;  // per vertex

  std::int64_t get(const ModelVar& var) const;
};

/// The decomposition integer program for one graph: variables
/// (K, c_i, d_i, e_i), the eight difference-constraint families, and the
/// objective  wk * K + sum_i w_i * (d_i - c_i).
struct DecompositionModel {
  std::int64_t wk = 1;
  std::vector<std::int64_t> weights;  // per vertex
  std::vector<VertexId> sources, sinks;
  std::vector<bool> has_swept_in;
  std::vector<DiffConstraint> constraints;

  int vertex_count() const { return static_cast<int>(weights.size()); }
};

struct MissingVarError : std::runtime_error {
  explicit MissingVarError(const std::string& msg) : std::runtime_error(msg) {}
};

DecompositionModel build_model(const ComputationalGraph& graph, std::int64_t wk);

std::int64_t objective_value(const DecompositionModel& model,
                             const Assignment& assignment);

/// Constraints violated by the assignment; empty means feasible.
std::vector<DiffConstraint> check_feasible(const DecompositionModel& model,
                                           const Assignment& assignment);

/// Debug dump: one constraint per line plus the objective line.
std::string dump_model(const DecompositionModel& model);

}  // namespace quarkflow

#endif  // QUARKFLOW_MODEL_HPP
