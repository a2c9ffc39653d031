#include "quarkflow/model.hpp"

namespace quarkflow {

std::string ModelVar::name() const {
  switch (kind) {
    case VarKind::Ground: return "ground";
    case VarKind::StageCount: return "K";
    case VarKind::Create: return "c" + std::to_string(vertex);
    case VarKind::Discard: return "d" + std::to_string(vertex);
    case VarKind::Effective: return "e" + std::to_string(vertex);
  }
  return "?";
}

int family_number(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::CreateLeDiscard: return 1;
    case ConstraintFamily::SourcePin: return 2;
    case ConstraintFamily::SinkPin: return 3;
    case ConstraintFamily::EdgeCreateOrder:
    case ConstraintFamily::EdgeSpan: return 4;
    case ConstraintFamily::EffectiveLower:
    case ConstraintFamily::EffectiveUpper: return 5;
    case ConstraintFamily::EffectiveOrder: return 6;
    case ConstraintFamily::SweptSeparation: return 7;
    case ConstraintFamily::SweptTarget: return 8;
  }
  return 0;
}

std::string DiffConstraint::to_string() const {
  return u.name() + " - " + v.name() + (equality ? " == " : " <= ") +
         std::to_string(bound);
}

std::int64_t Assignment::get(const ModelVar& var) const {
  auto at = [&](const std::vector<std::int64_t>& values) {
    if (var.vertex < 0 || var.vertex >= static_cast<int>(values.size()))
      throw MissingVarError("assignment has no value for " + var.name());
    return values[var.vertex];
  };
  switch (var.kind) {
    case VarKind::Ground: return 0;
    case VarKind::StageCount: return stage_count;
    case VarKind::Create: return at(create);
    case VarKind::Discard: return at(discard);
    case VarKind::Effective: return at(effective);
  }
  throw MissingVarError("unknown variable kind");
}

DecompositionModel build_model(const ComputationalGraph& graph,
                               std::int64_t wk) {
  require_valid(graph);
  if (wk < 1) throw GraphError("wk must be a positive integer");
  GraphIndex index(graph);

  DecompositionModel model;
  model.wk = wk;
  model.weights.reserve(graph.vertex_count());
  for (const Vertex& v : graph.vertices) model.weights.push_back(v.weight);
  model.sources = index.sources;
  model.sinks = index.sinks;
  model.has_swept_in = index.has_swept_in;

  auto& cs = model.constraints;
  const int n = graph.vertex_count();
  for (VertexId i = 0; i < n; ++i)
    cs.push_back({create_var(i), discard_var(i), 0, false,
                  ConstraintFamily::CreateLeDiscard});
  for (VertexId i : model.sources)
    cs.push_back({create_var(i), ground_var(), 1, true,
                  ConstraintFamily::SourcePin});
  for (VertexId i : model.sinks)
    cs.push_back({discard_var(i), stage_count_var(), 0, true,
                  ConstraintFamily::SinkPin});
  for (const Edge& e : graph.edges) {
    cs.push_back({create_var(e.src), create_var(e.dst), 0, false,
                  ConstraintFamily::EdgeCreateOrder});
    cs.push_back({create_var(e.dst), discard_var(e.src), 0, false,
                  ConstraintFamily::EdgeSpan});
  }
  for (VertexId i = 0; i < n; ++i) {
    cs.push_back({create_var(i), effective_var(i), 0, false,
                  ConstraintFamily::EffectiveLower});
    cs.push_back({effective_var(i), create_var(i), 1, false,
                  ConstraintFamily::EffectiveUpper});
  }
  for (const Edge& e : graph.edges) {
    if (e.swept)
      cs.push_back({effective_var(e.src), effective_var(e.dst), -1, false,
                    ConstraintFamily::SweptSeparation});
    else
      cs.push_back({effective_var(e.src), effective_var(e.dst), 0, false,
                    ConstraintFamily::EffectiveOrder});
  }
  for (VertexId i = 0; i < n; ++i)
    if (model.has_swept_in[i])
      cs.push_back({create_var(i), effective_var(i), -1, false,
                    ConstraintFamily::SweptTarget});
  return model;
}

std::int64_t objective_value(const DecompositionModel& model,
                             const Assignment& assignment) {
  if (static_cast<int>(assignment.create.size()) < model.vertex_count() ||
      static_cast<int>(assignment.discard.size()) < model.vertex_count())
    throw MissingVarError("assignment does not cover all vertices");
  std::int64_t total = model.wk * assignment.stage_count;
  for (VertexId i = 0; i < model.vertex_count(); ++i)
    total += model.weights[i] * (assignment.discard[i] - assignment.create[i]);
  return total;
}

std::vector<DiffConstraint> check_feasible(const DecompositionModel& model,
                                           const Assignment& assignment) {
  std::vector<DiffConstraint> violated;
  for (const DiffConstraint& c : model.constraints) {
    std::int64_t diff = assignment.get(c.u) - assignment.get(c.v);
    bool ok = c.equality ? diff == c.bound : diff <= c.bound;
    if (!ok) violated.push_back(c);
  }
  return violated;
}

std::string dump_model(const DecompositionModel& model) {
  std::string out;
  out += "min: " + std::to_string(model.wk) + "*K";
  for (VertexId i = 0; i < model.vertex_count(); ++i) {
    const std::string w = std::to_string(model.weights[i]);
    out += " + " + w + "*d" + std::to_string(i);
    out += " - " + w + "*c" + std::to_string(i);
  }
  out += "\n";
  for (const DiffConstraint& c : model.constraints) out += c.to_string() + "\n";
  return out;
}

}  // namespace quarkflow
