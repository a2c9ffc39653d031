#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quarkflow/model.hpp"
#include "quarkflow/stencil.hpp"
#include "quarkflow/verify.hpp"
#include "test_util.hpp"

using namespace quarkflow;
using testutil::make_graph;

namespace {

// V = {0, 1}, single swept edge (0,1), unit weights.
ComputationalGraph single_swept() { return make_graph(2, {{0, 1, true}}); }

int count_family(const DecompositionModel& model, ConstraintFamily family) {
  int n = 0;
  for (const DiffConstraint& c : model.constraints)
    n += c.family == family ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("build_model emits the expected constraints for one swept edge") {
  DecompositionModel model = build_model(single_swept(), 1);
  // 1 per vertex, 1 source pin, 1 sink pin, 2 per edge, 2 per vertex for the
  // effective bounds, 1 per edge for ordering, 1 swept-target.
  CHECK(count_family(model, ConstraintFamily::CreateLeDiscard) == 2);
  CHECK(count_family(model, ConstraintFamily::SourcePin) == 1);
  CHECK(count_family(model, ConstraintFamily::SinkPin) == 1);
  CHECK(count_family(model, ConstraintFamily::EdgeCreateOrder) == 1);
  CHECK(count_family(model, ConstraintFamily::EdgeSpan) == 1);
  CHECK(count_family(model, ConstraintFamily::EffectiveLower) == 2);
  CHECK(count_family(model, ConstraintFamily::EffectiveUpper) == 2);
  CHECK(count_family(model, ConstraintFamily::EffectiveOrder) == 0);
  CHECK(count_family(model, ConstraintFamily::SweptSeparation) == 1);
  CHECK(count_family(model, ConstraintFamily::SweptTarget) == 1);
  CHECK(model.constraints.size() == 12);

  std::string dump = dump_model(model);
  CHECK(dump.find("c0 - ground == 1") != std::string::npos);
  CHECK(dump.find("d1 - K == 0") != std::string::npos);
  CHECK(dump.find("c0 - c1 <= 0") != std::string::npos);
  CHECK(dump.find("e0 - e1 <= -1") != std::string::npos);
  CHECK(dump.find("c1 - e1 <= -1") != std::string::npos);
  CHECK(dump.find("min: 1*K + 1*d0 - 1*c0 + 1*d1 - 1*c1") == 0);
}

TEST_CASE("every constraint is a unit difference with bound in -1..1") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    ComputationalGraph g = random_graph(seed, 8, 0.4, 0.4);
    DecompositionModel model = build_model(g, 3);
    for (const DiffConstraint& c : model.constraints) {
      CHECK(!(c.u == c.v));
      CHECK(c.bound >= -1);
      CHECK(c.bound <= 1);
    }
  }
}

TEST_CASE("oracle optimum of the single-swept-edge program") {
  OracleResult best = brute_force_optimum(single_swept(), 1);
  CHECK(best.objective == 1);  // wk * 1 + 0 sharing
  CHECK(best.assignment.stage_count == 1);
  CHECK(best.assignment.create == std::vector<std::int64_t>{1, 1});
  CHECK(best.assignment.discard == std::vector<std::int64_t>{1, 1});
  CHECK(best.assignment.effective == std::vector<std::int64_t>{1, 2});
  DecompositionModel model = build_model(single_swept(), 1);
  CHECK(check_feasible(model, best.assignment).empty());
  CHECK(objective_value(model, best.assignment) == 1);
}

TEST_CASE("no swept edges forces a single stage") {
  ComputationalGraph diamond = make_graph(
      4, {{0, 1, false}, {0, 2, false}, {1, 3, false}, {2, 3, false}});
  OracleResult best = brute_force_optimum(diamond, 5);
  CHECK(best.objective == 5);  // wk alone
  CHECK(best.assignment.stage_count == 1);
  for (VertexId v = 0; v < 4; ++v) {
    CHECK(best.assignment.create[v] == 1);
    CHECK(best.assignment.discard[v] == 1);
  }
}

TEST_CASE("double-swept chain splits into two stages with one shared value") {
  ComputationalGraph chain = make_graph(3, {{0, 1, true}, {1, 2, true}});
  OracleResult best = brute_force_optimum(chain, 1);
  CHECK(best.objective == 3);  // 2*wk + 1
  CHECK(best.assignment.stage_count == 2);
  CHECK(best.assignment.discard[1] - best.assignment.create[1] == 1);
}

TEST_CASE("objective_value basics") {
  ComputationalGraph g = make_graph(2, {{0, 1, false}}, {1, 7});
  DecompositionModel model = build_model(g, 4);
  Assignment flat;
  flat.stage_count = 1;
  flat.create = {1, 1};
  flat.discard = {1, 1};
  flat.effective = {1, 1};
  CHECK(objective_value(model, flat) == 4);  // wk only, zero spans

  // doubling a weight with zero span changes nothing
  ComputationalGraph g2 = make_graph(2, {{0, 1, false}}, {1, 14});
  CHECK(objective_value(build_model(g2, 4), flat) == 4);

  Assignment missing;
  missing.stage_count = 1;
  CHECK_THROWS_AS(objective_value(model, missing), MissingVarError);
}

TEST_CASE("check_feasible pinpoints violated families") {
  ComputationalGraph g = single_swept();
  DecompositionModel model = build_model(g, 1);

  Assignment ok;
  ok.stage_count = 1;
  ok.create = {1, 1};
  ok.discard = {1, 1};
  ok.effective = {1, 2};
  CHECK(check_feasible(model, ok).empty());

  // e at its creating stage on a swept target violates family 8
  Assignment flat_e = ok;
  flat_e.effective = {1, 1};
  auto violations = check_feasible(model, flat_e);
  REQUIRE(!violations.empty());
  bool family8 = false;
  for (const DiffConstraint& c : violations)
    family8 = family8 || c.family == ConstraintFamily::SweptTarget;
  CHECK(family8);

  // creating stages out of order along an edge violate family 4
  ComputationalGraph chain = make_graph(2, {{0, 1, false}});
  DecompositionModel chain_model = build_model(chain, 1);
  Assignment backwards;
  backwards.stage_count = 2;
  backwards.create = {2, 1};
  backwards.discard = {2, 2};
  backwards.effective = {2, 1};
  bool family4 = false;
  for (const DiffConstraint& c : check_feasible(chain_model, backwards))
    family4 = family4 || c.family == ConstraintFamily::EdgeCreateOrder;
  CHECK(family4);
}

TEST_CASE("feasible assignments never beat the swept-depth stage bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ComputationalGraph g = random_graph(seed, 6, 0.45, 0.5);
    OracleResult best = brute_force_optimum(g, 1);
    CAPTURE(seed);
    CHECK(best.assignment.stage_count >= swept_depth(g));
  }
}
