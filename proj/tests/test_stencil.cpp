#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quarkflow/stencil.hpp"
#include "test_util.hpp"

using namespace quarkflow;

namespace {

const char* kHeatMidpointDsl = R"(
input u0;
let r = 1 / 2;
let uHalf = u0 + r / 2 * (im(u0) + ip(u0) - 2 * u0);
output un = u0 + r * (im(uHalf) + ip(uHalf) - 2 * uHalf);
)";

}  // namespace

TEST_CASE("rational arithmetic and exact printing") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK((Rational(1) / Rational(8)).to_string() == "0.125");
  CHECK(Rational(3, 4).to_string() == "0.75");
  CHECK(Rational(-1, 2).to_string() == "-0.5");
  CHECK(Rational(7, 2).to_string() == "3.5");
  CHECK(Rational(5).to_string() == "5");
  CHECK(Rational(1, 6).to_string() == "1/6");
  CHECK(Rational(-2, 7).to_string() == "-2/7");
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("parse: minimal program") {
  StencilProgram prog = parse_stencil("input u; output r = u + 1;");
  CHECK(prog.inputs.size() == 1);
  CHECK(prog.outputs.size() == 1);
  TracedGraph traced = trace(prog);
  CHECK(traced.graph.vertex_count() == 2);  // u and the add
  CHECK(traced.graph.edge_count() == 1);
}

TEST_CASE("parse: heatMidpoint source traces to the expected graph") {
  TracedGraph traced = trace(parse_stencil(kHeatMidpointDsl));
  ValidationReport report = validate(traced.graph);
  REQUIRE(report.ok());
  CHECK(report.sources.size() == 1);
  CHECK(report.sinks.size() == 1);
  CHECK(swept_depth(traced.graph) == 2);
  CHECK(traced.graph.swept_count() == 4);
  // the scalar r folded away: one intermediate named uHalf, no r vertex
  bool found_uhalf = false;
  for (const Vertex& v : traced.graph.vertices) {
    CHECK(v.label != "r");
    found_uhalf = found_uhalf || v.label == "uHalf";
  }
  CHECK(found_uhalf);
}

TEST_CASE("parse: chained shifts compose") {
  TracedGraph traced =
      trace(parse_stencil("input u; output r = im(im(u));"));
  CHECK(traced.graph.vertex_count() == 3);
  CHECK(traced.graph.swept_count() == 2);
  CHECK(swept_depth(traced.graph) == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_stencil("input u; output r = v;"), ParseError);
  CHECK_THROWS_AS(parse_stencil("input u; output r = u / 0;"), ParseError);
  CHECK_THROWS_AS(parse_stencil("input u output r = u;"), ParseError);
  CHECK_THROWS_AS(parse_stencil(""), ParseError);
  CHECK_THROWS_AS(parse_stencil("input u;"), ParseError);           // no output
  CHECK_THROWS_AS(parse_stencil("output r = 1 + 2;"), ParseError);  // no input
  CHECK_THROWS_AS(parse_stencil("input u; let u = 1; output r = u;"),
                  ParseError);
  CHECK_THROWS_AS(parse_stencil("input im; output r = im;"), ParseError);
}

TEST_CASE("input weights flow into vertices and steer the optimum") {
  TracedGraph traced = trace(parse_stencil(
      "input u weight 3; output r = im(u) + u;"));
  CHECK(traced.graph.vertices[traced.inputs[0].second].weight == 3);
  CHECK_THROWS_AS(parse_stencil("input u weight 0; output r = u;"),
                  ParseError);
}

TEST_CASE("trace: pass-through output shares the input vertex") {
  TracedGraph traced = trace(parse_stencil("input u; output r = u;"));
  CHECK(traced.graph.vertex_count() == 1);
  CHECK(traced.graph.edge_count() == 0);
  CHECK(traced.inputs[0].second == traced.outputs[0].second);
}

TEST_CASE("trace: hash-consing shares repeated subexpressions") {
  TracedGraph traced = trace(parse_stencil(
      "input u; output a = im(u) + u; output b = im(u) * u;"));
  // im(u) appears once with out-degree 2
  int shift_vertex = -1;
  for (VertexId v = 0; v < traced.graph.vertex_count(); ++v)
    if (traced.ops[v].kind == ExprKind::Shift) {
      CHECK(shift_vertex == -1);
      shift_vertex = v;
    }
  REQUIRE(shift_vertex >= 0);
  int out_degree = 0;
  for (const Edge& e : traced.graph.edges)
    out_degree += e.src == shift_vertex ? 1 : 0;
  CHECK(out_degree == 2);
}

TEST_CASE("trace: constant output is rejected") {
  CHECK_THROWS_AS(trace(parse_stencil("input u; output r = 1 + 2;")),
                  GraphError);
}

TEST_CASE("tracing is deterministic and idempotent") {
  TracedGraph a = trace(parse_stencil(kHeatMidpointDsl));
  TracedGraph b = trace(parse_stencil(kHeatMidpointDsl));
  CHECK(a.graph == b.graph);
}

TEST_CASE("every swept edge ends at a shift vertex with one incoming edge") {
  for (const TracedGraph& traced :
       {gen_heat1d_midpoint(), gen_heat3d_midpoint(), gen_euler3d_rk4()}) {
    GraphIndex index(traced.graph);
    for (const Edge& e : traced.graph.edges) {
      if (!e.swept) continue;
      CHECK(traced.ops[e.dst].kind == ExprKind::Shift);
    }
    for (VertexId v = 0; v < traced.graph.vertex_count(); ++v) {
      if (traced.ops[v].kind != ExprKind::Shift) continue;
      REQUIRE(index.in_edges[v].size() == 1);
      CHECK(traced.graph.edges[index.in_edges[v][0]].swept);
    }
  }
}

TEST_CASE("gen_heat1d_midpoint matches the reference structure") {
  TracedGraph traced = gen_heat1d_midpoint();
  CHECK(traced.graph.vertex_count() == 15);
  CHECK(traced.graph.edge_count() == 20);
  CHECK(traced.graph.swept_count() == 4);
  CHECK(swept_depth(traced.graph) == 2);
  ValidationReport report = validate(traced.graph);
  CHECK(report.sources.size() == 1);
  CHECK(report.sinks.size() == 1);
}

TEST_CASE("gen_heat3d_midpoint: 6 swept edges, depth 2") {
  TracedGraph traced = gen_heat3d_midpoint();
  CHECK(validate(traced.graph).ok());
  CHECK(traced.graph.swept_count() == 6);
  CHECK(swept_depth(traced.graph) == 2);
}

TEST_CASE("gen_euler3d_rk4: depth 8, five state inputs plus fields") {
  TracedGraph traced = gen_euler3d_rk4();
  CHECK(validate(traced.graph).ok());
  CHECK(swept_depth(traced.graph) == 8);
  CHECK(traced.inputs.size() == 12);  // 5 state + 7 spatial fields
  CHECK(traced.outputs.size() == 5);
  CHECK(validate(traced.graph).sinks.size() == 5);
}

TEST_CASE("traced graphs always validate") {
  for (const TracedGraph& traced :
       {gen_heat1d_midpoint(), gen_heat3d_midpoint(), gen_euler3d_rk4()})
    CHECK(validate(traced.graph).ok());
}

TEST_CASE("manufactured cases validate with the narrated shapes") {
  for (char which = 'a'; which <= 'f'; ++which) {
    ComputationalGraph g = manufactured_case(which);
    CAPTURE(which);
    CHECK(validate(g).ok());
    CHECK(g.vertex_count() == 8);
    CHECK(swept_depth(g) == (which == 'f' ? 4 : 3));
  }
  CHECK(manufactured_case('a').swept_count() == 3);
  CHECK(manufactured_case('f').swept_count() == 4);
  CHECK_THROWS_AS(manufactured_case('z'), GraphError);
}
