#include <array>

#include "quarkflow/stencil.hpp"

namespace quarkflow {

namespace {

// One midpoint half-step: u + c * ((left + right) - 2*u), matching the
// 1D laplacian grouping used throughout the bundled formulas. Shift nodes
// are created left to right so vertex ids don't depend on the compiler's
// argument evaluation order.
ExprId heat1d_halfstep(ExprPool& p, ExprId u, Rational c) {
  ExprId left = p.shift(ShiftDir::Im, u);
  ExprId right = p.shift(ShiftDir::Ip, u);
  ExprId lap = p.sub(p.add(left, right), p.mul(p.constant(2), u));
  return p.add(u, p.mul(p.constant(c), lap));
}

// 3D variant over centered axis gathers: the per-axis neighbor pair
// (value[i-1] + value[i+1]) enters the graph as a single gather node, so the
// update reads one swept dependency per axis per level.
ExprId heat3d_halfstep(ExprPool& p, ExprId u, Rational c) {
  ExprId two_u = p.mul(p.constant(2), u);
  ExprId acc = p.sub(p.shift(ShiftDir::SymI, u), two_u);
  acc = p.sub(p.add(acc, p.shift(ShiftDir::SymJ, u)), two_u);
  acc = p.sub(p.add(acc, p.shift(ShiftDir::SymK, u)), two_u);
  return p.add(u, p.mul(p.constant(c), acc));
}

}  // namespace

TracedGraph gen_heat1d_midpoint() {
  StencilProgram prog;
  ExprPool& p = prog.pool;
  ExprId u0 = p.input("u0");
  prog.inputs.push_back({"u0", 1, u0});
  const Rational r(1, 2);  // dt / dx^2 with dt = 1/200, dx = 1/10
  ExprId uhalf = heat1d_halfstep(p, u0, r / 2);
  prog.lets.push_back({"uHalf", uhalf});
  // The final step reads uHalf's neighbors but advances u0.
  ExprId left = p.shift(ShiftDir::Im, uhalf);
  ExprId right = p.shift(ShiftDir::Ip, uhalf);
  ExprId lap = p.sub(p.add(left, right), p.mul(p.constant(2), uhalf));
  prog.outputs.push_back({"un", p.add(u0, p.mul(p.constant(r), lap))});
  return trace(prog);
}

TracedGraph gen_heat3d_midpoint() {
  StencilProgram prog;
  ExprPool& p = prog.pool;
  ExprId u = p.input("u");
  prog.inputs.push_back({"u", 1, u});
  const Rational r(1, 2);  // dt / dx^2
  ExprId uh = heat3d_halfstep(p, u, r / 2);
  prog.lets.push_back({"uh", uh});
  ExprId two_uh = p.mul(p.constant(2), uh);
  ExprId acc = p.sub(p.shift(ShiftDir::SymI, uh), two_uh);
  acc = p.sub(p.add(acc, p.shift(ShiftDir::SymJ, uh)), two_uh);
  acc = p.sub(p.add(acc, p.shift(ShiftDir::SymK, uh)), two_uh);
  prog.outputs.push_back({"un", p.add(u, p.mul(p.constant(r), acc))});
  return trace(prog);
}

namespace {

// Skew-symmetric finite-difference Euler scheme with 4th-order dissipation,
// advanced by classic RK4. Five-component state (density, three momenta,
// pressure); spatially varying fan/obstacle data enter as unit-weight inputs.
class EulerBuilder {
 public:
  explicit EulerBuilder(StencilProgram& prog) : prog_(prog), p_(prog.pool) {
    for (const char* name : {"r", "rux", "ruy", "ruz", "p"}) {
      ExprId id = p_.input(name);
      prog_.inputs.push_back({name, 1, id});
      state_.push_back(id);
    }
    for (const char* name :
         {"fan", "obstacle", "r_fan", "ux_fan", "uy_fan", "uz_fan", "p_fan"}) {
      ExprId id = p_.input(name);
      prog_.inputs.push_back({name, 1, id});
      fields_[name] = id;
    }
  }

  std::vector<ExprId> initial_state() const { return state_; }

  std::vector<ExprId> step(const std::vector<ExprId>& w) {
    std::vector<ExprId> dw0 = scale(dt_, rhs(w));
    std::vector<ExprId> dw1 = scale(dt_, rhs(axpy(Rational(1, 2), dw0, w)));
    std::vector<ExprId> dw2 = scale(dt_, rhs(axpy(Rational(1, 2), dw1, w)));
    std::vector<ExprId> dw3 = scale(dt_, rhs(axpy(Rational(1), dw2, w)));
    std::vector<ExprId> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      ExprId ends = p_.div(p_.add(dw0[i], dw3[i]), p_.constant(6));
      ExprId mids = p_.div(p_.add(dw1[i], dw2[i]), p_.constant(3));
      out[i] = p_.add(p_.add(w[i], ends), mids);
    }
    return out;
  }

 private:
  ExprId c(Rational v) { return p_.constant(v); }
  ExprId field(const char* name) { return fields_.at(name); }

  ExprId centered_diff(ShiftDir plus, ShiftDir minus, ExprId w, Rational h) {
    ExprId fwd = p_.shift(plus, w);
    ExprId bwd = p_.shift(minus, w);
    return p_.div(p_.sub(fwd, bwd), c(Rational(2) * h));
  }
  ExprId diffx(ExprId w) {
    return centered_diff(ShiftDir::Ip, ShiftDir::Im, w, dx_);
  }
  ExprId diffy(ExprId w) {
    return centered_diff(ShiftDir::Jp, ShiftDir::Jm, w, dy_);
  }
  ExprId diffz(ExprId w) {
    return centered_diff(ShiftDir::Kp, ShiftDir::Km, w, dz_);
  }

  ExprId laplace(ExprId u) {
    ExprId sum = p_.shift(ShiftDir::Ip, u);
    sum = p_.add(sum, p_.shift(ShiftDir::Im, u));
    sum = p_.add(sum, p_.shift(ShiftDir::Jp, u));
    sum = p_.add(sum, p_.shift(ShiftDir::Jm, u));
    sum = p_.add(sum, p_.shift(ShiftDir::Kp, u));
    sum = p_.add(sum, p_.shift(ShiftDir::Km, u));
    return p_.sub(p_.div(sum, c(Rational(6))), u);
  }

  ExprId dissipation(ExprId r, ExprId u) {
    ExprId inner = p_.mul(p_.mul(p_.mul(c(diss_), r), r), laplace(u));
    return laplace(inner);
  }

  using Vec3 = std::array<ExprId, 3>;

  ExprId div_dot_v_phi(const Vec3& v, ExprId phi) {
    ExprId sum = diffx(p_.mul(v[0], phi));
    sum = p_.add(sum, diffy(p_.mul(v[1], phi)));
    return p_.add(sum, diffz(p_.mul(v[2], phi)));
  }

  ExprId v_dot_grad_phi(const Vec3& v, ExprId phi) {
    ExprId sum = p_.mul(v[0], diffx(phi));
    sum = p_.add(sum, p_.mul(v[1], diffy(phi)));
    return p_.add(sum, p_.mul(v[2], diffz(phi)));
  }

  std::vector<ExprId> rhs(const std::vector<ExprId>& w) {
    ExprId r = w[0], rux = w[1], ruy = w[2], ruz = w[3], pr = w[4];
    ExprId ux = p_.div(rux, r), uy = p_.div(ruy, r), uz = p_.div(ruz, r);
    Vec3 ru{rux, ruy, ruz};
    Vec3 u{ux, uy, uz};

    ExprId mass = div_dot_v_phi(ru, r);
    ExprId mom_x = p_.add(
        p_.div(p_.add(div_dot_v_phi(ru, rux), p_.mul(r, v_dot_grad_phi(ru, ux))),
               c(Rational(2))),
        diffx(pr));
    ExprId mom_y = p_.add(
        p_.div(p_.add(div_dot_v_phi(ru, ruy), p_.mul(r, v_dot_grad_phi(ru, uy))),
               c(Rational(2))),
        diffy(pr));
    ExprId mom_z = p_.add(
        p_.div(p_.add(div_dot_v_phi(ru, ruz), p_.mul(r, v_dot_grad_phi(ru, uz))),
               c(Rational(2))),
        diffz(pr));
    ExprId energy = p_.sub(p_.mul(c(gamma_), div_dot_v_phi(u, pr)),
                           p_.mul(c(gamma_ - Rational(1)), v_dot_grad_phi(u, pr)));

    ExprId diss_x = p_.div(p_.mul(dissipation(r, ux), c(c0_)), c(dx_));
    ExprId diss_y = p_.div(p_.mul(dissipation(r, uy), c(c0_)), c(dy_));
    ExprId diss_z = p_.div(p_.mul(dissipation(r, uz), c(c0_)), c(dz_));

    ExprId c0fan = p_.mul(c(c0_), field("fan"));
    ExprId c0obs = p_.mul(c(c0_), field("obstacle"));
    ExprId rhs_r = p_.mul(c0fan, p_.sub(r, field("r_fan")));
    ExprId rhs_ux =
        p_.add(p_.mul(c0fan, p_.sub(ux, field("ux_fan"))), p_.mul(c0obs, ux));
    ExprId rhs_uy =
        p_.add(p_.mul(c0fan, p_.sub(uy, field("uy_fan"))), p_.mul(c0obs, uy));
    ExprId rhs_uz =
        p_.add(p_.mul(c0fan, p_.sub(uz, field("uz_fan"))), p_.mul(c0obs, uz));
    ExprId rhs_p = p_.mul(c0fan, p_.sub(pr, field("p_fan")));

    ExprId mass_term =
        p_.add(p_.div(p_.sub(mass, rhs_r), p_.mul(c(Rational(2)), r)),
               p_.mul(field("fan"), p_.sub(r, field("r_fan"))));
    std::vector<ExprId> out(5);
    out[0] = p_.negate(mass_term);
    out[1] = p_.negate(p_.div(p_.sub(p_.add(mom_x, diss_x), rhs_ux), r));
    out[2] = p_.negate(p_.div(p_.sub(p_.add(mom_y, diss_y), rhs_uy), r));
    out[3] = p_.negate(p_.div(p_.sub(p_.add(mom_z, diss_z), rhs_uz), r));
    out[4] = p_.negate(p_.sub(energy, rhs_p));
    return out;
  }

  std::vector<ExprId> scale(Rational s, const std::vector<ExprId>& v) {
    std::vector<ExprId> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = p_.mul(c(s), v[i]);
    return out;
  }

  // w + s * dw, component-wise
  std::vector<ExprId> axpy(Rational s, const std::vector<ExprId>& dw,
                           const std::vector<ExprId>& w) {
    std::vector<ExprId> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      out[i] = s == Rational(1) ? p_.add(w[i], dw[i])
                                : p_.add(w[i], p_.mul(c(s), dw[i]));
    return out;
  }

  StencilProgram& prog_;
  ExprPool& p_;
  std::vector<ExprId> state_;
  std::unordered_map<std::string, ExprId> fields_;
  Rational dt_{1, 1000};
  Rational dx_{1, 10}, dy_{1, 10}, dz_{1, 10};
  Rational gamma_{7, 5};
  Rational c0_{1, 20};
  Rational diss_{1, 100};
};

}  // namespace

TracedGraph gen_euler3d_rk4() {
  StencilProgram prog;
  EulerBuilder builder(prog);
  std::vector<ExprId> out = builder.step(builder.initial_state());
  const char* names[5] = {"r_new", "rux_new", "ruy_new", "ruz_new", "p_new"};
  for (int i = 0; i < 5; ++i) prog.outputs.push_back({names[i], out[i]});
  return trace(prog);
}

ComputationalGraph manufactured_case(char which) {
  if (which < 'a' || which > 'f')
    throw GraphError(std::string("unknown manufactured case '") + which + "'");
  ComputationalGraph g;
  const std::int64_t weights[8] = {1, 4, 1, 2, 1, 1, 4, 1};
  for (VertexId v = 0; v < 8; ++v) g.vertices.push_back({v, weights[v], ""});
  for (VertexId v = 0; v < 7; ++v) {
    bool swept = v == 1 || v == 3 || v == 5;
    if (which == 'f' && v == 4) swept = true;
    g.edges.push_back({v, v + 1, swept});
  }
  if (which >= 'b') {
    g.edges.push_back({2, 4, false});
    g.edges.push_back({4, 7, false});
  }
  if (which >= 'c') g.edges.push_back({1, 3, false});
  if (which >= 'd') g.edges.push_back({2, 5, false});
  if (which >= 'e') g.edges.push_back({2, 6, false});
  return g;
}

}  // namespace quarkflow
