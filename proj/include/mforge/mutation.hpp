#pragma once

#include <optional>

#include "mforge/theta.hpp"

namespace mforge {

// The dual morphism space together with the identifications used to build it.
//   N1' = B0, N2' = N2*, M1' = M1, B0' = N1, M' = N, N' = M
//   A0' = ker rho2 inside B0⊗N2, basis `kernel` (b0*n2 x a0')
//   M2' = (N2*⊗N1) / nu-bar(A0), recorded by `quot`
template <ExactField F>
struct Dual {
  Theta<F> theta;
  Matrix<F> kernel;
  Quotient<F> quot;
};

template <ExactField F>
Dual<F> build_dual(const Theta<F>& t) {
  require_valid(t, "build_dual");
  const auto& d = t.d;
  const FieldTag f = t.field;
  Dual<F> out;
  out.kernel = kernel_basis(t.rho2);
  out.quot = quotient_data<F>(f, d.n2 * d.n1, t.nu_bar());
  const size_t a0p = out.kernel.cols();
  const size_t m2p = out.quot.projection.rows();

  ThetaDims e;
  e.n1 = d.b0;
  e.n2 = d.n2;
  e.m1 = d.m1;
  e.m2 = m2p;
  e.a0 = a0p;
  e.b0 = d.n1;
  e.m = d.n;
  e.n = d.m;

  Theta<F>& u = out.theta;
  u.field = f;
  u.d = e;
  u.rho1 = t.rho1 * swap_factors<F>(f, d.n1, d.b0);
  u.rho2 = out.quot.projection * swap_factors<F>(f, d.n1, d.n2);
  u.nu = Matrix<F>(f, e.n1, e.n2 * e.a0);
  for (size_t b = 0; b < d.b0; ++b)
    for (size_t x = 0; x < d.n2; ++x)
      for (size_t k = 0; k < a0p; ++k) u.nu(b, x * a0p + k) = out.kernel(b * d.n2 + x, k);
  // mu'(q ⊗ k) = rho1(kappa_k ∘ s_q) with kappa_k : N2* -> B0 and s_q : N1* -> N2* as matrices.
  u.mu = Matrix<F>(f, e.m1, m2p * a0p);
  for (size_t k = 0; k < a0p; ++k) {
    auto kappa = out.kernel.col(k).reshape(d.b0, d.n2);
    for (size_t q = 0; q < m2p; ++q) {
      auto sq = out.quot.section.col(q).reshape(d.n2, d.n1);
      u.mu.set_block(0, q * a0p + k, t.rho1 * (kappa * sq).vec());
    }
  }
  // Well defined: rho1(kappa ∘ nu-bar(alpha)) = 0.
  auto nb = t.nu_bar();
  for (size_t k = 0; k < a0p; ++k) {
    auto kappa = out.kernel.col(k).reshape(d.b0, d.n2);
    for (size_t a = 0; a < d.a0; ++a)
      if (!(t.rho1 * (kappa * nb.col(a).reshape(d.n2, d.n1)).vec()).is_zero())
        throw DomainError("build_dual: induced map on the quotient is not well defined");
  }
  return out;
}

// Identification of D(D(Θ)) with Θ: t_a0 maps A0 to A0'', phi maps M2'' to M2.
template <ExactField F>
struct DoubleDual {
  Matrix<F> t_a0;
  Matrix<F> phi;
  Report checks;
};

template <ExactField F>
DoubleDual<F> double_dual_witness(const Theta<F>& t, const Dual<F>& d1, const Dual<F>& d2) {
  const auto& d = t.d;
  const FieldTag f = t.field;
  const auto& tt = d2.theta;
  DoubleDual<F> out;
  out.checks.add("dimensions", tt.d == d, tt.d.str() + " vs " + d.str());
  if (!(tt.d == d)) return out;
  // A0'' = ker rho2' inside N1⊗N2*; nu-bar(A0) sits there after swapping factors.
  auto image = swap_factors<F>(f, d.n2, d.n1) * t.nu_bar();
  auto ta = solve(d2.kernel, image);
  out.checks.add("A0 identification", ta.has_value() && is_invertible(*ta));
  if (!ta || !is_invertible(*ta)) return out;
  out.t_a0 = *ta;
  out.phi = t.rho2 * swap_factors<F>(f, d.n2, d.b0) * d2.quot.section;
  out.checks.add("M2 identification", is_invertible(out.phi));
  if (!is_invertible(out.phi)) return out;
  auto I = [&](size_t n) { return Matrix<F>::identity(f, n); };
  out.checks.add("nu", tt.nu * kron(I(d.n2), out.t_a0) == t.nu);
  out.checks.add("mu", tt.mu * kron(inverse(out.phi), out.t_a0) == t.mu);
  out.checks.add("rho1", tt.rho1 == t.rho1);
  out.checks.add("rho2", out.phi * tt.rho2 == t.rho2);
  (void)d1;
  return out;
}

// Data (u, v, K) fixing one mutation of w.
//   u in B0⊗N2 (b0 x n2) with rho2(u) = -phi2
//   v in N1⊗N2* (n1 x n2) with v psi2 = psi1
//   kernel (n2 x n) a basis of ker psi2ᵀ, i.e. an isomorphism N -> ker
template <ExactField F>
struct Choice {
  Matrix<F> u, v, kernel;
};

template <ExactField F>
Report check_choice(const Theta<F>& t, const Point<F>& w, const Choice<F>& c) {
  Report r;
  const auto& d = t.d;
  bool shapes = c.u.rows() == d.b0 && c.u.cols() == d.n2 && c.v.rows() == d.n1 && c.v.cols() == d.n2 &&
                c.kernel.rows() == d.n2 && c.kernel.cols() == d.n;
  r.add("choice shapes", shapes);
  if (!shapes) return r;
  r.add("rho2(u) = -phi2", t.rho2 * c.u.vec() == -w.phi2);
  r.add("v psi2 = psi1", c.v * w.psi2 == w.psi1);
  r.add("kernel inside ker psi2ᵀ", (w.psi2.transpose() * c.kernel).is_zero());
  r.add("kernel basis independent", rank(c.kernel) == d.n);
  return r;
}

template <ExactField F>
void require_W0(const Theta<F>& t, const Point<F>& w) {
  require_fits(t, w);
  size_t rk = rank(w.psi2);
  if (rk != t.d.m)
    throw DomainError("point is outside W0: psi2 has rank " + std::to_string(rk) + ", needs " + std::to_string(t.d.m) +
                      " (deficit " + std::to_string(t.d.m - rk) + ")");
}

// Particular solutions and the echelon kernel basis.
template <ExactField F>
Choice<F> default_choice(const Theta<F>& t, const Point<F>& w) {
  require_W0(t, w);
  const auto& d = t.d;
  Choice<F> c;
  c.u = solve_or_throw(t.rho2, -w.phi2, "rho2(u) = -phi2").reshape(d.b0, d.n2);
  c.v = solve_or_throw(w.psi2.transpose(), w.psi1.transpose(), "v psi2 = psi1").transpose();
  c.kernel = kernel_basis(w.psi2.transpose());
  return c;
}

template <ExactField F>
Point<F> mutate(const Theta<F>& t, const Dual<F>& dual, const Point<F>& w, const Choice<F>& c) {
  require_W0(t, w);
  auto rep = check_choice(t, w, c);
  if (auto* f = rep.first_failure()) throw DomainError("inconsistent mutation choice (" + f->name + ")");
  const auto& d = t.d;
  Point<F> z;
  z.psi1 = c.u * c.kernel;
  z.psi2 = c.kernel;
  z.phi1 = w.phi1 + t.rho1 * (c.u * c.v.transpose()).vec();
  z.phi2 = dual.quot.projection * swap_factors<F>(t.field, d.n1, d.n2) * c.v.vec();
  return z;
}

// Choice that mutates z back: u' = -v, v' = u, kernel = psi2.
template <ExactField F>
Choice<F> inverse_choice(const Point<F>& w, const Choice<F>& c) {
  return {-c.v, c.u, w.psi2};
}

// A point of D(D(Θ)) read back in Θ through the double-dual identification.
template <ExactField F>
Point<F> from_double_dual(const DoubleDual<F>& dd, const Point<F>& z2) {
  return {z2.psi1, z2.psi2, z2.phi1, dd.phi * z2.phi2};
}

// The element of G acting by -1 on M and by -1 on N2, M2, A0.
template <ExactField F>
GPair<F> involution_sign(const Theta<F>& t) {
  const auto& d = t.d;
  GPair<F> g = pair_identity(t);
  F m1 = F::from_int(t.field, -1);
  g.left.g_m = Matrix<F>::scalar(t.field, d.m, m1);
  g.right.b_n2 = Matrix<F>::scalar(t.field, d.n2, m1);
  g.right.b_m2 = Matrix<F>::scalar(t.field, d.m2, m1);
  g.right.b_a0 = Matrix<F>::scalar(t.field, d.a0, m1);
  return g;
}

// Element of G' relating two choices for the same w:
//   z(w, c2) = act(witness, z(w, c1)).
template <ExactField F>
GPair<F> choice_witness(const Theta<F>& t, const Dual<F>& dual, const Choice<F>& c1, const Choice<F>& c2) {
  const auto& td = dual.theta;
  GPair<F> g = pair_identity(td);
  auto kappa = (c2.u - c1.u).vec();
  g.right.alpha0 = solve_or_throw(dual.kernel, kappa, "u2 - u1 in ker rho2");
  auto tmat = solve_or_throw(c1.kernel, c2.kernel, "kernel change of basis");
  g.left.g_m = tmat.transpose();
  // v2 - v1 = beta'ᵀ kernel1ᵀ.
  auto bt = solve_or_throw(c1.kernel, (c2.v - c1.v).transpose(), "v2 - v1 vanishes on psi2");
  g.left.beta = bt;
  (void)t;
  return g;
}

// Splitting data for deterministic mutation.
//   m0 : basis of M0 ⊂ N2* (n2 x m), e0 : N -> N0 ⊂ N2* (n2 x n), [m0|e0] invertible
//   r2 : right inverse of rho2 (b0*n2 x m2)
template <ExactField F>
struct Chart {
  Matrix<F> m0, e0, r2;
};

template <ExactField F>
Report check_chart(const Theta<F>& t, const Chart<F>& ch) {
  Report r;
  const auto& d = t.d;
  bool shapes = ch.m0.rows() == d.n2 && ch.m0.cols() == d.m && ch.e0.rows() == d.n2 && ch.e0.cols() == d.n &&
                ch.r2.rows() == d.b0 * d.n2 && ch.r2.cols() == d.m2;
  r.add("chart shapes", shapes);
  if (!shapes) return r;
  r.add("M0 + N0 = N2*", is_invertible(Matrix<F>::hcat(ch.m0, ch.e0)));
  r.add("rho2 r2 = I", t.rho2 * ch.r2 == Matrix<F>::identity(t.field, d.m2));
  return r;
}

template <ExactField F>
Chart<F> standard_chart(const Theta<F>& t, const Point<F>& w) {
  const auto& d = t.d;
  Chart<F> ch;
  // M0 spanned by coordinate vectors where psi2 has pivot rows, N0 by the rest.
  auto piv = rref(w.psi2.transpose()).pivots;
  if (piv.size() != d.m) throw DomainError("standard_chart: point outside W0");
  ch.m0 = Matrix<F>(t.field, d.n2, d.m);
  for (size_t j = 0; j < d.m; ++j) ch.m0(piv[j], j) = F::one(t.field);
  ch.e0 = complement_basis(ch.m0);
  ch.r2 = solve_or_throw(t.rho2, Matrix<F>::identity(t.field, d.m2), "rho2 surjective");
  return ch;
}

// Sections attached to a chart at w:
//   r = m0 (psi2ᵀ m0)^{-1}, s = I - r psi2ᵀ, kernel = s e0, q with q kernel = I.
template <ExactField F>
struct ChartSections {
  Matrix<F> r, s, kernel, q;
};

template <ExactField F>
bool in_chart(const Point<F>& w, const Chart<F>& ch) {
  auto sq = w.psi2.transpose() * ch.m0;
  return is_invertible(sq);
}

template <ExactField F>
ChartSections<F> chart_sections(const Theta<F>& t, const Point<F>& w, const Chart<F>& ch) {
  const auto& d = t.d;
  auto sq = w.psi2.transpose() * ch.m0;
  if (!is_invertible(sq)) throw DomainError("point outside the chart domain: ker psi2ᵀ meets M0");
  ChartSections<F> c;
  c.r = ch.m0 * inverse(sq);
  c.s = Matrix<F>::identity(t.field, d.n2) - c.r * w.psi2.transpose();
  c.kernel = c.s * ch.e0;
  auto basis_inv = inverse(Matrix<F>::hcat(ch.m0, ch.e0));
  c.q = basis_inv.block(d.m, 0, d.n, d.n2);
  return c;
}

template <ExactField F>
Report chart_identities(const Theta<F>& t, const Point<F>& w, const ChartSections<F>& c) {
  Report r;
  const auto& d = t.d;
  auto I = Matrix<F>::identity(t.field, d.n2);
  r.add("r psi2ᵀ + s = I", c.r * w.psi2.transpose() + c.s == I);
  r.add("psi2ᵀ r = I", w.psi2.transpose() * c.r == Matrix<F>::identity(t.field, d.m));
  r.add("psi2ᵀ s = 0", (w.psi2.transpose() * c.s).is_zero());
  r.add("s kernel = kernel", c.s * c.kernel == c.kernel);
  r.add("q kernel = I", c.q * c.kernel == Matrix<F>::identity(t.field, d.n));
  return r;
}

template <ExactField F>
Choice<F> chart_choice(const Theta<F>& t, const Point<F>& w, const Chart<F>& ch) {
  require_W0(t, w);
  auto c = chart_sections(t, w, ch);
  return {(-(ch.r2 * w.phi2)).reshape(t.d.b0, t.d.n2), w.psi1 * c.r.transpose(), c.kernel};
}

template <ExactField F>
Point<F> mutate_chart(const Theta<F>& t, const Dual<F>& dual, const Point<F>& w, const Chart<F>& ch) {
  return mutate(t, dual, w, chart_choice(t, w, ch));
}

// Coordinates of an element of ker rho2 on the recorded basis.
template <ExactField F>
Matrix<F> kernel_coords(const Dual<F>& dual, const Matrix<F>& kappa) {
  return solve_or_throw(dual.kernel, kappa.vec(), "element of ker rho2");
}

// The map induced on M2' = (N2*⊗N1)/nu-bar(A0) by a map x of N2*⊗N1 preserving nu-bar(A0).
template <ExactField F>
Matrix<F> induced_on_quotient(const Dual<F>& dual, const Matrix<F>& x) {
  return dual.quot.projection * x * dual.quot.section;
}

// Transports: for g a generator of G acting on Θ, an element g' of G' with
//   mutate_chart(g w, ch1) = act(g', mutate_chart(w, ch0)).
// ch1 = ch0 except for the b-family.
template <ExactField F>
GPair<F> transport_r(const Theta<F>& t, const Dual<F>& dual, const RightElement<F>& g) {
  const auto& d = t.d;
  GPair<F> out = pair_identity(dual.theta);
  out.left.l_m1 = g.r_m1;
  out.left.l_b0 = g.r_n1;
  out.left.l_m2 = induced_on_quotient(dual, kron(Matrix<F>::identity(t.field, d.n2), g.r_n1));
  return out;
}

template <ExactField F>
GPair<F> transport_alpha(const Theta<F>& t, const Dual<F>& dual, const Matrix<F>& alpha0, const Point<F>& w, const Chart<F>& ch) {
  auto c = chart_sections(t, w, ch);
  GPair<F> out = pair_identity(dual.theta);
  out.left.beta = -(c.q * c.s * t.nu_at(alpha0).transpose());
  return out;
}

template <ExactField F>
GPair<F> transport_l(const Theta<F>& t, const Dual<F>& dual, const LeftElement<F>& g, const Point<F>& w, const Chart<F>& ch) {
  const auto& d = t.d;
  auto I = [&](size_t n) { return Matrix<F>::identity(t.field, n); };
  GPair<F> out = pair_identity(dual.theta);
  auto lift = kron(g.l_b0, I(d.n2));
  out.right.r_n1 = g.l_b0;
  out.right.r_m1 = g.l_m1;
  out.right.r_a0 = solve_or_throw(dual.kernel, lift * dual.kernel, "l preserves ker rho2");
  auto u0 = -(ch.r2 * w.phi2);
  auto u1 = -(ch.r2 * (g.l_m2 * w.phi2));
  out.right.alpha0 = solve_or_throw(dual.kernel, u1 - lift * u0, "alpha' for l");
  return out;
}

template <ExactField F>
GPair<F> transport_beta(const Theta<F>& t, const Dual<F>& dual, const Matrix<F>& beta, const Point<F>& w, const Chart<F>& ch) {
  GPair<F> out = pair_identity(dual.theta);
  auto y = beta_pair(beta, w.psi2);
  auto kappa = y - ch.r2 * (t.rho2 * y);
  out.right.alpha0 = solve_or_throw(dual.kernel, kappa, "alpha' for beta");
  return out;
}

// b-family with a change of chart ch0 (at w) -> ch1 (at b w).
template <ExactField F>
GPair<F> transport_b(const Theta<F>& t, const Dual<F>& dual, const RightElement<F>& g, const Point<F>& w, const Chart<F>& ch0,
                     const Chart<F>& ch1) {
  const auto& d = t.d;
  auto I = [&](size_t n) { return Matrix<F>::identity(t.field, n); };
  auto bn_inv = inverse(g.b_n2);
  auto w1 = act_right(t, g, w);
  auto c0 = chart_sections(t, w, ch0);
  auto c1 = chart_sections(t, w1, ch1);
  GPair<F> out = pair_identity(dual.theta);
  out.right.b_n2 = bn_inv.transpose();
  out.right.b_m2 = induced_on_quotient(dual, kron(bn_inv.transpose(), I(d.n1)));
  out.right.b_a0 = solve_or_throw(dual.kernel, kron(I(d.b0), bn_inv) * dual.kernel, "b preserves ker rho2");
  auto u0 = -(ch0.r2 * w.phi2);
  auto u1 = -(ch1.r2 * w1.phi2);
  out.right.alpha0 = solve_or_throw(dual.kernel, kron(I(d.b0), bn_inv) * u1 - u0, "alpha' for b");
  auto tmat = c0.q * g.b_n2.transpose() * c1.kernel;
  out.left.g_m = tmat.transpose();
  auto lambda = g.b_n2.transpose() * c1.r - c0.r;
  out.left.beta = c0.q * lambda * w.psi1.transpose();
  return out;
}

// Witness checks for one mutation: dual and double dual, involution up to the
// sign element, and independence of the choice (default vs chart).
template <ExactField F>
Report verify_mutation(const Theta<F>& t, const Point<F>& w) {
  Report r;
  auto d1 = build_dual(t);
  auto v1 = validate_theta(d1.theta);
  r.add("dual valid", v1.ok(), v1.ok() ? "" : v1.first_failure()->name);
  if (!v1.ok()) return r;
  auto d2 = build_dual(d1.theta);
  auto dd = double_dual_witness(t, d1, d2);
  r.add("double dual identification", dd.checks.ok(), dd.checks.ok() ? "" : dd.checks.first_failure()->name);
  auto c = default_choice(t, w);
  auto z = mutate(t, d1, w, c);
  r.add("mutated point in W0", in_W0(d1.theta, z));
  if (dd.checks.ok()) {
    auto back = from_double_dual(dd, mutate(d1.theta, d2, z, inverse_choice(w, c)));
    r.add("involution up to sign", back == act_pair(t, involution_sign(t), w));
  }
  auto ch = standard_chart(t, w);
  auto cs = chart_sections(t, w, ch);
  auto ids = chart_identities(t, w, cs);
  r.add("chart identities", ids.ok(), ids.ok() ? "" : ids.first_failure()->name);
  auto zc = mutate_chart(t, d1, w, ch);
  auto g = choice_witness(t, d1, c, chart_choice(t, w, ch));
  r.add("choice independence", act_pair(d1.theta, g, z) == zc);
  return r;
}

}  // namespace mforge
