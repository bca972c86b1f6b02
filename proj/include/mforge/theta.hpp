#pragma once

#include <string>
#include <vector>

#include "mforge/linalg.hpp"

namespace mforge {

// Spaces of a morphism space: N1, N2 (targets of the psi parts), M1, M2 (targets
// of the phi parts), A0, B0 (the two coupling spaces), and the multiplicity
// spaces M (dim m) and N (dim n = n2 - m).
struct ThetaDims {
  size_t n1 = 0, n2 = 0, m1 = 0, m2 = 0, a0 = 0, b0 = 0, m = 0, n = 0;
  bool operator==(const ThetaDims&) const = default;
  std::string str() const;
};

// Structure maps on lexicographic tensor coordinates (left factor major):
//   rho1 : B0⊗N1 -> M1   (m1 x b0*n1)
//   rho2 : B0⊗N2 -> M2   (m2 x b0*n2)
//   mu   : M2⊗A0 -> M1   (m1 x m2*a0)
//   nu   : N2⊗A0 -> N1   (n1 x n2*a0)
template <ExactField F>
struct Theta {
  FieldTag field;
  ThetaDims d;
  Matrix<F> rho1, rho2, mu, nu;

  // nu viewed as A0 -> N2*⊗N1, rows indexed (x, k) with x in N2 major.
  Matrix<F> nu_bar() const {
    Matrix<F> r(field, d.n2 * d.n1, d.a0);
    for (size_t x = 0; x < d.n2; ++x)
      for (size_t k = 0; k < d.n1; ++k)
        for (size_t a = 0; a < d.a0; ++a) r(x * d.n1 + k, a) = nu(k, x * d.a0 + a);
    return r;
  }
  // nu(- ⊗ alpha) : N2 -> N1.
  Matrix<F> nu_at(const Matrix<F>& alpha) const {
    Matrix<F> r(field, d.n1, d.n2);
    for (size_t k = 0; k < d.n1; ++k)
      for (size_t x = 0; x < d.n2; ++x)
        for (size_t a = 0; a < d.a0; ++a) r(k, x) += nu(k, x * d.a0 + a) * alpha[a];
    return r;
  }
  // mu(- ⊗ alpha) : M2 -> M1.
  Matrix<F> mu_at(const Matrix<F>& alpha) const {
    Matrix<F> r(field, d.m1, d.m2);
    for (size_t k = 0; k < d.m1; ++k)
      for (size_t y = 0; y < d.m2; ++y)
        for (size_t a = 0; a < d.a0; ++a) r(k, y) += mu(k, y * d.a0 + a) * alpha[a];
    return r;
  }
};

// psi1 in N1⊗M (n1 x m), psi2 in N2⊗M (n2 x m), phi1 in M1, phi2 in M2 (columns).
template <ExactField F>
struct Point {
  Matrix<F> psi1, psi2, phi1, phi2;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string detail = {}) { checks.push_back({std::move(name), ok, std::move(detail)}); }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
};

template <ExactField F>
bool shapes_ok(const Theta<F>& t, std::string* why = nullptr) {
  const auto& d = t.d;
  auto chk = [&](const Matrix<F>& a, size_t r, size_t c, const char* name) {
    if (a.rows() == r && a.cols() == c && a.field() == t.field) return true;
    if (why) *why = std::string(name) + " is " + a.shape() + ", expected " + std::to_string(r) + "x" + std::to_string(c);
    return false;
  };
  return chk(t.rho1, d.m1, d.b0 * d.n1, "rho1") && chk(t.rho2, d.m2, d.b0 * d.n2, "rho2") &&
         chk(t.mu, d.m1, d.m2 * d.a0, "mu") && chk(t.nu, d.n1, d.n2 * d.a0, "nu");
}

template <ExactField F>
Matrix<F> diagram_defect(const Theta<F>& t) {
  const auto& d = t.d;
  auto lhs = t.rho1 * kron(Matrix<F>::identity(t.field, d.b0), t.nu);
  auto rhs = t.mu * kron(t.rho2, Matrix<F>::identity(t.field, d.a0));
  return lhs - rhs;
}

template <ExactField F>
Report validate_theta(const Theta<F>& t) {
  Report r;
  std::string why;
  if (!shapes_ok(t, &why)) {
    r.add("shapes", false, why);
    return r;
  }
  r.add("shapes", true);
  r.add("diagram D", diagram_defect(t).is_zero(), "rho1(I⊗nu) = mu(rho2⊗I)");
  r.add("rho2 surjective", rank(t.rho2) == t.d.m2, "rank " + std::to_string(rank(t.rho2)) + " of " + std::to_string(t.d.m2));
  size_t rk = rank(t.nu_bar());
  r.add("nu-bar injective", rk == t.d.a0, "rank " + std::to_string(rk) + " of " + std::to_string(t.d.a0));
  bool dims = t.d.m >= 1 && t.d.m < t.d.n2 && t.d.m + t.d.n == t.d.n2;
  r.add("dimension identity", dims, "1 <= m < n2 and m + n = n2");
  return r;
}

template <ExactField F>
void require_valid(const Theta<F>& t, const char* who) {
  auto rep = validate_theta(t);
  if (auto* c = rep.first_failure()) throw DomainError(std::string(who) + ": invalid morphism space (" + c->name + ")");
}

template <ExactField F>
bool point_fits(const Theta<F>& t, const Point<F>& w) {
  const auto& d = t.d;
  return w.psi1.rows() == d.n1 && w.psi1.cols() == d.m && w.psi2.rows() == d.n2 && w.psi2.cols() == d.m &&
         w.phi1.rows() == d.m1 && w.phi1.cols() == 1 && w.phi2.rows() == d.m2 && w.phi2.cols() == 1 &&
         w.psi1.field() == t.field && w.psi2.field() == t.field && w.phi1.field() == t.field && w.phi2.field() == t.field;
}

template <ExactField F>
void require_fits(const Theta<F>& t, const Point<F>& w) {
  if (!point_fits(t, w)) throw ShapeError("point does not match the morphism space dimensions " + t.d.str());
}

template <ExactField F>
Point<F> zero_point(const Theta<F>& t) {
  const auto& d = t.d;
  return {Matrix<F>(t.field, d.n1, d.m), Matrix<F>(t.field, d.n2, d.m), Matrix<F>(t.field, d.m1, 1), Matrix<F>(t.field, d.m2, 1)};
}

// The map N2* -> M deduced from psi2 is psi2ᵀ; w is in W0 when it is onto.
template <ExactField F>
bool in_W0(const Theta<F>& t, const Point<F>& w) {
  require_fits(t, w);
  return rank(w.psi2) == t.d.m;
}

// Group elements carry their matrices on every space they touch.
//  Right: r acts on N1, M1, A0; b acts on N2, M2, A0; alpha0 in A0.
//  Left: g on M, l acts on M1, M2, B0; beta in M*⊗B0 (m x b0).
template <ExactField F>
struct RightElement {
  Matrix<F> r_n1, r_m1, r_a0;
  Matrix<F> b_n2, b_m2, b_a0;
  Matrix<F> alpha0;
};

template <ExactField F>
struct LeftElement {
  Matrix<F> g_m;
  Matrix<F> l_m1, l_m2, l_b0;
  Matrix<F> beta;
};

enum class Side { Left, Right };

template <ExactField F>
struct GroupElement {
  Side side = Side::Left;
  RightElement<F> right;
  LeftElement<F> left;
};

template <ExactField F>
RightElement<F> right_identity(const Theta<F>& t) {
  auto I = [&](size_t n) { return Matrix<F>::identity(t.field, n); };
  const auto& d = t.d;
  return {I(d.n1), I(d.m1), I(d.a0), I(d.n2), I(d.m2), I(d.a0), Matrix<F>(t.field, d.a0, 1)};
}

template <ExactField F>
LeftElement<F> left_identity(const Theta<F>& t) {
  auto I = [&](size_t n) { return Matrix<F>::identity(t.field, n); };
  const auto& d = t.d;
  return {I(d.m), I(d.m1), I(d.m2), I(d.b0), Matrix<F>(t.field, d.m, d.b0)};
}

template <ExactField F>
GroupElement<F> make_right(const Theta<F>& t, RightElement<F> r) {
  GroupElement<F> g;
  g.side = Side::Right;
  g.right = std::move(r);
  g.left = left_identity(t);
  return g;
}

template <ExactField F>
GroupElement<F> make_left(const Theta<F>& t, LeftElement<F> l) {
  GroupElement<F> g;
  g.side = Side::Left;
  g.left = std::move(l);
  g.right = right_identity(t);
  return g;
}

template <ExactField F>
Report check_compatible(const Theta<F>& t, const GroupElement<F>& g) {
  Report rep;
  const auto& d = t.d;
  auto I = [&](size_t n) { return Matrix<F>::identity(t.field, n); };
  auto inv = [&](const Matrix<F>& a, size_t n, const char* name) {
    bool ok = a.rows() == n && a.cols() == n && is_invertible(a);
    rep.add(std::string(name) + " invertible", ok);
    return ok;
  };
  if (g.side == Side::Right) {
    const auto& e = g.right;
    bool ok = inv(e.r_n1, d.n1, "r on N1") & inv(e.r_m1, d.m1, "r on M1") & inv(e.r_a0, d.a0, "r on A0") &
              inv(e.b_n2, d.n2, "b on N2") & inv(e.b_m2, d.m2, "b on M2") & inv(e.b_a0, d.a0, "b on A0");
    rep.add("alpha0 shape", e.alpha0.rows() == d.a0 && e.alpha0.cols() == 1);
    if (!ok) return rep;
    rep.add("r vs nu", t.nu * kron(I(d.n2), e.r_a0) == e.r_n1 * t.nu);
    rep.add("r vs mu", t.mu * kron(I(d.m2), e.r_a0) == e.r_m1 * t.mu);
    rep.add("r vs rho1", t.rho1 * kron(I(d.b0), e.r_n1) == e.r_m1 * t.rho1);
    rep.add("b vs nu", t.nu * kron(e.b_n2, I(d.a0)) == t.nu * kron(I(d.n2), e.b_a0));
    rep.add("b vs mu", t.mu * kron(e.b_m2, I(d.a0)) == t.mu * kron(I(d.m2), e.b_a0));
    rep.add("b vs rho2", t.rho2 * kron(I(d.b0), e.b_n2) == e.b_m2 * t.rho2);
  } else {
    const auto& e = g.left;
    bool ok = inv(e.g_m, d.m, "g on M") & inv(e.l_m1, d.m1, "l on M1") & inv(e.l_m2, d.m2, "l on M2") & inv(e.l_b0, d.b0, "l on B0");
    rep.add("beta shape", e.beta.rows() == d.m && e.beta.cols() == d.b0);
    if (!ok) return rep;
    rep.add("l vs rho1", t.rho1 * kron(e.l_b0, I(d.n1)) == e.l_m1 * t.rho1);
    rep.add("l vs rho2", t.rho2 * kron(e.l_b0, I(d.n2)) == e.l_m2 * t.rho2);
    rep.add("l vs mu", t.mu * kron(e.l_m2, I(d.a0)) == e.l_m1 * t.mu);
  }
  return rep;
}

template <ExactField F>
void require_compatible(const Theta<F>& t, const GroupElement<F>& g) {
  auto rep = check_compatible(t, g);
  if (auto* c = rep.first_failure()) throw DomainError("group element incompatible with structure maps (" + c->name + ")");
}

template <ExactField F>
Point<F> act_right(const Theta<F>& t, const RightElement<F>& e, const Point<F>& w) {
  return {e.r_n1 * w.psi1 + t.nu_at(e.alpha0) * w.psi2, e.b_n2 * w.psi2, e.r_m1 * w.phi1 + t.mu_at(e.alpha0) * w.phi2, e.b_m2 * w.phi2};
}

// <beta, psi>_M viewed in B0⊗N (b0 x n, vectorised b major).
template <ExactField F>
Matrix<F> beta_pair(const Matrix<F>& beta, const Matrix<F>& psi) {
  return (beta.transpose() * psi.transpose()).vec();
}

template <ExactField F>
Point<F> act_left(const Theta<F>& t, const LeftElement<F>& e, const Point<F>& w) {
  auto gt = e.g_m.transpose();
  return {w.psi1 * gt, w.psi2 * gt, e.l_m1 * w.phi1 + t.rho1 * beta_pair(e.beta, w.psi1), e.l_m2 * w.phi2 + t.rho2 * beta_pair(e.beta, w.psi2)};
}

template <ExactField F>
Point<F> act(const Theta<F>& t, const GroupElement<F>& g, const Point<F>& w) {
  require_fits(t, w);
  return g.side == Side::Right ? act_right(t, g.right, w) : act_left(t, g.left, w);
}

// compose(g, h) acts as g after h: act(compose(g,h), w) = act(g, act(h, w)).
template <ExactField F>
GroupElement<F> compose(const Theta<F>& t, const GroupElement<F>& g, const GroupElement<F>& h) {
  if (g.side != h.side) throw DomainError("compose: elements act on different sides");
  GroupElement<F> c = g;
  if (g.side == Side::Right) {
    const auto &x = g.right, &y = h.right;
    c.right = {x.r_n1 * y.r_n1, x.r_m1 * y.r_m1, x.r_a0 * y.r_a0, x.b_n2 * y.b_n2, x.b_m2 * y.b_m2, x.b_a0 * y.b_a0,
               x.r_a0 * y.alpha0 + y.b_a0 * x.alpha0};
  } else {
    const auto &x = g.left, &y = h.left;
    auto beta_t = x.l_b0 * y.beta.transpose() + x.beta.transpose() * y.g_m;
    c.left = {x.g_m * y.g_m, x.l_m1 * y.l_m1, x.l_m2 * y.l_m2, x.l_b0 * y.l_b0, beta_t.transpose()};
  }
  (void)t;
  return c;
}

// An element of G = G_R^op x G_L given by both halves; acts right half first.
template <ExactField F>
struct GPair {
  RightElement<F> right;
  LeftElement<F> left;
};

template <ExactField F>
GPair<F> pair_identity(const Theta<F>& t) {
  return {right_identity(t), left_identity(t)};
}

template <ExactField F>
Point<F> act_pair(const Theta<F>& t, const GPair<F>& g, const Point<F>& w) {
  require_fits(t, w);
  return act_left(t, g.left, act_right(t, g.right, w));
}

template <ExactField F>
bool pair_is_identity(const Theta<F>& t, const GPair<F>& g) {
  auto ri = right_identity(t);
  auto li = left_identity(t);
  const auto &r = g.right, &l = g.left;
  return r.r_n1 == ri.r_n1 && r.r_m1 == ri.r_m1 && r.r_a0 == ri.r_a0 && r.b_n2 == ri.b_n2 && r.b_m2 == ri.b_m2 &&
         r.b_a0 == ri.b_a0 && r.alpha0 == ri.alpha0 && l.g_m == li.g_m && l.l_m1 == li.l_m1 && l.l_m2 == li.l_m2 &&
         l.l_b0 == li.l_b0 && l.beta == li.beta;
}

// Scalar elements: c·I on every space of one family.
template <ExactField F>
RightElement<F> right_scalar(const Theta<F>& t, const F& r, const F& b) {
  const auto& d = t.d;
  auto S = [&](size_t n, const F& c) { return Matrix<F>::scalar(t.field, n, c); };
  return {S(d.n1, r), S(d.m1, r), S(d.a0, r), S(d.n2, b), S(d.m2, b), S(d.a0, b), Matrix<F>(t.field, d.a0, 1)};
}

}  // namespace mforge
