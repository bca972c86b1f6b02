#pragma once

#include <cstdint>
#include <random>

#include "mforge/homdata.hpp"
#include "mforge/theta.hpp"

namespace mforge {

// Seeded generator. Draws use raw mt19937_64 output with explicit reduction so
// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : g_(seed) {}
  uint64_t next() { return g_(); }
  // Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<uint64_t>(hi - lo + 1)); }
  size_t below(size_t n) { return static_cast<size_t>(g_() % n); }

 private:
  std::mt19937_64 g_;
};

template <ExactField F>
Matrix<F> random_matrix(Rng& rng, FieldTag f, size_t rows, size_t cols, long lo = -1, long hi = 1) {
  Matrix<F> m(f, rows, cols);
  for (size_t k = 0; k < m.size(); ++k) m[k] = F::from_int(f, rng.range(lo, hi));
  return m;
}

template <ExactField F>
Matrix<F> random_invertible(Rng& rng, FieldTag f, size_t n) {
  for (;;) {
    auto m = random_matrix<F>(rng, f, n, n, -2, 2);
    if (is_invertible(m)) return m;
  }
}

// rows x cols of full rank min(rows, cols).
template <ExactField F>
Matrix<F> random_full_rank(Rng& rng, FieldTag f, size_t rows, size_t cols) {
  for (;;) {
    auto m = random_matrix<F>(rng, f, rows, cols);
    if (rank(m) == std::min(rows, cols)) return m;
  }
}

template <ExactField F>
F random_unit(Rng& rng, FieldTag f) {
  for (;;) {
    F c = F::from_int(f, rng.range(-3, 3));
    if (!c.is_zero()) return c;
  }
}

struct RandomThetaLimits {
  size_t max_dim = 4;
};

// Random morphism space: nu and rho2 are drawn at random, M1 is a random
// quotient of the pushout of I⊗nu and rho2⊗I, so diagram D holds by construction.
template <ExactField F>
Theta<F> random_theta(Rng& rng, FieldTag f, RandomThetaLimits lim = {}) {
  const size_t cap = lim.max_dim;
  for (;;) {
    ThetaDims d;
    d.n2 = static_cast<size_t>(rng.range(2, static_cast<long>(cap)));
    d.m = static_cast<size_t>(rng.range(1, static_cast<long>(d.n2 - 1)));
    d.n = d.n2 - d.m;
    d.n1 = static_cast<size_t>(rng.range(0, static_cast<long>(cap)));
    d.b0 = static_cast<size_t>(rng.range(0, 3));
    d.a0 = static_cast<size_t>(rng.range(0, static_cast<long>(std::min(cap, d.n2 * d.n1))));
    d.m2 = static_cast<size_t>(rng.range(0, static_cast<long>(std::min(cap, d.b0 * d.n2))));
    Theta<F> t;
    t.field = f;
    t.nu = random_matrix<F>(rng, f, d.n1, d.n2 * d.a0);
    t.rho2 = random_matrix<F>(rng, f, d.m2, d.b0 * d.n2);
    t.d = d;
    if (rank(t.nu_bar()) != d.a0 || rank(t.rho2) != d.m2) continue;
    // Relations (I⊗nu)(y) ~ (rho2⊗I)(y) for y in B0⊗N2⊗A0.
    auto rel = Matrix<F>::vcat(kron(Matrix<F>::identity(f, d.b0), t.nu), -kron(t.rho2, Matrix<F>::identity(f, d.a0)));
    size_t amb = d.b0 * d.n1 + d.m2 * d.a0;
    auto q = quotient_data<F>(f, amb, column_space(rel));
    size_t pdim = q.projection.rows();
    d.m1 = static_cast<size_t>(rng.range(0, static_cast<long>(std::min(cap, pdim))));
    auto shrink = random_matrix<F>(rng, f, d.m1, pdim);
    auto full = shrink * q.projection;
    t.rho1 = full.block(0, 0, d.m1, d.b0 * d.n1);
    t.mu = full.block(0, d.b0 * d.n1, d.m1, d.m2 * d.a0);
    t.d = d;
    return t;
  }
}

template <ExactField F>
Point<F> random_point(Rng& rng, const Theta<F>& t) {
  const auto& d = t.d;
  return {random_matrix<F>(rng, t.field, d.n1, d.m), random_matrix<F>(rng, t.field, d.n2, d.m),
          random_matrix<F>(rng, t.field, d.m1, 1), random_matrix<F>(rng, t.field, d.m2, 1)};
}

template <ExactField F>
Point<F> random_point_W0(Rng& rng, const Theta<F>& t) {
  for (;;) {
    auto w = random_point(rng, t);
    if (in_W0(t, w)) return w;
  }
}

template <ExactField F>
Matrix<F> random_alpha(Rng& rng, const Theta<F>& t) {
  return random_matrix<F>(rng, t.field, t.d.a0, 1);
}

// Random automorphism of a sum object: invertible diagonal blocks, arbitrary
// off-diagonal ones (End(X) coordinates).
template <ExactField F>
Matrix<F> random_automorphism(Rng& rng, const HomData<F>& h, const SumObject& x) {
  HomLayout<F> lay(h, x, x);
  Matrix<F> g(h.field, lay.total, 1);
  for (const auto& b : lay.blocks) {
    if (b.src == b.tgt) {
      auto a = random_invertible<F>(rng, h.field, b.ms);
      for (size_t s = 0; s < b.ms; ++s)
        for (size_t t = 0; t < b.mt; ++t) g[lay.index(b, 0, s, t)] = a(t, s);
    } else {
      for (size_t k = 0; k < b.h * b.ms * b.mt; ++k) g[b.offset + k] = F::from_int(h.field, rng.range(-1, 1));
    }
  }
  return g;
}

}  // namespace mforge
