#pragma once

#include <optional>

#include "mforge/homdata.hpp"
#include "mforge/mutation.hpp"

namespace mforge {

// Hom data after mutating at p. New object order:
//   E_1..E_p, F_1, G_{p+1}..G_r, F_2..F_s
// with sources E_1..E_p, F_1 and targets G_{p+1}..G_r, F_2..F_s. New Hom spaces:
//   E_i -> G_j : (H_1i ⊗ H_1j*) / A_ji, A_ji embedded by a -> Σ_y (e_y∘a) ⊗ e_y*
//   F_1 -> G_j : H_1j*
//   G_j -> G_j': A_j'j
//   G_j -> F_l : kernel of composition B_l1 ⊗ H_1j -> H_lj
// every other pair keeps its original space.
template <ExactField F>
struct MutatedHom {
  HomData<F> h;
  size_t p = 0;
  // Ambient description of each new Hom space: coords = lift-free coordinates.
  struct Space {
    enum Kind { plain, quotient, kernel } kind = plain;
    size_t ambient = 0;
    Quotient<F> quot;  // quotient spaces
    Matrix<F> basis;   // kernel spaces: ambient x dim
  };
  std::vector<std::vector<Space>> space;  // space[a][b] for a < b (new indices)
};

namespace detail {

enum class Kind { E, Gamma, G, Fl };

struct Obj {
  Kind kind;
  size_t orig;  // index of the underlying original object (E_j for G_j)
};

}  // namespace detail

template <ExactField F>
MutatedHom<F> mutated_hom_data(const HomData<F>& h, size_t p) {
  using detail::Kind;
  using detail::Obj;
  if (p >= h.r) throw DomainError("mutation needs 0 <= p <= r-1");
  if (h.s < 1) throw DomainError("mutation needs s >= 1");
  const FieldTag f = h.field;
  const size_t N = h.count();
  const size_t F1 = h.target(0);
  std::vector<Obj> obj;
  for (size_t i = 0; i < p; ++i) obj.push_back({Kind::E, i});
  obj.push_back({Kind::Gamma, F1});
  for (size_t j = p; j < h.r; ++j) obj.push_back({Kind::G, j});
  for (size_t l = 1; l < h.s; ++l) obj.push_back({Kind::Fl, h.target(l)});

  MutatedHom<F> out;
  out.p = p;
  out.h = empty_hom_data<F>(f, p + 1, N - p - 1);
  for (size_t a = 0; a < N; ++a) {
    const auto& o = obj[a];
    out.h.names[a] = o.kind == Kind::G ? "G" + std::to_string(o.orig + 1) : h.names[o.orig];
  }
  using Space = typename MutatedHom<F>::Space;
  out.space.assign(N, std::vector<Space>(N));
  auto I = [&](size_t n) { return Matrix<F>::identity(f, n); };

  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b) {
      const auto &x = obj[a], &y = obj[b];
      Space sp;
      if (x.kind == Kind::E && y.kind == Kind::G) {
        size_t i = x.orig, j = y.orig;
        size_t hi = h.hom(i, F1), hj = h.hom(j, F1), aji = h.hom(i, j);
        Matrix<F> emb(f, hi * hj, aji);
        auto c = h.comp_full(i, j, F1);
        for (size_t hh = 0; hh < hi; ++hh)
          for (size_t yy = 0; yy < hj; ++yy)
            for (size_t al = 0; al < aji; ++al) emb(hh * hj + yy, al) = c(hh, yy * aji + al);
        if (rank(emb) != aji) throw DomainError("mutation: A_ji does not embed into H_1i ⊗ H_1j*");
        sp.kind = Space::quotient;
        sp.ambient = hi * hj;
        sp.quot = quotient_data<F>(f, hi * hj, emb);
        out.h.dim[a][b] = sp.quot.projection.rows();
      } else if (x.kind == Kind::Gamma && y.kind == Kind::G) {
        sp.ambient = h.hom(y.orig, F1);
        out.h.dim[a][b] = sp.ambient;
      } else if (x.kind == Kind::G && y.kind == Kind::G) {
        sp.ambient = h.hom(x.orig, y.orig);
        out.h.dim[a][b] = sp.ambient;
      } else if (x.kind == Kind::G && y.kind == Kind::Fl) {
        size_t j = x.orig, l = y.orig;
        sp.kind = Space::kernel;
        sp.ambient = h.hom(F1, l) * h.hom(j, F1);
        sp.basis = kernel_basis(h.comp_full(j, F1, l));
        out.h.dim[a][b] = sp.basis.cols();
      } else {
        sp.ambient = h.hom(x.orig, y.orig);
        out.h.dim[a][b] = sp.ambient;
      }
      out.space[a][b] = std::move(sp);
    }

  // Lift of each new basis vector into its ambient space, and coordinates back.
  auto lift = [&](size_t a, size_t b) -> Matrix<F> {
    const auto& sp = out.space[a][b];
    if (sp.kind == Space::quotient) return sp.quot.section;
    if (sp.kind == Space::kernel) return sp.basis;
    return I(sp.ambient);
  };
  auto coords = [&](size_t a, size_t b, const Matrix<F>& v) -> Matrix<F> {
    const auto& sp = out.space[a][b];
    if (sp.kind == Space::quotient) return sp.quot.projection * v;
    if (sp.kind == Space::kernel) return solve_or_throw(sp.basis, v, "mutation: composite leaves the kernel");
    return v;
  };
  // Ambient-level composition of one basis pair (k2 in amb(b,c), k1 in amb(a,b)).
  auto raw = [&](size_t a, size_t b, size_t c, const Matrix<F>& k2, const Matrix<F>& k1) -> Matrix<F> {
    const auto &x = obj[a], &y = obj[b], &z = obj[c];
    Kind kx = x.kind, ky = y.kind, kz = z.kind;
    size_t amb_ac = out.space[a][c].ambient;
    Matrix<F> res(f, amb_ac, 1);
    // Composition a'^*: H_1j* -> H_1j'* dual to e -> e∘a' for a' in A_j'j.
    auto dual_pull = [&](size_t j, size_t j2, const Matrix<F>& aprime, const Matrix<F>& xi) {
      size_t hj = h.hom(j, F1), hj2 = h.hom(j2, F1), ajj = h.hom(j, j2);
      auto c = h.comp_full(j, j2, F1);
      Matrix<F> outv(f, hj2, 1);
      for (size_t yy = 0; yy < hj; ++yy) {
        if (xi[yy].is_zero()) continue;
        for (size_t e = 0; e < hj2; ++e)
          for (size_t al = 0; al < ajj; ++al)
            if (!aprime[al].is_zero()) outv[e] += xi[yy] * c(yy, e * ajj + al) * aprime[al];
      }
      return outv;
    };
    if (kx == Kind::E && ky == Kind::E && kz == Kind::G) {
      // (h'⊗xi)∘a = (h'∘a)⊗xi
      size_t i = x.orig, i2 = y.orig, j = z.orig;
      size_t hi = h.hom(i, F1), hi2 = h.hom(i2, F1), hj = h.hom(j, F1), aii = h.hom(i, i2);
      auto c = h.comp_full(i, i2, F1);
      for (size_t hh2 = 0; hh2 < hi2; ++hh2)
        for (size_t yy = 0; yy < hj; ++yy) {
          const F& v2 = k2[hh2 * hj + yy];
          if (v2.is_zero()) continue;
          for (size_t hh = 0; hh < hi; ++hh)
            for (size_t al = 0; al < aii; ++al)
              if (!k1[al].is_zero()) res[hh * hj + yy] += v2 * c(hh, hh2 * aii + al) * k1[al];
        }
    } else if (kx == Kind::E && ky == Kind::Gamma && kz == Kind::G) {
      size_t hj = h.hom(z.orig, F1);
      for (size_t hh = 0; hh < k1.rows(); ++hh)
        for (size_t yy = 0; yy < hj; ++yy) res[hh * hj + yy] = k1[hh] * k2[yy];
    } else if (kx == Kind::E && ky == Kind::G && kz == Kind::G) {
      size_t i = x.orig, j = y.orig, j2 = z.orig;
      size_t hi = h.hom(i, F1), hj = h.hom(j, F1), hj2 = h.hom(j2, F1);
      for (size_t hh = 0; hh < hi; ++hh) {
        Matrix<F> xi(f, hj, 1);
        for (size_t yy = 0; yy < hj; ++yy) xi[yy] = k1[hh * hj + yy];
        auto pulled = dual_pull(j, j2, k2, xi);
        for (size_t e = 0; e < hj2; ++e) res[hh * hj2 + e] = pulled[e];
      }
    } else if (kx == Kind::E && ky == Kind::G && kz == Kind::Fl) {
      // (Σ b⊗e)∘(h⊗xi) = Σ xi(e) b∘h
      size_t i = x.orig, j = y.orig, l = z.orig;
      size_t hi = h.hom(i, F1), hj = h.hom(j, F1), bl = h.hom(F1, l);
      auto c = h.comp_full(i, F1, l);
      for (size_t b2 = 0; b2 < bl; ++b2)
        for (size_t yy = 0; yy < hj; ++yy) {
          const F& kv = k2[b2 * hj + yy];
          if (kv.is_zero()) continue;
          for (size_t hh = 0; hh < hi; ++hh) {
            const F& v1 = k1[hh * hj + yy];
            if (v1.is_zero()) continue;
            for (size_t o = 0; o < amb_ac; ++o) res[o] += kv * v1 * c(o, b2 * hi + hh);
          }
        }
    } else if (kx == Kind::Gamma && ky == Kind::G && kz == Kind::G) {
      res = dual_pull(y.orig, z.orig, k2, k1);
    } else if (kx == Kind::Gamma && ky == Kind::G && kz == Kind::Fl) {
      size_t j = y.orig, l = z.orig;
      size_t hj = h.hom(j, F1), bl = h.hom(F1, l);
      for (size_t b2 = 0; b2 < bl; ++b2)
        for (size_t yy = 0; yy < hj; ++yy) res[b2] += k2[b2 * hj + yy] * k1[yy];
    } else if (kx == Kind::G && ky == Kind::G && kz == Kind::Fl) {
      // (Σ b⊗e)∘a = Σ b⊗(e∘a)
      size_t j = x.orig, j2 = y.orig, l = z.orig;
      size_t hj = h.hom(j, F1), hj2 = h.hom(j2, F1), bl = h.hom(F1, l), ajj = h.hom(j, j2);
      auto c = h.comp_full(j, j2, F1);
      for (size_t b2 = 0; b2 < bl; ++b2)
        for (size_t e = 0; e < hj2; ++e) {
          const F& kv = k2[b2 * hj2 + e];
          if (kv.is_zero()) continue;
          for (size_t yy = 0; yy < hj; ++yy)
            for (size_t al = 0; al < ajj; ++al)
              if (!k1[al].is_zero()) res[b2 * hj + yy] += kv * c(yy, e * ajj + al) * k1[al];
        }
    } else if (kx == Kind::G && ky == Kind::Fl && kz == Kind::Fl) {
      // b'∘(Σ b⊗e) = Σ (b'∘b)⊗e
      size_t j = x.orig, l = y.orig, l2 = z.orig;
      size_t hj = h.hom(j, F1), bl = h.hom(F1, l), bl2 = h.hom(F1, l2), bll = h.hom(l, l2);
      auto c = h.comp_full(F1, l, l2);
      for (size_t b1 = 0; b1 < bl; ++b1)
        for (size_t e = 0; e < hj; ++e) {
          const F& kv = k1[b1 * hj + e];
          if (kv.is_zero()) continue;
          for (size_t bp = 0; bp < bll; ++bp)
            if (!k2[bp].is_zero())
              for (size_t b3 = 0; b3 < bl2; ++b3) res[b3 * hj + e] += k2[bp] * kv * c(b3, bp * bl + b1);
        }
    } else {
      // Original composition (E, Gamma and F objects, or three G's).
      auto c = h.comp_full(x.orig, y.orig, z.orig);
      res = c * kron(k2, k1);
    }
    return res;
  };

  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c) {
        auto L1 = lift(a, b), L2 = lift(b, c);
        size_t d1 = out.h.dim[a][b], d2 = out.h.dim[b][c];
        Matrix<F> cm(f, out.h.dim[a][c], d2 * d1);
        for (size_t j2 = 0; j2 < d2; ++j2)
          for (size_t j1 = 0; j1 < d1; ++j1) cm.set_block(0, j2 * d1 + j1, coords(a, c, raw(a, b, c, L2.col(j2), L1.col(j1))));
        // Well defined on quotients: the ideal part must compose to zero.
        auto killed = [&](const Matrix<F>& v) {
          auto r = coords(a, c, v);
          return r.is_zero();
        };
        if (out.space[a][b].kind == Space::quotient)
          for (size_t j2 = 0; j2 < d2; ++j2)
            for (size_t k = 0; k < out.space[a][b].quot.sub.cols(); ++k)
              if (!killed(raw(a, b, c, L2.col(j2), out.space[a][b].quot.sub.col(k))))
                throw DomainError("mutation: composition is not well defined on a quotient");
        if (out.space[b][c].kind == Space::quotient)
          for (size_t j1 = 0; j1 < d1; ++j1)
            for (size_t k = 0; k < out.space[b][c].quot.sub.cols(); ++k)
              if (!killed(raw(a, b, c, out.space[b][c].quot.sub.col(k), L1.col(j1))))
                throw DomainError("mutation: composition is not well defined on a quotient");
        out.h.comp[{a, b, c}] = std::move(cm);
      }
  return out;
}

// Multiplicities after mutating at p (order as in mutated_hom_data).
template <ExactField F>
Multiplicities mutated_multiplicities(const HomData<F>& h, const Multiplicities& mult, size_t p) {
  check_mult(h, mult);
  Multiplicities out;
  for (size_t i = 0; i < p; ++i) out.m.push_back(mult.m[i]);
  size_t total = 0;
  for (size_t j = p; j < h.r; ++j) total += mult.m[j] * h.hom(j, h.target(0));
  if (total <= mult.n[0]) throw DomainError("need n_1 < sum over j > p of dim H_1j m_j");
  out.m.push_back(total - mult.n[0]);
  for (size_t j = p; j < h.r; ++j) out.n.push_back(mult.m[j]);
  for (size_t l = 1; l < h.s; ++l) out.n.push_back(mult.n[l]);
  return out;
}

inline Multiplicities transpose_multiplicities(const Multiplicities& mult) {
  Multiplicities out;
  out.m.assign(mult.n.rbegin(), mult.n.rend());
  out.n.assign(mult.m.rbegin(), mult.m.rend());
  return out;
}

// Mutation of w read as a morphism of the mutated type.
template <ExactField F>
Matrix<F> mutated_rs_point(const HomData<F>& h, const Multiplicities& mult, const ThetaP<F>& tp, const Dual<F>& dual,
                           const MutatedHom<F>& mh, const Point<F>& z) {
  const size_t p = tp.p;
  const FieldTag f = h.field;
  const auto& d = tp.theta.d;
  auto mm = mutated_multiplicities(h, mult, p);
  HomLayout<F> lay(mh.h, sources_object(mh.h, mm), targets_object(mh.h, mm));
  Matrix<F> w(f, lay.total, 1);
  HomLayout<F> l_n1(h, tp.u1, tp.gamma), l_n2(h, tp.u2, tp.gamma), l_m1(h, tp.u1, tp.v1), l_b0(h, tp.gamma, tp.v1);
  auto rep = dual.quot.section * z.phi2;  // in N2*⊗N1, N2* major
  const size_t ng = h.r - p;              // number of G objects
  for (const auto& b : lay.blocks) {
    size_t src = b.src, tgt = b.tgt;
    bool from_gamma = src == p;
    bool to_g = tgt < ng;
    if (!from_gamma && to_g) {
      size_t i = src, jb = tgt;  // E_i -> G_{p+jb}
      const auto& sp = mh.space[mh.h.source(i)][mh.h.target(jb)];
      const auto* bn1 = l_n1.find(i, 0);
      const auto* bn2 = l_n2.find(jb, 0);
      size_t hi = bn1->h, hj = bn2->h;
      for (size_t s = 0; s < b.ms; ++s)
        for (size_t t = 0; t < b.mt; ++t) {
          Matrix<F> v(f, hi * hj, 1);
          for (size_t hh = 0; hh < hi; ++hh)
            for (size_t yy = 0; yy < hj; ++yy)
              v[hh * hj + yy] = rep[l_n2.index(*bn2, yy, t, 0) * d.n1 + l_n1.index(*bn1, hh, s, 0)];
          auto q = sp.quot.projection * v;
          for (size_t k = 0; k < b.h; ++k) w[lay.index(b, k, s, t)] = q[k];
        }
    } else if (!from_gamma) {
      size_t i = src, l = tgt - ng + 1;  // E_i -> F_{l+1}
      const auto* bm1 = l_m1.find(i, l - 1);
      for (size_t k = 0; k < b.h; ++k)
        for (size_t s = 0; s < b.ms; ++s)
          for (size_t t = 0; t < b.mt; ++t) w[lay.index(b, k, s, t)] = z.phi1[l_m1.index(*bm1, k, s, t)];
    } else if (to_g) {
      const auto* bn2 = l_n2.find(tgt, 0);
      for (size_t k = 0; k < b.h; ++k)
        for (size_t nu = 0; nu < b.ms; ++nu)
          for (size_t t = 0; t < b.mt; ++t) w[lay.index(b, k, nu, t)] = z.psi2(l_n2.index(*bn2, k, t, 0), nu);
    } else {
      size_t l = tgt - ng + 1;
      const auto* bb = l_b0.find(0, l - 1);
      for (size_t k = 0; k < b.h; ++k)
        for (size_t nu = 0; nu < b.ms; ++nu)
          for (size_t t = 0; t < b.mt; ++t) w[lay.index(b, k, nu, t)] = z.psi1(l_b0.index(*bb, k, 0, t), nu);
    }
  }
  return w;
}

// Weights lambda on sources and mu on targets.
struct Polarization {
  std::vector<Rational> lambda, mu;
};

struct PolarizationCheck {
  Rational source_total, target_total;
  bool positive = true;
  bool normalized() const { return source_total.is_one() && target_total.is_one(); }
};

PolarizationCheck check_polarization(const Polarization& pol, const Multiplicities& mult);

struct MappedPolarization {
  Polarization pol;
  Rational c;
  bool positive = true;
  std::vector<std::string> issues;
};

// Needs only dim H_1j for j >= p.
MappedPolarization map_polarization(const Polarization& pol, const Multiplicities& mult, const std::vector<size_t>& h1, size_t p);

template <ExactField F>
MappedPolarization map_polarization(const Polarization& pol, const HomData<F>& h, const Multiplicities& mult, size_t p) {
  check_mult(h, mult);
  std::vector<size_t> h1;
  for (size_t j = 0; j < h.r; ++j) h1.push_back(h.hom(j, h.target(0)));
  return map_polarization(pol, mult, h1, p);
}

Polarization transpose_polarization(const Polarization& pol);

}  // namespace mforge
