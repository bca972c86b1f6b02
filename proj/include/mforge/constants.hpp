#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "mforge/homdata.hpp"
#include "mforge/parallel.hpp"
#include "mforge/random.hpp"
#include "mforge/subspace.hpp"

namespace mforge {

// tau : E⊗H -> F as an f x (e*h) matrix, E major.
template <ExactField F>
struct TauMap {
  size_t e = 0, h = 0, f = 0;
  Matrix<F> tau;
  FieldTag field() const { return tau.field(); }
};

template <ExactField F>
void check_tau(const TauMap<F>& t) {
  if (t.tau.rows() != t.f || t.tau.cols() != t.e * t.h) throw ShapeError("tau map must be f x (e*h)");
}

// Elements of H⊗M are vectors indexed h*m + x; as matrices they are h x m.
template <ExactField F>
size_t length(const Matrix<F>& u, size_t h, size_t m) {
  return rank(u.reshape(h, m));
}

// K (columns spanning a subspace of H⊗M) is generic when it is proper and the
// row spaces of its elements, read as h x m matrices, add up to all of M.
template <ExactField F>
bool is_generic(const Matrix<F>& k, size_t h, size_t m) {
  if (k.rows() != h * m) throw ShapeError("subspace is not in H⊗M");
  size_t d = rank(k);
  if (d >= h * m) throw DomainError("genericity is defined for proper subspaces");
  Matrix<F> acc(k.field(), 0, m);
  for (size_t j = 0; j < k.cols(); ++j) acc = Matrix<F>::vcat(acc, k.col(j).reshape(h, m));
  return rank(acc) == m;
}

// tau_m(E⊗K) inside F⊗M, as spanning columns.
template <ExactField F>
Matrix<F> tau_image(const TauMap<F>& t, const Matrix<F>& k, size_t m) {
  check_tau(t);
  Matrix<F> out(t.field(), t.f * m, t.e * k.cols());
  for (size_t e = 0; e < t.e; ++e) {
    auto te = t.tau.block(0, e * t.h, t.f, t.h);
    for (size_t j = 0; j < k.cols(); ++j) out.set_block(0, e * k.cols() + j, (te * k.col(j).reshape(t.h, m)).vec());
  }
  return out;
}

template <ExactField F>
Rational delta(const TauMap<F>& t, const Matrix<F>& k, size_t m) {
  if (!is_generic(k, t.h, m)) throw DomainError("delta needs a generic subspace");
  long img = static_cast<long>(rank(tau_image(t, k, m)));
  long codim_img = static_cast<long>(t.f * m) - img;
  long codim_k = static_cast<long>(t.h * m - rank(k));
  return Rational(codim_img, codim_k);
}

// sigma0 : S²V⊗V* -> V, q⊗z -> derivative of q along z; V of dimension n+1,
// quadratic monomials in the order of monomials(n+1, 2).
template <ExactField F>
TauMap<F> sigma0(FieldTag f, unsigned n) {
  const size_t v = n + 1;
  auto mons = monomials(static_cast<unsigned>(v), 2);
  TauMap<F> t{mons.size(), v, v, Matrix<F>(f, v, mons.size() * v)};
  for (size_t q = 0; q < mons.size(); ++q)
    for (size_t c = 0; c < v; ++c) {
      if (mons[q][c] == 0) continue;
      auto rest = mons[q];
      rest[c] -= 1;
      for (size_t o = 0; o < v; ++o)
        if (rest[o] == 1) t.tau(o, q * v + c) = F::from_int(f, mons[q][c]);
    }
  return t;
}

// sigma1 : V⊗V -> S²V, multiplication.
template <ExactField F>
TauMap<F> sigma1(FieldTag f, unsigned n) {
  const size_t v = n + 1;
  auto mons = monomials(static_cast<unsigned>(v), 2);
  TauMap<F> t{v, v, mons.size(), Matrix<F>(f, mons.size(), v * v)};
  for (size_t a = 0; a < v; ++a)
    for (size_t b = 0; b < v; ++b) {
      std::vector<unsigned> e(v, 0);
      e[a] += 1;
      e[b] += 1;
      for (size_t q = 0; q < mons.size(); ++q)
        if (mons[q] == e) t.tau(q, a * v + b) = F::one(f);
    }
  return t;
}

// tau : H11*⊗A21 -> H12* dual to composition H12⊗A21 -> H11, for type (2,1) data.
template <ExactField F>
TauMap<F> tau_from_hom_data(const HomData<F>& hd) {
  if (hd.r != 2 || hd.s != 1) throw ShapeError("need Hom data of type (2,1)");
  size_t h11 = hd.hom(0, 2), a21 = hd.hom(0, 1), h12 = hd.hom(1, 2);
  TauMap<F> t{h11, a21, h12, Matrix<F>(hd.field, h12, h11 * a21)};
  if (a21 == 0 || h11 == 0 || h12 == 0) return t;
  const auto& c = hd.comp.at({0, 1, 2});
  for (size_t xi = 0; xi < h11; ++xi)
    for (size_t a = 0; a < a21; ++a)
      for (size_t y = 0; y < h12; ++y) t.tau(y, xi * a21 + a) = c(xi, y * a21 + a);
  return t;
}

enum class Sigma { zero, one };

// Closed forms for the constants of sigma0 and sigma1.
Rational c_formula(Sigma which, unsigned n, unsigned m);

// span(e_1⊗x_1 + ... + e_m⊗x_m): one element of length m. Needs m <= dim H.
template <ExactField F>
Matrix<F> rank_one_witness(FieldTag f, size_t h, size_t m) {
  if (m > h) throw DomainError("no element of length m when m > dim H");
  Matrix<F> k(f, h * m, 1);
  for (size_t i = 0; i < m; ++i) k[i * m + i] = F::one(f);
  return k;
}

struct SearchOptions {
  uint64_t seed = 1;
  uint64_t samples = 1000;
  uint64_t exhaustive_limit = 100000;  // finite fields only
  std::optional<Rational> reference;
  Exec exec = Exec::parallel;
};

struct SearchReport {
  size_t h = 0, m = 0;
  std::optional<Rational> witness;   // delta of the length-m witness, when m <= dim H
  std::optional<Rational> max_found;  // over scanned generic subspaces
  std::string mode;                   // "exhaustive GF(p)" or "sampled"
  uint64_t scanned = 0, generic = 0;
  uint64_t seed = 0;
  std::optional<Rational> reference;
  bool exceeds_reference = false;
  bool empty = false;  // no generic subspace seen: sup taken as 0
  std::vector<std::string> notes;
};

namespace detail {

inline Rng sample_rng(uint64_t seed, uint64_t i) { return Rng(seed ^ (0x9E3779B97F4A7C15ull * (i + 1))); }

template <ExactField F>
std::optional<Rational> sample_delta(const TauMap<F>& t, size_t m, uint64_t seed, uint64_t i) {
  Rng rng = sample_rng(seed, i);
  const size_t n = t.h * m;
  size_t d = 1 + rng.below(n - 1);
  auto k = random_matrix<F>(rng, t.field(), n, d);
  if (rank(k) != d || !is_generic(k, t.h, m)) return std::nullopt;
  return delta(t, k, m);
}

}  // namespace detail

template <ExactField F>
SearchReport c_tau_search(const TauMap<F>& t, size_t m, const SearchOptions& opt = {}) {
  check_tau(t);
  if (m == 0) throw DomainError("need m > 0");
  SearchReport rep;
  rep.h = t.h;
  rep.m = m;
  rep.seed = opt.seed;
  rep.reference = opt.reference;
  const FieldTag f = t.field();
  if (m <= t.h && t.h * m > 1)
    rep.witness = delta(t, rank_one_witness<F>(f, t.h, m), m);
  else
    rep.notes.push_back(m > t.h ? "m > dim H: no element of length m" : "H⊗M is a line: no proper generic subspace");
  if (rank(t.tau) != t.f) rep.notes.push_back("tau is not surjective: the splitting bound and the reduction to m = dim H may fail");
  const size_t n = t.h * m;
  struct Best {
    std::optional<Rational> val;
    uint64_t generic = 0;
  };
  std::vector<Best> parts;
  bool exhaustive = false;
  if constexpr (std::is_same_v<F, ModP>) {
    uint64_t total = 0;
    for (size_t d = 1; d + 1 <= n; ++d) total += gaussian_binomial(f.p, static_cast<unsigned>(n), static_cast<unsigned>(d));
    if (n >= 2 && total <= opt.exhaustive_limit) {
      exhaustive = true;
      std::vector<SubspaceIndex> idx;
      std::vector<uint64_t> start;
      uint64_t acc = 0;
      for (size_t d = 1; d + 1 <= n; ++d) {
        idx.emplace_back(f, static_cast<unsigned>(n), static_cast<unsigned>(d), opt.exhaustive_limit);
        start.push_back(acc);
        acc += idx.back().count();
      }
      rep.scanned = acc;
      rep.mode = "exhaustive GF(" + std::to_string(f.p) + ")";
      const uint64_t chunk = 256, chunks = (acc + chunk - 1) / chunk;
      parts = index_map<Best>(static_cast<size_t>(chunks), opt.exec, [&](size_t c) {
        Best b;
        for (uint64_t i = c * chunk; i < std::min(acc, (c + 1) * chunk); ++i) {
          size_t s = std::upper_bound(start.begin(), start.end(), i) - start.begin() - 1;
          auto k = idx[s].at(i - start[s]);
          if (!is_generic(k, t.h, m)) continue;
          ++b.generic;
          auto v = delta(t, k, m);
          if (!b.val || *b.val < v) b.val = v;
        }
        return b;
      });
    }
  }
  if (!exhaustive) {
    rep.mode = "sampled";
    if (n >= 2) {
      rep.scanned = opt.samples;
      parts = index_map<Best>(static_cast<size_t>(opt.samples), opt.exec, [&](size_t i) {
        Best b;
        if (auto v = detail::sample_delta(t, m, opt.seed, i)) {
          b.generic = 1;
          b.val = v;
        }
        return b;
      });
    }
  }
  for (const auto& b : parts) {
    rep.generic += b.generic;
    if (b.val && (!rep.max_found || *rep.max_found < *b.val)) rep.max_found = b.val;
  }
  if (!rep.max_found) {
    rep.empty = true;
    rep.max_found = Rational(0);
    rep.notes.push_back("no generic subspace scanned: sup taken as 0");
  }
  if (rep.reference) rep.exceeds_reference = *rep.reference < *rep.max_found;
  return rep;
}

// c(tau, m2) for type (2,1) Hom data.
template <ExactField F>
SearchReport c_tau_rs(const HomData<F>& hd, size_t m2, const SearchOptions& opt = {}) {
  auto t = tau_from_hom_data(hd);
  if (t.h == 0) {
    SearchReport rep;
    rep.m = m2;
    rep.seed = opt.seed;
    rep.mode = "degenerate";
    rep.max_found = Rational(0);
    rep.empty = true;
    rep.reference = opt.reference;
    rep.notes.push_back("A21 = 0: sup over an empty set taken as 0");
    return rep;
  }
  return c_tau_search(t, m2, opt);
}

// Smallest length of a nonzero element of K (finite fields, by enumeration).
size_t min_length(const Matrix<ModP>& k, size_t h, size_t m, uint64_t budget);

// Splitting bound: delta(K) <= max(c(m'), c(m - m')) for K holding an element of length m' < m.
inline bool split_bound_holds(const Rational& d, const Rational& c_short, const Rational& c_rest) {
  return d <= (c_short < c_rest ? c_rest : c_short);
}

}  // namespace mforge
