#include <doctest.h>

#include <cstdlib>

#include <map>

#include "mforge/constants.hpp"

using namespace mforge;
using Q = Rational;

namespace {

const FieldTag QQ = FieldTag::rationals();
const FieldTag G2 = FieldTag::prime(2);
const FieldTag G3 = FieldTag::prime(3);

Matrix<ModP> bits(size_t n, uint64_t mask) {
  std::vector<long> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = static_cast<long>((mask >> k) & 1);
  return Matrix<ModP>::from_ints(G2, n, 1, v);
}

// H⊗M' for M' spanned by the columns of b.
Matrix<ModP> tensor_with(size_t h, const Matrix<ModP>& b) {
  const size_t m = b.rows();
  Matrix<ModP> out(b.field(), h * m, h * b.cols());
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      for (size_t x = 0; x < m; ++x) out(i * m + x, i * b.cols() + j) = b(x, j);
  return out;
}

// Quadrics as symmetric (n+1)x(n+1) matrices.
std::vector<Matrix<Q>> sym_basis(size_t v) {
  std::vector<Matrix<Q>> out;
  for (size_t a = 0; a < v; ++a)
    for (size_t b = a; b < v; ++b) {
      Matrix<Q> s(QQ, v, v);
      s(a, b) = Q(1);
      s(b, a) = Q(1);
      out.push_back(s);
    }
  return out;
}

// delta of the witness span(e_1⊗x_1 + ... + e_m⊗x_m) for sigma0, via Q ↦ (Q e_1, ..., Q e_m).
Q sigma0_witness_oracle(size_t n, size_t m) {
  const size_t v = n + 1;
  auto basis = sym_basis(v);
  Matrix<Q> img(QQ, v * m, basis.size());
  for (size_t k = 0; k < basis.size(); ++k)
    for (size_t i = 0; i < m; ++i)
      for (size_t r = 0; r < v; ++r) img(i * v + r, k) = basis[k](r, i);
  long codim = static_cast<long>(v * m - rank(img));
  return Q(codim, static_cast<long>(v * m - 1));
}

// Same for sigma1: v ↦ (v·e_1, ..., v·e_m), products as symmetric matrices v e_iᵀ + e_i vᵀ.
Q sigma1_witness_oracle(size_t n, size_t m) {
  const size_t v = n + 1, s2 = v * (v + 1) / 2;
  Matrix<Q> img(QQ, s2 * m, v);
  for (size_t a = 0; a < v; ++a)
    for (size_t i = 0; i < m; ++i) {
      size_t k = 0;
      for (size_t x = 0; x < v; ++x)
        for (size_t y = x; y < v; ++y, ++k) {
          long c = (a == x && i == y) + (a == y && i == x);
          img(i * s2 + k, a) = Q(c);
        }
    }
  long codim = static_cast<long>(s2 * m - rank(img));
  return Q(codim, static_cast<long>(v * m - 1));
}

template <ExactField F>
TauMap<F> sigma(Sigma w, FieldTag f, unsigned n) {
  return w == Sigma::zero ? sigma0<F>(f, n) : sigma1<F>(f, n);
}

}  // namespace

TEST_CASE("length examples") {
  auto u = Matrix<Q>::from_ints(QQ, 4, 1, {1, 0, 0, 0});
  CHECK(length(u, 2, 2) == 1);
  CHECK(length(Matrix<Q>::from_ints(QQ, 4, 1, {1, 0, 0, 1}), 2, 2) == 2);
  CHECK(length(Matrix<Q>::from_ints(QQ, 4, 1, {1, 1, 1, 1}), 2, 2) == 1);
}

TEST_CASE("length against a minimal-expansion search over GF(2)") {
  for (auto [h, m] : {std::pair<size_t, size_t>{2, 2}, {2, 3}, {3, 3}}) {
    const size_t n = h * m;
    // sums of d rank-one tensors, found layer by layer
    std::vector<uint64_t> rank_one;
    for (uint64_t a = 1; a < (uint64_t{1} << h); ++a)
      for (uint64_t b = 1; b < (uint64_t{1} << m); ++b) {
        uint64_t t = 0;
        for (size_t i = 0; i < h; ++i)
          for (size_t x = 0; x < m; ++x)
            if (((a >> i) & 1) && ((b >> x) & 1)) t |= uint64_t{1} << (i * m + x);
        rank_one.push_back(t);
      }
    std::map<uint64_t, size_t> dist{{0, 0}};
    std::vector<uint64_t> frontier{0};
    for (size_t d = 1; !frontier.empty(); ++d) {
      std::vector<uint64_t> next;
      for (auto s : frontier)
        for (auto t : rank_one)
          if (dist.emplace(s ^ t, d).second) next.push_back(s ^ t);
      frontier = std::move(next);
    }
    REQUIRE(dist.size() == (size_t{1} << n));
    for (const auto& [mask, d] : dist)
      if (mask) CHECK(length(bits(n, mask), h, m) == d);
  }
}

TEST_CASE("genericity examples") {
  CHECK_FALSE(is_generic(Matrix<Q>::from_ints(QQ, 4, 1, {1, 0, 0, 0}), 2, 2));
  CHECK(is_generic(Matrix<Q>::from_ints(QQ, 4, 1, {1, 0, 0, 1}), 2, 2));
  CHECK_THROWS_AS(is_generic(Matrix<Q>::identity(QQ, 4), 2, 2), DomainError);
}

TEST_CASE("genericity against the definition over GF(2)") {
  for (auto [h, m] : {std::pair<size_t, size_t>{2, 2}, {2, 3}, {3, 2}}) {
    const auto n = static_cast<unsigned>(h * m);
    std::vector<Matrix<ModP>> proper;
    for (auto& s : enumerate_all_subspaces(G2, static_cast<unsigned>(m), 1000000))
      if (s.cols() < m) proper.push_back(tensor_with(h, s));
    size_t generic = 0;
    for (unsigned d = 1; d < n; ++d)
      for (const auto& k : enumerate_subspaces(G2, n, d, 1000000)) {
        bool inside_some = false;
        for (const auto& hm : proper) inside_some = inside_some || contains(hm, k);
        CHECK(is_generic(k, h, m) == !inside_some);
        generic += !inside_some;
      }
    CHECK(generic > 0);
  }
}

TEST_CASE("delta examples") {
  auto s0 = sigma0<Q>(QQ, 2);
  CHECK(delta(s0, rank_one_witness<Q>(QQ, 3, 1), 1) == Q(0));
  CHECK(delta(s0, rank_one_witness<Q>(QQ, 3, 2), 2) == Q(1, 5));
  CHECK(delta(sigma1<Q>(QQ, 2), rank_one_witness<Q>(QQ, 3, 2), 2) == Q(9, 5));
  CHECK_THROWS_AS(delta(s0, Matrix<Q>::from_ints(QQ, 6, 1, {1, 0, 0, 0, 0, 0}), 2), DomainError);
}

TEST_CASE("closed forms") {
  CHECK(c_formula(Sigma::zero, 2, 2) == Q(1, 5));
  CHECK(c_formula(Sigma::one, 2, 3) == Q(15, 8));
  CHECK(c_formula(Sigma::zero, 2, 5) == Q(3, 8));
  for (unsigned n = 1; n <= 6; ++n) {
    // the two branches meet at m = n+1
    const long N = n, M = n + 1;
    CHECK(c_formula(Sigma::zero, n, n + 1) == Q(M * (M - 1), 2 * (M * (N + 1) - 1)));
    CHECK(c_formula(Sigma::zero, n, n + 1) == Q(N + 1, 2 * (N + 2)));
    CHECK(c_formula(Sigma::one, n, n + 1) == Q((N + 1) * (M * (N + 2) - 2), 2 * (M * (N + 1) - 1)));
    CHECK(c_formula(Sigma::one, n, n + 1) == Q((N + 1) * (N + 3), 2 * (N + 2)));
  }
  CHECK_THROWS_AS(c_formula(Sigma::zero, 0, 1), DomainError);
}

TEST_CASE("the length-m witness attains the closed form") {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 1; m <= n + 1; ++m) {
      auto k = rank_one_witness<Q>(QQ, n + 1, m);
      Q d0 = delta(sigma0<Q>(QQ, n), k, m), d1 = delta(sigma1<Q>(QQ, n), k, m);
      CHECK(d0 == sigma0_witness_oracle(n, m));
      CHECK(d1 == sigma1_witness_oracle(n, m));
      CHECK(d0 == c_formula(Sigma::zero, n, m));
      CHECK(d1 == c_formula(Sigma::one, n, m));
    }
}

TEST_CASE("seeded rational scans never exceed the closed form") {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 1; m <= 4; ++m)
      for (auto w : {Sigma::zero, Sigma::one}) {
        SearchOptions o;
        o.seed = 100 + n * 10 + m;
        o.samples = 150;
        o.reference = c_formula(w, n, m);
        auto r = c_tau_search(sigma<Q>(w, QQ, n), m, o);
        CHECK(r.mode == "sampled");
        CHECK(r.generic > 0);
        CHECK_FALSE(r.exceeds_reference);
        if (r.witness) CHECK(*r.witness == *o.reference);
      }
}

TEST_CASE("exhaustive GF(3) scans reproduce the closed form") {
  for (unsigned m = 1; m <= 3; ++m)
    for (auto w : {Sigma::zero, Sigma::one}) {
      auto r = c_tau_search(sigma<ModP>(w, G3, 1), m);
      CHECK(r.mode == "exhaustive GF(3)");
      CHECK(*r.max_found == c_formula(w, 1, m));
    }
}

TEST_CASE("GF(2) scans of sigma0 are labelled and may exceed the characteristic-0 value") {
  // derivatives of x² vanish in characteristic 2
  auto r = c_tau_search(sigma0<ModP>(G2, 1), 2);
  CHECK(r.mode == "exhaustive GF(2)");
  CHECK(*r.max_found > c_formula(Sigma::zero, 1, 2));
}

TEST_CASE("constants stabilize once m reaches dim H") {
  for (auto w : {Sigma::zero, Sigma::one}) {
    auto a = c_tau_search(sigma<ModP>(w, G3, 1), 2), b = c_tau_search(sigma<ModP>(w, G3, 1), 3);
    CHECK(*a.max_found == *b.max_found);
  }
  Rng rng(31);
  int paired = 0;
  for (uint32_t p : {2u, 3u}) {
    FieldTag g = FieldTag::prime(p);
    for (int it = 0; it < 40; ++it) {
      size_t e = 1 + rng.below(3), f = 1 + rng.below(3);
      TauMap<ModP> t{e, 2, f, random_matrix<ModP>(rng, g, f, e * 2, 0, p - 1)};
      if (rank(t.tau) != f) continue;
      SearchOptions o;
      o.exhaustive_limit = 200000;
      auto a = c_tau_search(t, 2, o), b = c_tau_search(t, 3, o);
      REQUIRE(b.mode.rfind("exhaustive", 0) == 0);
      CHECK(*a.max_found == *b.max_found);
      ++paired;
    }
  }
  CHECK(paired > 30);
}

TEST_CASE("non-surjective tau is flagged") {
  TauMap<ModP> t{1, 2, 2, Matrix<ModP>::from_ints(G2, 2, 2, {1, 0, 0, 0})};
  auto r = c_tau_search(t, 2);
  bool flagged = false;
  for (const auto& s : r.notes) flagged = flagged || s.find("not surjective") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("splitting bound") {
  SUBCASE("rational samples holding a length-1 element") {
    Rng rng(32);
    for (auto w : {Sigma::zero, Sigma::one}) {
      const unsigned n = 2, m = 3;
      auto t = sigma<Q>(w, QQ, n);
      const size_t hm = (n + 1) * m;
      int checked = 0;
      for (int it = 0; it < 60; ++it) {
        size_t d = 1 + rng.below(hm - 2);
        Matrix<Q> u(QQ, hm, 1);
        u[0] = Q(1);  // e_1⊗x_1
        auto k = Matrix<Q>::hcat(u, random_matrix<Q>(rng, QQ, hm, d));
        if (rank(k) != d + 1 || !is_generic(k, n + 1, m)) continue;
        CHECK(split_bound_holds(delta(t, k, m), c_formula(w, n, 1), c_formula(w, n, m - 1)));
        ++checked;
      }
      CHECK(checked > 20);
    }
  }
  SUBCASE("exhaustive GF(3) against scanned constants") {
    for (auto w : {Sigma::zero, Sigma::one}) {
      auto t = sigma<ModP>(w, G3, 1);
      const size_t m = 3, hm = 2 * m;
      std::map<size_t, Q> c;
      for (size_t k = 1; k < m; ++k) c[k] = *c_tau_search(t, k).max_found;
      Rng rng(33);
      int checked = 0;
      for (int it = 0; it < 200; ++it) {
        size_t d = 1 + rng.below(hm - 2);
        auto k = random_matrix<ModP>(rng, G3, hm, d, 0, 2);
        if (rank(k) != d || !is_generic(k, 2, m)) continue;
        size_t ml = min_length(k, 2, m, 100000);
        if (ml >= m) continue;
        CHECK(split_bound_holds(delta(t, k, m), c[ml], c[m - ml]));
        ++checked;
      }
      CHECK(checked > 20);
    }
  }
}

TEST_CASE("type (2,1) constants") {
  SUBCASE("P2 data matches sigma0 over GF(3)") {
    ProjectiveData pd{2, {-2, -1}, {0}, {}};
    auto h = projective_space_hom_data<ModP>(G3, pd);
    for (size_t m : {1, 2})
      CHECK(*c_tau_rs(h, m).max_found == *c_tau_search(sigma0<ModP>(G3, 2), m).max_found);
  }
  SUBCASE("P2 rational witness equals c0") {
    ProjectiveData pd{2, {-2, -1}, {0}, {}};
    auto h = projective_space_hom_data<Q>(QQ, pd);
    SearchOptions o;
    o.samples = 50;
    for (unsigned m = 1; m <= 3; ++m) CHECK(*c_tau_rs(h, m, o).witness == c_formula(Sigma::zero, 2, m));
  }
  SUBCASE("m2 = 1 scans every proper nonzero subspace") {
    ProjectiveData pd{1, {-2, -1}, {0}, {}};
    auto h = projective_space_hom_data<ModP>(G3, pd);
    auto r = c_tau_rs(h, 1);
    CHECK(r.scanned == gaussian_binomial(3, 2, 1));
    CHECK(r.generic == r.scanned);
    CHECK(*r.max_found == Q(0));
  }
  SUBCASE("A21 = 0 gives the empty supremum") {
    auto h = empty_hom_data<Q>(QQ, 2, 1);
    h.dim[0][2] = 2;
    h.dim[1][2] = 2;
    auto r = c_tau_rs(h, 2);
    CHECK(r.empty);
    CHECK(*r.max_found == Q(0));
  }
  CHECK_THROWS_AS(c_tau_rs(empty_hom_data<Q>(QQ, 1, 1), 1), ShapeError);
}

TEST_CASE("serial and parallel scans agree") {
  setenv("MUTATION_FORGE_THREADS", "4", 1);  // more threads than cores is fine here
  SearchOptions a, b;
  a.exec = Exec::serial;
  a.samples = b.samples = 200;
  auto s = sigma1<Q>(QQ, 2);
  auto ra = c_tau_search(s, 3, a), rb = c_tau_search(s, 3, b);
  CHECK(*ra.max_found == *rb.max_found);
  CHECK(ra.generic == rb.generic);
  auto ga = c_tau_search(sigma0<ModP>(G3, 1), 3, a), gb = c_tau_search(sigma0<ModP>(G3, 1), 3, b);
  CHECK(*ga.max_found == *gb.max_found);
  CHECK(ga.generic == gb.generic);
}
