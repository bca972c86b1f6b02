#include <doctest.h>

#include <set>

#include "mforge/random.hpp"
#include "mforge/subspace.hpp"

using namespace mforge;
using Q = Rational;

namespace {

const FieldTag QQ = FieldTag::rationals();

Matrix<Q> qm(size_t r, size_t c, std::vector<long> v) { return Matrix<Q>::from_ints(QQ, r, c, v); }

}  // namespace

TEST_CASE("field tags and scalar parsing") {
  CHECK(FieldTag::parse("rationals").rational());
  CHECK(FieldTag::parse("gf:7").p == 7);
  CHECK(FieldTag::parse("GF(5)").p == 5);
  CHECK_THROWS_AS(FieldTag::parse("gf:6"), ParseError);
  CHECK_THROWS_AS(FieldTag::parse("reals"), ParseError);
  CHECK(Q::parse(QQ, "6/4").str() == "3/2");
  CHECK(Q::parse(QQ, "-2").str() == "-2/1");
  CHECK_THROWS_AS(Q::parse(QQ, "1/0"), ParseError);
  FieldTag g5 = FieldTag::prime(5);
  CHECK(ModP::parse(g5, "1/2") == ModP::from_int(g5, 3));
  CHECK_THROWS_AS(Q::parse(g5, "1"), FieldMismatch);
  CHECK_THROWS_AS(ModP::one(g5) + ModP::one(FieldTag::prime(7)), FieldMismatch);
}

TEST_CASE("rational round trip (a/b)*b = a") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    Q a(rng.range(-1000000, 1000000)), b(rng.range(1, 1000000));
    CHECK((a / b) * b == a);
  }
  // values beyond 64 bits stay exact
  Q big(1);
  for (int i = 0; i < 40; ++i) big = big * Q(1000003);
  CHECK((big / Q(7)) * Q(7) == big);
}

TEST_CASE("solve") {
  auto x = solve(Matrix<Q>::identity(QQ, 2), qm(2, 1, {3, 4}));
  REQUIRE(x);
  CHECK(*x == qm(2, 1, {3, 4}));
  auto a = qm(1, 2, {1, 0});
  auto y = solve(a, qm(1, 1, {5}));
  REQUIRE(y);
  CHECK(a * *y == qm(1, 1, {5}));
  CHECK_FALSE(solve(qm(1, 1, {0}), qm(1, 1, {1})));
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(qm(1, 2, {1, 0})) == qm(2, 1, {0, 1}));
  CHECK(kernel_basis(Matrix<Q>(QQ, 2, 3)).cols() == 3);
  FieldTag g2 = FieldTag::prime(2);
  auto a = Matrix<ModP>::from_ints(g2, 1, 3, {1, 0, 0});
  auto k = kernel_basis(a);
  CHECK(k.cols() == 2);
  // exhaustive: every vector killed by a lies in span(k)
  size_t killed = 0;
  for (uint64_t i = 0; i < 8; ++i) {
    auto v = vector_from_index(g2, 3, i);
    if ((a * v).is_zero()) {
      ++killed;
      CHECK(contains(k, v));
    }
  }
  CHECK(killed == 4);
}

TEST_CASE("quotient data") {
  auto q = quotient_data<Q>(QQ, 2, qm(2, 1, {1, 0}));
  CHECK(q.projection * qm(2, 1, {1, 0}) == Matrix<Q>(QQ, 1, 1));
  CHECK(q.projection * q.section == Matrix<Q>::identity(QQ, 1));
  CHECK(quotient_data<Q>(QQ, 3, Matrix<Q>(QQ, 3, 0)).projection.rows() == 3);
  auto s = qm(3, 1, {1, 1, 0});
  auto q3 = quotient_data<Q>(QQ, 3, s);
  CHECK(q3.projection * q3.section == Matrix<Q>::identity(QQ, 2));
  CHECK((q3.projection * s).is_zero());
}

TEST_CASE("contract_pair against a triple loop") {
  CHECK(contract_pair(qm(1, 2, {1, 2}), qm(2, 1, {3, 4})) == qm(1, 1, {11}));
  CHECK(contract_pair(qm(1, 2, {1, 2}), Matrix<Q>(QQ, 2, 1)).is_zero());
  Rng rng(9);
  for (int it = 0; it < 50; ++it) {
    size_t e = 1 + rng.below(3), k = 1 + rng.below(3), f = 1 + rng.below(3);
    auto phi = random_matrix<Q>(rng, QQ, e, k, -5, 5);
    auto psi = random_matrix<Q>(rng, QQ, k, f, -5, 5);
    Matrix<Q> naive(QQ, e, f);
    for (size_t i = 0; i < e; ++i)
      for (size_t j = 0; j < f; ++j)
        for (size_t l = 0; l < k; ++l) naive(i, j) += phi(i, l) * psi(l, j);
    CHECK(contract_pair(phi, psi) == naive);
  }
}

TEST_CASE("subspace enumeration matches gaussian binomials") {
  CHECK(gaussian_binomial(2, 2, 1) == 3);
  CHECK(gaussian_binomial(2, 3, 1) == 7);
  for (uint64_t q : {2u, 3u})
    for (unsigned n = 0; n <= 5; ++n) {
      uint64_t qn = 1;
      for (unsigned i = 0; i < n; ++i) qn *= q;
      if (qn > 243) continue;
      FieldTag f = FieldTag::prime(static_cast<uint32_t>(q));
      for (unsigned d = 0; d <= n; ++d) {
        auto subs = enumerate_subspaces(f, n, d, 1000000);
        CHECK(subs.size() == gaussian_binomial(q, n, d));
        // distinct canonical representatives
        for (size_t i = 1; i < subs.size(); ++i) CHECK_FALSE(subs[i] == subs[i - 1]);
        if (d == 0) CHECK(subs.size() == 1);
      }
    }
  CHECK_THROWS_AS(enumerate_subspaces(FieldTag::prime(3), 8, 4, 100), BudgetExceeded);
}

TEST_CASE("gaussian binomial by brute force: distinct spans of d independent vectors") {
  FieldTag f = FieldTag::prime(2);
  const unsigned n = 4;
  std::set<std::vector<long>> spans;
  for (uint64_t a = 1; a < 16; ++a)
    for (uint64_t b = 1; b < 16; ++b) {
      auto m = Matrix<ModP>::hcat(vector_from_index(f, n, a), vector_from_index(f, n, b));
      if (rank(m) != 2) continue;
      auto c = column_space(m);
      std::vector<long> key;
      for (const auto& x : c.data()) key.push_back(x.str()[0] - '0');
      spans.insert(key);
    }
  CHECK(spans.size() == gaussian_binomial(2, n, 2));
}
