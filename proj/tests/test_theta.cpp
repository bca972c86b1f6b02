#include <doctest.h>

#include <set>

#include "mforge/random.hpp"
#include "mforge/subspace.hpp"

using namespace mforge;
using Q = Rational;

namespace {

const FieldTag QQ = FieldTag::rationals();

Theta<Q> kronecker_degenerate(size_t n2, size_t m) {
  Theta<Q> t;
  t.field = QQ;
  t.d = {0, n2, 0, 0, 0, 0, m, n2 - m};
  t.rho1 = Matrix<Q>(QQ, 0, 0);
  t.rho2 = Matrix<Q>(QQ, 0, 0);
  t.mu = Matrix<Q>(QQ, 0, 0);
  t.nu = Matrix<Q>(QQ, 0, 0);
  return t;
}

template <ExactField F>
GroupElement<F> random_right(Rng& rng, const Theta<F>& t) {
  auto s = right_scalar(t, random_unit<F>(rng, t.field), random_unit<F>(rng, t.field));
  auto a = right_identity(t);
  a.alpha0 = random_alpha(rng, t);
  return compose(t, make_right(t, s), make_right(t, a));
}

template <ExactField F>
GroupElement<F> random_left(Rng& rng, const Theta<F>& t) {
  F c = random_unit<F>(rng, t.field);
  auto l = left_identity(t);
  l.g_m = random_invertible<F>(rng, t.field, t.d.m);
  l.l_m1 = Matrix<F>::scalar(t.field, t.d.m1, c);
  l.l_m2 = Matrix<F>::scalar(t.field, t.d.m2, c);
  l.l_b0 = Matrix<F>::scalar(t.field, t.d.b0, c);
  l.beta = random_matrix<F>(rng, t.field, t.d.m, t.d.b0);
  return make_left(t, l);
}

}  // namespace

TEST_CASE("validate_theta") {
  Rng rng(1);
  SUBCASE("zero structure maps with A0 > 0 fail nu-bar injectivity") {
    Theta<Q> t;
    t.field = QQ;
    t.d = {1, 2, 1, 1, 1, 1, 1, 1};
    t.rho1 = Matrix<Q>(QQ, 1, 1);
    t.rho2 = Matrix<Q>::from_ints(QQ, 1, 2, {1, 0});
    t.mu = Matrix<Q>(QQ, 1, 1);
    t.nu = Matrix<Q>(QQ, 1, 2);
    auto rep = validate_theta(t);
    REQUIRE(rep.first_failure());
    CHECK(rep.first_failure()->name == "nu-bar injective");
  }
  SUBCASE("Kronecker-degenerate data passes") { CHECK(validate_theta(kronecker_degenerate(4, 3)).ok()); }
  SUBCASE("P2 data through the builder") {
    ProjectiveData pd{2, {-2, -1}, {0, 1}, {}};
    auto h = projective_space_hom_data<Q>(QQ, pd);
    for (size_t p = 0; p < 2; ++p) CHECK(validate_theta(build_theta_p(h, {{1, 1}, {2, 1}}, p).theta).ok());
  }
  SUBCASE("shape mismatch is reported") {
    auto t = kronecker_degenerate(3, 1);
    t.d.m = 3;
    CHECK_FALSE(validate_theta(t).ok());
  }
  SUBCASE("random data satisfies diagram D by construction") {
    for (int i = 0; i < 30; ++i) CHECK(validate_theta(random_theta<Q>(rng, QQ)).ok());
  }
}

TEST_CASE("group action") {
  Rng rng(2);
  auto t = random_theta<Q>(rng, QQ);
  auto w = random_point(rng, t);
  CHECK(act(t, make_right(t, right_identity(t)), w) == w);
  CHECK(act(t, make_left(t, left_identity(t)), w) == w);
  auto neg = make_right(t, right_scalar(t, Q(-1), Q(1)));
  CHECK(act(t, neg, act(t, neg, w)) == w);
  CHECK_FALSE(check_compatible(t, neg).first_failure());

  for (int i = 0; i < 50; ++i) {
    auto tt = random_theta<Q>(rng, QQ);
    auto x = random_point(rng, tt);
    bool right = rng.below(2) == 0;
    auto g = right ? random_right(rng, tt) : random_left(rng, tt);
    auto h = right ? random_right(rng, tt) : random_left(rng, tt);
    CHECK(check_compatible(tt, g).ok());
    CHECK(act(tt, compose(tt, g, h), x) == act(tt, g, act(tt, h, x)));
  }
}

TEST_CASE("in_W0") {
  auto t = kronecker_degenerate(2, 1);
  auto w = zero_point(t);
  CHECK_FALSE(in_W0(t, w));
  w.psi2 = Matrix<Q>::from_ints(QQ, 2, 1, {3, 5});
  CHECK(in_W0(t, w));

  // GF(2): psi2ᵀ is onto iff its image has 2^m elements
  FieldTag g2 = FieldTag::prime(2);
  Rng rng(3);
  for (int it = 0; it < 40; ++it) {
    auto tt = random_theta<ModP>(rng, g2);
    auto x = random_point(rng, tt);
    std::set<std::string> image;
    for (uint64_t v = 0; v < (uint64_t{1} << tt.d.n2); ++v) {
      auto y = x.psi2.transpose() * vector_from_index(g2, static_cast<unsigned>(tt.d.n2), v);
      std::string key;
      for (const auto& c : y.data()) key += c.str();
      image.insert(key);
    }
    CHECK(in_W0(tt, x) == (image.size() == (uint64_t{1} << tt.d.m)));
  }
}
