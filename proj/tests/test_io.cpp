#include <doctest.h>

#include "mforge/io.hpp"
#include "mforge/random.hpp"

using namespace mforge;
using Q = Rational;

namespace {

const FieldTag QQ = FieldTag::rationals();

template <ExactField F>
bool same_theta(const Theta<F>& a, const Theta<F>& b) {
  return a.field == b.field && a.d == b.d && a.rho1 == b.rho1 && a.rho2 == b.rho2 && a.mu == b.mu && a.nu == b.nu;
}

// Serialize, print, reparse: what the CLI does between runs.
Json reparse(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST_CASE("theta and point round trip over Q and GF(p)") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    auto t = random_theta<Q>(rng, QQ);
    auto w = random_point(rng, t);
    auto t2 = theta_from_json<Q>(QQ, reparse(to_json(t)));
    CHECK(same_theta(t, t2));
    CHECK(point_from_json(t2, reparse(to_json(w))) == w);
  }
  for (unsigned p : {2u, 3u, 5u}) {
    const FieldTag g = FieldTag::prime(p);
    Rng rng(p);
    auto t = random_theta<ModP>(rng, g);
    auto w = random_point(rng, t);
    auto t2 = theta_from_json<ModP>(g, reparse(to_json(t)));
    CHECK(same_theta(t, t2));
    CHECK(point_from_json(t2, reparse(to_json(w))) == w);
  }
}

TEST_CASE("scalars accept integers and fractions") {
  Json j = Json::array({Json::array({"3/6", 2, "-4"})});
  auto m = matrix_from_json<Q>(QQ, j, 1, 3, "m");
  CHECK(m(0, 0) == Q(1, 2));
  CHECK(m(0, 1) == Q(2));
  CHECK(m(0, 2) == Q(-4));
  CHECK(rational_from_json(Json("7/2"), "x") == Q(7, 2));
  CHECK(to_json(m)[0][0] == "1/2");
}

TEST_CASE("hom data round trip") {
  ProjectiveData pd{2, {-2, -1}, {0, 1}, {}};
  auto h = projective_space_hom_data<Q>(QQ, pd);
  auto h2 = hom_data_from_json<Q>(QQ, reparse(to_json(h)));
  CHECK(h2.r == h.r);
  CHECK(h2.s == h.s);
  CHECK(h2.dim == h.dim);
  CHECK(h2.comp.size() == h.comp.size());
  for (const auto& [k, m] : h.comp) CHECK(h2.comp.at(k) == m);

  Json proj{{"projective", {{"n", 2}, {"e", {-2, -1}}, {"f", {0, 1}}}}};
  auto h3 = hom_data_from_json<Q>(QQ, proj);
  CHECK(h3.dim == h.dim);
}

TEST_CASE("multiplicities and polarization round trip") {
  Multiplicities m{{1, 2, 3}, {4, 5}};
  auto m2 = multiplicities_from_json(reparse(to_json(m)));
  CHECK(m2.m == m.m);
  CHECK(m2.n == m.n);
  Polarization p{{Q(1, 7), Q(2, 7)}, {Q(5, 7), Q(-1, 3)}};
  auto p2 = polarization_from_json(reparse(to_json(p)));
  CHECK(p2.lambda == p.lambda);
  CHECK(p2.mu == p.mu);
}

TEST_CASE("kronecker round trip") {
  const FieldTag g = FieldTag::prime(3);
  Rng rng(9);
  Kronecker k{2, 2, 3, random_matrix<ModP>(rng, g, 3, 4)};
  auto k2 = kronecker_from_json(g, reparse(to_json(k)));
  CHECK(k2.q == k.q);
  CHECK(k2.m == k.m);
  CHECK(k2.n == k.n);
  CHECK(k2.f == k.f);
}

TEST_CASE("malformed input raises ParseError") {
  CHECK_THROWS_AS(rational_from_json(Json(1.5), "x"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0"), "x"), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("abc"), "x"), ParseError);
  CHECK_THROWS_AS(size_from_json(Json(-1), "x"), ParseError);
  CHECK_THROWS_AS(require_key(Json::object(), "dims", "theta"), ParseError);
  CHECK_THROWS_AS(theta_from_json<Q>(QQ, Json::array()), ParseError);
  CHECK_THROWS_AS(matrix_from_json<Q>(QQ, Json("x"), 1, 1, "m"), ParseError);
  CHECK_THROWS_AS(matrix_from_json<Q>(QQ, Json::array({1}), 1, 1, "m"), ParseError);
  CHECK_THROWS_AS(ModP::parse(FieldTag::prime(5), "1/5"), Error);
}

TEST_CASE("wrong shapes raise ShapeError") {
  CHECK_THROWS_AS(matrix_from_json<Q>(QQ, Json::array({Json::array({1, 2})}), 1, 3, "m"), ShapeError);
  CHECK_THROWS_AS(matrix_from_json<Q>(QQ, Json::array({Json::array({1})}), 2, 1, "m"), ShapeError);
  CHECK_THROWS_AS(matrix_from_json<Q>(QQ, Json::array(), 2, 2, "m"), ShapeError);
  CHECK(matrix_from_json<Q>(QQ, Json::array(), 0, 3, "m").cols() == 3);
  CHECK_THROWS_AS(vector_from_json<Q>(QQ, Json::array({1, 2}), 3, "v"), ShapeError);

  Theta<Q> t;
  for (uint64_t seed = 1; t.rho1.rows() == 0 || t.rho1.cols() == 0; ++seed) {
    Rng rng(seed);
    t = random_theta<Q>(rng, QQ);
  }
  Json j = to_json(t);
  j["dims"]["m1"] = t.d.m1 + 1;
  CHECK_THROWS_AS(theta_from_json<Q>(QQ, j), ShapeError);

  Json bad{{"r", 1}, {"s", 1}, {"dim", {{0, 1}}}};
  CHECK_THROWS_AS(hom_data_from_json<Q>(QQ, bad), ShapeError);
}
