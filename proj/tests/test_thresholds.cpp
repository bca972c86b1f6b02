#include <doctest.h>

#include <algorithm>
#include <set>

#include "mforge/constants.hpp"
#include "mforge/random.hpp"
#include "mforge/thresholds.hpp"

using namespace mforge;
using Q = Rational;

namespace {

ThresholdInput input(size_t m1, size_t m2, size_t n1, Q t) {
  ThresholdInput in;
  in.m1 = m1;
  in.m2 = m2;
  in.n1 = n1;
  in.t = t;
  return in;
}

// Case-1/2 conditions through the generic theorem with P^n dimensions and the closed-form constants.
ThresholdReport via_generic(unsigned n, const ThresholdInput& in, int which) {
  return thm59_ok(projective_dims(n), in, c_formula(Sigma::zero, n, static_cast<unsigned>(in.m2)),
                  c_formula(Sigma::one, n, static_cast<unsigned>(in.m1)), which);
}

}  // namespace

TEST_CASE("projective dimensions") {
  auto d = projective_dims(2);
  CHECK(d.a == 3);
  CHECK(d.h1 == 6);
  CHECK(d.h2 == 3);
  CHECK(d.b() == 3);
  FieldTag qq = FieldTag::rationals();
  for (unsigned n = 1; n <= 3; ++n) {
    ProjectiveData pd{n, {-2, -1}, {0}, {}};
    auto t = type_dims(projective_space_hom_data<Q>(qq, pd));
    CHECK(t.a == projective_dims(n).a);
    CHECK(t.h1 == projective_dims(n).h1);
    CHECK(t.h2 == projective_dims(n).h2);
  }
}

TEST_CASE("first existence theorem on the first example") {
  for (unsigned n = 1; n <= 5; ++n) {
    const Q edge(n + 1, n + 2);
    auto d = projective_dims(n);
    const Q c = c_formula(Sigma::zero, n, 1);
    CHECK(c == Q(0));
    CHECK_FALSE(thm53_ok(d, input(1, 1, n + 2, edge), c).ok());
    CHECK(thm53_ok(d, input(1, 1, n + 2, edge + Q(1, 1000)), c).ok());
    CHECK_FALSE(thm53_ok(d, input(1, 1, n + 2, edge - Q(1, 1000)), c).ok());
  }
  // t = 1 itself is outside (0,1); just below it both bounds hold whenever they are < 1
  CHECK(thm53_ok(projective_dims(2), input(1, 1, 4, Q(999, 1000)), Q(0)).ok());
  CHECK_THROWS_AS(thm53_ok(projective_dims(2), input(1, 1, 4, Q(1)), Q(0)), DomainError);
  auto rep = thm53_ok(projective_dims(2), input(1, 1, 4, Q(1, 2)), Q(0));
  CHECK(rep.first_failure() == "t > a m2/(a m2 + m1)");
}

TEST_CASE("quasi-good quotient range") {
  Rng rng(41);
  SUBCASE("p = 0 and s = 1 always hold") {
    for (int it = 0; it < 200; ++it) {
      size_t r = 1 + rng.below(3), n1 = 1 + rng.below(5);
      Multiplicities mult;
      Polarization pol;
      Q a;
      for (size_t i = 0; i < r; ++i) {
        mult.m.push_back(1 + rng.below(3));
        pol.lambda.push_back(Q(1 + rng.range(0, 7)));
        a += pol.lambda.back() * Q(static_cast<long>(mult.m.back()));
      }
      for (auto& x : pol.lambda) x /= a;
      mult.n = {n1};
      pol.mu = {Q(1, static_cast<long>(n1))};
      CHECK(thm56_range(pol, mult, 0).ok());
    }
  }
  SUBCASE("p = 0: the left bound is not strict") {
    Multiplicities mult{{2}, {2, 1}};
    Polarization pol{{Q(1, 2)}, {Q(1, 3), Q(1, 3)}};
    auto rep = thm56_range(pol, mult, 0);
    CHECK(rep.ok());
    pol.mu = {Q(3, 10), Q(2, 5)};
    CHECK(thm56_range(pol, mult, 0).first_failure() == "mu1 >= 1/(n1+1)");
  }
  SUBCASE("n1 = 1 makes the upper bound vacuous") {
    Multiplicities mult{{1, 1}, {1}};
    Polarization pol{{Q(1, 2), Q(1, 2)}, {Q(1)}};
    auto rep = thm56_range(pol, mult, 1);
    REQUIRE(rep.conditions.size() == 3);
    CHECK(rep.conditions[2].vacuous);
    CHECK(rep.ok());
  }
  SUBCASE("s = 1 reduces to S >= (n1-1)/n1 away from equality") {
    for (int it = 0; it < 200; ++it) {
      Multiplicities mult{{1 + rng.below(3), 1 + rng.below(3)}, {2 + rng.below(4)}};
      Polarization pol{{Q(1 + rng.range(0, 9)), Q(1 + rng.range(0, 9))}, {Q(1, static_cast<long>(mult.n[0]))}};
      Q a = pol.lambda[0] * Q(static_cast<long>(mult.m[0])) + pol.lambda[1] * Q(static_cast<long>(mult.m[1]));
      for (auto& x : pol.lambda) x /= a;
      Q S = pol.lambda[1] * Q(static_cast<long>(mult.m[1]));
      Q edge(static_cast<long>(mult.n[0]) - 1, static_cast<long>(mult.n[0]));
      if (S == edge) continue;
      CHECK(thm56_range(pol, mult, 1).ok() == (S > edge));
    }
  }
}

TEST_CASE("second existence theorem, case 2, on the first example") {
  auto d = projective_dims(2);
  const Q c_tau = c_formula(Sigma::zero, 2, 1), c_star = c_formula(Sigma::one, 2, 1);
  auto rep = thm59_ok(d, input(1, 1, 4, Q(7, 10)), c_tau, c_star, 2);
  CHECK(rep.ok());
  REQUIRE(rep.conditions.size() == 3);
  CHECK(rep.conditions[2].rhs == Q(5, 8));
  CHECK(rep.conditions[0].rhs == Q(3, 4));
  CHECK(rep.conditions[1].rhs < Q(5, 8));
  CHECK_FALSE(thm59_ok(d, input(1, 1, 4, Q(5, 8)), c_tau, c_star, 2).ok());
  CHECK(thm59_ok(d, input(1, 1, 4, Q(5, 8)), c_tau, c_star, 2).first_failure() == "t > 1 - (m1/n1)(h1 - a c(tau*,m1))");
  // the case-2 bound sits below the case-1 threshold from n = 2 on; at n = 1 they coincide
  for (unsigned n = 2; n <= 8; ++n) CHECK(Q(n + 3, 2 * (n + 2)) < Q(n + 1, n + 2));
  CHECK(singular_values_ex1(1).reduced_bound == singular_values_ex1(1).empty_above);
  auto r1 = thm59_ok(d, input(1, 1, 4, Q(1, 2)), c_tau, c_star, 1);
  CHECK_FALSE(r1.ok());
  CHECK(r1.first_failure() == "t > a m2/(a m2 + m1)");
}

TEST_CASE("P^n conditions") {
  auto rep = thm64_ok(2, input(1, 1, 4, Q(7, 10)), 2);
  CHECK(rep.ok());
  CHECK(rep.conditions.size() == 3);
  // reduced bound of the first example equals the third case-2 inequality
  for (unsigned n = 1; n <= 5; ++n) {
    auto r = thm64_ok(n, input(1, 1, n + 2, Q(1, 2)), 2);
    CHECK(r.conditions[2].rhs == Q(n + 3, 2 * (n + 2)));
    CHECK(r.conditions[2].rhs == singular_values_ex1(n).reduced_bound);
  }
}

TEST_CASE("P^n conditions agree with the generic theorem") {
  Rng rng(42);
  int agree = 0;
  for (int it = 0; it < 400; ++it) {
    unsigned n = 1 + static_cast<unsigned>(rng.below(4));
    auto in = input(1 + rng.below(6), 1 + rng.below(6), 1 + rng.below(8), Q(1 + rng.range(0, 98), 100));
    for (int which : {1, 2}) {
      auto a = thm64_ok(n, in, which), b = via_generic(n, in, which);
      REQUIRE(a.conditions.size() == b.conditions.size());
      for (size_t k = 0; k < a.conditions.size(); ++k) CHECK(a.conditions[k].rhs == b.conditions[k].rhs);
      CHECK(a.ok() == b.ok());
      agree += a.ok() == b.ok();
    }
  }
  CHECK(agree == 800);
}

TEST_CASE("branch continuity at m = n+1") {
  for (unsigned n = 1; n <= 5; ++n) {
    const long N = n, M = n + 1;
    const Q e2(M, 7);
    CHECK(Q((N + 1) * M * (M - 1)) * e2 / Q(2 * (M * (N + 1) - 1)) == Q((N + 1) * (N + 1)) * e2 / Q(2 * (N + 2)));
    auto at = thm64_ok(n, input(1, n + 1, 7, Q(1, 2)), 1);
    auto past = thm64_ok(n, input(1, n + 2, 7, Q(1, 2)), 1);
    CHECK(at.conditions[1].rhs == Q((N + 1) * (N + 1)) * e2 / Q(2 * (N + 2)));
    CHECK(past.conditions[1].name != at.conditions[1].name);
  }
}

TEST_CASE("first example singular values") {
  auto e1 = singular_values_ex1(1);
  CHECK(e1.singular == std::vector<Q>{Q(1, 3), Q(2, 3)});
  auto e2 = singular_values_ex1(2);
  CHECK(e2.singular == std::vector<Q>{Q(1, 4), Q(1, 2), Q(3, 4)});
  CHECK(e2.dim_general == 16);
  CHECK(e2.dim_last == 5);
  CHECK(e2.nonempty_quotients == 2);
  CHECK(e2.empty_above == Q(3, 4));
  for (unsigned n = 1; n <= 5; ++n) {
    auto ex = singular_values_ex1(n);
    const long N = n;
    CHECK(ex.dim_general == (N + 2) * (N * N + 3 * N - 2) / 2);
    CHECK(ex.dim_last == N * (N + 3) / 2);
    CHECK(ex.nonempty_quotients == n);
    // the dimension-vector detector finds exactly these values
    auto det = singular_detector(1, 1, n + 2);
    CHECK_FALSE(det.everywhere);
    CHECK(det.values == ex.singular);
  }
}

TEST_CASE("second example singular values") {
  auto a = singular_values_ex2(1, 2);
  CHECK(a.t_max == Q(2, 3));
  CHECK(a.t2_equals_tmax);
  CHECK_FALSE(a.strict_chain);
  auto b = singular_values_ex2(2, 2);
  CHECK(b.t1 == Q(6, 7));
  CHECK(b.t2 == Q(7, 10));
  CHECK(b.t_max == Q(4, 5));
  CHECK(b.strict_chain);

  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned k = 2; k <= 6; ++k) {
      auto ex = singular_values_ex2(n, k);
      // brute force over the same index ranges, kept as a set
      std::set<std::pair<long, long>> seen;
      Q best(0);
      const long N = n, K = k;
      for (long kp = 1; kp < K; ++kp)
        for (long p = 0; p < N * K; ++p) {
          const long num = K * (N * K - p), den = kp * (N * K + 1);
          if (num <= 0 || num >= den) continue;
          Q t(num, den);
          seen.insert({t.num().get_si(), t.den().get_si()});
          if (best < t) best = t;
        }
      CHECK(ex.singular.size() == seen.size());
      CHECK(ex.t_max == best);
      CHECK(ex.t_max == Q(N * K, N * K + 1));
      CHECK(ex.t_max == ex.t_max_formula);
      if (n >= 2) CHECK(ex.strict_chain);
      if (n == 1) CHECK(ex.t2 == ex.t_max);
      // the detector sees at least every listed value
      auto det = singular_detector(1, k, n * k + 1);
      for (const auto& t : ex.singular) CHECK(std::binary_search(det.values.begin(), det.values.end(), t));
    }
}

TEST_CASE("sweeps") {
  auto eval = [](const ThresholdInput& in, int which) { return thm64_ok(2, in, which); };
  auto rows = sweep(input(1, 1, 4, Q(1, 2)), Q(1, 10), {2}, eval);
  std::vector<Q> true_at;
  std::vector<Q> flagged;
  for (const auto& r : rows) {
    if (r.verdict) true_at.push_back(r.t);
    if (r.singular) flagged.push_back(r.t);
  }
  CHECK(true_at == std::vector<Q>{Q(7, 10)});
  CHECK(flagged == std::vector<Q>{Q(1, 4), Q(1, 2), Q(3, 4)});
  CHECK(rows.size() == 9 + 2);

  auto csv = sweep_csv(rows);
  CHECK(csv.rfind("t_num,t_den,case,verdict,failing_condition,singular_flag\n", 0) == 0);
  CHECK(csv.find("7,10,2,true,\"\",false") != std::string::npos);

  // an empty window: every row fails
  auto none = sweep(input(1, 1, 3, Q(1, 2)), Q(1, 12), {2}, [](const ThresholdInput& in, int w) { return thm64_ok(1, in, w); });
  CHECK(std::none_of(none.begin(), none.end(), [](const SweepRow& r) { return r.verdict; }));
  CHECK_THROWS_AS(sweep(input(1, 1, 3, Q(1, 2)), Q(0), {1}, eval), DomainError);
}
