#include "mforge/thresholds.hpp"

#include <algorithm>
#include <set>

namespace mforge {

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }
Rational Z(size_t n) { return Rational(static_cast<long>(n)); }

bool compare(const Rational& a, const std::string& rel, const Rational& b) {
  if (rel == "<") return a < b;
  if (rel == "<=") return a <= b;
  if (rel == ">") return a > b;
  if (rel == ">=") return a >= b;
  throw DomainError("unknown relation " + rel);
}

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end(), [](const Rational& a, const Rational& b) { return a < b; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool ThresholdReport::ok() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.ok; });
}

std::string ThresholdReport::first_failure() const {
  for (const auto& c : conditions)
    if (!c.ok) return c.name;
  return {};
}

void ThresholdReport::add(std::string name, const Rational& lhs, const char* rel, const Rational& rhs) {
  conditions.push_back({std::move(name), lhs, rhs, rel, compare(lhs, rel, rhs), false});
}

void ThresholdReport::add_vacuous(std::string name, const Rational& lhs, const char* rel) {
  conditions.push_back({std::move(name), lhs, R(0), rel, true, true});
}

TypeDims projective_dims(unsigned n) { return {n + 1u, (n + 1u) * (n + 2u) / 2u, n + 1u}; }

void ThresholdInput::check() const {
  if (m1 == 0 || m2 == 0 || n1 == 0) throw DomainError("multiplicities must be positive");
  if (!(R(0) < t && t < R(1))) throw DomainError("t must lie in (0,1)");
}

ThresholdReport thm53_ok(const TypeDims& d, const ThresholdInput& in, const Rational& c_tau) {
  in.check();
  ThresholdReport rep;
  const Rational a = Z(d.a), m1 = Z(in.m1), m2 = Z(in.m2);
  rep.add("t > a m2/(a m2 + m1)", in.t, ">", a * m2 / (a * m2 + m1));
  rep.add("t > a c(tau,m2) m2/n1", in.t, ">", a * c_tau * in.eta2());
  return rep;
}

ThresholdReport thm56_range(const Polarization& pol, const Multiplicities& mult, size_t p) {
  if (pol.lambda.size() != mult.m.size() || pol.mu.size() != mult.n.size() || mult.n.empty())
    throw ShapeError("polarization does not match the multiplicities");
  if (p >= mult.m.size()) throw DomainError("need 0 <= p <= r-1");
  ThresholdReport rep;
  Rational S(0);
  for (size_t j = p; j < mult.m.size(); ++j) S += pol.lambda[j] * Z(mult.m[j]);
  const Rational& mu1 = pol.mu[0];
  const size_t n1 = mult.n[0];
  rep.add("mu1 >= 1/(n1+1)", mu1, ">=", R(1, static_cast<long>(n1 + 1)));
  rep.add("mu1 >= 1 - S", mu1, ">=", R(1) - S);
  if (n1 <= 1) {
    rep.add_vacuous("mu1 < S/(n1-1)", mu1, "<");
    rep.notes.push_back("n1 <= 1: upper bound is infinite");
  } else {
    rep.add("mu1 < S/(n1-1)", mu1, "<", S / Z(n1 - 1));
  }
  if (p == 0) rep.notes.push_back("p = 0: reduces to mu1 >= 1/(n1+1)");
  if (mult.n.size() == 1) {
    Rational edge = R(static_cast<long>(n1) - 1, static_cast<long>(n1));
    rep.notes.push_back("s = 1: reduces to S >= (n1-1)/n1");
    if (n1 > 1 && S == edge)
      rep.notes.push_back("S = (n1-1)/n1: the reduced form holds with equality but the strict upper bound does not");
  }
  return rep;
}

ThresholdReport thm59_ok(const TypeDims& d, const ThresholdInput& in, const Rational& c_tau, const Rational& c_taustar, int which) {
  if (which == 1) return thm53_ok(d, in, c_tau);
  if (which != 2) throw DomainError("case must be 1 or 2");
  in.check();
  ThresholdReport rep;
  const Rational a = Z(d.a), h1 = Z(d.h1), h2 = Z(d.h2), m1 = Z(in.m1), m2 = Z(in.m2), n1 = Z(in.n1);
  rep.add("t < (m2/n1) h2", in.t, "<", in.eta2() * h2);
  rep.add("t > (m2/n1)(b m1 + n1)/(a m1 + m2)", in.t, ">", in.eta2() * (R(d.b()) * m1 + n1) / (a * m1 + m2));
  rep.add("t > 1 - (m1/n1)(h1 - a c(tau*,m1))", in.t, ">", R(1) - in.eta1() * (h1 - a * c_taustar));
  return rep;
}

ThresholdReport thm64_ok(unsigned n, const ThresholdInput& in, int which) {
  in.check();
  if (n < 1) throw DomainError("need n >= 1");
  ThresholdReport rep;
  const Rational N = R(static_cast<long>(n)), e1 = in.eta1(), e2 = in.eta2();
  const long m1 = static_cast<long>(in.m1), m2 = static_cast<long>(in.m2);
  if (which == 1) {
    rep.add("t > (n+1)eta2/((n+1)eta2 + eta1)", in.t, ">", (N + 1) * e2 / ((N + 1) * e2 + e1));
    if (in.m2 <= n + 1)
      rep.add("t > (n+1)m2(m2-1)eta2/(2(m2(n+1)-1))", in.t, ">", (N + 1) * R(m2 * (m2 - 1)) * e2 / (R(2) * (R(m2) * (N + 1) - 1)));
    else
      rep.add("t > (n+1)^2 eta2/(2(n+2))", in.t, ">", (N + 1) * (N + 1) * e2 / (R(2) * (N + 2)));
    return rep;
  }
  if (which != 2) throw DomainError("case must be 1 or 2");
  rep.add("t < (n+1)eta2", in.t, "<", (N + 1) * e2);
  rep.add("t > (n(n+1)eta1/2 + 1)/((n+1)eta1/eta2 + 1)", in.t, ">", (N * (N + 1) * e1 / 2 + 1) / ((N + 1) * e1 / e2 + 1));
  if (in.m1 <= n + 1)
    rep.add("t > 1 - n(n+1)eta1/(2(m1(n+1)-1))", in.t, ">", R(1) - N * (N + 1) * e1 / (R(2) * (R(m1) * (N + 1) - 1)));
  else
    rep.add("t > 1 - (n+1)eta1/(2(n+2))", in.t, ">", R(1) - (N + 1) * e1 / (R(2) * (N + 2)));
  return rep;
}

SingularScan singular_detector(size_t m1, size_t m2, size_t n1) {
  SingularScan out;
  std::vector<Rational> vals;
  for (size_t a = 0; a <= m1; ++a)
    for (size_t b = 0; b <= m2; ++b)
      for (size_t c = 0; c < n1; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        // t (b/m2 - a/m1) = c/n1 - a/m1
        Rational coef = R(static_cast<long>(b), static_cast<long>(m2)) - R(static_cast<long>(a), static_cast<long>(m1));
        Rational rhs = R(static_cast<long>(c), static_cast<long>(n1)) - R(static_cast<long>(a), static_cast<long>(m1));
        if (coef.is_zero()) {
          if (rhs.is_zero()) out.everywhere = true;
          continue;
        }
        Rational t = rhs / coef;
        if (R(0) < t && t < R(1)) vals.push_back(t);
      }
  out.values = sorted_unique(std::move(vals));
  return out;
}

Example1 singular_values_ex1(unsigned n) {
  if (n < 1) throw DomainError("need n >= 1");
  Example1 ex;
  ex.n = n;
  const long N = n;
  for (long k = 1; k <= N + 1; ++k) ex.singular.push_back(R(k, N + 2));
  ex.nonempty_quotients = n;
  ex.singular_quotients = (n + 1) / 2;
  ex.dim_general = (N + 2) * (N * N + 3 * N - 2) / 2;
  ex.dim_last = N * (N + 3) / 2;
  ex.empty_above = R(N + 1, N + 2);
  ex.reduced_bound = R(N + 3, 2 * (N + 2));
  return ex;
}

Example2 singular_values_ex2(unsigned n, unsigned k) {
  if (n < 1 || k < 1) throw DomainError("need n >= 1 and k >= 1");
  Example2 ex;
  ex.n = n;
  ex.k = k;
  const long N = n, K = k;
  std::vector<Rational> vals;
  for (long kp = 1; kp < K; ++kp)
    for (long p = 0; p < N * K; ++p) {
      Rational t = R(K * (N * K - p), kp * (N * K + 1));
      if (R(0) < t && t < R(1)) vals.push_back(t);
    }
  ex.singular = sorted_unique(std::move(vals));
  ex.t_max = ex.singular.empty() ? R(0) : ex.singular.back();
  ex.t_max_formula = R(N * K, N * K + 1);
  ex.t1 = R(1) - R(1, 1 + (N + 1) * K);
  ex.t2 = R(1) - R(N + 1, 2 * (N * K + 1));
  ex.strict_chain = ex.t2 < ex.t_max && ex.t_max < ex.t1;
  ex.t2_equals_tmax = ex.t2 == ex.t_max;
  return ex;
}

std::vector<SweepRow> sweep(const ThresholdInput& base, const Rational& step, const std::vector<int>& cases,
                            const std::function<ThresholdReport(const ThresholdInput&, int)>& eval) {
  if (!(R(0) < step)) throw DomainError("sweep step must be positive");
  auto sing = singular_detector(base.m1, base.m2, base.n1);
  std::set<std::string> flagged;
  std::vector<Rational> ts;
  for (Rational t = step; t < R(1); t += step) ts.push_back(t);
  for (const auto& v : sing.values) {
    ts.push_back(v);
    flagged.insert(v.str());
  }
  ts = sorted_unique(std::move(ts));
  std::vector<SweepRow> rows;
  for (const auto& t : ts)
    for (int which : cases) {
      ThresholdInput in = base;
      in.t = t;
      auto rep = eval(in, which);
      rows.push_back({t, which, rep.ok(), rep.first_failure(), sing.everywhere || flagged.count(t.str()) > 0});
    }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "t_num,t_den,case,verdict,failing_condition,singular_flag\n";
  for (const auto& r : rows) {
    out += r.t.num().get_str() + "," + r.t.den().get_str() + "," + std::to_string(r.which) + "," + (r.verdict ? "true" : "false") + ",";
    out += "\"" + r.failing + "\"," + (r.singular ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace mforge
