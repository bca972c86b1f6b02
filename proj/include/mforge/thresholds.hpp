#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mforge/homdata.hpp"
#include "mforge/typers.hpp"

namespace mforge {

// One inequality "lhs rel rhs" evaluated exactly. Vacuous conditions hold.
struct Condition {
  std::string name;
  Rational lhs, rhs;
  std::string rel;  // "<", "<=", ">", ">="
  bool ok = true;
  bool vacuous = false;
};

struct ThresholdReport {
  std::vector<Condition> conditions;
  std::vector<std::string> notes;
  bool ok() const;
  // Name of the first failing condition, empty when all hold.
  std::string first_failure() const;
  void add(std::string name, const Rational& lhs, const char* rel, const Rational& rhs);
  void add_vacuous(std::string name, const Rational& lhs, const char* rel);
};

// Hom dimensions of type (2,1) data: a = Hom(E1,E2), h1 = Hom(E1,F1), h2 = Hom(E2,F1).
struct TypeDims {
  size_t a = 0, h1 = 0, h2 = 0;
  long b() const { return static_cast<long>(a * h2) - static_cast<long>(h1); }
};

TypeDims projective_dims(unsigned n);  // O(-2), O(-1) -> O on P^n

template <ExactField F>
TypeDims type_dims(const HomData<F>& h) {
  if (h.r != 2 || h.s != 1) throw ShapeError("need Hom data of type (2,1)");
  return {h.hom(0, 1), h.hom(0, 2), h.hom(1, 2)};
}

// Multiplicities and t = m2 λ2 for a type (2,1) morphism space.
struct ThresholdInput {
  size_t m1 = 1, m2 = 1, n1 = 1;
  Rational t;
  Rational eta1() const { return Rational(static_cast<long>(m1), static_cast<long>(n1)); }
  Rational eta2() const { return Rational(static_cast<long>(m2), static_cast<long>(n1)); }
  void check() const;
};

// Existence of a good projective quotient from the constant c(tau, m2).
// The first bound is a m2 / (a m2 + m1).
ThresholdReport thm53_ok(const TypeDims& d, const ThresholdInput& in, const Rational& c_tau);

// Max(1/(n1+1), 1 - S) <= μ1 < S/(n1-1) with S = Σ_{j>=p} λ_j m_j (sources 0..p-1 excluded).
ThresholdReport thm56_range(const Polarization& pol, const Multiplicities& mult, size_t p);

// Case 1: the two bounds above. Case 2 uses c(tau*, m1) for tau* : H12⊗A21 -> H11.
ThresholdReport thm59_ok(const TypeDims& d, const ThresholdInput& in, const Rational& c_tau, const Rational& c_taustar, int which);

// The same conditions written out for O(-2)^m1 ⊕ O(-1)^m2 -> O^n1 on P^n.
ThresholdReport thm64_ok(unsigned n, const ThresholdInput& in, int which);

// Candidate singular values: t in (0,1) admitting dimension vectors (m1',m2',n1'),
// not all zero and n1' < n1, with (1-t) m1'/m1 + t m2'/m2 = n1'/n1.
struct SingularScan {
  std::vector<Rational> values;
  bool everywhere = false;  // some dimension vector balances for every t
};
SingularScan singular_detector(size_t m1, size_t m2, size_t n1);

struct Example1 {
  unsigned n = 0;
  std::vector<Rational> singular;  // k/(n+2), 1 <= k <= n+1
  size_t nonempty_quotients = 0;
  size_t singular_quotients = 0;
  long dim_general = 0, dim_last = 0;
  Rational empty_above;    // quotients are empty for t above this
  Rational reduced_bound;  // bound from the mutated side
};
Example1 singular_values_ex1(unsigned n);

struct Example2 {
  unsigned n = 0, k = 0;
  std::vector<Rational> singular;
  Rational t_max;          // maximum of the enumerated list
  Rational t_max_formula;  // nk/(nk+1)
  Rational t1, t2;
  bool strict_chain = false;   // t2 < t_max < t1
  bool t2_equals_tmax = false;
};
Example2 singular_values_ex2(unsigned n, unsigned k);

struct SweepRow {
  Rational t;
  int which = 1;
  bool verdict = false;
  std::string failing;
  bool singular = false;
};

// Grid j*step in (0,1) plus every candidate singular value; one row per t and case.
std::vector<SweepRow> sweep(const ThresholdInput& base, const Rational& step, const std::vector<int>& cases,
                            const std::function<ThresholdReport(const ThresholdInput&, int)>& eval);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace mforge
