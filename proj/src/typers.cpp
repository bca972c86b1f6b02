#include "mforge/typers.hpp"

namespace mforge {

PolarizationCheck check_polarization(const Polarization& pol, const Multiplicities& mult) {
  if (pol.lambda.size() != mult.m.size() || pol.mu.size() != mult.n.size()) throw ShapeError("polarization does not match the type");
  PolarizationCheck c;
  for (size_t i = 0; i < pol.lambda.size(); ++i) {
    c.source_total += pol.lambda[i] * Rational(static_cast<long>(mult.m[i]));
    c.positive = c.positive && pol.lambda[i].sign() > 0;
  }
  for (size_t l = 0; l < pol.mu.size(); ++l) {
    c.target_total += pol.mu[l] * Rational(static_cast<long>(mult.n[l]));
    c.positive = c.positive && pol.mu[l].sign() > 0;
  }
  return c;
}

MappedPolarization map_polarization(const Polarization& pol, const Multiplicities& mult, const std::vector<size_t>& h1, size_t p) {
  const size_t r = mult.m.size(), s = mult.n.size();
  if (p >= r || s == 0 || h1.size() != r) throw DomainError("map_polarization: bad type or split");
  auto chk = check_polarization(pol, mult);
  if (!chk.normalized()) throw DomainError("polarization is not normalized");
  if (!chk.positive) throw DomainError("polarization has non-positive weights");
  MappedPolarization out;
  const Rational mu1 = pol.mu[0];
  Rational c;
  long span = 0;
  for (size_t i = 0; i < p; ++i) c += pol.lambda[i] * Rational(static_cast<long>(mult.m[i]));
  for (size_t j = p; j < r; ++j) span += static_cast<long>(mult.m[j] * h1[j]);
  span -= static_cast<long>(mult.n[0]);
  if (span <= 0) throw DomainError("need n_1 < sum over j > p of dim H_1j m_j");
  c += mu1 * Rational(span);
  out.c = c;
  Polarization& q = out.pol;
  for (size_t i = 0; i < p; ++i) q.lambda.push_back(pol.lambda[i] / c);
  q.lambda.push_back(mu1 / c);
  for (size_t j = p; j < r; ++j) q.mu.push_back((mu1 * Rational(static_cast<long>(h1[j])) - pol.lambda[j]) / c);
  for (size_t l = 1; l < s; ++l) q.mu.push_back(pol.mu[l] / c);
  for (size_t k = 0; k < q.lambda.size(); ++k)
    if (q.lambda[k].sign() <= 0) {
      out.positive = false;
      out.issues.push_back("source weight " + std::to_string(k + 1) + " is " + q.lambda[k].str());
    }
  for (size_t k = 0; k < q.mu.size(); ++k)
    if (q.mu[k].sign() <= 0) {
      out.positive = false;
      out.issues.push_back("target weight " + std::to_string(k + 1) + " is " + q.mu[k].str());
    }
  return out;
}

Polarization transpose_polarization(const Polarization& pol) {
  Polarization t;
  t.lambda.assign(pol.mu.rbegin(), pol.mu.rend());
  t.mu.assign(pol.lambda.rbegin(), pol.lambda.rend());
  return t;
}

}  // namespace mforge
