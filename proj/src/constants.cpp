#include "mforge/constants.hpp"

namespace mforge {

Rational c_formula(Sigma which, unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw DomainError("closed forms need n >= 1 and m >= 1");
  const long N = n, M = m;
  if (which == Sigma::zero) {
    if (m <= n + 1) return Rational(M * (M - 1), 2 * (M * (N + 1) - 1));
    return Rational(N + 1, 2 * (N + 2));
  }
  if (m <= n + 1) return Rational((N + 1) * (M * (N + 2) - 2), 2 * (M * (N + 1) - 1));
  return Rational((N + 1) * (N + 3), 2 * (N + 2));
}

size_t min_length(const Matrix<ModP>& k, size_t h, size_t m, uint64_t budget) {
  const FieldTag f = k.field();
  const size_t d = k.cols();
  uint64_t total = checked_power(f.p, static_cast<unsigned>(d), budget, "vectors of K");
  size_t best = h * m + 1;
  for (uint64_t i = 1; i < total; ++i) {
    auto u = k * vector_from_index(f, static_cast<unsigned>(d), i);
    if (u.is_zero()) continue;
    best = std::min(best, length(u, h, m));
  }
  if (best > h * m) throw DomainError("K has no nonzero element");
  return best;
}

}  // namespace mforge
