#include "mforge/homdata.hpp"

namespace mforge {

namespace {

void fill(unsigned vars, unsigned left, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == vars) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = left + 1; k-- > 0;) {
    cur.push_back(k);
    fill(vars, left - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<unsigned>> monomials(unsigned vars, unsigned degree) {
  std::vector<std::vector<unsigned>> out;
  if (vars == 0) return out;
  std::vector<unsigned> cur;
  fill(vars, degree, cur, out);
  return out;
}

size_t binomial(size_t n, size_t k) {
  if (k > n) return 0;
  size_t r = 1;
  for (size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace mforge
