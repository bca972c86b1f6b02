#include "mforge/subspace.hpp"

#include <limits>
#include <string>

namespace mforge {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) return std::numeric_limits<uint64_t>::max();
  return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  return a > std::numeric_limits<uint64_t>::max() - b ? std::numeric_limits<uint64_t>::max() : a + b;
}

uint64_t sat_pow(uint64_t q, size_t e) {
  uint64_t r = 1;
  for (size_t i = 0; i < e; ++i) r = sat_mul(r, q);
  return r;
}

void combos(unsigned n, unsigned d, unsigned start, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  for (unsigned c = start; c + (d - cur.size()) <= n; ++c) {
    cur.push_back(c);
    combos(n, d, c + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

uint64_t gaussian_binomial(uint64_t q, unsigned n, unsigned d) {
  if (d > n) return 0;
  // Sum over pivot patterns of q^(free entries); avoids division and saturates cleanly.
  std::vector<std::vector<unsigned>> all;
  std::vector<unsigned> cur;
  combos(n, d, 0, cur, all);
  uint64_t total = 0;
  for (const auto& piv : all) {
    size_t free = 0;
    for (unsigned i = 0; i < d; ++i) free += (n - 1 - piv[i]) - (d - 1 - i);
    total = sat_add(total, sat_pow(q, free));
  }
  return total;
}

uint64_t checked_power(uint64_t q, unsigned n, uint64_t budget, const char* what) {
  uint64_t v = sat_pow(q, n);
  if (v > budget) throw BudgetExceeded(std::string(what) + ": " + std::to_string(q) + "^" + std::to_string(n) + " exceeds budget " + std::to_string(budget));
  return v;
}

SubspaceIndex::SubspaceIndex(FieldTag f, unsigned n, unsigned d, uint64_t budget) : field_(f), n_(n), d_(d) {
  if (f.rational()) throw FieldMismatch("subspace enumeration needs a finite field");
  if (d > n) throw DomainError("subspace dimension exceeds ambient dimension");
  std::vector<std::vector<unsigned>> all;
  std::vector<unsigned> cur;
  combos(n, d, 0, cur, all);
  for (auto& piv : all) {
    Shape s;
    s.pivots = piv;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned c = piv[i] + 1; c < n; ++c) {
        bool pivot = false;
        for (unsigned k = i + 1; k < d; ++k) pivot |= piv[k] == c;
        if (!pivot) s.free.push_back({i, c});
      }
    s.count = sat_pow(f.p, s.free.size());
    s.offset = total_;
    total_ = sat_add(total_, s.count);
    if (total_ > budget)
      throw BudgetExceeded("subspace count for GF(" + std::to_string(f.p) + ")^" + std::to_string(n) + ", dim " + std::to_string(d) + " exceeds budget " + std::to_string(budget));
    shapes_.push_back(std::move(s));
  }
}

Matrix<ModP> SubspaceIndex::at(uint64_t index) const {
  if (index >= total_) throw DomainError("subspace index out of range");
  size_t lo = 0, hi = shapes_.size();
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (shapes_[mid].offset <= index ? lo : hi) = mid;
  }
  const Shape& s = shapes_[lo];
  uint64_t local = index - s.offset;
  Matrix<ModP> b(field_, n_, d_);
  for (unsigned i = 0; i < d_; ++i) b(s.pivots[i], i) = ModP::one(field_);
  for (size_t k = s.free.size(); k-- > 0;) {
    b(s.free[k].second, s.free[k].first) = ModP::from_int(field_, static_cast<long>(local % field_.p));
    local /= field_.p;
  }
  return b;
}

std::vector<Matrix<ModP>> enumerate_subspaces(FieldTag f, unsigned n, unsigned d, uint64_t budget) {
  SubspaceIndex idx(f, n, d, budget);
  std::vector<Matrix<ModP>> out;
  out.reserve(idx.count());
  for (uint64_t i = 0; i < idx.count(); ++i) out.push_back(idx.at(i));
  return out;
}

std::vector<Matrix<ModP>> enumerate_all_subspaces(FieldTag f, unsigned n, uint64_t budget) {
  std::vector<Matrix<ModP>> out;
  for (unsigned d = 0; d <= n; ++d) {
    uint64_t left = budget >= out.size() ? budget - out.size() : 0;
    auto part = enumerate_subspaces(f, n, d, left);
    for (auto& m : part) out.push_back(std::move(m));
  }
  return out;
}

Matrix<ModP> vector_from_index(FieldTag f, unsigned n, uint64_t index) {
  Matrix<ModP> v(f, n, 1);
  for (unsigned k = n; k-- > 0;) {
    v[k] = ModP::from_int(f, static_cast<long>(index % f.p));
    index /= f.p;
  }
  return v;
}

}  // namespace mforge
