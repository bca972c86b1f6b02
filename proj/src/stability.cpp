#include "mforge/stability.hpp"

#include <limits>

namespace mforge {

namespace {

constexpr uint64_t kNone = std::numeric_limits<uint64_t>::max();
constexpr uint64_t kChunk = 512;

struct First {
  uint64_t ss = kNone, s = kNone, count = 0;
};

First merge(const std::vector<First>& parts) {
  First out;
  for (const auto& p : parts) {
    out.ss = std::min(out.ss, p.ss);
    out.s = std::min(out.s, p.s);
    out.count += p.count;
  }
  return out;
}

// Lowest indices in [0, total) at which test() reports a violation, scanned in chunks.
// test(i) returns 0 (fine), 1 (breaks stability only) or 2 (breaks semistability);
// -1 marks an index that is not an admissible family.
template <class Test>
First scan(uint64_t total, Exec exec, Test&& test) {
  uint64_t chunks = (total + kChunk - 1) / kChunk;
  auto parts = index_map<First>(static_cast<size_t>(chunks), exec, [&](size_t c) {
    First r;
    uint64_t lo = c * kChunk, hi = std::min(total, lo + kChunk);
    for (uint64_t i = lo; i < hi; ++i) {
      int v = test(i);
      if (v < 0) continue;
      ++r.count;
      if (v >= 1 && r.s == kNone) r.s = i;
      if (v == 2 && r.ss == kNone) r.ss = i;
    }
    return r;
  });
  return merge(parts);
}

// Polarization scaled to integers over a common denominator.
struct IntWeights {
  std::vector<long> lambda, mu;
};

IntWeights scale(const Polarization& pol) {
  mpz_class den = 1;
  for (const auto* v : {&pol.lambda, &pol.mu})
    for (const auto& x : *v) den = lcm(den, x.den());
  IntWeights w;
  auto conv = [&](const Rational& x) {
    mpz_class n = x.num() * (den / x.den());
    if (!n.fits_slong_p()) throw DomainError("polarization denominators too large");
    return n.get_si();
  };
  for (const auto& x : pol.lambda) w.lambda.push_back(conv(x));
  for (const auto& x : pol.mu) w.mu.push_back(conv(x));
  return w;
}

void require_finite(FieldTag f) {
  if (f.rational()) throw FieldMismatch("semistability is decided over GF(p) only");
}

std::vector<uint64_t> digits(uint64_t index, const std::vector<uint64_t>& radix) {
  std::vector<uint64_t> d(radix.size());
  for (size_t k = radix.size(); k-- > 0;) {
    d[k] = index % radix[k];
    index /= radix[k];
  }
  return d;
}

uint64_t product(const std::vector<uint64_t>& radix, uint64_t budget, const char* what) {
  uint64_t total = 1;
  for (auto r : radix) {
    if (r != 0 && total > budget / r) throw BudgetExceeded(std::string(what) + " exceeds budget " + std::to_string(budget));
    total *= r;
  }
  if (total > budget) throw BudgetExceeded(std::string(what) + " exceeds budget " + std::to_string(budget));
  return total;
}

// Per-block coefficient matrices of w: A[i][l][h] is n_l x m_i.
struct RsProblem {
  FieldTag field;
  size_t r = 0, s = 0;
  std::vector<size_t> m, n;
  std::vector<std::vector<std::vector<MatP>>> coef;
  IntWeights weights;
  Polarization pol;

  RsProblem(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& p, const MatP& w) : pol(p) {
    require_finite(h.field);
    check_mult(h, mult);
    if (p.lambda.size() != h.r || p.mu.size() != h.s) throw ShapeError("polarization does not match the type");
    field = h.field;
    r = h.r;
    s = h.s;
    m = mult.m;
    n = mult.n;
    HomLayout<ModP> lay(h, sources_object(h, mult), targets_object(h, mult));
    if (w.rows() != lay.total || w.cols() != 1) throw ShapeError("morphism has the wrong number of coordinates");
    coef.assign(r, std::vector<std::vector<MatP>>(s));
    for (const auto& b : lay.blocks) {
      auto& list = coef[b.src][b.tgt];
      for (size_t hh = 0; hh < b.h; ++hh) {
        MatP a(field, b.mt, b.ms);
        for (size_t si = 0; si < b.ms; ++si)
          for (size_t t = 0; t < b.mt; ++t) a(t, si) = w[lay.index(b, hh, si, t)];
        list.push_back(std::move(a));
      }
    }
    weights = scale(p);
  }

  // Σ_h A_h(span of basis) inside N_l.
  MatP image(size_t i, size_t l, const MatP& basis) const {
    MatP acc(field, n[l], 0);
    for (const auto& a : coef[i][l]) acc = MatP::hcat(acc, a * basis);
    return column_space(acc);
  }
};

Witness make_witness(const RsProblem& pb, std::vector<MatP> src, std::vector<MatP> tgt) {
  Witness w;
  w.lhs = Rational(0);
  w.rhs = Rational(0);
  for (size_t i = 0; i < src.size(); ++i) w.lhs += pb.pol.lambda[i] * Rational(static_cast<long>(src[i].cols()));
  for (size_t l = 0; l < tgt.size(); ++l) w.rhs += pb.pol.mu[l] * Rational(static_cast<long>(tgt[l].cols()));
  w.sources = std::move(src);
  w.targets = std::move(tgt);
  return w;
}

Verdict reduced_minimal(const RsProblem& pb, const Budgets& b, Exec exec) {
  std::vector<std::vector<MatP>> subs(pb.r);
  std::vector<uint64_t> radix;
  for (size_t i = 0; i < pb.r; ++i) {
    subs[i] = enumerate_all_subspaces(pb.field, static_cast<unsigned>(pb.m[i]), b.subspaces);
    radix.push_back(subs[i].size());
  }
  const uint64_t total = product(radix, b.subspaces, "subspace families");
  // Image of each candidate M'_i in each N_l.
  std::vector<std::vector<std::vector<MatP>>> img(pb.r);
  for (size_t i = 0; i < pb.r; ++i) {
    img[i].resize(subs[i].size());
    for (size_t k = 0; k < subs[i].size(); ++k)
      for (size_t l = 0; l < pb.s; ++l) img[i][k].push_back(pb.image(i, l, subs[i][k]));
  }
  auto targets_of = [&](const std::vector<uint64_t>& d) {
    std::vector<MatP> t;
    for (size_t l = 0; l < pb.s; ++l) {
      MatP acc(pb.field, pb.n[l], 0);
      for (size_t i = 0; i < pb.r; ++i) acc = MatP::hcat(acc, img[i][d[i]][l]);
      t.push_back(column_space(acc));
    }
    return t;
  };
  auto test = [&](uint64_t idx) -> int {
    auto d = digits(idx, radix);
    long lhs = 0, rhs = 0;
    bool zero = true, proper = false;
    for (size_t i = 0; i < pb.r; ++i) {
      size_t dm = subs[i][d[i]].cols();
      lhs += pb.weights.lambda[i] * static_cast<long>(dm);
      zero = zero && dm == 0;
    }
    for (size_t l = 0; l < pb.s; ++l) {
      MatP acc(pb.field, pb.n[l], 0);
      for (size_t i = 0; i < pb.r; ++i) acc = MatP::hcat(acc, img[i][d[i]][l]);
      size_t dn = rank(acc);
      rhs += pb.weights.mu[l] * static_cast<long>(dn);
      proper = proper || dn != pb.n[l];
    }
    if (!proper) return -1;
    if (lhs > rhs) return 2;
    if (lhs == rhs && !zero) return 1;
    return 0;
  };
  First f = scan(total, exec, test);
  Verdict v;
  v.families = f.count;
  auto witness = [&](uint64_t idx) {
    auto d = digits(idx, radix);
    std::vector<MatP> src;
    for (size_t i = 0; i < pb.r; ++i) src.push_back(subs[i][d[i]]);
    return make_witness(pb, std::move(src), targets_of(d));
  };
  if (f.ss != kNone) {
    v.semistable = false;
    v.unstable_witness = witness(f.ss);
  }
  if (f.s != kNone) {
    v.stable = false;
    v.nonstable_witness = witness(f.s);
  }
  return v;
}

// Every admissible family, target subspaces included.
Verdict reduced_exhaustive(const RsProblem& pb, const Budgets& b, Exec exec) {
  std::vector<std::vector<MatP>> subs;
  std::vector<uint64_t> radix;
  for (size_t i = 0; i < pb.r; ++i) subs.push_back(enumerate_all_subspaces(pb.field, static_cast<unsigned>(pb.m[i]), b.subspaces));
  for (size_t l = 0; l < pb.s; ++l) subs.push_back(enumerate_all_subspaces(pb.field, static_cast<unsigned>(pb.n[l]), b.subspaces));
  for (const auto& sv : subs) radix.push_back(sv.size());
  const uint64_t total = product(radix, b.subspaces, "subspace families");
  auto test = [&](uint64_t idx) -> int {
    auto d = digits(idx, radix);
    long lhs = 0, rhs = 0;
    bool zero = true, proper = false;
    for (size_t l = 0; l < pb.s; ++l) {
      const auto& nl = subs[pb.r + l][d[pb.r + l]];
      for (size_t i = 0; i < pb.r; ++i)
        if (!contains(nl, pb.image(i, l, subs[i][d[i]]))) return -1;
      rhs += pb.weights.mu[l] * static_cast<long>(nl.cols());
      proper = proper || nl.cols() != pb.n[l];
      zero = zero && nl.cols() == 0;
    }
    if (!proper) return -1;
    for (size_t i = 0; i < pb.r; ++i) {
      size_t dm = subs[i][d[i]].cols();
      lhs += pb.weights.lambda[i] * static_cast<long>(dm);
      zero = zero && dm == 0;
    }
    if (lhs > rhs) return 2;
    if (lhs == rhs && !zero) return 1;
    return 0;
  };
  First f = scan(total, exec, test);
  Verdict v;
  v.families = f.count;
  auto witness = [&](uint64_t idx) {
    auto d = digits(idx, radix);
    std::vector<MatP> src, tgt;
    for (size_t i = 0; i < pb.r; ++i) src.push_back(subs[i][d[i]]);
    for (size_t l = 0; l < pb.s; ++l) tgt.push_back(subs[pb.r + l][d[pb.r + l]]);
    return make_witness(pb, std::move(src), std::move(tgt));
  };
  if (f.ss != kNone) {
    v.semistable = false;
    v.unstable_witness = witness(f.ss);
  }
  if (f.s != kNone) {
    v.stable = false;
    v.nonstable_witness = witness(f.s);
  }
  return v;
}

MatP square_from_index(FieldTag f, size_t k, uint64_t idx) {
  return vector_from_index(f, static_cast<unsigned>(k * k), idx).reshape(k, k);
}

}  // namespace

Verdict kronecker_semistable(const Kronecker& k, const Budgets& b, Exec exec) {
  require_finite(k.f.field());
  if (k.f.rows() != k.n || k.f.cols() != k.q * k.m) throw ShapeError("Kronecker module: f must be n x (q*m)");
  const FieldTag fld = k.f.field();
  auto subs = enumerate_all_subspaces(fld, static_cast<unsigned>(k.m), b.subspaces);
  auto image = [&](const MatP& basis) {
    MatP acc(fld, k.n, 0);
    for (size_t h = 0; h < k.q; ++h) acc = MatP::hcat(acc, k.f.block(0, h * k.m, k.n, k.m) * basis);
    return column_space(acc);
  };
  // dim N'/dim M' >= n/m over M' != 0 with N' = f(L⊗M') != N.
  auto test = [&](uint64_t idx) -> int {
    const auto& basis = subs[idx];
    if (basis.cols() == 0) return -1;
    size_t dn = rank(image(basis));
    if (dn == k.n) return -1;
    size_t lhs = dn * k.m, rhs = k.n * basis.cols();
    if (lhs < rhs) return 2;
    if (lhs == rhs) return 1;
    return 0;
  };
  First f = scan(subs.size(), exec, test);
  Verdict v;
  v.families = f.count;
  auto witness = [&](uint64_t idx) {
    Witness w;
    w.sources = {subs[idx]};
    w.targets = {image(subs[idx])};
    w.lhs = Rational(static_cast<long>(subs[idx].cols()), static_cast<long>(k.m));
    w.rhs = Rational(static_cast<long>(w.targets[0].cols()), static_cast<long>(k.n));
    return w;
  };
  if (f.ss != kNone) {
    v.semistable = false;
    v.unstable_witness = witness(f.ss);
  }
  if (f.s != kNone) {
    v.stable = false;
    v.nonstable_witness = witness(f.s);
  }
  return v;
}

Kronecker kronecker_mutate(const Kronecker& k) {
  if (k.f.rows() != k.n || k.f.cols() != k.q * k.m) throw ShapeError("Kronecker module: f must be n x (q*m)");
  if (rank(k.f) != k.n) throw DomainError("Kronecker mutation needs f surjective");
  if (k.q * k.m <= k.n) throw DomainError("Kronecker mutation needs qm - n > 0");
  auto ker = kernel_basis(k.f);
  return {k.q, k.m, ker.cols(), ker.transpose()};
}

bool kronecker_same_orbit(const Kronecker& a, const Kronecker& g, const Budgets& b) {
  require_finite(a.f.field());
  require_same(a.f.field(), g.f.field());
  if (a.q != g.q || a.m != g.m || a.n != g.n) return false;
  const FieldTag fld = a.f.field();
  const unsigned p = fld.p;
  uint64_t cm = checked_power(p, static_cast<unsigned>(a.m * a.m), b.orbit, "GL(M) enumeration");
  uint64_t cn = checked_power(p, static_cast<unsigned>(a.n * a.n), b.orbit, "GL(N) enumeration");
  product({cm, cn}, b.orbit, "orbit enumeration");
  auto Iq = MatP::identity(fld, a.q);
  std::vector<MatP> right;  // f (I_q ⊗ g_M)
  for (uint64_t i = 0; i < cm; ++i) {
    auto gm = square_from_index(fld, a.m, i);
    if (is_invertible(gm)) right.push_back(a.f * kron(Iq, gm));
  }
  for (uint64_t j = 0; j < cn; ++j) {
    auto gn = square_from_index(fld, a.n, j);
    if (!is_invertible(gn)) continue;
    for (const auto& x : right)
      if (gn * x == g.f) return true;
  }
  return false;
}

Verdict rs_verdict_reduced(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w,
                           const Budgets& b, Exec exec, bool minimal) {
  RsProblem pb(h, mult, pol, w);
  return minimal ? reduced_minimal(pb, b, exec) : reduced_exhaustive(pb, b, exec);
}

UnipotentOrbit::UnipotentOrbit(const HomData<ModP>& h, const Multiplicities& mult, uint64_t budget) : field_(h.field) {
  require_finite(h.field);
  check_mult(h, mult);
  auto X = sources_object(h, mult);
  auto Y = targets_object(h, mult);
  HomLayout<ModP> xx(h, X, X), yy(h, Y, Y);
  dim_x_ = xx.total;
  dim_y_ = yy.total;
  for (const auto& blk : xx.blocks)
    if (blk.src < blk.tgt)
      for (size_t k = 0; k < blk.h * blk.ms * blk.mt; ++k) free_x_.push_back(blk.offset + k);
  for (const auto& blk : yy.blocks)
    if (blk.src < blk.tgt)
      for (size_t k = 0; k < blk.h * blk.ms * blk.mt; ++k) free_y_.push_back(blk.offset + k);
  size_ = checked_power(h.field.p, static_cast<unsigned>(free_x_.size() + free_y_.size()), budget, "unipotent orbit");
  id_x_ = identity_endo(h, X);
  id_y_ = identity_endo(h, Y);
  pre_ = compose_map(h, X, X, Y);
  post_ = compose_map(h, X, Y, Y);
}

MatP UnipotentOrbit::act(const MatP& w, uint64_t index) const {
  const uint64_t p = field_.p;
  MatP gx = id_x_, gy = id_y_;
  for (size_t c : free_x_) {
    gx[c] = ModP::from_int(field_, static_cast<long>(index % p));
    index /= p;
  }
  for (size_t c : free_y_) {
    gy[c] = ModP::from_int(field_, static_cast<long>(index % p));
    index /= p;
  }
  MatP w1 = pre_ * kron(w, gx);
  return post_ * kron(gy, w1);
}

Verdict is_semistable_rs(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w, GroupMode mode,
                         const Budgets& b, Exec exec) {
  if (mode == GroupMode::reduced) return rs_verdict_reduced(h, mult, pol, w, b, exec);
  UnipotentOrbit orbit(h, mult, b.orbit);
  const uint64_t n = orbit.size();
  // Parallelize over the orbit; each reduced verdict then runs serially.
  Exec inner = n > 1 ? Exec::serial : exec;
  Exec outer = n > 1 ? exec : Exec::serial;
  First f = scan(n, outer, [&](uint64_t idx) -> int {
    auto v = rs_verdict_reduced(h, mult, pol, orbit.act(w, idx), b, inner);
    return !v.semistable ? 2 : (!v.stable ? 1 : 0);
  });
  Verdict out;
  out.families = f.count;
  auto at = [&](uint64_t idx) {
    auto pt = orbit.act(w, idx);
    auto v = rs_verdict_reduced(h, mult, pol, pt, b, inner);
    return std::pair{pt, v};
  };
  if (f.ss != kNone) {
    auto [pt, v] = at(f.ss);
    out.semistable = false;
    out.unstable_witness = v.unstable_witness;
    out.unstable_witness->orbit_index = f.ss;
    out.unstable_witness->point = pt;
  }
  if (f.s != kNone) {
    auto [pt, v] = at(f.s);
    out.stable = false;
    out.nonstable_witness = v.nonstable_witness ? v.nonstable_witness : v.unstable_witness;
    out.nonstable_witness->orbit_index = f.s;
    out.nonstable_witness->point = pt;
  }
  return out;
}

bool prop54_bound(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, size_t p) {
  check_mult(h, mult);
  if (mult.n[0] <= 1) return true;
  Rational sum(0);
  for (size_t j = p; j < h.r; ++j) sum += pol.lambda.at(j) * Rational(static_cast<long>(mult.m[j]));
  return pol.mu.at(0) < sum / Rational(static_cast<long>(mult.n[0] - 1));
}

Comparison compare_stability(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w, size_t p,
                             GroupMode mode, const Budgets& b, Exec exec) {
  check_mult(h, mult);
  if (p >= h.r) throw DomainError("need 0 <= p <= r-1");
  Comparison c;
  Rational head(0);
  for (size_t i = 0; i < p; ++i) head += pol.lambda.at(i) * Rational(static_cast<long>(mult.m[i]));
  const Rational floor(1, static_cast<long>(mult.n[0] + 1));
  c.first_hypothesis = head <= pol.mu.at(0);
  c.first_strict = head < pol.mu.at(0);
  c.second_hypothesis = pol.mu.at(0) >= floor;
  c.second_strict = pol.mu.at(0) > floor;
  c.in_w0 = in_W0_p(h, mult, p, w);
  c.original = is_semistable_rs(h, mult, pol, w, mode, b, exec);
  if (!c.in_w0) {
    c.outside_bound = prop54_bound(h, mult, pol, p);
    c.outside_ok = !c.outside_bound || !c.original.semistable;
    return c;
  }
  auto tp = build_theta_p(h, mult, p);
  auto dual = build_dual(tp.theta);
  auto mh = mutated_hom_data(h, p);
  auto mm = mutated_multiplicities(h, mult, p);
  c.mapped = map_polarization(pol, h, mult, p);
  auto pt = point_from_rs(h, mult, tp, w);
  auto z = mutate(tp.theta, dual, pt, default_choice(tp.theta, pt));
  c.mutated_point = mutated_rs_point(h, mult, tp, dual, mh, z);
  c.mutated = is_semistable_rs(mh.h, mm, c.mapped.pol, c.mutated_point, mode, b, exec);
  if (!c.mapped.positive) return c;
  // forward: w not (semi)stable => z(w) not (semi)stable
  if (c.first_hypothesis) c.first_ok = c.original.semistable || !c.mutated.semistable;
  if (c.first_strict) c.first_ok = c.first_ok && (c.original.stable || !c.mutated.stable);
  if (c.second_hypothesis) c.second_ok = c.mutated.semistable || !c.original.semistable;
  if (c.second_strict) c.second_ok = c.second_ok && (c.mutated.stable || !c.original.stable);
  return c;
}

}  // namespace mforge
