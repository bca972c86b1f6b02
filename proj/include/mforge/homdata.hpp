#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mforge/linalg.hpp"
#include "mforge/theta.hpp"

namespace mforge {

// A small ordered linear category. Objects 0..r-1 are the sources (E_1..E_r),
// objects r..r+s-1 the targets (F_1..F_s). Hom(a, b) vanishes for a > b and is
// the line of identities for a == b. For a < b < c, comp[{a,b,c}] is the matrix
// of Hom(b,c)⊗Hom(a,b) -> Hom(a,c), the Hom(b,c) factor major.
template <ExactField F>
struct HomData {
  FieldTag field;
  size_t r = 0, s = 0;
  std::vector<std::string> names;
  std::vector<std::vector<size_t>> dim;  // dim[a][b], meaningful for a <= b
  std::map<std::tuple<size_t, size_t, size_t>, Matrix<F>> comp;

  size_t count() const { return r + s; }
  size_t hom(size_t a, size_t b) const { return a == b ? 1 : (a < b ? dim[a][b] : 0); }
  size_t source(size_t i) const { return i; }      // E_{i+1}
  size_t target(size_t l) const { return r + l; }  // F_{l+1}

  // Composition for a <= b <= c, including identity slots.
  Matrix<F> comp_full(size_t a, size_t b, size_t c) const {
    if (a == b) return Matrix<F>::identity(field, hom(a, c));
    if (b == c) return Matrix<F>::identity(field, hom(a, c));
    return comp.at({a, b, c});
  }
};

template <ExactField F>
HomData<F> empty_hom_data(FieldTag f, size_t r, size_t s) {
  HomData<F> h;
  h.field = f;
  h.r = r;
  h.s = s;
  h.dim.assign(r + s, std::vector<size_t>(r + s, 0));
  for (size_t a = 0; a < r + s; ++a) h.dim[a][a] = 1;
  for (size_t i = 0; i < r; ++i) h.names.push_back("E" + std::to_string(i + 1));
  for (size_t l = 0; l < s; ++l) h.names.push_back("F" + std::to_string(l + 1));
  return h;
}

template <ExactField F>
Report check_hom_data(const HomData<F>& h) {
  Report rep;
  const size_t N = h.count();
  bool shapes = h.dim.size() == N;
  for (size_t a = 0; a < N && shapes; ++a) shapes = h.dim[a].size() == N && h.dim[a][a] == 1;
  rep.add("dimension table", shapes);
  if (!shapes) return rep;
  bool comps = true;
  std::string missing;
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c) {
        auto it = h.comp.find({a, b, c});
        if (it == h.comp.end() || it->second.rows() != h.hom(a, c) || it->second.cols() != h.hom(b, c) * h.hom(a, b) ||
            it->second.field() != h.field) {
          comps = false;
          missing = h.names[a] + "," + h.names[b] + "," + h.names[c];
        }
      }
  rep.add("composition shapes", comps, missing);
  if (!comps) return rep;
  bool assoc = true;
  std::string where;
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c)
        for (size_t d = c + 1; d < N; ++d) {
          auto I = [&](size_t n) { return Matrix<F>::identity(h.field, n); };
          auto lhs = h.comp.at({a, c, d}) * kron(I(h.hom(c, d)), h.comp.at({a, b, c}));
          auto rhs = h.comp.at({a, b, d}) * kron(h.comp.at({b, c, d}), I(h.hom(a, b)));
          if (!(lhs == rhs)) {
            assoc = false;
            where = h.names[a] + "," + h.names[b] + "," + h.names[c] + "," + h.names[d];
          }
        }
  rep.add("associativity", assoc, where);
  return rep;
}

// Direct sum of objects with multiplicity spaces: [(object, multiplicity)].
using SumObject = std::vector<std::pair<size_t, size_t>>;

// Coordinates of Hom(X, Y): blocks ordered by source block then target block;
// inside a block (a,ma) -> (b,mb) the order is (h, s, t) with h in Hom(a,b),
// s indexing the source multiplicity and t the target multiplicity.
template <ExactField F>
struct HomLayout {
  struct Block {
    size_t src, tgt;  // block indices into X and Y
    size_t a, b;      // objects
    size_t h, ms, mt;
    size_t offset;
  };
  std::vector<Block> blocks;
  size_t total = 0;

  HomLayout(const HomData<F>& hd, const SumObject& x, const SumObject& y) {
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) {
        size_t h = hd.hom(x[i].first, y[j].first);
        if (h == 0 || x[i].second == 0 || y[j].second == 0) continue;
        blocks.push_back({i, j, x[i].first, y[j].first, h, x[i].second, y[j].second, total});
        total += h * x[i].second * y[j].second;
      }
  }
  const Block* find(size_t src, size_t tgt) const {
    for (const auto& b : blocks)
      if (b.src == src && b.tgt == tgt) return &b;
    return nullptr;
  }
  size_t index(const Block& b, size_t h, size_t s, size_t t) const { return b.offset + (h * b.ms + s) * b.mt + t; }
};

template <ExactField F>
size_t hom_dim(const HomData<F>& hd, const SumObject& x, const SumObject& y) {
  return HomLayout<F>(hd, x, y).total;
}

// Hom(Y,Z)⊗Hom(X,Y) -> Hom(X,Z).
template <ExactField F>
Matrix<F> compose_map(const HomData<F>& hd, const SumObject& x, const SumObject& y, const SumObject& z) {
  HomLayout<F> xy(hd, x, y), yz(hd, y, z), xz(hd, x, z);
  Matrix<F> out(hd.field, xz.total, yz.total * xy.total);
  for (const auto& b1 : xy.blocks)
    for (const auto& b2 : yz.blocks) {
      if (b2.src != b1.tgt) continue;
      const auto* b3 = xz.find(b1.src, b2.tgt);
      if (!b3) continue;
      auto c = hd.comp_full(b1.a, b1.b, b2.b);
      for (size_t h2 = 0; h2 < b2.h; ++h2)
        for (size_t h1 = 0; h1 < b1.h; ++h1)
          for (size_t h = 0; h < b3->h; ++h) {
            const F& coef = c(h, h2 * b1.h + h1);
            if (coef.is_zero()) continue;
            for (size_t s1 = 0; s1 < b1.ms; ++s1)
              for (size_t mid = 0; mid < b1.mt; ++mid)
                for (size_t t2 = 0; t2 < b2.mt; ++t2)
                  out(xz.index(*b3, h, s1, t2), yz.index(b2, h2, mid, t2) * xy.total + xy.index(b1, h1, s1, mid)) += coef;
          }
    }
  return out;
}

// phi -> phi∘g on Hom(X,Y) for g in End(X).
template <ExactField F>
Matrix<F> precompose(const HomData<F>& hd, const SumObject& x, const SumObject& y, const Matrix<F>& g) {
  size_t n = hom_dim(hd, x, y);
  return compose_map(hd, x, x, y) * kron(Matrix<F>::identity(hd.field, n), g);
}

// phi -> g∘phi on Hom(X,Y) for g in End(Y).
template <ExactField F>
Matrix<F> postcompose(const HomData<F>& hd, const SumObject& x, const SumObject& y, const Matrix<F>& g) {
  size_t n = hom_dim(hd, x, y);
  return compose_map(hd, x, y, y) * kron(g, Matrix<F>::identity(hd.field, n));
}

// Identity of End(X) in Hom(X,X) coordinates.
template <ExactField F>
Matrix<F> identity_endo(const HomData<F>& hd, const SumObject& x) {
  HomLayout<F> lay(hd, x, x);
  Matrix<F> g(hd.field, lay.total, 1);
  for (const auto& b : lay.blocks)
    if (b.src == b.tgt)
      for (size_t s = 0; s < b.ms; ++s) g[lay.index(b, 0, s, s)] = F::one(hd.field);
  return g;
}

// Degree data for line bundles on P^n; Hom(O(a), O(b)) = degree b-a forms.
struct ProjectiveData {
  unsigned n = 1;
  std::vector<long> e, f;
  std::vector<std::string> warnings;
};

// Exponent vectors of degree d monomials in k variables, lexicographically descending.
std::vector<std::vector<unsigned>> monomials(unsigned vars, unsigned degree);
size_t binomial(size_t n, size_t k);

template <ExactField F>
HomData<F> projective_space_hom_data(FieldTag f, ProjectiveData& pd) {
  const auto& e = pd.e;
  const auto& fd = pd.f;
  if (e.empty() || fd.empty()) throw DomainError("need at least one source and one target degree");
  for (size_t i = 1; i < e.size(); ++i)
    if (e[i] <= e[i - 1]) throw DomainError("source degrees must be strictly increasing");
  for (size_t i = 1; i < fd.size(); ++i)
    if (fd[i] <= fd[i - 1]) throw DomainError("target degrees must be strictly increasing");
  if (fd.front() <= e.back()) throw DomainError("first target degree must exceed the last source degree");
  if (pd.n == 1) {
    long gap = 0;
    for (long a : e)
      for (long b : fd) gap = std::max(gap, b - a);
    if (gap >= 2) pd.warnings.push_back("n = 1 with degree gap " + std::to_string(gap) + ": some Ext^1 vanishing may fail");
  }
  std::vector<long> deg(e);
  deg.insert(deg.end(), fd.begin(), fd.end());
  auto h = empty_hom_data<F>(f, e.size(), fd.size());
  const size_t N = deg.size();
  const unsigned vars = pd.n + 1;
  std::vector<std::vector<std::vector<std::vector<unsigned>>>> mons(N, std::vector<std::vector<std::vector<unsigned>>>(N));
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a; b < N; ++b) {
      mons[a][b] = monomials(vars, static_cast<unsigned>(deg[b] - deg[a]));
      h.dim[a][b] = mons[a][b].size();
    }
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c) {
        const auto &m1 = mons[a][b], &m2 = mons[b][c], &m3 = mons[a][c];
        std::map<std::vector<unsigned>, size_t> where;
        for (size_t k = 0; k < m3.size(); ++k) where[m3[k]] = k;
        Matrix<F> cm(f, m3.size(), m2.size() * m1.size());
        for (size_t j = 0; j < m2.size(); ++j)
          for (size_t i = 0; i < m1.size(); ++i) {
            std::vector<unsigned> prod(vars);
            for (unsigned v = 0; v < vars; ++v) prod[v] = m1[i][v] + m2[j][v];
            cm(where.at(prod), j * m1.size() + i) = F::one(f);
          }
        h.comp[{a, b, c}] = std::move(cm);
      }
  return h;
}

// Reverse the order of objects: Hom'(b', a') = Hom(a, b).
template <ExactField F>
HomData<F> transpose_hom_data(const HomData<F>& h, size_t new_r) {
  const size_t N = h.count();
  if (new_r > N) throw DomainError("transpose: bad split");
  HomData<F> t = empty_hom_data<F>(h.field, new_r, N - new_r);
  auto rev = [&](size_t a) { return N - 1 - a; };
  for (size_t a = 0; a < N; ++a) t.names[rev(a)] = h.names[a] + "*";
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a; b < N; ++b) t.dim[rev(b)][rev(a)] = h.dim[a][b];
  // comp'(c', b', a') : Hom'(b',a')⊗Hom'(c',b') = Hom(a,b)⊗Hom(b,c) -> Hom(a,c)
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c) {
        auto sw = swap_factors<F>(h.field, h.hom(a, b), h.hom(b, c));
        t.comp[{rev(c), rev(b), rev(a)}] = h.comp.at({a, b, c}) * sw;
      }
  return t;
}

// Multiplicities of a type (r,s) morphism: m_i on sources, n_l on targets.
struct Multiplicities {
  std::vector<size_t> m, n;
};

template <ExactField F>
SumObject sources_object(const HomData<F>& h, const Multiplicities& mult) {
  SumObject x;
  for (size_t i = 0; i < h.r; ++i) x.push_back({h.source(i), mult.m.at(i)});
  return x;
}

template <ExactField F>
SumObject targets_object(const HomData<F>& h, const Multiplicities& mult) {
  SumObject y;
  for (size_t l = 0; l < h.s; ++l) y.push_back({h.target(l), mult.n.at(l)});
  return y;
}

// Morphism spaces of type (r,s): W = Hom(⊕ E_i⊗M_i, ⊕ F_l⊗N_l).
template <ExactField F>
size_t rs_dim(const HomData<F>& h, const Multiplicities& mult) {
  return hom_dim(h, sources_object(h, mult), targets_object(h, mult));
}

// The morphism space attached to the split after the first p sources.
template <ExactField F>
struct ThetaP {
  Theta<F> theta;
  SumObject u1, u2, gamma, v1;
  size_t p = 0;
};

template <ExactField F>
void check_mult(const HomData<F>& h, const Multiplicities& mult) {
  if (mult.m.size() != h.r || mult.n.size() != h.s) throw ShapeError("multiplicities do not match the type");
}

template <ExactField F>
ThetaP<F> build_theta_p(const HomData<F>& h, const Multiplicities& mult, size_t p) {
  check_mult(h, mult);
  if (p >= h.r) throw DomainError("need 0 <= p <= r-1");
  ThetaP<F> out;
  out.p = p;
  for (size_t i = 0; i < p; ++i) out.u1.push_back({h.source(i), mult.m[i]});
  for (size_t j = p; j < h.r; ++j) out.u2.push_back({h.source(j), mult.m[j]});
  out.gamma = {{h.target(0), 1}};
  for (size_t l = 1; l < h.s; ++l) out.v1.push_back({h.target(l), mult.n[l]});
  ThetaDims d;
  d.n1 = hom_dim(h, out.u1, out.gamma);
  d.n2 = hom_dim(h, out.u2, out.gamma);
  d.m1 = hom_dim(h, out.u1, out.v1);
  d.m2 = hom_dim(h, out.u2, out.v1);
  d.a0 = hom_dim(h, out.u1, out.u2);
  d.b0 = hom_dim(h, out.gamma, out.v1);
  d.m = mult.n[0];
  if (d.m >= d.n2) throw DomainError("need n_1 < sum over j > p of dim H_1j m_j");
  d.n = d.n2 - d.m;
  Theta<F>& t = out.theta;
  t.field = h.field;
  t.d = d;
  t.rho1 = compose_map(h, out.u1, out.gamma, out.v1);
  t.rho2 = compose_map(h, out.u2, out.gamma, out.v1);
  t.nu = compose_map(h, out.u1, out.u2, out.gamma);
  t.mu = compose_map(h, out.u1, out.u2, out.v1);
  return out;
}

// Splits an element of W into the four components over Θ_p and back.
template <ExactField F>
Point<F> point_from_rs(const HomData<F>& h, const Multiplicities& mult, const ThetaP<F>& tp, const Matrix<F>& w) {
  auto X = sources_object(h, mult);
  auto Y = targets_object(h, mult);
  HomLayout<F> lay(h, X, Y);
  if (w.rows() != lay.total || w.cols() != 1) throw ShapeError("morphism has the wrong number of coordinates");
  Point<F> pt = zero_point(tp.theta);
  const size_t p = tp.p;
  HomLayout<F> l_n1(h, tp.u1, tp.gamma), l_n2(h, tp.u2, tp.gamma), l_m1(h, tp.u1, tp.v1), l_m2(h, tp.u2, tp.v1);
  for (const auto& b : lay.blocks) {
    size_t i = b.src, l = b.tgt;
    for (size_t hh = 0; hh < b.h; ++hh)
      for (size_t s = 0; s < b.ms; ++s)
        for (size_t t = 0; t < b.mt; ++t) {
          const F& val = w[lay.index(b, hh, s, t)];
          if (l == 0) {
            if (i < p) {
              auto* bb = l_n1.find(i, 0);
              pt.psi1(l_n1.index(*bb, hh, s, 0), t) = val;
            } else {
              auto* bb = l_n2.find(i - p, 0);
              pt.psi2(l_n2.index(*bb, hh, s, 0), t) = val;
            }
          } else {
            if (i < p) {
              auto* bb = l_m1.find(i, l - 1);
              pt.phi1[l_m1.index(*bb, hh, s, t)] = val;
            } else {
              auto* bb = l_m2.find(i - p, l - 1);
              pt.phi2[l_m2.index(*bb, hh, s, t)] = val;
            }
          }
        }
  }
  return pt;
}

template <ExactField F>
Matrix<F> rs_from_point(const HomData<F>& h, const Multiplicities& mult, const ThetaP<F>& tp, const Point<F>& pt) {
  auto X = sources_object(h, mult);
  auto Y = targets_object(h, mult);
  HomLayout<F> lay(h, X, Y);
  Matrix<F> w(h.field, lay.total, 1);
  const size_t p = tp.p;
  HomLayout<F> l_n1(h, tp.u1, tp.gamma), l_n2(h, tp.u2, tp.gamma), l_m1(h, tp.u1, tp.v1), l_m2(h, tp.u2, tp.v1);
  for (const auto& b : lay.blocks) {
    size_t i = b.src, l = b.tgt;
    for (size_t hh = 0; hh < b.h; ++hh)
      for (size_t s = 0; s < b.ms; ++s)
        for (size_t t = 0; t < b.mt; ++t) {
          F& val = w[lay.index(b, hh, s, t)];
          if (l == 0)
            val = i < p ? pt.psi1(l_n1.index(*l_n1.find(i, 0), hh, s, 0), t) : pt.psi2(l_n2.index(*l_n2.find(i - p, 0), hh, s, 0), t);
          else
            val = i < p ? pt.phi1[l_m1.index(*l_m1.find(i, l - 1), hh, s, t)] : pt.phi2[l_m2.index(*l_m2.find(i - p, l - 1), hh, s, t)];
        }
  }
  return w;
}

// Group elements of Θ_p induced by automorphisms of the blocks. For g1 in Aut(U1),
// g2 in Aut(U2) and a in Hom(U1,U2), w -> w∘[[g1,0],[a,g2]] is the right element
// below; for g in Aut(V1), w -> g∘w is the left one.
template <ExactField F>
RightElement<F> theta_p_right(const HomData<F>& h, const ThetaP<F>& tp, const Matrix<F>& g1, const Matrix<F>& g2, const Matrix<F>& a) {
  RightElement<F> e;
  e.r_n1 = precompose(h, tp.u1, tp.gamma, g1);
  e.r_m1 = precompose(h, tp.u1, tp.v1, g1);
  e.r_a0 = precompose(h, tp.u1, tp.u2, g1);
  e.b_n2 = precompose(h, tp.u2, tp.gamma, g2);
  e.b_m2 = precompose(h, tp.u2, tp.v1, g2);
  e.b_a0 = postcompose(h, tp.u1, tp.u2, g2);
  e.alpha0 = a;
  return e;
}

template <ExactField F>
LeftElement<F> theta_p_left(const HomData<F>& h, const ThetaP<F>& tp, const Matrix<F>& g) {
  const auto& d = tp.theta.d;
  return {Matrix<F>::identity(h.field, d.m), postcompose(h, tp.u1, tp.v1, g), postcompose(h, tp.u2, tp.v1, g),
          postcompose(h, tp.gamma, tp.v1, g), Matrix<F>(h.field, d.m, d.b0)};
}

// Whether the components of w landing in F_1 from E_j, j > p, add up to a
// surjection onto N_1 (read directly off the block coordinates of w).
template <ExactField F>
bool in_W0_p(const HomData<F>& h, const Multiplicities& mult, size_t p, const Matrix<F>& w) {
  check_mult(h, mult);
  HomLayout<F> lay(h, sources_object(h, mult), targets_object(h, mult));
  if (w.rows() != lay.total || w.cols() != 1) throw ShapeError("morphism has the wrong number of coordinates");
  const size_t n1 = mult.n[0];
  std::vector<Matrix<F>> parts;
  Matrix<F> acc(h.field, n1, 0);
  for (const auto& b : lay.blocks) {
    if (b.tgt != 0 || b.src < p) continue;
    Matrix<F> blk(h.field, n1, b.h * b.ms);
    for (size_t hh = 0; hh < b.h; ++hh)
      for (size_t s = 0; s < b.ms; ++s)
        for (size_t t = 0; t < n1; ++t) blk(t, hh * b.ms + s) = w[lay.index(b, hh, s, t)];
    acc = Matrix<F>::hcat(acc, blk);
  }
  return rank(acc) == n1;
}

}  // namespace mforge
