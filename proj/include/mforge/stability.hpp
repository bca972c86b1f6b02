#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mforge/parallel.hpp"
#include "mforge/subspace.hpp"
#include "mforge/typers.hpp"

namespace mforge {

using MatP = Matrix<ModP>;

// Destabilizing family: subspaces of the source multiplicity spaces and the
// smallest admissible target subspaces, with the two sides of the inequality.
struct Witness {
  std::vector<MatP> sources, targets;
  Rational lhs, rhs;
  // Full-group verdicts: the orbit element that fails and the point it gives.
  std::optional<uint64_t> orbit_index;
  MatP point;
};

struct Verdict {
  bool semistable = true;
  bool stable = true;
  std::optional<Witness> unstable_witness;    // breaks semistability
  std::optional<Witness> nonstable_witness;   // breaks stability
  uint64_t families = 0;
};

struct Budgets {
  uint64_t subspaces = 1000000;
  uint64_t orbit = 1000000;
};

enum class GroupMode { reduced, full };

// Kronecker modules f : L⊗M -> N stored as an n x (q*m) matrix, L major.
struct Kronecker {
  size_t q = 0, m = 0, n = 0;
  MatP f;
};

Verdict kronecker_semistable(const Kronecker& k, const Budgets& b = {}, Exec exec = Exec::parallel);
// A(f) : L*⊗M* -> ker(f)*, the transpose of the kernel basis of f.
Kronecker kronecker_mutate(const Kronecker& k);
// Whether g lies in the orbit of f under GL(M) x GL(N), by enumerating both groups.
bool kronecker_same_orbit(const Kronecker& f, const Kronecker& g, const Budgets& b = {});

// Reduced-group verdict for a type (r,s) morphism w in Hom(⊕E_i⊗M_i, ⊕F_l⊗N_l).
// With `minimal` false the target families range over all subspaces containing
// the image instead of the image alone (slow; used to cross-check the reduction).
Verdict rs_verdict_reduced(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w,
                           const Budgets& b = {}, Exec exec = Exec::parallel, bool minimal = true);

// The unipotent radical of Aut(X) x Aut(Y): identity on the diagonal blocks,
// arbitrary off-diagonal blocks. Element `index` is read in base p.
class UnipotentOrbit {
 public:
  UnipotentOrbit(const HomData<ModP>& h, const Multiplicities& mult, uint64_t budget);
  uint64_t size() const { return size_; }
  // g_Y ∘ w ∘ g_X for the element with the given index.
  MatP act(const MatP& w, uint64_t index) const;

 private:
  FieldTag field_;
  size_t dim_x_ = 0, dim_y_ = 0;
  std::vector<size_t> free_x_, free_y_;  // off-diagonal coordinates of End(X), End(Y)
  MatP id_x_, id_y_, pre_, post_;
  uint64_t size_ = 1;
};

Verdict is_semistable_rs(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w,
                         GroupMode mode, const Budgets& b = {}, Exec exec = Exec::parallel);

// Sources 0..p-1 form the first block. The first hypothesis
// (Σ_{i<p} λ_i m_i <= μ_1) makes instability of w pass to the mutation; the
// second (μ_1 >= 1/(n_1+1)) makes instability pass back. Each asserted
// implication is checked for semistability and stability. Nothing is asserted
// unless the mapped polarization is positive, and the stability half only when
// the hypothesis is strict: at equality the comparison can land on the excluded
// all-zero family.
struct Comparison {
  bool in_w0 = false;
  bool first_hypothesis = false;
  bool second_hypothesis = false;
  bool first_strict = false;
  bool second_strict = false;
  Verdict original, mutated;
  MappedPolarization mapped;
  MatP mutated_point;
  bool first_ok = true;   // original not (semi)stable => mutated not (semi)stable
  bool second_ok = true;  // mutated not (semi)stable => original not (semi)stable
  // Outside W0: whether the bound forcing instability applies, and whether the verdict agrees.
  bool outside_bound = false;
  bool outside_ok = true;
  bool ok() const { return first_ok && second_ok && outside_ok; }
};

Comparison compare_stability(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, const MatP& w, size_t p,
                             GroupMode mode, const Budgets& b = {}, Exec exec = Exec::parallel);

// Whether μ_1 < Σ_{j>=p} λ_j m_j / (n_1 - 1), which forces semistable points
// into W0. The right side is infinite when n_1 <= 1.
bool prop54_bound(const HomData<ModP>& h, const Multiplicities& mult, const Polarization& pol, size_t p);

}  // namespace mforge
