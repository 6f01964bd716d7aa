#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anyon/grid.hpp"
#include "anyon/measure.hpp"
#include "anyon/orthopoly.hpp"
#include "anyon/qsym.hpp"

namespace anyon {

enum class Ladder { Plus, Zero, Minus };
enum class PointKind { Dagger, Plain };

/// The Fock space over grid x nu-atoms, truncated at n_max particles.
///
/// Vectors are arrays over ((site, atom))^n; the discrete measure treats
/// tuples with a repeated site as null (the exchange phase is undefined
/// there), so every operator compresses such entries to zero. Pairs are
/// permuted together under the symmetrization; the phase reads sites only.
class FockSpace {
 public:
  FockSpace(Grid grid, Phase phase, NuSpec nu, int n_max,
            Truncation policy = Truncation::Strict);

  const Grid& grid() const { return grid_; }
  const Phase& phase() const { return phase_; }
  const NuSpec& nu() const { return nu_; }
  int n_max() const { return n_max_; }
  Truncation policy() const { return policy_; }

  std::size_t n_sites() const { return grid_.size(); }
  int n_atoms() const { return M_; }
  std::size_t pair_dim() const { return n_sites() * static_cast<std::size_t>(M_); }

  double atom_value(int j) const { return s_[static_cast<std::size_t>(j)]; }
  double atom_mass(int j) const { return rho_[static_cast<std::size_t>(j)]; }
  /// p_k evaluated at the atoms, k = 0..M-1.
  const std::vector<double>& p_at_atoms(int k) const {
    return pval_[static_cast<std::size_t>(k)];
  }
  double p_norm_sq(int k) const { return pnorm_[static_cast<std::size_t>(k)]; }

  /// Indicator-basis matrix of the ladder operator on L^2(R, nu):
  /// A+ p_k = p_{k+1} (p_M := 0), A0 p_k = b_k p_k, A- p_k = a_k p_{k-1}.
  const std::vector<double>& ladder_matrix(Ladder which) const;

  std::size_t site_of(std::size_t pair_idx) const {
    return pair_idx / static_cast<std::size_t>(M_);
  }
  int atom_of(std::size_t pair_idx) const {
    return static_cast<int>(pair_idx % static_cast<std::size_t>(M_));
  }
  std::size_t pair_index(std::size_t site, int atom) const {
    return site * static_cast<std::size_t>(M_) + static_cast<std::size_t>(atom);
  }
  /// w * rho_j, the one-slot measure weight.
  double slot_weight(std::size_t pair_idx) const {
    return grid_.weight() * rho_[static_cast<std::size_t>(atom_of(pair_idx))];
  }

 private:
  Grid grid_;
  Phase phase_;
  NuSpec nu_;
  int n_max_;
  Truncation policy_;
  int M_;
  std::vector<double> s_, rho_, pnorm_;
  std::vector<std::vector<double>> pval_;
  std::vector<double> aplus_, azero_, aminus_;  // row-major MxM
};

/// Truncated vector with components F^(n) over ((site,atom))^n, n = 0..n_max;
/// norm^2 = sum_n n! * ||F^(n)||^2 in the (m tensor nu)^n weights.
struct FockGVector {
  std::vector<std::vector<cplx>> comp;

  static FockGVector zero(const FockSpace& ctx);
  static FockGVector vacuum(const FockSpace& ctx);

  int top_degree() const { return static_cast<int>(comp.size()) - 1; }
  bool degree_is_zero(int n) const;

  FockGVector& operator+=(const FockGVector& other);
  FockGVector& operator-=(const FockGVector& other);
  FockGVector& operator*=(cplx c);
};

cplx fock_inner(const FockGVector& F, const FockGVector& G,
                const FockSpace& ctx);
double fock_norm(const FockGVector& F, const FockSpace& ctx);

/// Symmetrize one degree-n component in the paired sense (sites and atoms
/// permuted together, phase from sites only); entries with a repeated site
/// are dropped.
std::vector<cplx> sym_paired(const std::vector<cplx>& comp, int n,
                             const FockSpace& ctx);

/// a+(h tensor p): component-wise (h p) circledast F^(n). Raising out of the
/// truncation is an error in Strict mode and a silent drop in Exploratory.
FockGVector create(const std::vector<cplx>& h, const std::vector<cplx>& p,
                   const FockGVector& F, const FockSpace& ctx);

/// a-(h tensor p): n-fold contraction of the first slot against
/// conj(h(y) p(s)) with weight w * mass.
FockGVector annihilate(const std::vector<cplx>& h, const std::vector<cplx>& p,
                       const FockGVector& F, const FockSpace& ctx);

/// a0(h tensor id): multiply the entry at ((x_1,s_1)..(x_n,s_n)) by
/// sum_i h(x_i) s_i.
FockGVector neutral_id(const std::vector<cplx>& h, const FockGVector& F,
                       const FockSpace& ctx);

/// Differential second quantization dGamma(M_h tensor A^#) =
/// Sym . (sum over slots of M_h tensor A^#).
FockGVector dgamma(const std::vector<cplx>& h, Ladder which,
                   const FockGVector& F, const FockSpace& ctx);

/// <omega, h> = a+(h tensor 1) + a0(h tensor id) + a-(h tensor 1), extended
/// complex-linearly in h (the annihilation part contracts against h itself).
FockGVector white_noise_apply(const std::vector<cplx>& h, const FockGVector& F,
                              const FockSpace& ctx);

/// Point operators at a single site, atom part identically 1:
/// Dagger = creation with delta_x (delta = indicator / w), Plain = n-fold
/// evaluation of the first slot at x (integrated against nu in the atom slot).
FockGVector point_op(PointKind kind, std::size_t site, const FockGVector& F,
                     const FockSpace& ctx);

enum class DiagonalRule {
  MinusG,  // (g Q)(x,x) = -g(x,x): the completion that closes the relations
  PlusG,   // mutation: boson-like diagonal, breaks the dd+ relation at O(w)
  ZeroG,
};

/// w^2 sum_{x,y} g(x,y) d^L_x d^R_y applied to F.
FockGVector smear2_apply(const std::vector<cplx>& g, PointKind left,
                         PointKind right, const FockGVector& F,
                         const FockSpace& ctx);

/// Kernel g(x,y) Q(x,y) with the stated diagonal completion.
std::vector<cplx> kernel_mul_q(const std::vector<cplx>& g, const FockSpace& ctx,
                               DiagonalRule rule = DiagonalRule::MinusG);
/// Kernel g(y,x) Q(y,x)-style swap: returns k(x,y) = g(y,x).
std::vector<cplx> kernel_transpose(const std::vector<cplx>& g, std::size_t n);

/// (E_theta f)(x_1,s_1,..,x_l,s_l) = f_theta(x_1..x_l) prod p_{|b_i|-1}(s_i)
/// on site-distinct tuples, zero elsewhere. Degree-l raw component.
std::vector<cplx> embed_E(const SetPartition& theta, const Tensor& f,
                          const FockSpace& ctx);

/// Sym of the sum of E_theta f over all partitions of {1..n}: the image of
/// the degree-n orthogonalized monomial under the Fock-side unitary.
FockGVector project_Pn(const Tensor& f, const FockSpace& ctx);

/// The full unitary applied to a truncated extended vector.
FockGVector map_U(const ExtFockVector& v, const FockSpace& ctx);

/// Transform all atom indices to the orthogonal-polynomial basis (analysis)
/// or back (synthesis). Component layout unchanged; atom index becomes the
/// polynomial degree.
std::vector<cplx> to_poly_basis(const std::vector<cplx>& comp, int n,
                                const FockSpace& ctx);
/// Keep only entries of grade = particle degree + sum of atom-poly degrees
/// equal to `grade` (computed in the polynomial basis), mapped back.
FockGVector grade_component(const FockGVector& F, int grade,
                            const FockSpace& ctx);

/// Dense matrix on the full lexicographic tuple basis of the truncated space.
struct OperatorMatrix {
  std::size_t dim = 0;
  std::vector<cplx> entries;  // row-major
  std::vector<std::size_t> degree_offset;  // offset of each degree block
  std::string notes;

  cplx at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

/// Assemble the matrix of `apply` columnwise over basis tensors. If
/// `symmetrize_basis` is set, columns are images of Sym(e_t) (for operators
/// defined on the Q-symmetric subspace only).
OperatorMatrix assemble_matrix(
    const std::function<FockGVector(const FockGVector&)>& apply,
    const FockSpace& ctx, bool symmetrize_basis, std::string notes);

cplx vacuum_expectation(const OperatorMatrix& m);
cplx vacuum_expectation(
    const std::function<FockGVector(const FockGVector&)>& apply,
    const FockSpace& ctx);

}  // namespace anyon
