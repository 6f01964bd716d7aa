#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "anyon/combinatorics.hpp"
#include "anyon/grid.hpp"

namespace anyon {

/// Per-degree tables shared by the symmetrization kernels: the partitions of
/// {0..n-1}, a lookup from coincidence patterns to partition index, all of
/// S_n in a fixed order, and a memo for induced block permutations.
///
/// The memo matters: the stratum varies from entry to entry, but the pair
/// (stratum, permutation) ranges over a small finite set.
class SymTables {
 public:
  explicit SymTables(int n);

  int n() const { return n_; }
  const std::vector<SetPartition>& partitions() const { return partitions_; }
  const std::vector<Permutation>& permutations() const { return perms_; }

  /// Index into partitions() of the stratum of a site tuple.
  std::size_t stratum_index(const std::vector<std::size_t>& ids) const;

  /// Induced permutation pihat for (partitions()[theta_idx], perms()[pi_idx]).
  const Permutation& pihat(std::size_t theta_idx, std::size_t pi_idx) const;

  static std::shared_ptr<const SymTables> get(int n);  // process-wide cache

 private:
  int n_;
  std::vector<SetPartition> partitions_;
  std::vector<Permutation> perms_;
  std::unordered_map<std::string, std::size_t> rgs_to_index_;
  mutable std::vector<std::vector<Permutation>> pihat_memo_;
  mutable std::vector<std::vector<bool>> pihat_known_;
};

/// Mutations used by the verification suites to prove the checks are not
/// vacuous. None is the faithful implementation.
enum class QsymMutation {
  None,
  /// compute the phase from the inversions of pi over distinct-site pairs,
  /// skipping the induced-permutation reduction to strata
  DropInducedPermutation,
};

/// The stratified phase Q_pi extended to all of grid^n: classify the tuple
/// into its stratum, reduce pi to the induced block permutation, and take the
/// product of Q over the block-representative inversion pairs. On tuples of
/// pairwise-distinct sites this is the plain inversion product.
cplx q_phase_pi(const Permutation& pi, const std::vector<std::size_t>& ids,
                const Grid& grid, const Phase& phase,
                QsymMutation mutation = QsymMutation::None);

/// (Psi_pi f)(x_1..x_n) = Q_pi(x) * f(x_{pi^-1(1)}, ..., x_{pi^-1(n)}).
Tensor psi(const Permutation& pi, const Tensor& f, const Grid& grid,
           const Phase& phase);

inline constexpr int kSymDegreeCap = 6;

/// (1/n!) sum over S_n of Psi_pi. Orthogonal projection onto the extended
/// Q-symmetric subspace of L^2(grid^n, m_nu^(n)); output is flagged is_qsym.
Tensor symmetrize(const Tensor& f, const Grid& grid, const Phase& phase,
                  QsymMutation mutation = QsymMutation::None);

/// Outer product (no symmetrization).
Tensor outer(const Tensor& f, const Tensor& g);

/// f ⊛ g = Sym_{m+n}(f ⊗ g). Associative.
Tensor qtensor(const Tensor& f, const Tensor& g, const Grid& grid,
               const Phase& phase);

}  // namespace anyon
