#pragma once

#include <vector>

#include "anyon/combinatorics.hpp"
#include "anyon/grid.hpp"
#include "anyon/orthopoly.hpp"
#include "anyon/qsym.hpp"

namespace anyon {

/// c_1..c_K as a vector (index 0 holds c_1).
std::vector<double> c_coeffs(const NuSpec& nu, int K);

/// Weight of the stratum measure per ordered tuple of distinct representative
/// points: (c_{|b_1|} ... c_{|b_l|}) * n! / (|b_1|! ... |b_l|!) * w^l.
/// Zero whenever a block exceeds the atom count of nu.
double stratum_weight(const SetPartition& theta, const NuSpec& nu,
                      const Grid& grid);

enum class MeasureMutation {
  None,
  UnitCCoeffs,  // pretend c_k = 1 for all k
};

/// <f, g> in L^2(grid^n, m_nu^(n)): sum over strata theta of the stratum
/// weight times the sum of f * conj(g) over ordered injective representative
/// tuples, lifted to grid^n through the block structure. Strata are never
/// merged; the diagonal keeps its own c_k-weighted mass.
cplx inner_mnu(const Tensor& f, const Tensor& g, const NuSpec& nu,
               const Grid& grid, MeasureMutation mutation = MeasureMutation::None);

/// Truncated vector of the extended Fock space: component n lives in
/// L^2(grid^n, m_nu^(n)) and must be certified Q-symmetric.
struct ExtFockVector {
  std::vector<Tensor> comp;  // comp[n] has degree n; comp[0] scalar

  static ExtFockVector vacuum(int n_max, const Grid& grid);
  int max_degree() const { return static_cast<int>(comp.size()) - 1; }

  ExtFockVector& operator+=(const ExtFockVector& other);
  ExtFockVector& operator*=(cplx cmul);
};

double ext_norm(const ExtFockVector& v, const NuSpec& nu, const Grid& grid);
cplx ext_inner(const ExtFockVector& v, const ExtFockVector& u,
               const NuSpec& nu, const Grid& grid);

/// Enumerate ordered injective l-tuples of site ids in lexicographic order.
template <typename Fn>
void for_each_injective_tuple(std::size_t n_sites, int l, Fn&& fn) {
  std::vector<std::size_t> tuple(static_cast<std::size_t>(l));
  std::vector<bool> used(n_sites, false);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == l) {
      fn(static_cast<const std::vector<std::size_t>&>(tuple));
      return;
    }
    for (std::size_t v = 0; v < n_sites; ++v) {
      if (used[v]) continue;
      used[v] = true;
      tuple[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace anyon
