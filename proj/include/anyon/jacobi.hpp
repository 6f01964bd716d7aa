#pragma once

#include "anyon/grid.hpp"
#include "anyon/measure.hpp"
#include "anyon/orthopoly.hpp"
#include "anyon/qsym.hpp"

namespace anyon {

/// The Jacobi field acting on truncated extended-Fock vectors. All parts are
/// complex-linear in the test function h (length = grid size).
///
/// Degree structure: j_plus raises by one, j_zero preserves, j_minus1 and
/// j_minus2 lower by one.

/// J+(h) F = h circledast F. Raising out of the truncation throws in Strict.
ExtFockVector j_plus(const std::vector<cplx>& h, const ExtFockVector& F,
                     const Grid& grid, const Phase& phase,
                     Truncation policy = Truncation::Strict);

/// J0(h) F = Sym( sum_i h(x_i) f(x) * b_{gamma(i)-1}/gamma(i) ) with gamma(i)
/// the size of the stratum block containing slot i.
ExtFockVector j_zero(const std::vector<cplx>& h, const ExtFockVector& F,
                     const Grid& grid, const Phase& phase, const NuSpec& nu);

/// J1-(h) F = Sym( sum_{i<j} h(x_{j-1}) f(..insert x_{j-1} at slot i..) *
/// 2 a_gamma / (gamma (gamma+1)) ), gamma taken on the output stratum.
ExtFockVector j_minus1(const std::vector<cplx>& h, const ExtFockVector& F,
                       const Grid& grid, const Phase& phase, const NuSpec& nu);

/// J2-(h) f^(n) = n * w * sum over sites y outside the output tuple of
/// h(y) f^(n)(y, x_1..x_{n-1}). Requires certified Q-symmetric components;
/// the output is Q-symmetric without re-symmetrization. The sum omits sites
/// coinciding with an output slot: those terms sit on a null set of the dy
/// integration and keeping them breaks the unitary picture on diagonal
/// strata.
ExtFockVector j_minus2(const std::vector<cplx>& h, const ExtFockVector& F,
                       const Grid& grid, const Phase& phase);

/// The pre-symmetrized route: sum_i insert y at slot i weighted by the
/// crossing phase T_i, then Sym. Valid on arbitrary components; agrees with
/// j_minus2 on Q-symmetric input. Kept as the cross-check path.
ExtFockVector j_minus2_general(const std::vector<cplx>& h,
                               const ExtFockVector& F, const Grid& grid,
                               const Phase& phase);

/// Sum of the four parts.
ExtFockVector j_total(const std::vector<cplx>& h, const ExtFockVector& F,
                      const Grid& grid, const Phase& phase, const NuSpec& nu,
                      Truncation policy = Truncation::Strict);

struct MeixnerClosedForms {
  ExtFockVector zero_part;    // lambda * n * Sym(h(x_1) f(x_1..x_n))
  ExtFockVector minus1_part;  // eta * n(n-1) * Sym(h(x_1) f(x_1,x_1,x_2..))
};

/// The closed forms the neutral and first lowering parts collapse to when nu
/// is in the Meixner family with parameters (lambda, eta).
MeixnerClosedForms meixner_closed_forms(const std::vector<cplx>& h,
                                        const ExtFockVector& F,
                                        const Grid& grid, const Phase& phase,
                                        double lambda, double eta);

/// The four-term action of the field on a product f_1 ⊛ ... ⊛ f_n (valid for
/// Meixner nu): h⊛F + lambda sum_i (..h f_i at slot i..) + 2 eta sum_{i<j}
/// (..drop i, h f_i f_j at slot j..) + n int h(y) F(y,..) dy.
ExtFockVector product_formula(const std::vector<cplx>& h,
                              const std::vector<std::vector<cplx>>& fs,
                              double lambda, double eta, const Grid& grid,
                              const Phase& phase, int n_max,
                              Truncation policy = Truncation::Strict);

/// f_1 ⊛ ... ⊛ f_n as a truncated extended vector (components above n zero).
ExtFockVector qtensor_chain(const std::vector<std::vector<cplx>>& fs,
                            const Grid& grid, const Phase& phase, int n_max);

/// One-site function as a degree-1 tensor.
Tensor site_tensor(const std::vector<cplx>& h, const Grid& grid);

}  // namespace anyon
