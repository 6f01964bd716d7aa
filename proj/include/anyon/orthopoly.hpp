#pragma once

#include <string>
#include <vector>

#include "anyon/common.hpp"

namespace anyon {

struct Atom {
  double s;
  double mass;
};

enum class NuKind { PointMass, MeixnerParam, Atoms };

/// The five classes of orthogonal polynomial systems with generating function
/// of exponential type, keyed by (lambda, eta).
enum class MeixnerClass {
  HermiteGaussian,
  CharlierPoisson,
  LaguerreGamma,
  MeixnerFirstKindPascal,
  MeixnerPollaczek,
};

std::string to_string(MeixnerClass c);

/// classification rules: eta==0 && lambda==0 -> Hermite; eta==0 -> Charlier;
/// |lambda|==2 -> Laguerre; |lambda|<2 -> Meixner 1st kind; |lambda|>2 ->
/// Meixner-Pollaczek. Requires eta >= 0.
MeixnerClass classify_meixner(double lambda, double eta);

/// A probability measure nu on the real line, carried as a finite atom list
/// together with the recurrence coefficients of its monic orthogonal
/// polynomials: s p_k = p_{k+1} + b_k p_k + a_k p_{k-1}, p_{-1} = 0. a_k = 0
/// once k reaches the atom count, and p_k vanishes identically on the atoms
/// from that index on.
class NuSpec {
 public:
  /// nu = delta_lambda. Coefficients are the eta=0 Meixner family,
  /// b_k = lambda(k+1); all a_k vanish.
  static NuSpec point_mass(double lambda, int horizon = kDefaultHorizon);

  /// Meixner family a_k = eta k(k+1), b_k = lambda(k+1), discretized by its
  /// quad_points-point Gauss rule; moments match through degree 2M-1.
  static NuSpec meixner(double lambda, double eta, int quad_points,
                        int horizon = kDefaultHorizon);

  /// Explicit atoms (masses must sum to 1); coefficients via Stieltjes.
  static NuSpec from_atoms(std::vector<Atom> atoms);

  NuKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double eta() const { return eta_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int horizon() const { return horizon_; }

  /// a_k for k >= 1; exactly 0 for k >= atom_count.
  double a(int k) const;
  /// b_k for k >= 0.
  double b(int k) const;

  /// c_k = a_0 a_1 ... a_{k-1} with a_0 = 1; equals ||p_{k-1}||^2 in L^2(nu).
  double c(int k) const;

  bool is_meixner_family() const {
    return kind_ == NuKind::PointMass || kind_ == NuKind::MeixnerParam;
  }

  static constexpr int kDefaultHorizon = 16;

 private:
  NuSpec() = default;
  NuKind kind_ = NuKind::PointMass;
  double lambda_ = 0.0;
  double eta_ = 0.0;
  int horizon_ = kDefaultHorizon;
  std::vector<Atom> atoms_;
  std::vector<double> a_;  // a_[k] valid for 1 <= k < horizon, a_[0] unused
  std::vector<double> b_;  // b_[k] valid for 0 <= k < horizon
};

/// Monic orthogonal polynomial p_k(s) of nu via the three-term recurrence.
double eval_p(int k, double s, const NuSpec& nu);

/// Stieltjes procedure on a discrete measure: b_k = <s p_k, p_k>/<p_k,p_k>,
/// a_k = <p_k,p_k>/<p_{k-1},p_{k-1}>. K coefficients; requires K <= atom
/// count and positivity of every a_k.
struct RecurrenceCoeffs {
  std::vector<double> a;  // a[k], 1 <= k <= K-1 (a[0] unused)
  std::vector<double> b;  // b[k], 0 <= k <= K-1
};
RecurrenceCoeffs recurrence_from_atoms(const std::vector<Atom>& atoms, int K);

/// Gauss rule from a Jacobi matrix: nodes are the eigenvalues of the M x M
/// symmetric tridiagonal with diagonal b_0..b_{M-1} and off-diagonal
/// sqrt(a_1)..sqrt(a_{M-1}); masses are squared first eigenvector components.
std::vector<Atom> golub_welsch(const std::vector<double>& b_diag,
                               const std::vector<double>& a_offdiag_sq,
                               double total_mass = 1.0);

/// Gauss atoms of the Meixner(lambda, eta) measure.
std::vector<Atom> gauss_atoms(double lambda, double eta, int M);

/// Monic 1-d Meixner-class polynomial P_n with x P_n = P_{n+1} + (l+n*lambda)
/// P_n + n(k+eta(n-1)) P_{n-1}.
double eval_meixner_P(int n, double x, double l, double k, double lambda,
                      double eta);

/// max_n |a_{n+1} - 2 eta - ((n+1)(n+2)-2) a_n / (n(n+1))| over the supplied
/// list (a[0] unused, a[1] = a_1, ...). Zero exactly on a_k = eta k(k+1).
double meixner_recursion_check(const std::vector<double>& a, double eta);

}  // namespace anyon
