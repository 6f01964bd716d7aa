#include "anyon/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace anyon {

std::string to_string(MeixnerClass c) {
  switch (c) {
    case MeixnerClass::HermiteGaussian:
      return "Hermite/Gaussian";
    case MeixnerClass::CharlierPoisson:
      return "Charlier/Poisson";
    case MeixnerClass::LaguerreGamma:
      return "Laguerre/Gamma";
    case MeixnerClass::MeixnerFirstKindPascal:
      return "MeixnerFirstKind/Pascal";
    case MeixnerClass::MeixnerPollaczek:
      return "MeixnerPollaczek";
  }
  return "?";
}

MeixnerClass classify_meixner(double lambda, double eta) {
  if (eta < 0.0) throw DomainError("classify_meixner: eta must be >= 0");
  if (eta == 0.0)
    return lambda == 0.0 ? MeixnerClass::HermiteGaussian
                         : MeixnerClass::CharlierPoisson;
  const double al = std::abs(lambda);
  if (al == 2.0) return MeixnerClass::LaguerreGamma;
  if (al < 2.0) return MeixnerClass::MeixnerFirstKindPascal;
  return MeixnerClass::MeixnerPollaczek;
}

NuSpec NuSpec::point_mass(double lambda, int horizon) {
  NuSpec nu;
  nu.kind_ = NuKind::PointMass;
  nu.lambda_ = lambda;
  nu.eta_ = 0.0;
  nu.horizon_ = horizon;
  nu.atoms_ = {{lambda, 1.0}};
  nu.a_.assign(static_cast<std::size_t>(horizon), 0.0);
  nu.b_.resize(static_cast<std::size_t>(horizon));
  for (int k = 0; k < horizon; ++k)
    nu.b_[static_cast<std::size_t>(k)] = lambda * (k + 1);
  return nu;
}

NuSpec NuSpec::meixner(double lambda, double eta, int quad_points,
                       int horizon) {
  if (eta < 0.0) throw DomainError("NuSpec::meixner: eta must be >= 0");
  if (quad_points < 1)
    throw DomainError("NuSpec::meixner: need at least one quadrature point");
  if (eta == 0.0) return point_mass(lambda, horizon);
  NuSpec nu;
  nu.kind_ = NuKind::MeixnerParam;
  nu.lambda_ = lambda;
  nu.eta_ = eta;
  nu.horizon_ = std::max(horizon, quad_points + 1);
  nu.atoms_ = gauss_atoms(lambda, eta, quad_points);
  nu.a_.resize(static_cast<std::size_t>(nu.horizon_));
  nu.b_.resize(static_cast<std::size_t>(nu.horizon_));
  for (int k = 0; k < nu.horizon_; ++k) {
    // the M-point Gauss measure shares the first M-1 off-diagonal and M
    // diagonal coefficients with the continuous family, and a_k = 0 beyond
    nu.a_[static_cast<std::size_t>(k)] =
        (k >= 1 && k < quad_points) ? eta * k * (k + 1) : 0.0;
    nu.b_[static_cast<std::size_t>(k)] = lambda * (k + 1);
  }
  return nu;
}

NuSpec NuSpec::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("NuSpec: empty atom list");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.s < y.s; });
  double mass = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].mass <= 0.0)
      throw DomainError("NuSpec: atom masses must be positive");
    if (i > 0 && atoms[i].s == atoms[i - 1].s)
      throw DomainError("NuSpec: atom positions must be distinct");
    mass += atoms[i].mass;
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw DomainError(
        "NuSpec: masses must sum to 1 (unnormalized nu unsupported)");
  NuSpec nu;
  nu.kind_ = NuKind::Atoms;
  const int K = static_cast<int>(atoms.size());
  nu.horizon_ = std::max(NuSpec::kDefaultHorizon, K + 1);
  RecurrenceCoeffs rc = recurrence_from_atoms(atoms, K);
  nu.atoms_ = std::move(atoms);
  nu.a_.assign(static_cast<std::size_t>(nu.horizon_), 0.0);
  nu.b_.assign(static_cast<std::size_t>(nu.horizon_), 0.0);
  for (int k = 1; k < K; ++k)
    nu.a_[static_cast<std::size_t>(k)] = rc.a[static_cast<std::size_t>(k)];
  for (int k = 0; k < K; ++k)
    nu.b_[static_cast<std::size_t>(k)] = rc.b[static_cast<std::size_t>(k)];
  nu.lambda_ = nu.b_[0];
  nu.eta_ = K > 1 ? nu.a_[1] / 2.0 : 0.0;
  return nu;
}

double NuSpec::a(int k) const {
  if (k < 1) throw DomainError("NuSpec::a: k must be >= 1");
  if (k >= atom_count()) return 0.0;
  if (k >= horizon_) throw DomainError("NuSpec::a: beyond coefficient horizon");
  return a_[static_cast<std::size_t>(k)];
}

double NuSpec::b(int k) const {
  if (k < 0) throw DomainError("NuSpec::b: k must be >= 0");
  if (k >= horizon_) throw DomainError("NuSpec::b: beyond coefficient horizon");
  return b_[static_cast<std::size_t>(k)];
}

double NuSpec::c(int k) const {
  if (k < 1) throw DomainError("NuSpec::c: k must be >= 1");
  double prod = 1.0;
  for (int i = 1; i <= k - 1; ++i) {
    if (i >= atom_count()) return 0.0;
    prod *= a(i);
  }
  return prod;
}

double eval_p(int k, double s, const NuSpec& nu) {
  if (k < 0) throw DomainError("eval_p: k must be >= 0");
  if (k >= nu.horizon()) throw DomainError("eval_p: k beyond horizon");
  double pm = 0.0;  // p_{-1}
  double p = 1.0;   // p_0
  for (int i = 0; i < k; ++i) {
    double pn = (s - nu.b(i)) * p - (i >= 1 ? nu.a(i) : 0.0) * pm;
    pm = p;
    p = pn;
  }
  return p;
}

RecurrenceCoeffs recurrence_from_atoms(const std::vector<Atom>& atoms, int K) {
  const int M = static_cast<int>(atoms.size());
  if (K < 1 || K > M)
    throw DomainError(
        "recurrence_from_atoms: K exceeds atom count (degenerate moment "
        "problem)");
  RecurrenceCoeffs rc;
  rc.a.assign(static_cast<std::size_t>(K), 0.0);
  rc.b.assign(static_cast<std::size_t>(K), 0.0);

  std::vector<double> pm(atoms.size(), 0.0);  // p_{k-1} at atoms
  std::vector<double> p(atoms.size(), 1.0);   // p_k at atoms
  double norm_prev = 0.0;
  for (int k = 0; k < K; ++k) {
    CompensatedSum nrm, snrm;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      nrm.add(atoms[j].mass * p[j] * p[j]);
      snrm.add(atoms[j].mass * atoms[j].s * p[j] * p[j]);
    }
    const double norm = nrm.value();
    if (norm <= 0.0)
      throw DomainError(
          "recurrence_from_atoms: lost positivity; use fewer coefficients");
    rc.b[static_cast<std::size_t>(k)] = snrm.value() / norm;
    if (k >= 1) {
      rc.a[static_cast<std::size_t>(k)] = norm / norm_prev;
      if (rc.a[static_cast<std::size_t>(k)] <= 0.0)
        throw DomainError(
            "recurrence_from_atoms: nonpositive a_k; use fewer coefficients");
    }
    norm_prev = norm;
    if (k + 1 < K) {
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        double pn = (atoms[j].s - rc.b[static_cast<std::size_t>(k)]) * p[j] -
                    (k >= 1 ? rc.a[static_cast<std::size_t>(k)] : 0.0) * pm[j];
        pm[j] = p[j];
        p[j] = pn;
      }
    }
  }
  return rc;
}

std::vector<Atom> golub_welsch(const std::vector<double>& b_diag,
                               const std::vector<double>& a_offdiag_sq,
                               double total_mass) {
  const int M = static_cast<int>(b_diag.size());
  if (M < 1) throw DomainError("golub_welsch: empty Jacobi matrix");
  if (static_cast<int>(a_offdiag_sq.size()) != M - 1)
    throw DomainError("golub_welsch: off-diagonal size must be M-1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) J(i, i) = b_diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < M; ++i) {
    const double a = a_offdiag_sq[static_cast<std::size_t>(i)];
    if (a <= 0.0) throw DomainError("golub_welsch: a_k must be positive");
    J(i, i + 1) = J(i + 1, i) = std::sqrt(a);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: eigensolver failed");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    const double w0 = es.eigenvectors()(0, i);
    atoms.push_back({es.eigenvalues()(i), total_mass * w0 * w0});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.s < y.s; });
  return atoms;
}

std::vector<Atom> gauss_atoms(double lambda, double eta, int M) {
  if (M < 1) throw DomainError("gauss_atoms: M must be >= 1");
  std::vector<double> b(static_cast<std::size_t>(M));
  std::vector<double> a(static_cast<std::size_t>(M - 1));
  for (int k = 0; k < M; ++k)
    b[static_cast<std::size_t>(k)] = lambda * (k + 1);
  for (int k = 1; k < M; ++k)
    a[static_cast<std::size_t>(k - 1)] = eta * k * (k + 1);
  return golub_welsch(b, a);
}

double eval_meixner_P(int n, double x, double l, double k, double lambda,
                      double eta) {
  if (n < 0) throw DomainError("eval_meixner_P: n must be >= 0");
  if (k <= 0.0) throw DomainError("eval_meixner_P: k must be positive");
  if (eta < 0.0) throw DomainError("eval_meixner_P: eta must be >= 0");
  double pm = 0.0;  // P_{-1}
  double p = 1.0;   // P_0
  for (int m = 0; m < n; ++m) {
    double pn = (x - (l + m * lambda)) * p - m * (k + eta * (m - 1)) * pm;
    pm = p;
    p = pn;
  }
  return p;
}

double meixner_recursion_check(const std::vector<double>& a, double eta) {
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < a.size(); ++n) {
    const double dn = static_cast<double>(n);
    const double predicted =
        2.0 * eta + ((dn + 1.0) * (dn + 2.0) - 2.0) * a[n] / (dn * (dn + 1.0));
    worst = std::max(worst, std::abs(a[n + 1] - predicted));
  }
  return worst;
}

}  // namespace anyon
