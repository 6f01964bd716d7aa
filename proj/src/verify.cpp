#include "anyon/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace anyon {

using nlohmann::json;

std::uint64_t TestRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double TestRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TestRng::normal() {
  // spare-less Box-Muller; deterministic across platforms
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string phase_label(const Phase& p) {
  if (p.is_boson()) return "q=+1";
  if (p.is_fermion()) return "q=-1";
  if (std::abs(p.q - cplx(0.0, 1.0)) < 1e-14) return "q=+i";
  if (std::abs(p.q - cplx(0.0, -1.0)) < 1e-14) return "q=-i";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "theta=%.6g", p.theta);
  return buf;
}

Tensor random_tensor(TestRng& rng, int degree, const Grid& grid) {
  Tensor t(degree, grid.size());
  for (auto& v : t.data) v = rng.cnormal();
  return t;
}

std::vector<cplx> random_site_fn(TestRng& rng, const Grid& grid,
                                 bool real_valued) {
  std::vector<cplx> h(grid.size());
  for (auto& v : h) v = real_valued ? cplx(rng.normal(), 0.0) : rng.cnormal();
  return h;
}

ExtFockVector random_ext_vector(TestRng& rng, const Grid& grid,
                                const Phase& phase, int n_max, int top_degree,
                                bool symmetrized) {
  ExtFockVector F = ExtFockVector::vacuum(n_max, grid);
  F.comp[0].data[0] = rng.cnormal();
  for (int n = 1; n <= top_degree; ++n) {
    Tensor t = random_tensor(rng, n, grid);
    F.comp[static_cast<std::size_t>(n)] =
        symmetrized ? symmetrize(t, grid, phase) : t;
  }
  return F;
}

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                               Clock::now() - t0)
                               .count());
}

std::uint64_t check_seed(const Config& cfg, const std::string& tag) {
  return cfg.seed ^ fnv1a(tag);
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

double ext_diff_norm(const ExtFockVector& a, const ExtFockVector& b,
                     const NuSpec& nu, const Grid& grid) {
  ExtFockVector d = a;
  ExtFockVector mb = b;
  mb *= cplx(-1.0);
  d += mb;
  return ext_norm(d, nu, grid);
}

double fock_diff_norm(const FockGVector& a, const FockGVector& b,
                      const FockSpace& ctx) {
  FockGVector d = a;
  d -= b;
  return fock_norm(d, ctx);
}

/// Flattens truncated Fock vectors into plain coordinates carrying the
/// sqrt of the n!-weighted measure, so dot products become unweighted.
struct WeightedFlattener {
  explicit WeightedFlattener(const FockSpace& ctx) {
    wsqrt.resize(static_cast<std::size_t>(ctx.n_max()) + 1);
    total = 0;
    for (int n = 0; n <= ctx.n_max(); ++n) {
      auto& wn = wsqrt[static_cast<std::size_t>(n)];
      std::size_t sz = 1;
      for (int k = 0; k < n; ++k) sz *= ctx.pair_dim();
      wn.resize(sz);
      const double fact = static_cast<double>(factorial(n));
      for_each_tuple(ctx.pair_dim(), n,
                     [&](const std::vector<std::size_t>& t, std::size_t flat) {
                       double w = fact;
                       for (std::size_t g : t) w *= ctx.slot_weight(g);
                       wn[flat] = std::sqrt(w);
                     });
      total += sz;
    }
  }

  std::vector<cplx> flatten(const FockGVector& F) const {
    std::vector<cplx> out;
    out.reserve(total);
    for (std::size_t n = 0; n < F.comp.size(); ++n)
      for (std::size_t i = 0; i < F.comp[n].size(); ++i)
        out.push_back(F.comp[n][i] * wsqrt[n][i]);
    return out;
  }

  std::vector<std::vector<double>> wsqrt;
  std::size_t total = 0;
};

cplx vdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  CompensatedSumC acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * std::conj(b[i]));
  return acc.value();
}

double vnorm(const std::vector<cplx>& a) {
  CompensatedSum acc;
  for (const auto& v : a) acc.add(std::norm(v));
  return std::sqrt(std::max(0.0, acc.value()));
}

/// Modified Gram-Schmidt with re-orthogonalization; returns the basis.
std::vector<std::vector<cplx>> mgs_basis(
    const std::vector<std::vector<cplx>>& vectors, double drop_tol = 1e-8) {
  std::vector<std::vector<cplx>> basis;
  for (const auto& v0 : vectors) {
    std::vector<cplx> v = v0;
    const double orig = vnorm(v);
    if (orig == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx c = vdot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    const double nrm = vnorm(v);
    if (nrm > drop_tol * std::max(1.0, orig)) {
      for (auto& x : v) x /= nrm;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

std::vector<cplx> project_off_span(const std::vector<cplx>& v,
                                   const std::vector<std::vector<cplx>>& basis) {
  std::vector<cplx> out = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      const cplx c = vdot(out, b);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * b[i];
    }
  return out;
}

/// Rank of a family of degree-n tensors in the m_nu inner product.
int tensor_rank_mnu(const std::vector<Tensor>& family, const NuSpec& nu,
                    const Grid& grid, double drop_tol = 1e-8) {
  std::vector<Tensor> basis;
  int rank = 0;
  for (const auto& t0 : family) {
    Tensor t = t0;
    const double orig =
        std::sqrt(std::max(0.0, inner_mnu(t0, t0, nu, grid).real()));
    if (orig == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx c = inner_mnu(t, b, nu, grid);
        for (std::size_t i = 0; i < t.data.size(); ++i)
          t.data[i] -= c * b.data[i];
      }
    const double nrm = std::sqrt(std::max(0.0, inner_mnu(t, t, nu, grid).real()));
    if (nrm > drop_tol * std::max(1.0, orig)) {
      for (auto& x : t.data) x /= nrm;
      basis.push_back(std::move(t));
      ++rank;
    }
  }
  return rank;
}

FockGVector random_fock_sym(TestRng& rng, const FockSpace& ctx,
                            int top_degree) {
  FockGVector F = FockGVector::zero(ctx);
  F.comp[0][0] = rng.cnormal();
  for (int n = 1; n <= top_degree; ++n) {
    auto& comp_n = F.comp[static_cast<std::size_t>(n)];
    for (auto& v : comp_n) v = rng.cnormal();
    comp_n = sym_paired(comp_n, n, ctx);
  }
  return F;
}

CheckResult make_result(const Config& cfg, std::string id, std::string anchor,
                        double residual, double tol, Clock::time_point t0) {
  CheckResult r;
  r.check_id = std::move(id);
  r.paper_anchor = std::move(anchor);
  r.max_residual = residual;
  r.tolerance = tol;
  r.passed = residual <= tol;
  r.config_digest = config_digest(cfg);
  r.runtime_ms = ms_since(t0);
  return r;
}

}  // namespace

std::vector<CheckResult> check_projection(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  const NuSpec nu = cfg.make_nu();
  const QsymMutation mut = cfg.mutation == Mutation::DropInducedPermutation
                               ? QsymMutation::DropInducedPermutation
                               : QsymMutation::None;
  std::vector<CheckResult> out;
  for (const Phase& phase : cfg.make_phases()) {
    const auto t0 = Clock::now();
    TestRng rng(check_seed(cfg, "projection:" + phase_label(phase)));
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      const auto perms = all_permutations(n);
      for (int t = 0; t < cfg.trials; ++t) {
        const Tensor f = random_tensor(rng, n, grid);
        const Tensor s = symmetrize(f, grid, phase, mut);
        const Tensor ss = symmetrize(s, grid, phase, mut);
        worst = std::max(worst, max_abs_diff(ss, s));
        const Tensor g = random_tensor(rng, n, grid);
        const cplx lhs = inner_mnu(s, g, nu, grid);
        const cplx rhs = inner_mnu(f, symmetrize(g, grid, phase, mut), nu, grid);
        worst = std::max(worst, std::abs(lhs - rhs) /
                                    (1.0 + std::abs(lhs) + std::abs(rhs)));
        // range: the projection must land in the stratified Q-symmetric
        // subspace, the relation that pins the induced block permutation
        if (t == 0)
          for (const auto& pi : perms)
            worst = std::max(worst, max_abs_diff(psi(pi, s, grid, phase), s));
      }
    }
    out.push_back(make_result(
        cfg, "projection[" + phase_label(phase) + "]",
        "Sym_n is an orthogonal projection onto the Q-symmetric subspace",
        worst, cfg.tol.algebraic, t0));
  }
  return out;
}

std::vector<CheckResult> check_isometry(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  const NuSpec nu = cfg.make_nu();
  if (nu.atom_count() <= cfg.n_max)
    throw ConfigError("nu.quad_points",
                      "isometry requires more atoms than n_max");
  const MeasureMutation mmut = cfg.mutation == Mutation::UnitCCoeffs
                                   ? MeasureMutation::UnitCCoeffs
                                   : MeasureMutation::None;
  std::vector<CheckResult> out;
  for (const Phase& phase : cfg.make_phases()) {
    const auto t0 = Clock::now();
    TestRng rng(check_seed(cfg, "isometry:" + phase_label(phase)));
    const FockSpace ctx(grid, phase, nu, cfg.n_max,
                        cfg.strict ? Truncation::Strict
                                   : Truncation::Exploratory);
    double worst = 0.0;
    double worst_n2 = 0.0;
    for (int n = 1; n <= cfg.n_max; ++n) {
      for (int t = 0; t < cfg.trials; ++t) {
        const Tensor f = random_tensor(rng, n, grid);
        const Tensor s = symmetrize(f, grid, phase);
        const FockGVector img = project_Pn(f, ctx);
        const double lhs = fock_inner(img, img, ctx).real();
        const double rhs = inner_mnu(s, s, nu, grid, mmut).real();
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-30));
        if (n == 2) {
          // the measure of a pair splits into the distinct-pair part with
          // weight 2 and the diagonal with weight c_2
          const double w = grid.weight();
          CompensatedSum off, diag;
          for_each_tuple(grid.size(), 2,
                         [&](const std::vector<std::size_t>& ids,
                             std::size_t flat) {
                           const double m2 = std::norm(s.data[flat]);
                           if (ids[0] == ids[1])
                             diag.add(m2);
                           else
                             off.add(m2);
                         });
          const double two_term =
              2.0 * w * w * off.value() + nu.c(2) * w * diag.value();
          worst_n2 = std::max(
              worst_n2, std::abs(two_term - rhs) / std::max(rhs, 1e-30));
        }
      }
    }
    out.push_back(make_result(
        cfg, "isometry[" + phase_label(phase) + "]",
        "orthogonalized monomial image has the Sym_n norm under m_nu", worst,
        cfg.tol.analytic, t0));
    out.push_back(make_result(
        cfg, "isometry.n2_two_term[" + phase_label(phase) + "]",
        "degree-2 norm splits into distinct-pair and c_2-weighted diagonal",
        worst_n2, cfg.tol.algebraic, t0));
  }
  return out;
}

std::vector<CheckResult> check_intertwining(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  const NuSpec nu = cfg.make_nu();
  if (nu.atom_count() <= cfg.n_max)
    throw ConfigError("nu.quad_points",
                      "intertwining requires more atoms than n_max");
  const bool omit_jm1 = cfg.mutation == Mutation::OmitJMinus1;
  std::vector<CheckResult> out;
  for (const Phase& phase : cfg.make_phases()) {
    const auto t0 = Clock::now();
    TestRng rng(check_seed(cfg, "intertwining:" + phase_label(phase)));
    const FockSpace ctx(grid, phase, nu, cfg.n_max,
                        cfg.strict ? Truncation::Strict
                                   : Truncation::Exploratory);
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const ExtFockVector F = random_ext_vector(rng, grid, phase, cfg.n_max,
                                                cfg.n_max - 1, true);
      const auto h = random_site_fn(rng, grid, true);
      ExtFockVector JF = j_plus(h, F, grid, phase);
      JF += j_zero(h, F, grid, phase, nu);
      if (!omit_jm1) JF += j_minus1(h, F, grid, phase, nu);
      JF += j_minus2(h, F, grid, phase);
      const FockGVector lhs = map_U(JF, ctx);
      const FockGVector rhs = white_noise_apply(h, map_U(F, ctx), ctx);
      worst = std::max(worst, fock_diff_norm(lhs, rhs, ctx) /
                                  std::max(1.0, fock_norm(rhs, ctx)));
    }
    out.push_back(make_result(
        cfg, "intertwining[" + phase_label(phase) + "]",
        "the Jacobi field is the white-noise operator conjugated through U",
        worst, cfg.tol.analytic, t0));

    // point-mass collapse: the field reduces to creation + lambda neutral +
    // annihilation on the plain anyon Fock space, and j_minus1 vanishes
    const auto t1 = Clock::now();
    const NuSpec pm = NuSpec::point_mass(cfg.nu_lambda);
    const FockSpace ctxpm(grid, phase, pm, cfg.n_max,
                          cfg.strict ? Truncation::Strict
                                     : Truncation::Exploratory);
    double worst_pm = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const ExtFockVector F = random_ext_vector(rng, grid, phase, cfg.n_max,
                                                cfg.n_max - 1, true);
      const auto h = random_site_fn(rng, grid, true);
      ExtFockVector JF = j_plus(h, F, grid, phase);
      JF += j_zero(h, F, grid, phase, pm);
      if (!omit_jm1) JF += j_minus1(h, F, grid, phase, pm);
      JF += j_minus2(h, F, grid, phase);
      const FockGVector lhs = map_U(JF, ctxpm);
      const FockGVector rhs = white_noise_apply(h, map_U(F, ctxpm), ctxpm);
      worst_pm = std::max(worst_pm, fock_diff_norm(lhs, rhs, ctxpm) /
                                        std::max(1.0, fock_norm(rhs, ctxpm)));
      worst_pm = std::max(
          worst_pm, ext_norm(j_minus1(h, F, grid, phase, pm), pm, grid));
    }
    out.push_back(make_result(
        cfg, "intertwining.point_mass[" + phase_label(phase) + "]",
        "point-mass nu collapses the field to creation + lambda neutral + "
        "annihilation",
        worst_pm, cfg.tol.algebraic, t1));
  }
  return out;
}

std::vector<CheckResult> check_acr(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  const DiagonalRule rule = cfg.mutation == Mutation::AcrBosonDiagonal
                                ? DiagonalRule::PlusG
                                : DiagonalRule::MinusG;
  const int kernels = 10;
  std::vector<CheckResult> out;
  for (const Phase& phase : cfg.make_phases()) {
    const auto t0 = Clock::now();
    TestRng rng(check_seed(cfg, "acr:" + phase_label(phase)));
    const FockSpace ctx(grid, phase, NuSpec::point_mass(0.0), cfg.n_max,
                        cfg.strict ? Truncation::Strict
                                   : Truncation::Exploratory);
    const std::size_t N = grid.size();
    double worst = 0.0;
    for (int kk = 0; kk < kernels; ++kk) {
      std::vector<cplx> g(N * N);
      for (auto& v : g) v = rng.cnormal();
      const FockGVector F1 = random_fock_sym(rng, ctx, cfg.n_max - 1);
      const FockGVector F2 = random_fock_sym(rng, ctx, cfg.n_max - 2);

      // relation 1: d_x d_y+ = delta(x,y) + Q(x,y) d_y+ d_x
      FockGVector lhs = smear2_apply(g, PointKind::Plain, PointKind::Dagger,
                                     F1, ctx);
      CompensatedSumC trace;
      for (std::size_t x = 0; x < N; ++x) trace.add(g[x * N + x]);
      FockGVector delta_term = F1;
      delta_term *= trace.value() * grid.weight();
      // the exchange term is integral of (gQ)(x,y) d_y+ d_x, i.e. the
      // transposed kernel under the left-at-x convention of smear2
      const FockGVector qterm = smear2_apply(
          kernel_transpose(kernel_mul_q(g, ctx, rule), N), PointKind::Dagger,
          PointKind::Plain, F1, ctx);
      FockGVector resid = lhs;
      resid -= delta_term;
      resid -= qterm;
      worst = std::max(worst, fock_norm(resid, ctx) /
                                  std::max(1.0, fock_norm(lhs, ctx)));

      // relations 2, 3: d_x d_y = Q(y,x) d_y d_x and the dagger twin; both
      // rewrite as a smear against g(y,x) Q(x,y)
      const auto k2 = kernel_mul_q(kernel_transpose(g, N), ctx,
                                   DiagonalRule::ZeroG);
      const FockGVector l2 =
          smear2_apply(g, PointKind::Plain, PointKind::Plain, F1, ctx);
      const FockGVector r2 =
          smear2_apply(k2, PointKind::Plain, PointKind::Plain, F1, ctx);
      worst = std::max(worst, fock_diff_norm(l2, r2, ctx) /
                                  std::max(1.0, fock_norm(l2, ctx)));
      const FockGVector l3 =
          smear2_apply(g, PointKind::Dagger, PointKind::Dagger, F2, ctx);
      const FockGVector r3 =
          smear2_apply(k2, PointKind::Dagger, PointKind::Dagger, F2, ctx);
      worst = std::max(worst, fock_diff_norm(l3, r3, ctx) /
                                  std::max(1.0, fock_norm(l3, ctx)));
    }
    out.push_back(make_result(
        cfg, "acr[" + phase_label(phase) + "]",
        "smeared exchange relations for the point operators", worst,
        cfg.tol.acr, t0));
  }
  return out;
}

std::vector<CheckResult> check_meixner_characterization(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  std::vector<CheckResult> out;
  const std::vector<std::pair<double, double>> families = {
      {0.0, 1.0}, {2.0, 1.0}, {1.0, 0.5}, {3.0, 1.0}};
  const int M = std::max(5, cfg.n_max + 2);
  const int ext_degree = 4;
  const double perturb =
      cfg.mutation == Mutation::PerturbMeixnerEta ? 1e-3 : 0.0;

  auto deviation = [&](const NuSpec& nu, TestRng& rng, const Phase& phase,
                       double lambda_used, double eta_used) {
    double dev = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const ExtFockVector F =
          random_ext_vector(rng, grid, phase, ext_degree, ext_degree, true);
      const auto h = random_site_fn(rng, grid, true);
      const ExtFockVector jz = j_zero(h, F, grid, phase, nu);
      const ExtFockVector jm = j_minus1(h, F, grid, phase, nu);
      const MeixnerClosedForms cf =
          meixner_closed_forms(h, F, grid, phase, lambda_used, eta_used);
      const double scale = std::max(1.0, ext_norm(F, nu, grid));
      dev = std::max(dev, (ext_diff_norm(jz, cf.zero_part, nu, grid) +
                           ext_diff_norm(jm, cf.minus1_part, nu, grid)) /
                              scale);
    }
    return dev;
  };

  const Phase rep_phase = cfg.make_phases().front();
  for (const auto& [lambda, eta] : families) {
    const auto t0 = Clock::now();
    char tag[64];
    std::snprintf(tag, sizeof(tag), "l%.3g_e%.3g", lambda, eta);
    TestRng rng(check_seed(cfg, std::string("meixner:") + tag));
    const NuSpec nu = NuSpec::meixner(lambda, eta, M);
    const double lam_used = nu.b(0);
    const double eta_used = (nu.a(1) / 2.0) * (1.0 + perturb);
    const double dev = deviation(nu, rng, rep_phase, lam_used, eta_used);
    out.push_back(make_result(
        cfg, std::string("meixner.family[") + tag + "]",
        "neutral and first lowering parts equal their closed forms", dev,
        cfg.tol.algebraic, t0));

    // coefficient recursion, exact on the family
    const auto t1 = Clock::now();
    std::vector<double> a(11, 0.0);
    for (int k = 1; k <= 10; ++k)
      a[static_cast<std::size_t>(k)] = eta * k * (k + 1);
    if (perturb != 0.0) a[2] *= 1.0 + perturb;
    const double rec = meixner_recursion_check(a, eta);
    out.push_back(make_result(cfg, std::string("meixner.recursion[") + tag + "]",
                              "a_{n+1} recursion closes on a_k = eta k(k+1)",
                              rec, 0.0, t1));
  }

  // the uniform three-atom witness must deviate; reported as a margin so
  // that passed still means residual <= tolerance
  const auto t2 = Clock::now();
  TestRng rngw(check_seed(cfg, "meixner:witness"));
  const NuSpec witness = NuSpec::from_atoms(
      {{-1.0, 1.0 / 3.0}, {0.0, 1.0 / 3.0}, {1.0, 1.0 / 3.0}});
  const double dev_w = deviation(witness, rngw, rep_phase, witness.b(0),
                                 witness.a(1) / 2.0);
  std::vector<double> aw = {0.0, witness.a(1), witness.a(2)};
  const double rec_w = meixner_recursion_check(aw, witness.a(1) / 2.0);
  const double margin = cfg.tol.witness_floor - (dev_w + rec_w);
  out.push_back(make_result(
      cfg, "meixner.witness_uniform3",
      "the uniform three-atom measure fails the closed forms by a margin",
      margin, 0.0, t2));
  return out;
}

std::vector<CheckResult> check_gaussian_poisson_collapse(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  std::vector<CheckResult> out;
  const auto phases = cfg.make_phases();

  for (double lambda : {0.0, 1.0}) {
    const auto t0 = Clock::now();
    const NuSpec pm = NuSpec::point_mass(lambda);
    char tag[48];
    std::snprintf(tag, sizeof(tag), "lambda=%.3g", lambda);
    TestRng rng(check_seed(cfg, std::string("collapse:") + tag));
    double worst = 0.0;
    double worst_jm1 = 0.0;
    const int vectors = 50;
    for (int t = 0; t < vectors; ++t) {
      const Phase& phase = phases[static_cast<std::size_t>(t) % phases.size()];
      const ExtFockVector F =
          random_ext_vector(rng, grid, phase, cfg.n_max, cfg.n_max, true);
      // extended norm vs the plain anyon Fock norm of the off-diagonal part
      const double ext2 = ext_inner(F, F, pm, grid).real();
      CompensatedSum fock2;
      fock2.add(std::norm(F.comp[0].data[0]));
      for (int n = 1; n <= cfg.n_max; ++n) {
        const auto& fn = F.comp[static_cast<std::size_t>(n)];
        double wn = static_cast<double>(factorial(n));
        for (int k = 0; k < n; ++k) wn *= grid.weight();
        CompensatedSum part;
        for_each_tuple(grid.size(), n,
                       [&](const std::vector<std::size_t>& ids,
                           std::size_t flat) {
                         for (std::size_t a = 0; a < ids.size(); ++a)
                           for (std::size_t b = 0; b < a; ++b)
                             if (ids[a] == ids[b]) return;
                         part.add(std::norm(fn.data[flat]));
                       });
        fock2.add(part.value() * wn);
      }
      worst = std::max(worst, std::abs(ext2 - fock2.value()) /
                                  std::max(1.0, fock2.value()));
      const auto h = random_site_fn(rng, grid, true);
      worst_jm1 =
          std::max(worst_jm1, ext_norm(j_minus1(h, F, grid, phase, pm), pm, grid));
    }
    out.push_back(make_result(
        cfg, std::string("collapse.norm[") + tag + "]",
        "point-mass nu: extended norm equals the anyon Fock norm", worst,
        cfg.tol.algebraic, t0));
    out.push_back(make_result(cfg, std::string("collapse.j_minus1_zero[") + tag +
                                       "]",
                              "point-mass nu: the first lowering part vanishes",
                              worst_jm1, cfg.tol.algebraic, t0));
  }

  // strictly larger extended space for eta > 0: the diagonal strata carry
  // positive norm and the degree-wise rank grows
  {
    const auto t1 = Clock::now();
    const int M = std::max(5, cfg.n_max + 2);
    const NuSpec mx = NuSpec::meixner(0.0, 1.0, M);
    const NuSpec pm = NuSpec::point_mass(0.0);
    Tensor diag_witness(2, grid.size());
    diag_witness.at({0, 0}) = cplx(1.0);
    const double diag_norm =
        inner_mnu(diag_witness, diag_witness, mx, grid).real();
    const double floor = mx.c(2) * grid.weight();
    double resid = std::max(0.0, floor - diag_norm);  // must carry >= c2 w

    int rank_mx = 0, rank_pm = 0;
    const Phase& phase = phases.front();
    for (int n = 1; n <= cfg.n_max; ++n) {
      std::vector<Tensor> family;
      std::size_t count = 1;
      for (int k = 0; k < n; ++k) count *= grid.size();
      for (std::size_t t = 0; t < count; ++t) {
        Tensor e(n, grid.size());
        e.data[t] = cplx(1.0);
        family.push_back(symmetrize(e, grid, phase));
      }
      rank_mx += tensor_rank_mnu(family, mx, grid);
      rank_pm += tensor_rank_mnu(family, pm, grid);
    }
    const double margin = static_cast<double>(rank_pm + 1 - rank_mx);
    out.push_back(make_result(
        cfg, "collapse.extended_strictly_larger",
        "eta > 0 gives diagonal strata positive norm and strictly higher rank",
        std::max(resid, margin), 0.0, t1));
  }

  // CP = OCP at desk scale for the point mass: monomial and orthogonal spans
  // coincide (rank equality), and monomials span the truncated space
  {
    const auto t2 = Clock::now();
    const NuSpec pm = NuSpec::point_mass(1.0);
    double resid = 0.0;
    const Phase& phase = phases.front();
    const FockSpace ctx(grid, phase, pm, cfg.n_max, Truncation::Strict);
    const WeightedFlattener fl(ctx);
    TestRng rng(check_seed(cfg, "collapse:spans"));
    std::vector<std::vector<cplx>> mono, orth, joint;
    mono.push_back(fl.flatten(FockGVector::vacuum(ctx)));
    const int per_degree = std::max(cfg.trials, 24);
    for (int k = 1; k <= cfg.n_max; ++k)
      for (int t = 0; t < per_degree; ++t) {
        FockGVector v = FockGVector::vacuum(ctx);
        for (int i = 0; i < k; ++i)
          v = white_noise_apply(random_site_fn(rng, grid, true), v, ctx);
        mono.push_back(fl.flatten(v));
      }
    orth.push_back(fl.flatten(FockGVector::vacuum(ctx)));
    for (int n = 1; n <= cfg.n_max; ++n)
      for (int t = 0; t < per_degree; ++t)
        orth.push_back(
            fl.flatten(project_Pn(random_tensor(rng, n, grid), ctx)));
    joint = mono;
    joint.insert(joint.end(), orth.begin(), orth.end());
    const int rm = static_cast<int>(mgs_basis(mono).size());
    const int ro = static_cast<int>(mgs_basis(orth).size());
    const int rj = static_cast<int>(mgs_basis(joint).size());
    resid += std::abs(rm - ro) + std::abs(rj - ro);

    // cyclicity: the monomials reach everything the truncated basis spans
    std::vector<std::vector<cplx>> full;
    for (int n = 0; n <= cfg.n_max; ++n) {
      std::size_t count = 1;
      for (int k = 0; k < n; ++k) count *= ctx.pair_dim();
      for (std::size_t t = 0; t < count; ++t) {
        FockGVector e = FockGVector::zero(ctx);
        e.comp[static_cast<std::size_t>(n)][t] = cplx(1.0);
        if (n >= 1)
          e.comp[static_cast<std::size_t>(n)] =
              sym_paired(e.comp[static_cast<std::size_t>(n)], n, ctx);
        full.push_back(fl.flatten(e));
      }
    }
    const int rfull = static_cast<int>(mgs_basis(full).size());
    resid += std::abs(rm - rfull);
    out.push_back(make_result(
        cfg, "collapse.cp_equals_ocp",
        "point-mass nu: monomial and orthogonal spans coincide and are cyclic",
        resid, 0.5, t2));
  }
  return out;
}

std::vector<CheckResult> check_oracle_equivalence(const Config& cfg) {
  const Grid grid = cfg.make_grid();
  const NuSpec nu = cfg.make_nu();
  if (nu.atom_count() <= cfg.n_max)
    throw ConfigError("nu.quad_points", "oracle requires more atoms than n_max");
  std::vector<CheckResult> out;
  for (const Phase& phase : cfg.make_phases()) {
    const auto t0 = Clock::now();
    TestRng rng(check_seed(cfg, "oracle:" + phase_label(phase)));
    const FockSpace ctx(grid, phase, nu, cfg.n_max, Truncation::Strict);
    const WeightedFlattener fl(ctx);
    double worst_route = 0.0;
    double worst_gs = 0.0;
    const std::vector<cplx> pz(static_cast<std::size_t>(ctx.n_atoms()),
                               cplx(1.0));
    for (int n = 1; n <= cfg.n_max; ++n) {
      const int trials_here = std::max(3, cfg.trials / 4);
      for (int t = 0; t < trials_here; ++t) {
        std::vector<std::vector<cplx>> hs;
        for (int i = 0; i < n; ++i) hs.push_back(random_site_fn(rng, grid, true));
        // route A: embedding sum
        Tensor prod = site_tensor(hs[0], grid);
        for (int i = 1; i < n; ++i)
          prod = outer(prod, site_tensor(hs[static_cast<std::size_t>(i)], grid));
        const FockGVector A = project_Pn(prod, ctx);
        // route B: iterated raising part of the white-noise operator
        FockGVector B = FockGVector::vacuum(ctx);
        for (int i = n - 1; i >= 0; --i) {
          FockGVector raised = create(hs[static_cast<std::size_t>(i)], pz, B, ctx);
          raised += dgamma(hs[static_cast<std::size_t>(i)], Ladder::Plus, B, ctx);
          B = std::move(raised);
        }
        worst_route = std::max(worst_route, fock_diff_norm(A, B, ctx) /
                                                std::max(1.0, fock_norm(A, ctx)));
        // route C: Gram-Schmidt projection of the monomial vector against
        // the span of all lower-degree monomials
        FockGVector V = FockGVector::vacuum(ctx);
        for (int i = n - 1; i >= 0; --i)
          V = white_noise_apply(hs[static_cast<std::size_t>(i)], V, ctx);
        std::vector<std::vector<cplx>> span;
        span.push_back(fl.flatten(FockGVector::vacuum(ctx)));
        const int per_degree = std::max(24, cfg.trials);
        for (int k = 1; k < n; ++k)
          for (int tt = 0; tt < per_degree; ++tt) {
            FockGVector m = FockGVector::vacuum(ctx);
            for (int i = 0; i < k; ++i)
              m = white_noise_apply(random_site_fn(rng, grid, true), m, ctx);
            span.push_back(fl.flatten(m));
          }
        const auto basis = mgs_basis(span);
        const auto proj = project_off_span(fl.flatten(V), basis);
        const auto target = fl.flatten(A);
        double diff2 = 0.0;
        for (std::size_t i = 0; i < proj.size(); ++i)
          diff2 += std::norm(proj[i] - target[i]);
        worst_gs = std::max(worst_gs, std::sqrt(diff2) /
                                          std::max(1.0, vnorm(target)));
      }
    }
    out.push_back(make_result(
        cfg, "oracle.raising_product[" + phase_label(phase) + "]",
        "embedding sum equals the iterated raising product", worst_route,
        cfg.tol.analytic, t0));
    out.push_back(make_result(
        cfg, "oracle.gram_schmidt[" + phase_label(phase) + "]",
        "embedding sum equals the definitional orthogonal projection",
        worst_gs, cfg.tol.analytic, t0));
  }
  return out;
}

std::vector<CheckResult> check_orthopoly_roundtrip(const Config& cfg) {
  std::vector<CheckResult> out;
  const auto t0 = Clock::now();
  std::vector<std::pair<double, double>> families = {{2.0, 1.0}};
  if (cfg.nu_kind == "meixner" && cfg.nu_eta > 0.0)
    families.push_back({cfg.nu_lambda, cfg.nu_eta});
  double worst_rt = 0.0;
  for (const auto& [lambda, eta] : families) {
    for (int M = 2; M <= 8; ++M) {
      const auto atoms = gauss_atoms(lambda, eta, M);
      const RecurrenceCoeffs rc = recurrence_from_atoms(atoms, M);
      for (int k = 1; k < M; ++k)
        worst_rt = std::max(worst_rt, std::abs(rc.a[static_cast<std::size_t>(k)] -
                                               eta * k * (k + 1)));
      for (int k = 0; k < M; ++k)
        worst_rt = std::max(worst_rt, std::abs(rc.b[static_cast<std::size_t>(k)] -
                                               lambda * (k + 1)));
    }
  }
  out.push_back(make_result(
      cfg, "orthopoly.roundtrip",
      "Gauss atoms return their recurrence coefficients", worst_rt,
      cfg.tol.roundtrip, t0));

  const auto t1 = Clock::now();
  double worst_pn = 0.0;
  const NuSpec nu = cfg.make_nu();
  for (int k = 1; k <= std::min(nu.atom_count(), 6); ++k) {
    CompensatedSum nrm;
    for (const auto& atom : nu.atoms()) {
      const double pk = eval_p(k - 1, atom.s, nu);
      nrm.add(atom.mass * pk * pk);
    }
    const double ck = nu.c(k);
    worst_pn =
        std::max(worst_pn, std::abs(nrm.value() - ck) / std::max(1.0, ck));
  }
  out.push_back(make_result(cfg, "orthopoly.pnorm_eq_ck",
                            "the squared norm of p_{k-1} is the block weight c_k",
                            worst_pn, cfg.tol.pnorm, t1));
  return out;
}

Report run_all(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  auto add = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) {
      if (r.passed)
        ++rep.n_passed;
      else
        ++rep.n_failed;
      rep.checks.push_back(std::move(r));
    }
  };
  if (suite_selected(cfg, "projection")) add(check_projection(cfg));
  if (suite_selected(cfg, "isometry")) add(check_isometry(cfg));
  if (suite_selected(cfg, "intertwining")) add(check_intertwining(cfg));
  if (suite_selected(cfg, "acr")) add(check_acr(cfg));
  if (suite_selected(cfg, "meixner")) add(check_meixner_characterization(cfg));
  if (suite_selected(cfg, "collapse"))
    add(check_gaussian_poisson_collapse(cfg));
  if (suite_selected(cfg, "oracle")) add(check_oracle_equivalence(cfg));
  if (suite_selected(cfg, "orthopoly")) add(check_orthopoly_roundtrip(cfg));
  return rep;
}

json Report::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    json cj;
    cj["check_id"] = c.check_id;
    cj["paper_anchor"] = c.paper_anchor;
    cj["max_residual"] = c.max_residual;
    cj["tolerance"] = c.tolerance;
    cj["passed"] = c.passed;
    cj["config_digest"] = c.config_digest;
    cj["runtime_ms"] = c.runtime_ms;
    checks_json.push_back(std::move(cj));
  }
  json out;
  out["version"] = 1;
  out["config"] = config_to_json(config);
  out["checks"] = checks_json;
  json summary;
  summary["passed"] = n_passed;
  summary["failed"] = n_failed;
  out["summary"] = summary;
  return out;
}

}  // namespace anyon
