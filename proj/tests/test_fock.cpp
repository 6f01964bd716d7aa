#include <doctest.h>

#include "anyon/fock.hpp"
#include "anyon/jacobi.hpp"
#include "anyon/verify.hpp"

using namespace anyon;

namespace {

const Grid& grid4() {
  static Grid g = Grid::line(4, 1.0);
  return g;
}

std::vector<cplx> ones(std::size_t n) { return std::vector<cplx>(n, cplx(1.0)); }

FockGVector random_sym_vector(TestRng& rng, const FockSpace& ctx, int top) {
  FockGVector F = FockGVector::zero(ctx);
  F.comp[0][0] = rng.cnormal();
  for (int n = 1; n <= top; ++n) {
    for (auto& v : F.comp[static_cast<std::size_t>(n)]) v = rng.cnormal();
    F.comp[static_cast<std::size_t>(n)] =
        sym_paired(F.comp[static_cast<std::size_t>(n)], n, ctx);
  }
  return F;
}

}  // namespace

TEST_CASE("creation from the vacuum") {
  const FockSpace ctx(grid4(), Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
  TestRng rng(20);
  const auto h = random_site_fn(rng, grid4(), false);
  const FockGVector v =
      create(h, ones(static_cast<std::size_t>(ctx.n_atoms())),
             FockGVector::vacuum(ctx), ctx);
  CHECK(v.comp[0][0] == cplx(0.0));
  for (std::size_t g = 0; g < ctx.pair_dim(); ++g)
    CHECK(std::abs(v.comp[1][g] - h[ctx.site_of(g)]) < 1e-15);
  CHECK(v.degree_is_zero(2));
}

TEST_CASE("boson creations commute") {
  const FockSpace ctx(grid4(), Phase(0.0), NuSpec::point_mass(0.0), 3);
  TestRng rng(21);
  const auto h = random_site_fn(rng, grid4(), false);
  const auto g = random_site_fn(rng, grid4(), false);
  const auto p = ones(1);
  FockGVector a = create(h, p, create(g, p, FockGVector::vacuum(ctx), ctx), ctx);
  const FockGVector b =
      create(g, p, create(h, p, FockGVector::vacuum(ctx), ctx), ctx);
  a -= b;
  CHECK(fock_norm(a, ctx) < 1e-14);
}

TEST_CASE("annihilation examples") {
  const FockSpace ctx(grid4(), Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
  TestRng rng(22);
  const auto p1 = ones(static_cast<std::size_t>(ctx.n_atoms()));
  SUBCASE("vacuum goes to zero") {
    const auto h = random_site_fn(rng, grid4(), false);
    const FockGVector v = annihilate(h, p1, FockGVector::vacuum(ctx), ctx);
    CHECK(fock_norm(v, ctx) == 0.0);
  }
  SUBCASE("one-particle overlap") {
    const auto h = random_site_fn(rng, grid4(), false);
    const auto g = random_site_fn(rng, grid4(), false);
    const FockGVector v =
        annihilate(h, p1, create(g, p1, FockGVector::vacuum(ctx), ctx), ctx);
    cplx overlap(0.0);
    for (std::size_t x = 0; x < grid4().size(); ++x)
      overlap += grid4().weight() * g[x] * std::conj(h[x]);
    CHECK(std::abs(v.comp[0][0] - overlap) < 1e-13);
  }
}

TEST_CASE("creation and annihilation are mutually adjoint") {
  for (double theta : {0.0, M_PI, 0.7, M_PI / 2}) {
    const FockSpace ctx(grid4(), Phase(theta), NuSpec::meixner(2, 1, 5), 3);
    TestRng rng(23);
    const auto h = random_site_fn(rng, grid4(), false);
    std::vector<cplx> p(static_cast<std::size_t>(ctx.n_atoms()));
    for (auto& v : p) v = rng.cnormal();
    const FockGVector F = random_sym_vector(rng, ctx, 2);
    const FockGVector G = random_sym_vector(rng, ctx, 3);
    const cplx lhs = fock_inner(create(h, p, F, ctx), G, ctx);
    const cplx rhs = fock_inner(F, annihilate(h, p, G, ctx), ctx);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
}

TEST_CASE("annihilation agrees with its symmetrized form") {
  // the crossing-phase form of the lowering operator, evaluated on
  // Q-symmetric vectors over the site-only space
  for (double theta : {0.7, M_PI}) {
    const FockSpace ctx(grid4(), Phase(theta), NuSpec::point_mass(0.0), 3);
    TestRng rng(24);
    const auto h = random_site_fn(rng, grid4(), false);
    const FockGVector F = random_sym_vector(rng, ctx, 3);
    const FockGVector direct = annihilate(h, ones(1), F, ctx);
    for (int n = 1; n <= 3; ++n) {
      const auto& fn = F.comp[static_cast<std::size_t>(n)];
      std::vector<cplx> pre(fn.size() / ctx.pair_dim(), cplx(0.0));
      std::vector<std::size_t> args(static_cast<std::size_t>(n));
      for_each_tuple(ctx.pair_dim(), n - 1,
                     [&](const std::vector<std::size_t>& ids, std::size_t flat) {
                       cplx acc(0.0);
                       for (std::size_t y = 0; y < grid4().size(); ++y) {
                         for (int k = 1; k <= n; ++k) {
                           // y in slot k (1-based), phases Q(y, x_1..x_{k-1})
                           cplx phase(1.0);
                           bool ok = true;
                           for (int i = 0; i < k - 1; ++i) {
                             const std::size_t xi = ctx.site_of(
                                 ids[static_cast<std::size_t>(i)]);
                             if (xi == y) ok = false;
                             if (!ok) break;
                             phase *= grid4().site_phase(y, xi, ctx.phase());
                           }
                           if (!ok) continue;
                           for (int i = 0; i < k - 1; ++i)
                             args[static_cast<std::size_t>(i)] =
                                 ids[static_cast<std::size_t>(i)];
                           args[static_cast<std::size_t>(k - 1)] =
                               ctx.pair_index(y, 0);
                           for (int i = k; i < n; ++i)
                             args[static_cast<std::size_t>(i)] =
                                 ids[static_cast<std::size_t>(i - 1)];
                           std::size_t fl = 0;
                           for (int i = 0; i < n; ++i)
                             fl = fl * ctx.pair_dim() +
                                  args[static_cast<std::size_t>(i)];
                           acc += std::conj(h[y]) * phase * fn[fl] *
                                  grid4().weight();
                         }
                       }
                       pre[flat] = acc;
                     });
      const auto symd = sym_paired(pre, n - 1, ctx);
      const auto& want = direct.comp[static_cast<std::size_t>(n - 1)];
      double worst = 0.0;
      for (std::size_t i = 0; i < symd.size(); ++i)
        worst = std::max(worst, std::abs(symd[i] - want[i]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("neutral operator") {
  const NuSpec nu = NuSpec::from_atoms({{-1.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}});
  const FockSpace ctx(grid4(), Phase(0.7), nu, 3);
  TestRng rng(25);
  SUBCASE("kills the vacuum") {
    const auto h = random_site_fn(rng, grid4(), false);
    CHECK(fock_norm(neutral_id(h, FockGVector::vacuum(ctx), ctx), ctx) == 0.0);
  }
  SUBCASE("multiplies a single particle by h(x) s") {
    const auto h = random_site_fn(rng, grid4(), false);
    FockGVector F = FockGVector::zero(ctx);
    for (auto& v : F.comp[1]) v = rng.cnormal();
    const FockGVector out = neutral_id(h, F, ctx);
    for (std::size_t g = 0; g < ctx.pair_dim(); ++g)
      CHECK(std::abs(out.comp[1][g] -
                     h[ctx.site_of(g)] * ctx.atom_value(ctx.atom_of(g)) *
                         F.comp[1][g]) < 1e-14);
  }
  SUBCASE("equals the sum of the three second quantizations") {
    const auto h = random_site_fn(rng, grid4(), false);
    const FockGVector F = random_sym_vector(rng, ctx, 3);
    FockGVector sum = dgamma(h, Ladder::Plus, F, ctx);
    sum += dgamma(h, Ladder::Zero, F, ctx);
    sum += dgamma(h, Ladder::Minus, F, ctx);
    FockGVector direct = neutral_id(h, F, ctx);
    direct -= sum;
    CHECK(fock_norm(direct, ctx) < 1e-12 * std::max(1.0, fock_norm(sum, ctx)));
  }
}

TEST_CASE("second quantization ladder structure") {
  const NuSpec nu = NuSpec::from_atoms({{-1.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}});
  const FockSpace ctx(grid4(), Phase(0.7), nu, 3);
  TestRng rng(26);
  SUBCASE("vacuum is annihilated") {
    const auto h = random_site_fn(rng, grid4(), false);
    for (Ladder l : {Ladder::Plus, Ladder::Zero, Ladder::Minus})
      CHECK(fock_norm(dgamma(h, l, FockGVector::vacuum(ctx), ctx), ctx) == 0.0);
  }
  SUBCASE("single particle, neutral ladder multiplies p_k by b_k") {
    const auto h = random_site_fn(rng, grid4(), false);
    for (int k = 0; k < ctx.n_atoms(); ++k) {
      FockGVector F = FockGVector::zero(ctx);
      const auto g = random_site_fn(rng, grid4(), false);
      for (std::size_t gg = 0; gg < ctx.pair_dim(); ++gg)
        F.comp[1][gg] = g[ctx.site_of(gg)] *
                        ctx.p_at_atoms(k)[static_cast<std::size_t>(
                            ctx.atom_of(gg))];
      const FockGVector out = dgamma(h, Ladder::Zero, F, ctx);
      for (std::size_t gg = 0; gg < ctx.pair_dim(); ++gg)
        CHECK(std::abs(out.comp[1][gg] -
                       nu.b(k) * h[ctx.site_of(gg)] * F.comp[1][gg]) < 1e-11);
    }
  }
}

TEST_CASE("grading by particle degree plus polynomial degree") {
  const FockSpace ctx(grid4(), Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
  TestRng rng(27);
  const auto h = random_site_fn(rng, grid4(), true);
  // grade-homogeneous start: two particles carrying p_0 and p_1 over a
  // random site-pair profile
  std::vector<cplx> site_profile(grid4().size() * grid4().size());
  for (auto& v : site_profile) v = rng.cnormal();
  FockGVector F = FockGVector::zero(ctx);
  for (std::size_t g1 = 0; g1 < ctx.pair_dim(); ++g1)
    for (std::size_t g2 = 0; g2 < ctx.pair_dim(); ++g2)
      F.comp[2][g1 * ctx.pair_dim() + g2] =
          site_profile[ctx.site_of(g1) * grid4().size() + ctx.site_of(g2)] *
          ctx.p_at_atoms(0)[static_cast<std::size_t>(ctx.atom_of(g1))] *
          ctx.p_at_atoms(1)[static_cast<std::size_t>(ctx.atom_of(g2))];
  F.comp[2] = sym_paired(F.comp[2], 2, ctx);
  const int grade = 2 + 0 + 1;

  FockGVector up = create(h, ones(static_cast<std::size_t>(ctx.n_atoms())), F, ctx);
  up += dgamma(h, Ladder::Plus, F, ctx);
  FockGVector up_rest = up;
  up_rest -= grade_component(up, grade + 1, ctx);
  CHECK(fock_norm(up_rest, ctx) < 1e-10 * std::max(1.0, fock_norm(up, ctx)));

  const FockGVector mid = dgamma(h, Ladder::Zero, F, ctx);
  FockGVector mid_rest = mid;
  mid_rest -= grade_component(mid, grade, ctx);
  CHECK(fock_norm(mid_rest, ctx) < 1e-10 * std::max(1.0, fock_norm(mid, ctx)));

  FockGVector down = annihilate(h, ones(static_cast<std::size_t>(ctx.n_atoms())),
                                F, ctx);
  down += dgamma(h, Ladder::Minus, F, ctx);
  FockGVector down_rest = down;
  down_rest -= grade_component(down, grade - 1, ctx);
  CHECK(fock_norm(down_rest, ctx) <
        1e-10 * std::max(1.0, fock_norm(down, ctx)));
}

TEST_CASE("white-noise operator") {
  const Grid& g = grid4();
  TestRng rng(28);
  SUBCASE("vacuum image is the one-particle test function") {
    const FockSpace ctx(g, Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
    const auto h = random_site_fn(rng, g, true);
    const FockGVector v = white_noise_apply(h, FockGVector::vacuum(ctx), ctx);
    CHECK(v.comp[0][0] == cplx(0.0));
    for (std::size_t gg = 0; gg < ctx.pair_dim(); ++gg)
      CHECK(std::abs(v.comp[1][gg] - h[ctx.site_of(gg)]) < 1e-15);
  }
  SUBCASE("point mass reduces to creation + lambda neutral + annihilation") {
    const double lambda = 1.3;
    const FockSpace ctx(g, Phase(M_PI), NuSpec::point_mass(lambda), 3);
    const auto h = random_site_fn(rng, g, true);
    const FockGVector F = random_sym_vector(rng, ctx, 2);
    FockGVector expect = create(h, ones(1), F, ctx);
    expect += annihilate(h, ones(1), F, ctx);  // real h: conjugation-free
    // lambda a0(h): multiply degree n by lambda sum h(x_i)
    FockGVector nt = FockGVector::zero(ctx);
    for (int n = 1; n <= 3; ++n) {
      for_each_tuple(ctx.pair_dim(), n,
                     [&](const std::vector<std::size_t>& t, std::size_t flat) {
                       cplx mult(0.0);
                       for (std::size_t gg : t) mult += h[ctx.site_of(gg)];
                       nt.comp[static_cast<std::size_t>(n)][flat] =
                           lambda * mult *
                           F.comp[static_cast<std::size_t>(n)][flat];
                     });
    }
    expect += nt;
    FockGVector got = white_noise_apply(h, F, ctx);
    got -= expect;
    CHECK(fock_norm(got, ctx) < 1e-12);
  }
  SUBCASE("vacuum moments") {
    const FockSpace ctx(g, Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
    const auto h = random_site_fn(rng, g, true);
    const FockGVector v1 = white_noise_apply(h, FockGVector::vacuum(ctx), ctx);
    CHECK(std::abs(v1.comp[0][0]) == 0.0);  // tau(<w,h>) = 0
    const FockGVector v2 = white_noise_apply(h, v1, ctx);
    double hsq = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x)
      hsq += g.weight() * std::norm(h[x]);
    CHECK(std::abs(v2.comp[0][0] - cplx(hsq)) < 1e-12);
  }
  SUBCASE("complex test functions split linearly") {
    const FockSpace ctx(g, Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
    const auto hr = random_site_fn(rng, g, true);
    const auto hi = random_site_fn(rng, g, true);
    std::vector<cplx> h(g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
      h[x] = hr[x] + cplx(0, 1) * hi[x];
    const FockGVector F = random_sym_vector(rng, ctx, 2);
    FockGVector expect = white_noise_apply(hr, F, ctx);
    FockGVector im = white_noise_apply(hi, F, ctx);
    im *= cplx(0, 1);
    expect += im;
    FockGVector got = white_noise_apply(h, F, ctx);
    got -= expect;
    CHECK(fock_norm(got, ctx) < 1e-12);
  }
}

TEST_CASE("white-noise operator is self-adjoint for real test functions") {
  for (double theta : {0.0, M_PI, 0.7, M_PI / 2}) {
    const FockSpace ctx(grid4(), Phase(theta), NuSpec::meixner(2, 1, 5), 3);
    TestRng rng(34);
    const auto h = random_site_fn(rng, grid4(), true);
    const FockGVector F = random_sym_vector(rng, ctx, 2);
    const FockGVector G = random_sym_vector(rng, ctx, 2);
    const cplx lhs = fock_inner(white_noise_apply(h, F, ctx), G, ctx);
    const cplx rhs = fock_inner(F, white_noise_apply(h, G, ctx), ctx);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)));
  }
}

TEST_CASE("strict and exploratory truncation") {
  const Grid& g = grid4();
  TestRng rng(29);
  const NuSpec nu = NuSpec::point_mass(0.0);
  const auto h = random_site_fn(rng, g, true);
  const FockSpace strict_ctx(g, Phase(0.0), nu, 2, Truncation::Strict);
  FockGVector F = random_sym_vector(rng, strict_ctx, 2);
  CHECK_THROWS_AS(create(h, ones(1), F, strict_ctx), TruncationError);
  const FockSpace expl_ctx(g, Phase(0.0), nu, 2, Truncation::Exploratory);
  const FockGVector dropped = create(h, ones(1), F, expl_ctx);
  CHECK(dropped.comp[0][0] == cplx(0.0));  // top image silently dropped
}

TEST_CASE("embedding of collapsed tensors") {
  const NuSpec nu =
      NuSpec::from_atoms({{-2.0, 0.1}, {-0.5, 0.4}, {0.7, 0.3}, {2.2, 0.2}});
  SUBCASE("minimal partition embeds as f tensor p_0 on distinct tuples") {
    const FockSpace ctx(grid4(), Phase(0.7), nu, 3);
    TestRng rng(30);
    const Tensor f = random_tensor(rng, 2, grid4());
    const auto raw = embed_E(SetPartition(2, {{0}, {1}}), f, ctx);
    for_each_tuple(ctx.pair_dim(), 2,
                   [&](const std::vector<std::size_t>& t, std::size_t flat) {
                     const std::size_t x1 = ctx.site_of(t[0]);
                     const std::size_t x2 = ctx.site_of(t[1]);
                     const cplx expect =
                         x1 == x2 ? cplx(0.0) : f.at({x1, x2});
                     CHECK(std::abs(raw[flat] - expect) < 1e-15);
                   });
  }
  SUBCASE("pair block evaluates on the diagonal against p_1") {
    const FockSpace ctx(grid4(), Phase(0.7), nu, 3);
    TestRng rng(31);
    const Tensor f = random_tensor(rng, 2, grid4());
    const auto raw = embed_E(SetPartition(2, {{0, 1}}), f, ctx);
    for (std::size_t g = 0; g < ctx.pair_dim(); ++g) {
      const std::size_t x = ctx.site_of(g);
      const double p1 =
          ctx.p_at_atoms(1)[static_cast<std::size_t>(ctx.atom_of(g))];
      CHECK(std::abs(raw[g] - f.at({x, x}) * p1) < 1e-13);
    }
  }
  SUBCASE("the six-point mixed pattern") {
    const Grid g3 = Grid::line(3, 1.0);
    const FockSpace ctx(g3, Phase(0.7), nu, 3);
    TestRng rng(32);
    const Tensor f = random_tensor(rng, 6, g3);
    // blocks {0,2}, {1,3,5}, {4} have maxima 2, 5, 4; canonically ordered
    // they read {0,2}, {4}, {1,3,5} with sizes 2, 1, 3, so the collapse is
    // f(x1,x3,x1,x3,x2,x3) against p_1, p_0, p_2
    const auto raw = embed_E(SetPartition(6, {{0, 2}, {1, 3, 5}, {4}}), f, ctx);
    const std::size_t G = ctx.pair_dim();
    for_each_tuple(
        3, 3, [&](const std::vector<std::size_t>& xs, std::size_t) {
          if (xs[0] == xs[1] || xs[0] == xs[2] || xs[1] == xs[2]) return;
          for (int a1 = 0; a1 < 4; ++a1)
            for (int a2 = 0; a2 < 4; ++a2)
              for (int a3 = 0; a3 < 4; ++a3) {
                const std::size_t flat =
                    (ctx.pair_index(xs[0], a1) * G + ctx.pair_index(xs[1], a2)) *
                        G +
                    ctx.pair_index(xs[2], a3);
                const cplx expect =
                    f.at({xs[0], xs[2], xs[0], xs[2], xs[1], xs[2]}) *
                    ctx.p_at_atoms(1)[static_cast<std::size_t>(a1)] *
                    ctx.p_at_atoms(0)[static_cast<std::size_t>(a2)] *
                    ctx.p_at_atoms(2)[static_cast<std::size_t>(a3)];
                CHECK(std::abs(raw[flat] - expect) < 1e-12);
              }
        });
  }
}

TEST_CASE("the orthogonal projection map") {
  const FockSpace ctx(grid4(), Phase(0.7), NuSpec::meixner(2, 1, 5), 3);
  TestRng rng(33);
  SUBCASE("degree one is the plain embedding") {
    const Tensor f = random_tensor(rng, 1, grid4());
    const FockGVector v = project_Pn(f, ctx);
    for (std::size_t g = 0; g < ctx.pair_dim(); ++g)
      CHECK(std::abs(v.comp[1][g] - f.data[ctx.site_of(g)]) < 1e-15);
  }
  SUBCASE("only the symmetrization of the argument matters") {
    const Tensor f = random_tensor(rng, 3, grid4());
    const Tensor s = symmetrize(f, grid4(), ctx.phase());
    FockGVector a = project_Pn(f, ctx);
    const FockGVector b = project_Pn(s, ctx);
    a -= b;
    CHECK(fock_norm(a, ctx) < 1e-11);
  }
}

TEST_CASE("operator matrices and the vacuum state") {
  const Grid g2 = Grid::line(2, 1.0);
  const FockSpace ctx(g2, Phase(0.7), NuSpec::point_mass(1.0), 1,
                      Truncation::Exploratory);
  const std::vector<cplx> h = {cplx(0.5), cplx(0.25)};
  const OperatorMatrix m = assemble_matrix(
      [&](const FockGVector& F) { return white_noise_apply(h, F, ctx); }, ctx,
      false, "test");
  REQUIRE(m.dim == 3);
  // creation column from the vacuum, annihilation row back, neutral diagonal
  CHECK(std::abs(m.at(1, 0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(m.at(2, 0) - cplx(0.25)) < 1e-15);
  CHECK(std::abs(m.at(0, 1) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(m.at(0, 2) - cplx(0.25)) < 1e-15);
  CHECK(std::abs(m.at(1, 1) - cplx(0.5)) < 1e-15);   // lambda h(x1)
  CHECK(std::abs(m.at(2, 2) - cplx(0.25)) < 1e-15);  // lambda h(x2)
  CHECK(vacuum_expectation(m) == cplx(0.0));

  const OperatorMatrix id = assemble_matrix(
      [&](const FockGVector& F) { return F; }, ctx, false, "identity");
  CHECK(vacuum_expectation(id) == cplx(1.0));
}
