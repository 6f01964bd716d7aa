#include <doctest.h>

#include <cmath>

#include "anyon/orthopoly.hpp"

using namespace anyon;

TEST_CASE("monic polynomial evaluation") {
  const NuSpec nu = NuSpec::meixner(2.0, 1.0, 5);
  CHECK(eval_p(0, 1.7, nu) == 1.0);
  CHECK(eval_p(1, 1.7, nu) == doctest::Approx(1.7 - 2.0).epsilon(1e-15));
  // b_0 = 2, b_1 = 4, a_1 = 2: p_2(s) = (s-4)(s-2) - 2
  for (double s : {-1.0, 0.0, 2.5, 7.0})
    CHECK(eval_p(2, s, nu) ==
          doctest::Approx((s - 4) * (s - 2) - 2).epsilon(1e-14));
  CHECK_THROWS_AS(eval_p(nu.horizon(), 0.0, nu), DomainError);
}

TEST_CASE("Stieltjes recurrence from atoms") {
  SUBCASE("single atom") {
    const auto rc = recurrence_from_atoms({{3.5, 1.0}}, 1);
    CHECK(rc.b[0] == doctest::Approx(3.5));
  }
  SUBCASE("two symmetric atoms") {
    const auto rc = recurrence_from_atoms({{-1.0, 0.5}, {1.0, 0.5}}, 2);
    CHECK(rc.b[0] == doctest::Approx(0.0));
    CHECK(rc.b[1] == doctest::Approx(0.0));
    CHECK(rc.a[1] == doctest::Approx(1.0));
  }
  SUBCASE("K beyond the atom count is rejected") {
    CHECK_THROWS_AS(recurrence_from_atoms({{0.0, 1.0}}, 2), DomainError);
  }
}

TEST_CASE("Gauss atoms") {
  SUBCASE("M = 1 sits at b_0 with full mass") {
    const auto atoms = gauss_atoms(1.5, 2.0, 1);
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].s == doctest::Approx(1.5));
    CHECK(atoms[0].mass == doctest::Approx(1.0));
  }
  SUBCASE("M = 2 for lambda 0, eta 1: nodes +-sqrt(2), equal masses") {
    const auto atoms = gauss_atoms(0.0, 1.0, 2);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].s == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(atoms[1].s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(atoms[0].mass == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(atoms[1].mass == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("round trip recovers the family coefficients") {
    for (int M = 2; M <= 8; ++M) {
      const auto atoms = gauss_atoms(2.0, 1.0, M);
      const auto rc = recurrence_from_atoms(atoms, M);
      for (int k = 1; k < M; ++k)
        CHECK(std::abs(rc.a[static_cast<std::size_t>(k)] - 1.0 * k * (k + 1)) <
              1e-8);
      for (int k = 0; k < M; ++k)
        CHECK(std::abs(rc.b[static_cast<std::size_t>(k)] - 2.0 * (k + 1)) <
              1e-8);
    }
  }
}

TEST_CASE("five-class classification") {
  CHECK(classify_meixner(0, 0) == MeixnerClass::HermiteGaussian);
  CHECK(classify_meixner(1.5, 0) == MeixnerClass::CharlierPoisson);
  CHECK(classify_meixner(2, 1) == MeixnerClass::LaguerreGamma);
  CHECK(classify_meixner(-2, 0.3) == MeixnerClass::LaguerreGamma);
  CHECK(classify_meixner(1, 1) == MeixnerClass::MeixnerFirstKindPascal);
  CHECK(classify_meixner(3, 1) == MeixnerClass::MeixnerPollaczek);
  CHECK_THROWS_AS(classify_meixner(0, -0.1), DomainError);
  CHECK(to_string(MeixnerClass::LaguerreGamma) == "Laguerre/Gamma");
}

TEST_CASE("one-dimensional Meixner system") {
  CHECK(eval_meixner_P(0, 0.3, 0.5, 1.0, 2.0, 1.0) == 1.0);
  CHECK(eval_meixner_P(1, 0.3, 0.5, 1.0, 2.0, 1.0) ==
        doctest::Approx(0.3 - 0.5));
  // l=0, k=1, lambda=eta=0 gives the monic Hermite chain, P_2 = x^2 - 1
  for (double x : {-2.0, 0.0, 1.3})
    CHECK(eval_meixner_P(2, x, 0, 1, 0, 0) ==
          doctest::Approx(x * x - 1).epsilon(1e-15));
}

TEST_CASE("Gaussian-case orthogonality under a Gauss rule") {
  // probabilists' Hermite Jacobi data: b_k = 0, a_k = k
  std::vector<double> b(5, 0.0);
  std::vector<double> a = {1, 2, 3, 4};
  const auto atoms = golub_welsch(b, a);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      double acc = 0;
      for (const auto& atom : atoms)
        acc += atom.mass * eval_meixner_P(m, atom.s, 0, 1, 0, 0) *
               eval_meixner_P(n, atom.s, 0, 1, 0, 0);
      if (m != n)
        CHECK(std::abs(acc) < 1e-12);
      else
        CHECK(acc > 0);
    }
}

TEST_CASE("coefficient recursion residual") {
  SUBCASE("the family satisfies it exactly") {
    std::vector<double> a(11, 0.0);
    for (int k = 1; k <= 10; ++k) a[static_cast<std::size_t>(k)] = 1.0 * k * (k + 1);
    CHECK(meixner_recursion_check(a, 1.0) == 0.0);
  }
  SUBCASE("eta = 0 with zero coefficients") {
    std::vector<double> a(11, 0.0);
    CHECK(meixner_recursion_check(a, 0.0) == 0.0);
  }
  SUBCASE("uniform three-atom witness") {
    // moments of the uniform measure on {-1, 0, 1}: m2 = m4 = 2/3, so
    // a_1 = 2/3 and a_2 = (2/9)/(2/3) = 1/3
    const auto rc = recurrence_from_atoms(
        {{-1.0, 1.0 / 3}, {0.0, 1.0 / 3}, {1.0, 1.0 / 3}}, 3);
    CHECK(rc.a[1] == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(rc.a[2] == doctest::Approx(1.0 / 3).epsilon(1e-14));
    const double eta = rc.a[1] / 2.0;
    const double resid =
        meixner_recursion_check({0.0, rc.a[1], rc.a[2]}, eta);
    CHECK(resid == doctest::Approx(5.0 / 3).epsilon(1e-13));
    CHECK(resid > 1e-6);
  }
}

TEST_CASE("orthogonality and the c_k identity on a four-atom measure") {
  const std::vector<Atom> atoms = {
      {-2.0, 0.1}, {-0.5, 0.4}, {0.7, 0.3}, {2.2, 0.2}};
  const NuSpec nu = NuSpec::from_atoms(atoms);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < m; ++n) {
      double acc = 0;
      for (const auto& atom : atoms)
        acc += atom.mass * eval_p(m, atom.s, nu) * eval_p(n, atom.s, nu);
      CHECK(std::abs(acc) < 1e-10);
    }
  for (int k = 1; k <= 4; ++k) {
    double nrm = 0;
    for (const auto& atom : atoms) {
      const double p = eval_p(k - 1, atom.s, nu);
      nrm += atom.mass * p * p;
    }
    CHECK(nrm == doctest::Approx(nu.c(k)).epsilon(1e-10));
  }
}

TEST_CASE("nu spec invariants") {
  CHECK_THROWS_AS(NuSpec::from_atoms({{0.0, 0.5}, {1.0, 0.6}}), DomainError);
  CHECK_THROWS_AS(NuSpec::from_atoms({{0.0, 0.5}, {0.0, 0.5}}), DomainError);
  const NuSpec pm = NuSpec::point_mass(1.5);
  CHECK(pm.c(1) == 1.0);
  CHECK(pm.c(2) == 0.0);
  CHECK(pm.a(5) == 0.0);
  CHECK(pm.b(2) == doctest::Approx(4.5));  // lambda (k+1)
  const NuSpec mx = NuSpec::meixner(0.0, 2.0, 4);
  CHECK(mx.a(1) == doctest::Approx(4.0));
  CHECK(mx.a(4) == 0.0);  // beyond the atom count
}
