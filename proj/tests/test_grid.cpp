#include <doctest.h>

#include "anyon/grid.hpp"

using namespace anyon;

TEST_CASE("lexicographic order on points") {
  CHECK(compare_points({0, 1}, {1, 0}) == Ordering::Less);
  CHECK(compare_points({0, 0}, {0, 1}) == Ordering::Less);  // tie-break rule
  CHECK(compare_points({3}, {2}) == Ordering::Greater);
  CHECK_THROWS_AS(compare_points({1, 2}, {1, 2}), DomainError);
}

TEST_CASE("order is a strict total order on grid triples") {
  Grid grid(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, -1}}, 1.0);
  const auto n = grid.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool ab = compare_points(grid.point(a), grid.point(b)) ==
                      Ordering::Less;
      const bool ba = compare_points(grid.point(b), grid.point(a)) ==
                      Ordering::Less;
      CHECK(ab != ba);  // trichotomy
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        const bool bc = compare_points(grid.point(b), grid.point(c)) ==
                        Ordering::Less;
        const bool ac = compare_points(grid.point(a), grid.point(c)) ==
                        Ordering::Less;
        if (ab && bc) CHECK(ac);  // transitivity
      }
    }
}

TEST_CASE("exchange phase values and Hermitian symmetry") {
  const Point x{0.0}, y{1.0};
  CHECK(std::abs(q_func(x, y, Phase(M_PI)) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(q_func(x, y, Phase(0.0)) == cplx(1.0, 0.0));
  const cplx qi = q_func(x, y, Phase(M_PI / 2));
  CHECK(std::abs(qi - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(q_func(y, x, Phase(M_PI / 2)) - cplx(0.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(q_func(x, x, Phase(0.7)), DomainError);

  Grid grid(1, {{0}, {1}, {2}, {3}}, 0.5);
  const Phase ph(0.7);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (i == j) continue;
      const cplx a = grid.site_phase(i, j, ph);
      CHECK(std::abs(a - std::conj(grid.site_phase(j, i, ph))) == 0.0);
      CHECK(std::abs(std::norm(a) - 1.0) < 1e-14);
      CHECK(a == q_func(grid.point(i), grid.point(j), ph));
    }
}

TEST_CASE("phase modulus") {
  for (double t : {0.0, 0.7, 2.1, M_PI, -1.3}) {
    CHECK(std::abs(std::abs(Phase(t).q) - 1.0) < 1e-14);
  }
}

TEST_CASE("grid construction canonicalizes and rejects duplicates") {
  Grid g(1, {{3}, {1}, {2}}, 1.0);
  CHECK(g.point(0)[0] == 1);
  CHECK(g.point(2)[0] == 3);
  CHECK_THROWS_AS(Grid(1, {{1}, {1}}, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(1, {{1}}, 0.0), DomainError);
  CHECK_THROWS_AS(Grid(1, {{1}, {2, 3}}, 1.0), DomainError);
}

TEST_CASE("integrate is the weighted entry sum") {
  Grid g3 = Grid::line(3, 1.0, 0.0, 0.5);
  SUBCASE("degree 0") {
    CHECK(integrate(Tensor::scalar(cplx(2.5, -1.0)), g3) == cplx(2.5, -1.0));
  }
  SUBCASE("degree 1, constant one") {
    Tensor f(1, 3);
    for (auto& v : f.data) v = 1.0;
    CHECK(integrate(f, g3).real() == doctest::Approx(1.5).epsilon(1e-15));
  }
  SUBCASE("degree 2 indicator, w = 1") {
    Grid g(1, {{0}, {1}, {2}}, 1.0);
    Tensor f(2, 3);
    f.at({0, 2}) = 1.0;
    CHECK(integrate(f, g) == cplx(1.0));
  }
  SUBCASE("shape mismatch") {
    Tensor f(1, 4);
    CHECK_THROWS_AS(integrate(f, g3), DomainError);
  }
}
