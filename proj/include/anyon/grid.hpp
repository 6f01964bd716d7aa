#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "anyon/common.hpp"

namespace anyon {

/// Exchange phase q = exp(i*theta) on the unit circle.
struct Phase {
  double theta = 0.0;
  cplx q{1.0, 0.0};

  Phase() = default;
  explicit Phase(double theta_) : theta(theta_), q(std::polar(1.0, theta_)) {}

  bool is_boson() const { return std::abs(q - cplx(1.0, 0.0)) < 1e-14; }
  bool is_fermion() const { return std::abs(q + cplx(1.0, 0.0)) < 1e-14; }
};

enum class Ordering { Less, Greater };

using Point = std::vector<double>;

/// Lexicographic order on coordinate tuples. Equal points have no order.
Ordering compare_points(const Point& x, const Point& y);

/// Q(x,y) = q if x < y, conj(q) if y < x; Hermitian by construction.
cplx q_func(const Point& x, const Point& y, const Phase& phase);

/// Finite discretization of the base space: distinct points stored in
/// strictly increasing lexicographic order, each carrying cell weight w.
/// Immutable after construction.
class Grid {
 public:
  Grid(int dim, std::vector<Point> points, double weight);

  /// Uniform 1-d grid: origin, origin+spacing, ...
  static Grid line(std::size_t count, double spacing, double origin = 0.0,
                   double weight = -1.0);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  double weight() const { return weight_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  /// Phase between two sites by id. Points are stored sorted, so this is
  /// q for i<j and conj(q) for i>j; i == j is a hard error (order and Q are
  /// undefined on the diagonal).
  cplx site_phase(std::size_t i, std::size_t j, const Phase& phase) const;

 private:
  int dim_;
  std::vector<Point> points_;
  double weight_;
};

/// Dense complex tensor over grid^degree, first slot most significant.
/// is_qsym marks tensors certified Q-symmetric in the extended sense.
struct Tensor {
  int degree = 0;
  std::size_t n_sites = 1;
  std::vector<cplx> data;  // size n_sites^degree (degree 0: one scalar)
  bool is_qsym = false;

  Tensor() : data(1, cplx(0.0)) {}
  Tensor(int degree_, std::size_t n_sites_);
  static Tensor scalar(cplx c);

  std::size_t size() const { return data.size(); }

  std::size_t flat(const std::vector<std::size_t>& idx) const;
  cplx& at(const std::vector<std::size_t>& idx) { return data[flat(idx)]; }
  const cplx& at(const std::vector<std::size_t>& idx) const {
    return data[flat(idx)];
  }

  Tensor& operator+=(const Tensor& other);
  Tensor& operator*=(cplx c);
};

/// sum of entries times w^degree (the iterated cell-weighted Riemann sum).
cplx integrate(const Tensor& f, const Grid& grid);

/// Enumerate grid^n tuples in lexicographic order, calling fn(tuple, flat).
template <typename Fn>
void for_each_tuple(std::size_t n_sites, int degree, Fn&& fn) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  std::size_t total = 1;
  for (int k = 0; k < degree; ++k) total *= n_sites;
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(static_cast<const std::vector<std::size_t>&>(idx), flat);
    for (int k = degree - 1; k >= 0; --k) {
      auto uk = static_cast<std::size_t>(k);
      if (++idx[uk] < n_sites) break;
      idx[uk] = 0;
    }
  }
}

}  // namespace anyon
