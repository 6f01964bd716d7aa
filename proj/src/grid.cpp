#include "anyon/grid.hpp"

#include <algorithm>

namespace anyon {

Ordering compare_points(const Point& x, const Point& y) {
  if (x.size() != y.size())
    throw DomainError("compare_points: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < y[j]) return Ordering::Less;
    if (x[j] > y[j]) return Ordering::Greater;
  }
  throw DomainError("order undefined on diagonal");
}

cplx q_func(const Point& x, const Point& y, const Phase& phase) {
  switch (compare_points(x, y)) {
    case Ordering::Less:
      return phase.q;
    case Ordering::Greater:
      return std::conj(phase.q);
  }
  throw DomainError("Q undefined on diagonal");
}

Grid::Grid(int dim, std::vector<Point> points, double weight)
    : dim_(dim), points_(std::move(points)), weight_(weight) {
  if (dim_ < 1) throw DomainError("Grid: dim must be positive");
  if (weight_ <= 0.0) throw DomainError("Grid: weight must be positive");
  if (points_.empty()) throw DomainError("Grid: need at least one point");
  for (const auto& p : points_)
    if (static_cast<int>(p.size()) != dim_)
      throw DomainError("Grid: point dimension mismatch");
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (points_[i] == points_[i + 1])
      throw DomainError("Grid: duplicate points rejected");
}

Grid Grid::line(std::size_t count, double spacing, double origin,
                double weight) {
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pts.push_back({origin + spacing * static_cast<double>(i)});
  return Grid(1, std::move(pts), weight > 0.0 ? weight : spacing);
}

cplx Grid::site_phase(std::size_t i, std::size_t j, const Phase& phase) const {
  if (i == j) throw DomainError("Q undefined on diagonal");
  // points_ are sorted ascending, so id order is the lexicographic order
  return i < j ? phase.q : std::conj(phase.q);
}

Tensor::Tensor(int degree_, std::size_t n_sites_)
    : degree(degree_), n_sites(n_sites_) {
  if (degree_ < 0) throw DomainError("Tensor: negative degree");
  std::size_t total = 1;
  for (int k = 0; k < degree_; ++k) total *= n_sites_;
  data.assign(total, cplx(0.0));
}

Tensor Tensor::scalar(cplx c) {
  Tensor t;
  t.data[0] = c;
  t.is_qsym = true;
  return t;
}

std::size_t Tensor::flat(const std::vector<std::size_t>& idx) const {
  std::size_t f = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) f = f * n_sites + idx[k];
  return f;
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (other.data.size() != data.size() || other.degree != degree)
    throw DomainError("Tensor: shape mismatch in +=");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += other.data[i];
  is_qsym = is_qsym && other.is_qsym;
  return *this;
}

Tensor& Tensor::operator*=(cplx c) {
  for (auto& v : data) v *= c;
  return *this;
}

cplx integrate(const Tensor& f, const Grid& grid) {
  if (f.degree > 0 && f.n_sites != grid.size())
    throw DomainError("integrate: tensor shape does not match grid");
  CompensatedSumC acc;
  for (const auto& v : f.data) acc.add(v);
  double wn = 1.0;
  for (int k = 0; k < f.degree; ++k) wn *= grid.weight();
  return acc.value() * wn;
}

}  // namespace anyon
