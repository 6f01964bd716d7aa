#include "anyon/measure.hpp"

#include <cmath>

namespace anyon {

std::vector<double> c_coeffs(const NuSpec& nu, int K) {
  std::vector<double> out(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) out[static_cast<std::size_t>(k - 1)] = nu.c(k);
  return out;
}

double stratum_weight(const SetPartition& theta, const NuSpec& nu,
                      const Grid& grid) {
  const int n = theta.n;
  const int l = theta.size();
  double factor = static_cast<double>(factorial(n));
  for (const auto& block : theta.blocks) {
    const int bs = static_cast<int>(block.size());
    factor *= nu.c(bs);
    if (factor == 0.0) return 0.0;
    factor /= static_cast<double>(factorial(bs));
  }
  double wl = 1.0;
  for (int i = 0; i < l; ++i) wl *= grid.weight();
  return factor * wl;
}

cplx inner_mnu(const Tensor& f, const Tensor& g, const NuSpec& nu,
               const Grid& grid, MeasureMutation mutation) {
  if (f.degree != g.degree || f.data.size() != g.data.size())
    throw DomainError("inner_mnu: shape mismatch");
  const int n = f.degree;
  if (n == 0) return f.data[0] * std::conj(g.data[0]);
  if (f.n_sites != grid.size())
    throw DomainError("inner_mnu: tensor does not match grid");

  CompensatedSumC total;
  std::vector<std::size_t> lifted(static_cast<std::size_t>(n));
  for (const auto& theta : all_partitions(n)) {
    double w = stratum_weight(theta, nu, grid);
    if (mutation == MeasureMutation::UnitCCoeffs) {
      // n! / prod |b|! * w^l with all c_k replaced by 1
      w = static_cast<double>(factorial(n));
      for (const auto& block : theta.blocks)
        w /= static_cast<double>(factorial(static_cast<int>(block.size())));
      for (int i = 0; i < theta.size(); ++i) w *= grid.weight();
    }
    if (w == 0.0) continue;
    CompensatedSumC acc;
    for_each_injective_tuple(
        grid.size(), theta.size(), [&](const std::vector<std::size_t>& reps) {
          for (int i = 0; i < n; ++i)
            lifted[static_cast<std::size_t>(i)] =
                reps[static_cast<std::size_t>(theta.block_of(i))];
          const std::size_t idx = f.flat(lifted);
          acc.add(f.data[idx] * std::conj(g.data[idx]));
        });
    total.add(acc.value() * w);
  }
  return total.value();
}

ExtFockVector ExtFockVector::vacuum(int n_max, const Grid& grid) {
  ExtFockVector v;
  v.comp.reserve(static_cast<std::size_t>(n_max) + 1);
  v.comp.push_back(Tensor::scalar(cplx(1.0)));
  for (int n = 1; n <= n_max; ++n) {
    Tensor t(n, grid.size());
    t.is_qsym = true;
    v.comp.push_back(std::move(t));
  }
  return v;
}

ExtFockVector& ExtFockVector::operator+=(const ExtFockVector& other) {
  if (other.comp.size() != comp.size())
    throw DomainError("ExtFockVector: degree mismatch");
  for (std::size_t n = 0; n < comp.size(); ++n) comp[n] += other.comp[n];
  return *this;
}

ExtFockVector& ExtFockVector::operator*=(cplx cmul) {
  for (auto& t : comp) t *= cmul;
  return *this;
}

cplx ext_inner(const ExtFockVector& v, const ExtFockVector& u,
               const NuSpec& nu, const Grid& grid) {
  if (v.comp.size() != u.comp.size())
    throw DomainError("ext_inner: degree mismatch");
  CompensatedSumC acc;
  for (std::size_t n = 0; n < v.comp.size(); ++n)
    acc.add(inner_mnu(v.comp[n], u.comp[n], nu, grid));
  return acc.value();
}

double ext_norm(const ExtFockVector& v, const NuSpec& nu, const Grid& grid) {
  double sq = ext_inner(v, v, nu, grid).real();
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace anyon
