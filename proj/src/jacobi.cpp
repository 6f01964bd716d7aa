#include "anyon/jacobi.hpp"

#include <algorithm>

namespace anyon {

namespace {

void check_site_function(const std::vector<cplx>& h, const Grid& grid) {
  if (h.size() != grid.size())
    throw DomainError("jacobi: site function has wrong length");
}

ExtFockVector zero_like(const ExtFockVector& F, const Grid& grid) {
  ExtFockVector out = ExtFockVector::vacuum(F.max_degree(), grid);
  out.comp[0].data[0] = cplx(0.0);
  return out;
}

}  // namespace

Tensor site_tensor(const std::vector<cplx>& h, const Grid& grid) {
  check_site_function(h, grid);
  Tensor t(1, grid.size());
  t.data.assign(h.begin(), h.end());
  t.is_qsym = true;
  return t;
}

ExtFockVector j_plus(const std::vector<cplx>& h, const ExtFockVector& F,
                     const Grid& grid, const Phase& phase, Truncation policy) {
  check_site_function(h, grid);
  const int n_max = F.max_degree();
  bool top_nonzero = false;
  for (const auto& v : F.comp[static_cast<std::size_t>(n_max)].data)
    if (v != cplx(0.0)) top_nonzero = true;
  if (top_nonzero && policy == Truncation::Strict)
    throw TruncationError("j_plus: truncation overflow at n_max");
  const Tensor ht = site_tensor(h, grid);
  ExtFockVector out = zero_like(F, grid);
  for (int n = 0; n < n_max; ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    bool nonzero = false;
    for (const auto& v : fn.data)
      if (v != cplx(0.0)) nonzero = true;
    if (!nonzero) continue;
    out.comp[static_cast<std::size_t>(n + 1)] = qtensor(ht, fn, grid, phase);
  }
  return out;
}

ExtFockVector j_zero(const std::vector<cplx>& h, const ExtFockVector& F,
                     const Grid& grid, const Phase& phase, const NuSpec& nu) {
  check_site_function(h, grid);
  ExtFockVector out = zero_like(F, grid);
  for (int n = 1; n <= F.max_degree(); ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    Tensor pre(n, grid.size());
    for_each_tuple(grid.size(), n, [&](const std::vector<std::size_t>& ids,
                                       std::size_t flat) {
      if (fn.data[flat] == cplx(0.0)) return;
      const SetPartition theta = stratum_of(ids);
      cplx mult(0.0);
      for (int i = 0; i < n; ++i) {
        const int gamma = static_cast<int>(
            theta.blocks[static_cast<std::size_t>(theta.block_of(i))].size());
        mult += h[ids[static_cast<std::size_t>(i)]] * nu.b(gamma - 1) /
                static_cast<double>(gamma);
      }
      pre.data[flat] = mult * fn.data[flat];
    });
    out.comp[static_cast<std::size_t>(n)] = symmetrize(pre, grid, phase);
  }
  return out;
}

ExtFockVector j_minus1(const std::vector<cplx>& h, const ExtFockVector& F,
                       const Grid& grid, const Phase& phase, const NuSpec& nu) {
  check_site_function(h, grid);
  ExtFockVector out = zero_like(F, grid);
  for (int n = 2; n <= F.max_degree(); ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    Tensor pre(n - 1, grid.size());
    std::vector<std::size_t> inserted(static_cast<std::size_t>(n));
    bool any = false;
    for_each_tuple(grid.size(), n - 1, [&](const std::vector<std::size_t>& ids,
                                           std::size_t flat) {
      const SetPartition theta = stratum_of(ids);
      CompensatedSumC acc;
      // 1-based pairs (i, j), i < j <= n; the inserted value is the output
      // entry at 1-based position j-1, placed at 1-based slot i
      for (int i0 = 0; i0 < n; ++i0) {
        for (int j0 = i0 + 1; j0 < n; ++j0) {
          const std::size_t val = ids[static_cast<std::size_t>(j0 - 1)];
          for (int k = 0; k < i0; ++k)
            inserted[static_cast<std::size_t>(k)] =
                ids[static_cast<std::size_t>(k)];
          inserted[static_cast<std::size_t>(i0)] = val;
          for (int k = i0 + 1; k < n; ++k)
            inserted[static_cast<std::size_t>(k)] =
                ids[static_cast<std::size_t>(k - 1)];
          const cplx fval = fn.data[fn.flat(inserted)];
          if (fval == cplx(0.0)) continue;
          const int gamma = static_cast<int>(
              theta.blocks[static_cast<std::size_t>(theta.block_of(j0 - 1))]
                  .size());
          const double s = 2.0 * nu.a(gamma) /
                           (static_cast<double>(gamma) *
                            static_cast<double>(gamma + 1));
          if (s == 0.0) continue;
          acc.add(h[val] * fval * s);
        }
      }
      pre.data[flat] = acc.value();
      if (pre.data[flat] != cplx(0.0)) any = true;
    });
    if (any)
      out.comp[static_cast<std::size_t>(n - 1)] = symmetrize(pre, grid, phase);
  }
  return out;
}

ExtFockVector j_minus2(const std::vector<cplx>& h, const ExtFockVector& F,
                       const Grid& grid, const Phase& phase) {
  (void)phase;
  check_site_function(h, grid);
  ExtFockVector out = zero_like(F, grid);
  for (int n = 1; n <= F.max_degree(); ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    if (!fn.is_qsym)
      throw DomainError("j_minus2: input component not certified Q-symmetric");
    Tensor low(n - 1, grid.size());
    std::vector<std::size_t> full(static_cast<std::size_t>(n));
    for_each_tuple(grid.size(), n - 1, [&](const std::vector<std::size_t>& ids,
                                           std::size_t flat) {
      CompensatedSumC acc;
      for (std::size_t y = 0; y < grid.size(); ++y) {
        bool clash = false;
        for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
          if (ids[k] == y) clash = true;
        if (clash) continue;
        full[0] = y;
        for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
          full[k + 1] = ids[k];
        acc.add(h[y] * fn.data[fn.flat(full)]);
      }
      low.data[flat] =
          acc.value() * grid.weight() * static_cast<double>(n);
    });
    low.is_qsym = true;  // inherited from the Q-symmetry of the input
    out.comp[static_cast<std::size_t>(n - 1)] += low;
  }
  return out;
}

ExtFockVector j_minus2_general(const std::vector<cplx>& h,
                               const ExtFockVector& F, const Grid& grid,
                               const Phase& phase) {
  check_site_function(h, grid);
  ExtFockVector out = zero_like(F, grid);
  for (int n = 1; n <= F.max_degree(); ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    Tensor pre(n - 1, grid.size());
    std::vector<std::size_t> full(static_cast<std::size_t>(n));
    for_each_tuple(grid.size(), n - 1, [&](const std::vector<std::size_t>& ids,
                                           std::size_t flat) {
      const SetPartition theta = stratum_of(ids);
      CompensatedSumC acc;
      for (std::size_t y = 0; y < grid.size(); ++y) {
        bool clash = false;
        for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
          if (ids[k] == y) clash = true;
        if (clash) continue;
        // insert y at each slot; the crossing phase multiplies Q(y, rep) over
        // the blocks lying entirely left of the slot
        for (int i0 = 0; i0 < n; ++i0) {
          for (int k = 0; k < i0; ++k)
            full[static_cast<std::size_t>(k)] =
                ids[static_cast<std::size_t>(k)];
          full[static_cast<std::size_t>(i0)] = y;
          for (int k = i0 + 1; k < n; ++k)
            full[static_cast<std::size_t>(k)] =
                ids[static_cast<std::size_t>(k - 1)];
          const cplx fval = fn.data[fn.flat(full)];
          if (fval == cplx(0.0)) continue;
          cplx t(1.0, 0.0);
          for (const auto& block : theta.blocks)
            if (block.back() <= i0 - 1)
              t *= q_func(grid.point(y),
                          grid.point(ids[static_cast<std::size_t>(block.front())]),
                          phase);
          acc.add(h[y] * fval * t);
        }
      }
      pre.data[flat] = acc.value() * grid.weight();
    });
    out.comp[static_cast<std::size_t>(n - 1)] += symmetrize(pre, grid, phase);
  }
  return out;
}

ExtFockVector j_total(const std::vector<cplx>& h, const ExtFockVector& F,
                      const Grid& grid, const Phase& phase, const NuSpec& nu,
                      Truncation policy) {
  ExtFockVector out = j_plus(h, F, grid, phase, policy);
  out += j_zero(h, F, grid, phase, nu);
  out += j_minus1(h, F, grid, phase, nu);
  out += j_minus2(h, F, grid, phase);
  return out;
}

MeixnerClosedForms meixner_closed_forms(const std::vector<cplx>& h,
                                        const ExtFockVector& F,
                                        const Grid& grid, const Phase& phase,
                                        double lambda, double eta) {
  check_site_function(h, grid);
  MeixnerClosedForms cf{zero_like(F, grid), zero_like(F, grid)};
  for (int n = 1; n <= F.max_degree(); ++n) {
    const auto& fn = F.comp[static_cast<std::size_t>(n)];
    // lambda * n * Sym(h(x_1) f(x_1..x_n))
    Tensor pre(n, grid.size());
    for_each_tuple(grid.size(), n,
                   [&](const std::vector<std::size_t>& ids, std::size_t flat) {
                     pre.data[flat] = h[ids[0]] * fn.data[flat];
                   });
    pre = symmetrize(pre, grid, phase);
    pre *= cplx(lambda * n);
    cf.zero_part.comp[static_cast<std::size_t>(n)] = std::move(pre);

    if (n >= 2) {
      // eta * n(n-1) * Sym(h(x_1) f(x_1,x_1,x_2..x_{n-1}))
      Tensor prem(n - 1, grid.size());
      std::vector<std::size_t> doubled(static_cast<std::size_t>(n));
      for_each_tuple(grid.size(), n - 1,
                     [&](const std::vector<std::size_t>& ids, std::size_t flat) {
                       doubled[0] = ids[0];
                       doubled[1] = ids[0];
                       for (std::size_t k = 1; k + 1 < static_cast<std::size_t>(n);
                            ++k)
                         doubled[k + 1] = ids[k];
                       prem.data[flat] = h[ids[0]] * fn.data[fn.flat(doubled)];
                     });
      prem = symmetrize(prem, grid, phase);
      prem *= cplx(eta * n * (n - 1));
      cf.minus1_part.comp[static_cast<std::size_t>(n - 1)] += prem;
    }
  }
  return cf;
}

ExtFockVector qtensor_chain(const std::vector<std::vector<cplx>>& fs,
                            const Grid& grid, const Phase& phase, int n_max) {
  const int n = static_cast<int>(fs.size());
  if (n > n_max) throw TruncationError("qtensor_chain: n over n_max");
  ExtFockVector out = ExtFockVector::vacuum(n_max, grid);
  if (n == 0) return out;
  out.comp[0].data[0] = cplx(0.0);
  // right-nested: f_1 ⊛ (f_2 ⊛ (...)), which equals Sym of the full outer
  // product on every stratum (left-nesting differs on the diagonal ones)
  Tensor acc = site_tensor(fs[static_cast<std::size_t>(n) - 1], grid);
  for (int i = n - 2; i >= 0; --i)
    acc = qtensor(site_tensor(fs[static_cast<std::size_t>(i)], grid), acc, grid,
                  phase);
  acc.is_qsym = true;  // degree-1 tensors are Q-symmetric as is
  out.comp[static_cast<std::size_t>(n)] = std::move(acc);
  return out;
}

ExtFockVector product_formula(const std::vector<cplx>& h,
                              const std::vector<std::vector<cplx>>& fs,
                              double lambda, double eta, const Grid& grid,
                              const Phase& phase, int n_max,
                              Truncation policy) {
  check_site_function(h, grid);
  const int n = static_cast<int>(fs.size());
  if (n + 1 > n_max && policy == Truncation::Strict)
    throw TruncationError("product_formula: raising exceeds n_max");
  ExtFockVector F = qtensor_chain(fs, grid, phase, n_max);
  // term 1: h ⊛ F
  ExtFockVector out = j_plus(h, F, grid, phase, policy);
  // term 2: lambda sum_i f_1 ⊛ .. ⊛ (h f_i) ⊛ .. ⊛ f_n
  for (int i = 0; i < n; ++i) {
    auto modified = fs;
    for (std::size_t x = 0; x < h.size(); ++x)
      modified[static_cast<std::size_t>(i)][x] *= h[x];
    ExtFockVector term = qtensor_chain(modified, grid, phase, n_max);
    term *= cplx(lambda);
    out += term;
  }
  // term 3: 2 eta sum_{i<j} f_1 ⊛ ..drop i.. ⊛ (h f_i f_j at slot j) ⊛ ..
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<std::vector<cplx>> reduced;
      reduced.reserve(static_cast<std::size_t>(n) - 1);
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        if (k == j) {
          std::vector<cplx> hfifj(h.size());
          for (std::size_t x = 0; x < h.size(); ++x)
            hfifj[x] = h[x] * fs[static_cast<std::size_t>(i)][x] *
                       fs[static_cast<std::size_t>(j)][x];
          reduced.push_back(std::move(hfifj));
        } else {
          reduced.push_back(fs[static_cast<std::size_t>(k)]);
        }
      }
      ExtFockVector term = qtensor_chain(reduced, grid, phase, n_max);
      term *= cplx(2.0 * eta);
      out += term;
    }
  // term 4: n int dy h(y) F(y, ..)
  out += j_minus2(h, F, grid, phase);
  return out;
}

}  // namespace anyon
