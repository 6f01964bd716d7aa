#include "anyon/fock.hpp"

#include <algorithm>
#include <cmath>

namespace anyon {

namespace {

std::size_t pow_sz(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

FockSpace::FockSpace(Grid grid, Phase phase, NuSpec nu, int n_max,
                     Truncation policy)
    : grid_(std::move(grid)),
      phase_(phase),
      nu_(std::move(nu)),
      n_max_(n_max),
      policy_(policy),
      M_(nu_.atom_count()) {
  if (n_max_ < 0) throw DomainError("FockSpace: n_max must be >= 0");
  s_.resize(static_cast<std::size_t>(M_));
  rho_.resize(static_cast<std::size_t>(M_));
  for (int j = 0; j < M_; ++j) {
    s_[static_cast<std::size_t>(j)] = nu_.atoms()[static_cast<std::size_t>(j)].s;
    rho_[static_cast<std::size_t>(j)] =
        nu_.atoms()[static_cast<std::size_t>(j)].mass;
  }
  pval_.resize(static_cast<std::size_t>(M_));
  pnorm_.resize(static_cast<std::size_t>(M_));
  for (int k = 0; k < M_; ++k) {
    auto& row = pval_[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(M_));
    for (int j = 0; j < M_; ++j)
      row[static_cast<std::size_t>(j)] =
          eval_p(k, s_[static_cast<std::size_t>(j)], nu_);
    CompensatedSum nrm;
    for (int j = 0; j < M_; ++j)
      nrm.add(rho_[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)] *
              row[static_cast<std::size_t>(j)]);
    pnorm_[static_cast<std::size_t>(k)] = nrm.value();
  }
  // analysis matrix E[k][a] = rho_a p_k(s_a) / ||p_k||^2, synthesis P[a][k]
  const auto m = static_cast<std::size_t>(M_);
  std::vector<double> E(m * m);
  for (int k = 0; k < M_; ++k)
    for (int a = 0; a < M_; ++a)
      E[static_cast<std::size_t>(k) * m + static_cast<std::size_t>(a)] =
          rho_[static_cast<std::size_t>(a)] *
          pval_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] /
          pnorm_[static_cast<std::size_t>(k)];
  aplus_.assign(m * m, 0.0);
  azero_.assign(m * m, 0.0);
  aminus_.assign(m * m, 0.0);
  for (int a = 0; a < M_; ++a)
    for (int ap = 0; ap < M_; ++ap) {
      double vplus = 0.0, vzero = 0.0, vminus = 0.0;
      for (int k = 0; k < M_; ++k) {
        const double ek =
            E[static_cast<std::size_t>(k) * m + static_cast<std::size_t>(ap)];
        if (k + 1 < M_)
          vplus += pval_[static_cast<std::size_t>(k + 1)]
                        [static_cast<std::size_t>(a)] *
                   ek;  // A+ p_{M-1} = p_M = 0 in L^2(nu)
        vzero += nu_.b(k) *
                 pval_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] *
                 ek;
        if (k >= 1)
          vminus += nu_.a(k) *
                    pval_[static_cast<std::size_t>(k - 1)]
                         [static_cast<std::size_t>(a)] *
                    ek;
      }
      const std::size_t idx =
          static_cast<std::size_t>(a) * m + static_cast<std::size_t>(ap);
      aplus_[idx] = vplus;
      azero_[idx] = vzero;
      aminus_[idx] = vminus;
    }
}

const std::vector<double>& FockSpace::ladder_matrix(Ladder which) const {
  switch (which) {
    case Ladder::Plus:
      return aplus_;
    case Ladder::Zero:
      return azero_;
    case Ladder::Minus:
      return aminus_;
  }
  throw DomainError("ladder_matrix: bad ladder");
}

FockGVector FockGVector::zero(const FockSpace& ctx) {
  FockGVector F;
  F.comp.resize(static_cast<std::size_t>(ctx.n_max()) + 1);
  for (int n = 0; n <= ctx.n_max(); ++n)
    F.comp[static_cast<std::size_t>(n)].assign(pow_sz(ctx.pair_dim(), n),
                                               cplx(0.0));
  return F;
}

FockGVector FockGVector::vacuum(const FockSpace& ctx) {
  FockGVector F = zero(ctx);
  F.comp[0][0] = cplx(1.0);
  return F;
}

bool FockGVector::degree_is_zero(int n) const {
  for (const auto& v : comp[static_cast<std::size_t>(n)])
    if (v != cplx(0.0)) return false;
  return true;
}

FockGVector& FockGVector::operator+=(const FockGVector& other) {
  if (other.comp.size() != comp.size())
    throw DomainError("FockGVector: degree mismatch");
  for (std::size_t n = 0; n < comp.size(); ++n)
    for (std::size_t i = 0; i < comp[n].size(); ++i)
      comp[n][i] += other.comp[n][i];
  return *this;
}

FockGVector& FockGVector::operator-=(const FockGVector& other) {
  if (other.comp.size() != comp.size())
    throw DomainError("FockGVector: degree mismatch");
  for (std::size_t n = 0; n < comp.size(); ++n)
    for (std::size_t i = 0; i < comp[n].size(); ++i)
      comp[n][i] -= other.comp[n][i];
  return *this;
}

FockGVector& FockGVector::operator*=(cplx c) {
  for (auto& comp_n : comp)
    for (auto& v : comp_n) v *= c;
  return *this;
}

cplx fock_inner(const FockGVector& F, const FockGVector& G,
                const FockSpace& ctx) {
  if (F.comp.size() != G.comp.size())
    throw DomainError("fock_inner: degree mismatch");
  CompensatedSumC total;
  for (std::size_t n = 0; n < F.comp.size(); ++n) {
    const int deg = static_cast<int>(n);
    CompensatedSumC acc;
    std::vector<std::size_t> tuple(n, 0);
    for_each_tuple(ctx.pair_dim(), deg,
                   [&](const std::vector<std::size_t>& t, std::size_t flat) {
                     const cplx prod = F.comp[n][flat] * std::conj(G.comp[n][flat]);
                     if (prod == cplx(0.0)) return;
                     double w = 1.0;
                     for (std::size_t k = 0; k < n; ++k)
                       w *= ctx.slot_weight(t[k]);
                     acc.add(prod * w);
                   });
    total.add(acc.value() * static_cast<double>(factorial(deg)));
  }
  return total.value();
}

double fock_norm(const FockGVector& F, const FockSpace& ctx) {
  return std::sqrt(std::max(0.0, fock_inner(F, F, ctx).real()));
}

std::vector<cplx> sym_paired(const std::vector<cplx>& comp, int n,
                             const FockSpace& ctx) {
  if (n <= 1) return comp;
  if (n > kSymDegreeCap) throw TruncationError("sym_paired: degree over cap");
  const auto perms = all_permutations(n);
  std::vector<Permutation> inverses;
  inverses.reserve(perms.size());
  for (const auto& p : perms) inverses.push_back(p.inverse());

  std::vector<cplx> out(comp.size(), cplx(0.0));
  const double scale = 1.0 / static_cast<double>(factorial(n));
  std::vector<std::size_t> sites(static_cast<std::size_t>(n));
  std::vector<std::size_t> permuted(static_cast<std::size_t>(n));
  const std::size_t G = ctx.pair_dim();
  for_each_tuple(G, n, [&](const std::vector<std::size_t>& t, std::size_t flat) {
    // site-diagonal tuples carry no measure; leave them zero
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
      sites[k] = ctx.site_of(t[k]);
      for (std::size_t l = 0; l < k; ++l)
        if (sites[l] == sites[k]) return;
    }
    CompensatedSumC acc;
    for (std::size_t pidx = 0; pidx < perms.size(); ++pidx) {
      const Permutation& pi = perms[pidx];
      cplx ph(1.0, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (pi(i) > pi(j))
            ph *= ctx.grid().site_phase(sites[static_cast<std::size_t>(i)],
                                        sites[static_cast<std::size_t>(j)],
                                        ctx.phase());
      const Permutation& pinv = inverses[pidx];
      std::size_t pflat = 0;
      for (int k = 0; k < n; ++k)
        pflat = pflat * G + t[static_cast<std::size_t>(pinv(k))];
      acc.add(ph * comp[pflat]);
    }
    out[flat] = acc.value() * scale;
  });
  return out;
}

namespace {

/// out^(n+1) = Sym((hp) tensor F^(n)) for one degree.
std::vector<cplx> raise_one(const std::vector<cplx>& hp,
                            const std::vector<cplx>& comp_n, int n,
                            const FockSpace& ctx) {
  const std::size_t G = ctx.pair_dim();
  std::vector<cplx> outer(pow_sz(G, n + 1));
  const std::size_t block = comp_n.size();
  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t r = 0; r < block; ++r) outer[g * block + r] = hp[g] * comp_n[r];
  return sym_paired(outer, n + 1, ctx);
}

/// out^(n-1)(t) = n * sum_g weight(g) kernel(g) F^(n)(g, t).
std::vector<cplx> contract_first(const std::vector<cplx>& kernel,
                                 const std::vector<cplx>& comp_n, int n,
                                 const FockSpace& ctx) {
  const std::size_t G = ctx.pair_dim();
  const std::size_t block = pow_sz(G, n - 1);
  std::vector<cplx> out(block, cplx(0.0));
  for (std::size_t r = 0; r < block; ++r) {
    CompensatedSumC acc;
    for (std::size_t g = 0; g < G; ++g) {
      const cplx k = kernel[g];
      if (k == cplx(0.0)) continue;
      acc.add(k * ctx.slot_weight(g) * comp_n[g * block + r]);
    }
    out[r] = acc.value() * static_cast<double>(n);
  }
  return out;
}

std::vector<cplx> pair_function(const std::vector<cplx>& h,
                                const std::vector<cplx>& p,
                                const FockSpace& ctx) {
  if (h.size() != ctx.n_sites())
    throw DomainError("fock: site function has wrong length");
  if (p.size() != static_cast<std::size_t>(ctx.n_atoms()))
    throw DomainError("fock: atom function has wrong length");
  std::vector<cplx> hp(ctx.pair_dim());
  for (std::size_t g = 0; g < hp.size(); ++g)
    hp[g] = h[ctx.site_of(g)] * p[static_cast<std::size_t>(ctx.atom_of(g))];
  return hp;
}

std::vector<cplx> ones_atoms(const FockSpace& ctx) {
  return std::vector<cplx>(static_cast<std::size_t>(ctx.n_atoms()), cplx(1.0));
}

}  // namespace

FockGVector create(const std::vector<cplx>& h, const std::vector<cplx>& p,
                   const FockGVector& F, const FockSpace& ctx) {
  const auto hp = pair_function(h, p, ctx);
  FockGVector out = FockGVector::zero(ctx);
  if (!F.degree_is_zero(ctx.n_max())) {
    if (ctx.policy() == Truncation::Strict)
      throw TruncationError("create: truncation overflow at n_max");
    // exploratory: the top component is dropped
  }
  for (int n = 0; n < ctx.n_max(); ++n) {
    if (F.degree_is_zero(n)) continue;
    out.comp[static_cast<std::size_t>(n + 1)] =
        raise_one(hp, F.comp[static_cast<std::size_t>(n)], n, ctx);
  }
  return out;
}

FockGVector annihilate(const std::vector<cplx>& h, const std::vector<cplx>& p,
                       const FockGVector& F, const FockSpace& ctx) {
  auto hp = pair_function(h, p, ctx);
  for (auto& v : hp) v = std::conj(v);
  FockGVector out = FockGVector::zero(ctx);
  for (int n = 1; n <= ctx.n_max(); ++n)
    out.comp[static_cast<std::size_t>(n - 1)] =
        contract_first(hp, F.comp[static_cast<std::size_t>(n)], n, ctx);
  return out;
}

FockGVector neutral_id(const std::vector<cplx>& h, const FockGVector& F,
                       const FockSpace& ctx) {
  if (h.size() != ctx.n_sites())
    throw DomainError("neutral_id: site function has wrong length");
  FockGVector out = FockGVector::zero(ctx);
  for (int n = 1; n <= ctx.n_max(); ++n) {
    auto& comp_out = out.comp[static_cast<std::size_t>(n)];
    const auto& comp_in = F.comp[static_cast<std::size_t>(n)];
    for_each_tuple(ctx.pair_dim(), n,
                   [&](const std::vector<std::size_t>& t, std::size_t flat) {
                     if (comp_in[flat] == cplx(0.0)) return;
                     cplx mult(0.0);
                     for (std::size_t g : t)
                       mult += h[ctx.site_of(g)] * ctx.atom_value(ctx.atom_of(g));
                     comp_out[flat] = mult * comp_in[flat];
                   });
  }
  return out;
}

FockGVector dgamma(const std::vector<cplx>& h, Ladder which,
                   const FockGVector& F, const FockSpace& ctx) {
  if (h.size() != ctx.n_sites())
    throw DomainError("dgamma: site function has wrong length");
  const auto& A = ctx.ladder_matrix(which);
  const auto m = static_cast<std::size_t>(ctx.n_atoms());
  const std::size_t G = ctx.pair_dim();
  FockGVector out = FockGVector::zero(ctx);
  for (int n = 1; n <= ctx.n_max(); ++n) {
    const auto& comp_in = F.comp[static_cast<std::size_t>(n)];
    if (F.degree_is_zero(n)) continue;
    std::vector<cplx> slot_sum(comp_in.size(), cplx(0.0));
    // stride of slot i in the flat index
    for (int slot = 0; slot < n; ++slot) {
      const std::size_t stride = pow_sz(G, n - 1 - slot);
      for_each_tuple(G, n, [&](const std::vector<std::size_t>& t,
                               std::size_t flat) {
        const std::size_t g = t[static_cast<std::size_t>(slot)];
        const std::size_t site = ctx.site_of(g);
        const auto atom = static_cast<std::size_t>(ctx.atom_of(g));
        cplx acc(0.0);
        for (std::size_t ap = 0; ap < m; ++ap) {
          const double a_entry = A[atom * m + ap];
          if (a_entry == 0.0) continue;
          const std::size_t flat_src =
              flat + (ctx.pair_index(site, static_cast<int>(ap)) - g) * stride;
          acc += a_entry * comp_in[flat_src];
        }
        slot_sum[flat] += h[site] * acc;
      });
    }
    out.comp[static_cast<std::size_t>(n)] = sym_paired(slot_sum, n, ctx);
  }
  return out;
}

FockGVector white_noise_apply(const std::vector<cplx>& h, const FockGVector& F,
                              const FockSpace& ctx) {
  FockGVector out = create(h, ones_atoms(ctx), F, ctx);
  out += neutral_id(h, F, ctx);
  // complex-linear annihilation part: contract against h (no conjugation)
  const auto hp = pair_function(h, ones_atoms(ctx), ctx);
  for (int n = 1; n <= ctx.n_max(); ++n) {
    auto lowered = contract_first(hp, F.comp[static_cast<std::size_t>(n)], n, ctx);
    auto& dst = out.comp[static_cast<std::size_t>(n - 1)];
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += lowered[i];
  }
  return out;
}

FockGVector point_op(PointKind kind, std::size_t site, const FockGVector& F,
                     const FockSpace& ctx) {
  std::vector<cplx> delta(ctx.n_sites(), cplx(0.0));
  delta[site] = cplx(1.0 / ctx.grid().weight());
  if (kind == PointKind::Dagger) return create(delta, ones_atoms(ctx), F, ctx);
  const auto kernel = pair_function(delta, ones_atoms(ctx), ctx);
  FockGVector out = FockGVector::zero(ctx);
  for (int n = 1; n <= ctx.n_max(); ++n)
    out.comp[static_cast<std::size_t>(n - 1)] =
        contract_first(kernel, F.comp[static_cast<std::size_t>(n)], n, ctx);
  return out;
}

FockGVector smear2_apply(const std::vector<cplx>& g, PointKind left,
                         PointKind right, const FockGVector& F,
                         const FockSpace& ctx) {
  const std::size_t N = ctx.n_sites();
  if (g.size() != N * N) throw DomainError("smear2: kernel must be N x N");
  const double w2 = ctx.grid().weight() * ctx.grid().weight();
  FockGVector total = FockGVector::zero(ctx);
  for (std::size_t y = 0; y < N; ++y) {
    // apply the right factor once per y, then distribute over x
    FockGVector right_applied = point_op(right, y, F, ctx);
    for (std::size_t x = 0; x < N; ++x) {
      const cplx gxy = g[x * N + y];
      if (gxy == cplx(0.0)) continue;
      FockGVector term = point_op(left, x, right_applied, ctx);
      term *= gxy * w2;
      total += term;
    }
  }
  return total;
}

std::vector<cplx> kernel_mul_q(const std::vector<cplx>& g, const FockSpace& ctx,
                               DiagonalRule rule) {
  const std::size_t N = ctx.n_sites();
  if (g.size() != N * N) throw DomainError("kernel_mul_q: kernel must be N x N");
  std::vector<cplx> out(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      if (x != y) {
        out[x * N + y] = g[x * N + y] * ctx.grid().site_phase(x, y, ctx.phase());
      } else {
        switch (rule) {
          case DiagonalRule::MinusG:
            out[x * N + y] = -g[x * N + y];
            break;
          case DiagonalRule::PlusG:
            out[x * N + y] = g[x * N + y];
            break;
          case DiagonalRule::ZeroG:
            out[x * N + y] = cplx(0.0);
            break;
        }
      }
    }
  return out;
}

std::vector<cplx> kernel_transpose(const std::vector<cplx>& g, std::size_t n) {
  std::vector<cplx> out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out[x * n + y] = g[y * n + x];
  return out;
}

std::vector<cplx> embed_E(const SetPartition& theta, const Tensor& f,
                          const FockSpace& ctx) {
  const int n = f.degree;
  if (theta.n != n) throw DomainError("embed_E: partition arity mismatch");
  if (f.degree > 0 && f.n_sites != ctx.n_sites())
    throw DomainError("embed_E: tensor does not match grid");
  const int l = theta.size();
  const std::size_t G = ctx.pair_dim();
  std::vector<cplx> out(pow_sz(G, l), cplx(0.0));
  // blocks larger than the atom count carry p_{|b|-1} = 0
  for (const auto& block : theta.blocks)
    if (static_cast<int>(block.size()) - 1 >= ctx.n_atoms()) return out;

  std::vector<std::size_t> lifted(static_cast<std::size_t>(n));
  std::vector<int> atom_idx(static_cast<std::size_t>(l), 0);
  for_each_injective_tuple(
      ctx.n_sites(), l, [&](const std::vector<std::size_t>& sites) {
        for (int i = 0; i < n; ++i)
          lifted[static_cast<std::size_t>(i)] =
              sites[static_cast<std::size_t>(theta.block_of(i))];
        const cplx fval = f.data[f.flat(lifted)];
        if (fval == cplx(0.0)) return;
        // loop over atom assignments of the l slots
        std::fill(atom_idx.begin(), atom_idx.end(), 0);
        while (true) {
          double pprod = 1.0;
          std::size_t flat = 0;
          for (int i = 0; i < l; ++i) {
            const int k =
                static_cast<int>(theta.blocks[static_cast<std::size_t>(i)].size()) -
                1;
            pprod *=
                ctx.p_at_atoms(k)[static_cast<std::size_t>(atom_idx[static_cast<std::size_t>(i)])];
            flat = flat * G + ctx.pair_index(sites[static_cast<std::size_t>(i)],
                                             atom_idx[static_cast<std::size_t>(i)]);
          }
          out[flat] += fval * pprod;
          int pos = l - 1;
          while (pos >= 0 &&
                 ++atom_idx[static_cast<std::size_t>(pos)] == ctx.n_atoms()) {
            atom_idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
      });
  return out;
}

FockGVector project_Pn(const Tensor& f, const FockSpace& ctx) {
  const int n = f.degree;
  if (n > ctx.n_max()) throw TruncationError("project_Pn: degree over n_max");
  FockGVector out = FockGVector::zero(ctx);
  if (n == 0) {
    out.comp[0][0] = f.data[0];
    return out;
  }
  std::vector<std::vector<cplx>> by_degree(static_cast<std::size_t>(n) + 1);
  for (const auto& theta : all_partitions(n)) {
    auto raw = embed_E(theta, f, ctx);
    auto& dst = by_degree[static_cast<std::size_t>(theta.size())];
    if (dst.empty())
      dst = std::move(raw);
    else
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += raw[i];
  }
  for (int l = 1; l <= n; ++l) {
    auto& raw = by_degree[static_cast<std::size_t>(l)];
    if (raw.empty()) continue;
    out.comp[static_cast<std::size_t>(l)] = sym_paired(raw, l, ctx);
  }
  return out;
}

FockGVector map_U(const ExtFockVector& v, const FockSpace& ctx) {
  FockGVector out = FockGVector::zero(ctx);
  for (std::size_t n = 0; n < v.comp.size(); ++n)
    out += project_Pn(v.comp[n], ctx);
  return out;
}

std::vector<cplx> to_poly_basis(const std::vector<cplx>& comp, int n,
                                const FockSpace& ctx) {
  const auto m = static_cast<std::size_t>(ctx.n_atoms());
  const std::size_t G = ctx.pair_dim();
  std::vector<cplx> cur = comp;
  std::vector<cplx> next(comp.size());
  for (int slot = 0; slot < n; ++slot) {
    const std::size_t stride = pow_sz(G, n - 1 - slot);
    for_each_tuple(G, n, [&](const std::vector<std::size_t>& t,
                             std::size_t flat) {
      const std::size_t g = t[static_cast<std::size_t>(slot)];
      const std::size_t site = ctx.site_of(g);
      const auto k = static_cast<std::size_t>(ctx.atom_of(g));  // poly degree
      CompensatedSumC acc;
      for (std::size_t a = 0; a < m; ++a) {
        const double e = ctx.atom_mass(static_cast<int>(a)) *
                         ctx.p_at_atoms(static_cast<int>(k))[a] /
                         ctx.p_norm_sq(static_cast<int>(k));
        const std::size_t flat_src =
            flat + (ctx.pair_index(site, static_cast<int>(a)) - g) * stride;
        acc.add(e * cur[flat_src]);
      }
      next[flat] = acc.value();
    });
    std::swap(cur, next);
  }
  return cur;
}

FockGVector grade_component(const FockGVector& F, int grade,
                            const FockSpace& ctx) {
  FockGVector out = FockGVector::zero(ctx);
  if (grade == 0) {
    out.comp[0][0] = F.comp[0][0];
    return out;
  }
  const std::size_t G = ctx.pair_dim();
  for (int n = 1; n <= ctx.n_max(); ++n) {
    if (F.degree_is_zero(n)) continue;
    auto hat = to_poly_basis(F.comp[static_cast<std::size_t>(n)], n, ctx);
    // zero all but the requested grade, then synthesize back
    for_each_tuple(G, n, [&](const std::vector<std::size_t>& t,
                             std::size_t flat) {
      int gr = n;
      for (std::size_t g : t) gr += ctx.atom_of(g);
      if (gr != grade) hat[flat] = cplx(0.0);
    });
    // synthesis: value at atom a = sum_k p_k(s_a) hat_k
    std::vector<cplx> cur = std::move(hat);
    std::vector<cplx> next(cur.size());
    const auto m = static_cast<std::size_t>(ctx.n_atoms());
    for (int slot = 0; slot < n; ++slot) {
      const std::size_t stride = pow_sz(G, n - 1 - slot);
      for_each_tuple(G, n, [&](const std::vector<std::size_t>& t,
                               std::size_t flat) {
        const std::size_t g = t[static_cast<std::size_t>(slot)];
        const std::size_t site = ctx.site_of(g);
        const auto a = static_cast<std::size_t>(ctx.atom_of(g));
        cplx acc(0.0);
        for (std::size_t k = 0; k < m; ++k) {
          const std::size_t flat_src =
              flat + (ctx.pair_index(site, static_cast<int>(k)) - g) * stride;
          acc += ctx.p_at_atoms(static_cast<int>(k))[a] * cur[flat_src];
        }
        next[flat] = acc;
      });
      std::swap(cur, next);
    }
    out.comp[static_cast<std::size_t>(n)] = std::move(cur);
  }
  return out;
}

OperatorMatrix assemble_matrix(
    const std::function<FockGVector(const FockGVector&)>& apply,
    const FockSpace& ctx, bool symmetrize_basis, std::string notes) {
  OperatorMatrix m;
  m.notes = std::move(notes);
  m.degree_offset.resize(static_cast<std::size_t>(ctx.n_max()) + 2);
  std::size_t dim = 0;
  for (int n = 0; n <= ctx.n_max(); ++n) {
    m.degree_offset[static_cast<std::size_t>(n)] = dim;
    dim += pow_sz(ctx.pair_dim(), n);
  }
  m.degree_offset[static_cast<std::size_t>(ctx.n_max()) + 1] = dim;
  m.dim = dim;
  m.entries.assign(dim * dim, cplx(0.0));
  for (int n = 0; n <= ctx.n_max(); ++n) {
    const std::size_t block = pow_sz(ctx.pair_dim(), n);
    for (std::size_t t = 0; t < block; ++t) {
      FockGVector e = FockGVector::zero(ctx);
      e.comp[static_cast<std::size_t>(n)][t] = cplx(1.0);
      if (symmetrize_basis && n >= 1)
        e.comp[static_cast<std::size_t>(n)] =
            sym_paired(e.comp[static_cast<std::size_t>(n)], n, ctx);
      FockGVector img = apply(e);
      const std::size_t col = m.degree_offset[static_cast<std::size_t>(n)] + t;
      for (int r = 0; r <= ctx.n_max(); ++r) {
        const auto& comp_r = img.comp[static_cast<std::size_t>(r)];
        const std::size_t row0 = m.degree_offset[static_cast<std::size_t>(r)];
        for (std::size_t i = 0; i < comp_r.size(); ++i)
          if (comp_r[i] != cplx(0.0)) m.entries[(row0 + i) * dim + col] = comp_r[i];
      }
    }
  }
  return m;
}

cplx vacuum_expectation(const OperatorMatrix& m) { return m.at(0, 0); }

cplx vacuum_expectation(
    const std::function<FockGVector(const FockGVector&)>& apply,
    const FockSpace& ctx) {
  return apply(FockGVector::vacuum(ctx)).comp[0][0];
}

}  // namespace anyon
