#include "anyon/qsym.hpp"

#include <mutex>
#include <string>

namespace anyon {

namespace {

std::string rgs_key(const std::vector<std::size_t>& ids) {
  // restricted growth string of the coincidence pattern
  std::string key(ids.size(), '\0');
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t b = 0;
    for (; b < reps.size(); ++b)
      if (reps[b] == ids[i]) break;
    if (b == reps.size()) reps.push_back(ids[i]);
    key[i] = static_cast<char>(b);
  }
  return key;
}

}  // namespace

SymTables::SymTables(int n)
    : n_(n), partitions_(all_partitions(n)), perms_(all_permutations(n)) {
  for (std::size_t t = 0; t < partitions_.size(); ++t) {
    std::vector<std::size_t> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      ids[static_cast<std::size_t>(i)] =
          static_cast<std::size_t>(partitions_[t].block_of(i));
    rgs_to_index_[rgs_key(ids)] = t;
  }
  pihat_memo_.assign(partitions_.size(),
                     std::vector<Permutation>(perms_.size()));
  pihat_known_.assign(partitions_.size(),
                      std::vector<bool>(perms_.size(), false));
}

std::size_t SymTables::stratum_index(const std::vector<std::size_t>& ids) const {
  auto it = rgs_to_index_.find(rgs_key(ids));
  if (it == rgs_to_index_.end())
    throw DomainError("SymTables: tuple arity mismatch");
  return it->second;
}

const Permutation& SymTables::pihat(std::size_t theta_idx,
                                    std::size_t pi_idx) const {
  if (!pihat_known_[theta_idx][pi_idx]) {
    pihat_memo_[theta_idx][pi_idx] =
        induced_permutation(perms_[pi_idx], partitions_[theta_idx]);
    pihat_known_[theta_idx][pi_idx] = true;
  }
  return pihat_memo_[theta_idx][pi_idx];
}

std::shared_ptr<const SymTables> SymTables::get(int n) {
  static std::mutex mu;
  static std::vector<std::shared_ptr<const SymTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() <= static_cast<std::size_t>(n))
    cache.resize(static_cast<std::size_t>(n) + 1);
  if (!cache[static_cast<std::size_t>(n)])
    cache[static_cast<std::size_t>(n)] = std::make_shared<SymTables>(n);
  return cache[static_cast<std::size_t>(n)];
}

cplx q_phase_pi(const Permutation& pi, const std::vector<std::size_t>& ids,
                const Grid& grid, const Phase& phase, QsymMutation mutation) {
  if (mutation == QsymMutation::DropInducedPermutation) {
    cplx prod(1.0, 0.0);
    for (const auto& [i, j] : inversion_pairs(pi)) {
      std::size_t a = ids[static_cast<std::size_t>(i)];
      std::size_t b = ids[static_cast<std::size_t>(j)];
      if (a != b) prod *= grid.site_phase(a, b, phase);
    }
    return prod;
  }
  const SetPartition theta = stratum_of(ids);
  const Permutation pihat = induced_permutation(pi, theta);
  cplx prod(1.0, 0.0);
  for (const auto& [i, j] : inversion_pairs(pihat)) {
    std::size_t rep_i = ids[static_cast<std::size_t>(
        theta.blocks[static_cast<std::size_t>(i)].front())];
    std::size_t rep_j = ids[static_cast<std::size_t>(
        theta.blocks[static_cast<std::size_t>(j)].front())];
    prod *= grid.site_phase(rep_i, rep_j, phase);
  }
  return prod;
}

Tensor psi(const Permutation& pi, const Tensor& f, const Grid& grid,
           const Phase& phase) {
  const int n = f.degree;
  if (pi.n() != n) throw DomainError("psi: permutation arity mismatch");
  Tensor out(n, f.n_sites);
  const Permutation pinv = pi.inverse();
  std::vector<std::size_t> permuted(static_cast<std::size_t>(n));
  for_each_tuple(f.n_sites, n, [&](const std::vector<std::size_t>& ids,
                                   std::size_t flat) {
    for (int k = 0; k < n; ++k)
      permuted[static_cast<std::size_t>(k)] =
          ids[static_cast<std::size_t>(pinv(k))];
    out.data[flat] = q_phase_pi(pi, ids, grid, phase) * f.data[f.flat(permuted)];
  });
  return out;
}

Tensor symmetrize(const Tensor& f, const Grid& grid, const Phase& phase,
                  QsymMutation mutation) {
  const int n = f.degree;
  if (n > kSymDegreeCap) throw TruncationError("symmetrize: degree over cap");
  if (n <= 1) {
    Tensor out = f;
    out.is_qsym = true;
    return out;
  }
  auto tables = SymTables::get(n);
  const auto& perms = tables->permutations();
  std::vector<Permutation> inverses;
  inverses.reserve(perms.size());
  for (const auto& p : perms) inverses.push_back(p.inverse());

  Tensor out(n, f.n_sites);
  const double scale = 1.0 / static_cast<double>(factorial(n));
  std::vector<std::size_t> permuted(static_cast<std::size_t>(n));
  for_each_tuple(f.n_sites, n, [&](const std::vector<std::size_t>& ids,
                                   std::size_t flat) {
    const std::size_t theta_idx = tables->stratum_index(ids);
    const SetPartition& theta = tables->partitions()[theta_idx];
    CompensatedSumC acc;
    for (std::size_t pidx = 0; pidx < perms.size(); ++pidx) {
      const Permutation& pi = perms[pidx];
      cplx ph;
      if (mutation == QsymMutation::DropInducedPermutation) {
        ph = q_phase_pi(pi, ids, grid, phase, mutation);
      } else {
        const Permutation& pihat = tables->pihat(theta_idx, pidx);
        ph = cplx(1.0, 0.0);
        const int l = pihat.n();
        for (int i = 0; i < l; ++i)
          for (int j = i + 1; j < l; ++j)
            if (pihat(i) > pihat(j)) {
              std::size_t rep_i = ids[static_cast<std::size_t>(
                  theta.blocks[static_cast<std::size_t>(i)].front())];
              std::size_t rep_j = ids[static_cast<std::size_t>(
                  theta.blocks[static_cast<std::size_t>(j)].front())];
              ph *= grid.site_phase(rep_i, rep_j, phase);
            }
      }
      const Permutation& pinv = inverses[pidx];
      for (int k = 0; k < n; ++k)
        permuted[static_cast<std::size_t>(k)] =
            ids[static_cast<std::size_t>(pinv(k))];
      acc.add(ph * f.data[f.flat(permuted)]);
    }
    out.data[flat] = acc.value() * scale;
  });
  out.is_qsym = (mutation == QsymMutation::None);
  return out;
}

Tensor outer(const Tensor& f, const Tensor& g) {
  if (f.degree > 0 && g.degree > 0 && f.n_sites != g.n_sites)
    throw DomainError("outer: site count mismatch");
  const std::size_t n_sites = f.degree > 0 ? f.n_sites : g.n_sites;
  Tensor out(f.degree + g.degree, n_sites);
  std::size_t gsize = g.data.size();
  for (std::size_t a = 0; a < f.data.size(); ++a)
    for (std::size_t b = 0; b < gsize; ++b)
      out.data[a * gsize + b] = f.data[a] * g.data[b];
  return out;
}

Tensor qtensor(const Tensor& f, const Tensor& g, const Grid& grid,
               const Phase& phase) {
  return symmetrize(outer(f, g), grid, phase);
}

}  // namespace anyon
