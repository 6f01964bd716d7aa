#include "anyon/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace anyon {

Permutation::Permutation(std::vector<int> images_) : images(std::move(images_)) {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= n() || seen[static_cast<std::size_t>(v)])
      throw DomainError("Permutation: images not a bijection");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images.size());
  for (int i = 0; i < n(); ++i)
    inv[static_cast<std::size_t>(images[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (n() != other.n()) throw DomainError("Permutation: size mismatch");
  std::vector<int> im(images.size());
  for (int i = 0; i < n(); ++i)
    im[static_cast<std::size_t>(i)] = (*this)(other(i));
  return Permutation(std::move(im));
}

SetPartition::SetPartition(int n_, std::vector<std::vector<int>> blocks_)
    : n(n_), blocks(std::move(blocks_)) {
  for (auto& b : blocks) {
    if (b.empty()) throw DomainError("SetPartition: empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.back() < b.back(); });
  block_of_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    for (int i : blocks[bi]) {
      if (i < 0 || i >= n || block_of_[static_cast<std::size_t>(i)] != -1)
        throw DomainError("SetPartition: blocks must partition {0..n-1}");
      block_of_[static_cast<std::size_t>(i)] = static_cast<int>(bi);
    }
  for (int v : block_of_)
    if (v == -1) throw DomainError("SetPartition: blocks must cover {0..n-1}");
}

std::vector<SetPartition> all_partitions(int n) {
  if (n < 1 || n > kMaxPartitionN)
    throw DomainError("all_partitions: n out of range 1..8");
  // restricted growth strings: a[0]=0, a[i] <= 1+max(a[0..i-1])
  std::vector<SetPartition> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  auto emit = [&]() {
    int nb = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nb));
    for (int i = 0; i < n; ++i)
      blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i);
    out.emplace_back(n, std::move(blocks));
  };
  auto rec = [&](auto&& self, int pos, int maxval) -> void {
    if (pos == n) {
      emit();
      return;
    }
    for (int v = 0; v <= maxval + 1; ++v) {
      a[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, std::max(maxval, v));
    }
  };
  a[0] = 0;
  rec(rec, 1, 0);
  return out;
}

SetPartition stratum_of(const std::vector<std::size_t>& ids) {
  int n = static_cast<int>(ids.size());
  std::vector<std::vector<int>> blocks;
  std::vector<std::size_t> reps;
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t b = 0; b < reps.size(); ++b) {
      if (ids[static_cast<std::size_t>(i)] == reps[b]) {
        blocks[b].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      reps.push_back(ids[static_cast<std::size_t>(i)]);
      blocks.push_back({i});
    }
  }
  return SetPartition(n, std::move(blocks));
}

Permutation induced_permutation(const Permutation& pi, const SetPartition& theta) {
  const int l = theta.size();
  // image block maxima; the image blocks are re-sorted by these maxima
  std::vector<int> image_max(static_cast<std::size_t>(l), -1);
  for (int b = 0; b < l; ++b)
    for (int i : theta.blocks[static_cast<std::size_t>(b)])
      image_max[static_cast<std::size_t>(b)] =
          std::max(image_max[static_cast<std::size_t>(b)], pi(i));
  // pihat(b) = rank of image_max[b] among all image maxima
  std::vector<int> order(static_cast<std::size_t>(l));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return image_max[static_cast<std::size_t>(a)] <
           image_max[static_cast<std::size_t>(b)];
  });
  std::vector<int> pihat(static_cast<std::size_t>(l));
  for (int rank = 0; rank < l; ++rank)
    pihat[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] = rank;
  return Permutation(std::move(pihat));
}

std::vector<std::pair<int, int>> inversion_pairs(const Permutation& pi) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < pi.n(); ++i)
    for (int j = i + 1; j < pi.n(); ++j)
      if (pi(i) > pi(j)) out.emplace_back(i, j);
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 0 || n > kMaxPartitionN)
    throw DomainError("all_permutations: n out of range 0..8");
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.push_back(Permutation(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

}  // namespace anyon
