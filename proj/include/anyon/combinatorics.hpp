#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "anyon/common.hpp"

namespace anyon {

/// Permutation of {0..n-1}; images[i] = pi(i).
struct Permutation {
  std::vector<int> images;

  Permutation() = default;
  explicit Permutation(std::vector<int> images_);

  static Permutation identity(int n);
  int n() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<std::size_t>(i)]; }
  Permutation inverse() const;
  /// (this ∘ other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  bool operator==(const Permutation& rhs) const { return images == rhs.images; }
};

/// Partition of {0..n-1} into disjoint nonempty blocks, each block sorted
/// ascending, blocks ordered by their maxima (the canonical block order the
/// strata measures and induced permutations depend on).
struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  SetPartition() = default;
  SetPartition(int n_, std::vector<std::vector<int>> blocks_);

  int size() const { return static_cast<int>(blocks.size()); }
  /// block index containing position i
  int block_of(int i) const { return block_of_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& block_of_all() const { return block_of_; }
  bool operator==(const SetPartition& rhs) const { return blocks == rhs.blocks; }

 private:
  std::vector<int> block_of_;
};

inline constexpr int kMaxPartitionN = 8;

/// All set partitions of {0..n-1}, each in canonical block order, in a fixed
/// (restricted-growth-string) enumeration order. Count is the Bell number.
std::vector<SetPartition> all_partitions(int n);

/// The unique partition with i ~ j iff ids[i] == ids[j].
SetPartition stratum_of(const std::vector<std::size_t>& ids);

/// The permutation on block indices defined by pi(theta_i) = beta_{pihat(i)},
/// where beta is the image partition re-sorted by block maxima.
Permutation induced_permutation(const Permutation& pi, const SetPartition& theta);

/// Pairs (i,j), i<j, with pi(i) > pi(j), in lexicographic order.
std::vector<std::pair<int, int>> inversion_pairs(const Permutation& pi);

/// All of S_n in lexicographic order of image vectors. n <= 8.
std::vector<Permutation> all_permutations(int n);

std::size_t factorial(int n);

}  // namespace anyon
