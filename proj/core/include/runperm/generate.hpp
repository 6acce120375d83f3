#pragma once

// Seeded generators for structured permutations. Every generator validates
// its output against the requested class before returning it.
//
// Randomness comes from std::mt19937_64 only; bounded draws and shuffles are
// defined here (not via std distributions) so sequences are reproducible
// across platforms:
//   below(b): t = (2^64 - b) mod b; draw x until x >= t; return x mod b.
//   shuffle:  for i = n-1 down to 1, swap a[i] with a[below(i + 1)].

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "runperm/runs.hpp"

namespace runperm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::span<T> a) {
    for (std::size_t i = a.size(); i-- > 1;) std::swap(a[i], a[below(i + 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Raised when generator parameters cannot be satisfied.
class InfeasibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

[[nodiscard]] Permutation random_permutation(std::size_t n, Rng& rng);

// Uniformly random composition of n into `parts` positive parts.
[[nodiscard]] std::vector<std::size_t> random_composition(std::size_t n, std::size_t parts, Rng& rng);

// Permutation whose maximal monotone segments are exactly the given runs:
// run r spans lengths[r] positions and is ascending or descending as given.
// All-ascending profiles are checked against ascending_runs; mixed profiles
// check that every run is monotone in its direction.
[[nodiscard]] Permutation runs_permutation(std::span<const std::size_t> lengths,
                                           std::span<const RunDirection> directions, Rng& rng);

// Permutation with exactly lengths.size() strict ascending runs. Run k holds
// a block of consecutive values whose rank among the blocks is
// head_ranks[k] (1-based). With head_ranks empty, a random order is drawn in
// which no block is directly followed by its successor.
[[nodiscard]] Permutation strict_permutation(std::span<const std::size_t> lengths,
                                             std::span<const std::size_t> head_ranks, Rng& rng);

enum class InterleaveLaw { uniform, geometric };

// Interleaving of k increasing subsequences (every label used at least
// once). uniform: each position draws its label uniformly; geometric: label
// l < k has probability 2^-l and the last label takes the rest. With strict, each
// subsequence takes consecutive values.
[[nodiscard]] Permutation sus_permutation(std::size_t n, std::size_t k, InterleaveLaw law, bool strict, Rng& rng);

}  // namespace runperm
