#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace runperm {

// A permutation of [1..n], stored as pi[0..n-1] = pi(1..n).
using Permutation = std::vector<std::size_t>;

enum class RunDirection : std::uint8_t { ascending = 0, descending = 1 };

// H(X) = sum (n_i / n) lg(n / n_i), in bits per element. Throws
// std::invalid_argument on an empty vector or a zero entry.
[[nodiscard]] double entropy(std::span<const std::size_t> lengths);

// lg(n! / (n_1! ... n_r!)), evaluated with lgamma.
[[nodiscard]] double lg_multinomial(std::span<const std::size_t> lengths);

// n * H(counts) computed from counts that may contain zeros (zeros are ignored).
[[nodiscard]] double entropy_bits(std::span<const std::size_t> counts);

struct RunProfile {
  std::size_t n = 0;
  std::vector<std::size_t> starts;  // 1-based, starts[0] == 1
  std::vector<std::size_t> lengths;
  std::vector<RunDirection> directions;

  [[nodiscard]] std::size_t count() const noexcept { return lengths.size(); }
  [[nodiscard]] double entropy() const { return runperm::entropy(lengths); }
};

struct StrictRunProfile {
  std::size_t n = 0;
  std::vector<std::size_t> heads;  // 1-based positions
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> head_values;

  [[nodiscard]] std::size_t count() const noexcept { return lengths.size(); }
  [[nodiscard]] double entropy() const { return runperm::entropy(lengths); }
};

[[nodiscard]] bool is_permutation(std::span<const std::size_t> values) noexcept;
// Throws std::invalid_argument naming the first offending value.
void validate_permutation(std::span<const std::size_t> values);
[[nodiscard]] Permutation inverse_permutation(std::span<const std::size_t> perm);

// Ascending runs: maximal segments without a down step. When `comparisons`
// is given it is incremented once per element comparison (n - 1 in total).
[[nodiscard]] RunProfile ascending_runs(std::span<const std::size_t> perm, std::size_t* comparisons = nullptr);

// Greedy maximal monotone runs. The first two elements of a run fix its
// direction; a trailing single element is an ascending run.
[[nodiscard]] RunProfile monotone_runs(std::span<const std::size_t> perm, std::size_t* comparisons = nullptr);

[[nodiscard]] StrictRunProfile strict_ascending_runs(std::span<const std::size_t> perm);

// Monotone runs of the head-value sequence (vHRuns).
[[nodiscard]] RunProfile head_run_profile(const StrictRunProfile& strict);

// Greedy monotone runs over arbitrary distinct values; used for head values.
[[nodiscard]] RunProfile monotone_runs_of_values(std::span<const std::size_t> values);

}  // namespace runperm
