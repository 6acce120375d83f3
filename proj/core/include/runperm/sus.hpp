#pragma once

// Shuffled upsequences (SUS): covering an array with few, not necessarily
// contiguous, non-decreasing subsequences, and coding permutations through
// such a covering.
//
// A SusCoder stores the label string S (which subsequence each position
// belongs to) in a SequenceCoder, and the permutation pi' obtained by
// concatenating the subsequences in label order in a PermutationCoder. With
// A[l] the number of elements in subsequences 1..l-1,
//   pi(i) = pi'(A[S[i]] + rank_{S[i]}(S, i)).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bitvector.hpp"
#include "runperm/perm_wavelet.hpp"
#include "runperm/runs.hpp"
#include "runperm/seq_wavelet.hpp"

namespace runperm {

struct SusPartition {
  std::vector<std::size_t> labels;   // 1-based label of every position
  std::size_t k = 0;                 // number of subsequences
  std::vector<std::size_t> lengths;  // lengths[l-1] = occurrences of label l

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] double entropy() const { return runperm::entropy(lengths); }
};

// Builds a partition from raw labels. Throws std::invalid_argument unless
// every label lies in [1..k] and each of 1..k is used.
[[nodiscard]] SusPartition partition_from_labels(std::span<const std::size_t> labels);

namespace detail {

// Splay tree over subsequence ids, ordered by the subsequences' last values.
// Ids are only ever inserted as the new minimum, and appending to a
// subsequence never changes its position in the order.
class EndTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  [[nodiscard]] std::size_t root() const noexcept { return root_; }
  [[nodiscard]] std::size_t left(std::size_t v) const noexcept { return left_[v]; }
  [[nodiscard]] std::size_t right(std::size_t v) const noexcept { return right_[v]; }

  void splay(std::size_t x) noexcept;
  // Adds id (== current size) as the minimum; `min_node` is the current
  // minimum, or npos when empty.
  void push_min(std::size_t min_node);

 private:
  void rotate(std::size_t x) noexcept;

  std::size_t root_ = npos;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Greedy partition into the minimum number of non-decreasing subsequences:
// each element joins the subsequence with the largest last value not above
// it, or opens a new one. Labels are numbered in order of creation. When
// `comparisons` is given, the element comparisons made are added to it.
template <class T, class Less = std::less<>>
SusPartition partition_sus(std::span<const T> values, Less less = {}, std::size_t* comparisons = nullptr) {
  if (values.empty()) throw std::invalid_argument("partition_sus: empty input");
  SusPartition p;
  p.labels.resize(values.size());
  std::vector<T> ends;
  detail::EndTree tree;
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const T& x = values[i];
    std::size_t v = tree.root();
    std::size_t found = detail::EndTree::npos;
    std::size_t last = detail::EndTree::npos;
    while (v != detail::EndTree::npos) {
      last = v;
      ++count;
      if (less(x, ends[v])) {
        v = tree.left(v);
      } else {
        found = v;
        v = tree.right(v);
      }
    }
    if (found != detail::EndTree::npos) {
      ends[found] = x;
      ++p.lengths[found];
      p.labels[i] = found + 1;
      tree.splay(found);
    } else {
      // x is below every last value, so the search ended at the minimum.
      ends.push_back(x);
      p.lengths.push_back(1);
      p.labels[i] = ends.size();
      tree.push_min(last);
    }
  }
  p.k = ends.size();
  if (comparisons != nullptr) *comparisons += count;
  return p;
}

// Throws std::invalid_argument unless the subsequence of every label is
// non-decreasing under `less`.
template <class T, class Less = std::less<>>
void validate_sus_partition(std::span<const T> values, const SusPartition& p, Less less = {}) {
  if (p.labels.size() != values.size()) throw std::invalid_argument("partition: label count does not match input length");
  std::vector<std::size_t> last(p.k, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t l = p.labels[i];
    if (l < 1 || l > p.k) throw std::invalid_argument("partition: label out of range");
    if (last[l - 1] != std::numeric_limits<std::size_t>::max() && less(values[i], values[last[l - 1]])) {
      throw std::invalid_argument("partition labels inconsistent with monotonicity at position " + std::to_string(i + 1));
    }
    last[l - 1] = i;
  }
}

struct SusSizeBreakdown {
  SizeBreakdown labels;      // the string S
  SizeBreakdown inner;       // pi'
  std::size_t boundaries = 0;  // A'
  std::size_t directions = 0;
  std::size_t header = 0;

  [[nodiscard]] std::size_t total() const noexcept {
    return labels.total() + inner.total() + boundaries + directions + header;
  }
};

class SusCoder {
 public:
  SusCoder() = default;

  // Uses the greedy partition. config.mixed_runs is ignored: the inner coder
  // uses mixed runs exactly when some label is descending (encode_sms).
  static SusCoder encode(std::span<const std::size_t> perm, const CoderConfig& config = {});
  // Uses the given partition; throws std::invalid_argument when a labeled
  // subsequence is not increasing.
  static SusCoder encode(std::span<const std::size_t> perm, const SusPartition& partition,
                         const CoderConfig& config = {});
  // Shuffled monotone subsequences: label l is increasing or decreasing as
  // given by directions[l-1]. Descending blocks of pi' are handled by the
  // inner coder's mixed runs.
  static SusCoder encode_sms(std::span<const std::size_t> perm, std::span<const std::size_t> labels,
                             std::span<const RunDirection> directions, const CoderConfig& config = {});

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t subsequence_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::vector<std::size_t> lengths() const;
  [[nodiscard]] bool monotone() const noexcept { return directions_.size() > 0; }
  [[nodiscard]] const SequenceCoder& labels() const noexcept { return labels_; }
  [[nodiscard]] const PermutationCoder& inner() const noexcept { return inner_; }
  [[nodiscard]] const BitVector& boundaries() const noexcept { return boundaries_; }
  // One flag per label, 1 = descending. Empty for plain SUS coders.
  [[nodiscard]] const BitVector& directions() const noexcept { return directions_; }

  [[nodiscard]] std::size_t apply(std::size_t i, QueryCounters* counters = nullptr) const;
  [[nodiscard]] std::size_t inverse(std::size_t j, QueryCounters* counters = nullptr) const;
  [[nodiscard]] Permutation decode() const;

  // Zero-order payload of S plus the payload of pi'.
  [[nodiscard]] double payload_entropy_bits() const;
  [[nodiscard]] SusSizeBreakdown measured_size_bits() const;

  // "RPSU" | version | n | k | flags u8 | A' | [directions] | S | pi'.
  void write(ByteWriter& out) const;
  static SusCoder read(ByteReader& in);
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  static SusCoder deserialize(std::span<const std::uint8_t> bytes);

 private:
  static SusCoder build(std::span<const std::size_t> perm, const SusPartition& partition,
                        std::span<const RunDirection> directions, const CoderConfig& config);

  std::size_t n_ = 0;
  SequenceCoder labels_;
  BitVector boundaries_;              // ones at A[l] + 1
  std::vector<std::size_t> offsets_;  // A[l] at offsets_[l-1]; offsets_[k] = n
  BitVector directions_;
  PermutationCoder inner_;
};

// Coder for permutations made of strict upsequences: pi^{-1} then has one
// ascending run per upsequence, so pi^{-1} is coded instead and the roles of
// apply and inverse swap.
class StrictSusCoder {
 public:
  StrictSusCoder() = default;

  static StrictSusCoder encode(std::span<const std::size_t> perm, const CoderConfig& config = {});

  [[nodiscard]] std::size_t size() const noexcept { return inverse_.size(); }
  // Coder of pi^{-1}.
  [[nodiscard]] const PermutationCoder& inverse_coder() const noexcept { return inverse_; }

  [[nodiscard]] std::size_t apply(std::size_t i, QueryCounters* counters = nullptr) const {
    return inverse_.inverse(i, counters);
  }
  [[nodiscard]] std::size_t inverse(std::size_t j, QueryCounters* counters = nullptr) const {
    return inverse_.apply(j, counters);
  }
  [[nodiscard]] Permutation decode() const;
  [[nodiscard]] SizeBreakdown measured_size_bits() const;

  // "RPSI" | version | coder of pi^{-1}.
  void write(ByteWriter& out) const;
  static StrictSusCoder read(ByteReader& in);
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  static StrictSusCoder deserialize(std::span<const std::uint8_t> bytes);

 private:
  PermutationCoder inverse_;
};

}  // namespace runperm
