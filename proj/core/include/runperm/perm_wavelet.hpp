#pragma once

// Compressed permutation over its run decomposition.
//
// The runs of pi are the leaves of a Huffman-shaped tree over their lengths.
// Every internal node stores, for the merge of the values below it, which
// child each value came from. pi^{-1}(j) descends from the root with
// access/rank; pi(i) climbs from the leaf of i's run with select.
//
// With mixed runs on, descending monotone runs are reversed before coding
// and queries reflect positions inside them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bitvector.hpp"
#include "runperm/code_tree.hpp"
#include "runperm/node_sequence.hpp"
#include "runperm/runs.hpp"

namespace runperm {

struct CoderConfig {
  unsigned arity = 0;  // 0 picks default_arity(n)
  bool depth_limit = true;
  bool mixed_runs = false;
  BitVectorKind bitvector = BitVectorKind::compressed;
};

// max(2, floor(sqrt(lg n))).
[[nodiscard]] unsigned default_arity(std::size_t n) noexcept;

// Instrumentation for a single query. A fused access+rank counts as one
// bit-vector operation.
struct QueryCounters {
  std::size_t tree_steps = 0;
  std::size_t bitvector_ops = 0;
};

struct SizeBreakdown {
  std::size_t payload = 0;     // node sequence content
  std::size_t index = 0;       // node sequence rank/select directories
  std::size_t tree = 0;        // header, shape and leaf metadata
  std::size_t phi = 0;         // packed leaf order
  std::size_t run_starts = 0;  // bitmap C
  std::size_t directions = 0;  // direction flags and monotone-run starts

  [[nodiscard]] std::size_t total() const noexcept {
    return payload + index + tree + phi + run_starts + directions;
  }
};

class PermutationCoder {
 public:
  PermutationCoder() = default;

  // Throws std::invalid_argument for an empty input or a non-permutation.
  static PermutationCoder encode(std::span<const std::size_t> perm, const CoderConfig& config = {});

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  // Runs of the coded (all-ascending) permutation.
  [[nodiscard]] std::size_t run_count() const noexcept { return tree_.leaf_count(); }
  [[nodiscard]] std::span<const std::size_t> run_lengths() const noexcept { return tree_.weights(); }
  // Monotone runs before reversal; equals run_count() without mixed runs.
  [[nodiscard]] std::size_t monotone_run_count() const noexcept;
  [[nodiscard]] unsigned arity() const noexcept { return tree_.arity(); }
  [[nodiscard]] bool mixed() const noexcept { return mixed_; }
  [[nodiscard]] bool depth_limited() const noexcept { return depth_limited_; }
  [[nodiscard]] BitVectorKind bitvector_kind() const noexcept { return kind_; }
  [[nodiscard]] const CodeTree& tree() const noexcept { return tree_; }
  [[nodiscard]] const NodeSequence& sequence(std::size_t node) const noexcept { return sequences_[node]; }
  [[nodiscard]] const BitVector& run_starts() const noexcept { return run_starts_; }
  // One flag per monotone run, 1 = descending. Empty without mixed runs.
  [[nodiscard]] const BitVector& directions() const noexcept { return directions_; }

  // 1 <= i <= n; throws std::out_of_range otherwise.
  [[nodiscard]] std::size_t apply(std::size_t i, QueryCounters* counters = nullptr) const;
  [[nodiscard]] std::size_t inverse(std::size_t j, QueryCounters* counters = nullptr) const;
  [[nodiscard]] Permutation decode() const;

  // Sum over internal nodes of |sequence| * H0(sequence).
  [[nodiscard]] double payload_entropy_bits() const;
  [[nodiscard]] SizeBreakdown measured_size_bits() const;

  // "RPRM" | version | flags u16 | n | rho | shape | leaf (idx, pos) |
  // phi | C | directions | [M] | sequences in preorder.
  void write(ByteWriter& out) const;
  static PermutationCoder read(ByteReader& in);
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  static PermutationCoder deserialize(std::span<const std::uint8_t> bytes);

 private:
  // Ascending coder core: position in the coded permutation.
  [[nodiscard]] std::size_t apply_ascending(std::size_t i, QueryCounters* counters) const;
  [[nodiscard]] std::size_t inverse_ascending(std::size_t j, QueryCounters* counters) const;
  // Bounds [l, r] of the monotone run containing i, if it is descending.
  [[nodiscard]] bool descending_run_of(std::size_t i, std::size_t& l, std::size_t& r,
                                       QueryCounters* counters) const;
  [[nodiscard]] const BitVector& monotone_starts() const noexcept { return has_monotone_starts_ ? monotone_starts_ : run_starts_; }

  std::size_t n_ = 0;
  bool mixed_ = false;
  bool depth_limited_ = false;
  BitVectorKind kind_ = BitVectorKind::compressed;
  CodeTree tree_;
  std::vector<NodeSequence> sequences_;  // indexed by node id; empty at leaves
  std::vector<std::size_t> run_pos_;     // 1-based start of each run, by run index
  BitVector run_starts_;
  BitVector directions_;
  bool has_monotone_starts_ = false;
  BitVector monotone_starts_;
};

}  // namespace runperm
