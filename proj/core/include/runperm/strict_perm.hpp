#pragma once

// Strict-run collapsed permutation. Strict runs (consecutive values rising by
// exactly one) are collapsed to single elements: R marks run heads in the
// domain, R_inv marks head values in the range, and an inner coder stores
// the permutation of the tau heads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bitvector.hpp"
#include "runperm/perm_wavelet.hpp"

namespace runperm {

struct StrictSizeBreakdown {
  SizeBreakdown inner;
  std::size_t heads = 0;        // R
  std::size_t head_values = 0;  // R_inv
  std::size_t header = 0;

  [[nodiscard]] std::size_t total() const noexcept { return inner.total() + heads + head_values + header; }
};

class StrictPermutationCoder {
 public:
  StrictPermutationCoder() = default;

  static StrictPermutationCoder encode(std::span<const std::size_t> perm, const CoderConfig& inner_config = {},
                                       BitVectorKind bitmaps = BitVectorKind::compressed);
  // Sparse when tau * (2 + lg(n / tau)) < n / 4, compressed otherwise.
  [[nodiscard]] static BitVectorKind choose_bitmap_kind(std::size_t n, std::size_t tau) noexcept;

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t strict_run_count() const noexcept { return inner_.size(); }
  [[nodiscard]] BitVectorKind bitmap_kind() const noexcept { return heads_.kind(); }
  [[nodiscard]] const PermutationCoder& inner() const noexcept { return inner_; }
  [[nodiscard]] const BitVector& heads() const noexcept { return heads_; }
  [[nodiscard]] const BitVector& head_values() const noexcept { return head_values_; }

  [[nodiscard]] std::size_t apply(std::size_t i, QueryCounters* counters = nullptr) const;
  [[nodiscard]] std::size_t inverse(std::size_t j, QueryCounters* counters = nullptr) const;
  [[nodiscard]] Permutation decode() const;
  [[nodiscard]] StrictSizeBreakdown measured_size_bits() const;

  // "RPSR" | version | n | tau | bitmap variant u8 | R | R_inv | inner coder.
  void write(ByteWriter& out) const;
  static StrictPermutationCoder read(ByteReader& in);
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  static StrictPermutationCoder deserialize(std::span<const std::uint8_t> bytes);

 private:
  std::size_t n_ = 0;
  BitVector heads_;
  BitVector head_values_;
  PermutationCoder inner_;
};

}  // namespace runperm
