#pragma once

// Per-node child-label sequence of a wavelet tree, with access/rank/select.
//
// Sequences that fit in one 64-bit word are kept inline. Longer binary
// sequences use a BitVector of the configured variant; longer sequences over
// larger alphabets pack ceil(lg t)-bit symbols and keep per-symbol counts
// every kSample symbols.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bit_ops.hpp"
#include "runperm/bitvector.hpp"

namespace runperm {

class NodeSequence {
 public:
  static constexpr std::size_t kSample = 1024;

  NodeSequence() = default;
  // Symbols are child ranks in [0, arity).
  NodeSequence(std::span<const std::uint8_t> symbols, unsigned arity, BitVectorKind kind);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] unsigned arity() const noexcept { return arity_; }

  // Positions are 1-based; symbols are 0-based child ranks.
  [[nodiscard]] unsigned access(std::size_t i) const noexcept;
  [[nodiscard]] std::size_t rank(unsigned c, std::size_t i) const noexcept;
  [[nodiscard]] std::size_t select(unsigned c, std::size_t j) const noexcept;
  // Symbol at i and its rank up to i.
  [[nodiscard]] std::pair<unsigned, std::size_t> access_rank(std::size_t i) const noexcept;

  [[nodiscard]] std::size_t count(unsigned c) const noexcept;
  // Zero-order entropy of the sequence times its length.
  [[nodiscard]] double entropy_bits() const;
  [[nodiscard]] BitSize size_in_bits() const noexcept;

  void write(ByteWriter& out) const;
  static NodeSequence read(ByteReader& in, unsigned arity);

 private:
  enum class Layout : std::uint8_t { inline_word, bits, packed };

  [[nodiscard]] unsigned width() const noexcept { return arity_ == 2 ? 1u : ceil_log2(arity_); }
  [[nodiscard]] unsigned per_word() const noexcept { return 64 / width(); }
  void choose_layout() noexcept { layout_ = n_ <= per_word() ? Layout::inline_word : arity_ == 2 ? Layout::bits : Layout::packed; }
  void build_samples();
  [[nodiscard]] std::size_t sample(std::size_t s, unsigned c) const noexcept { return samples_[s * arity_ + c]; }
  [[nodiscard]] std::uint64_t word(std::size_t w) const noexcept {
    return layout_ == Layout::inline_word ? inline_ : packed_.words()[w];
  }
  // Low bit of every field of word w that holds c.
  [[nodiscard]] std::uint64_t match_mask(unsigned c, std::size_t w) const noexcept;
  // Occurrences of c among symbols [from, to), 0-based.
  [[nodiscard]] std::size_t count_range(unsigned c, std::size_t from, std::size_t to) const noexcept;
  // 1-based position of the j-th c at or after 0-based symbol `from`, given
  // r occurrences before `from`.
  [[nodiscard]] std::size_t scan_select(unsigned c, std::size_t from, std::size_t r, std::size_t j) const noexcept;

  std::size_t n_ = 0;
  unsigned arity_ = 2;
  Layout layout_ = Layout::inline_word;
  std::uint64_t inline_ = 0;
  BitVector bits_;
  PackedInts packed_;
  std::vector<std::uint32_t> samples_;
  std::vector<std::size_t> counts_;  // packed layout only
};

}  // namespace runperm
