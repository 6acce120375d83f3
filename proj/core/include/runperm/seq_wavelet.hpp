#pragma once

// Zero-order compressed sequence over [1..sigma]: a Huffman-shaped multiary
// wavelet tree over the symbol frequencies. Absent symbols get no leaf.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bitvector.hpp"
#include "runperm/code_tree.hpp"
#include "runperm/node_sequence.hpp"
#include "runperm/perm_wavelet.hpp"

namespace runperm {

struct SequenceConfig {
  unsigned arity = 0;  // 0 picks default_arity(n)
  bool depth_limit = true;
  BitVectorKind bitvector = BitVectorKind::compressed;
};

class SequenceCoder {
 public:
  // Deepest tree a coder accepts; Huffman trees over 64-bit counts stay
  // well below it.
  static constexpr std::size_t kMaxDepth = 128;

  SequenceCoder() = default;

  // Throws std::invalid_argument for an empty sequence or a symbol outside
  // [1..sigma].
  static SequenceCoder encode(std::span<const std::size_t> symbols, std::size_t sigma,
                              const SequenceConfig& config = {});

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t alphabet_size() const noexcept { return sigma_; }
  [[nodiscard]] std::size_t distinct_symbols() const noexcept { return symbol_of_leaf_.size(); }
  [[nodiscard]] std::size_t frequency(std::size_t c) const noexcept;
  [[nodiscard]] const CodeTree& tree() const noexcept { return tree_; }

  // 1 <= i <= n.
  [[nodiscard]] std::size_t access(std::size_t i, QueryCounters* counters = nullptr) const;
  // Symbol at i and its rank up to i, in one descent.
  [[nodiscard]] std::pair<std::size_t, std::size_t> access_rank(std::size_t i, QueryCounters* counters = nullptr) const;
  // Occurrences of c in [1..i]; 0 for symbols that do not occur.
  [[nodiscard]] std::size_t rank(std::size_t c, std::size_t i, QueryCounters* counters = nullptr) const;
  // Position of the j-th c; throws std::out_of_range if there is none.
  [[nodiscard]] std::size_t select(std::size_t c, std::size_t j, QueryCounters* counters = nullptr) const;
  [[nodiscard]] std::vector<std::size_t> decode() const;

  [[nodiscard]] double payload_entropy_bits() const;
  [[nodiscard]] SizeBreakdown measured_size_bits() const;

  // "RPSQ" | version | flags u16 | n | sigma | symbol table | shape |
  // sequences in preorder.
  void write(ByteWriter& out) const;
  static SequenceCoder read(ByteReader& in);
  [[nodiscard]] std::vector<std::uint8_t> serialize() const;
  static SequenceCoder deserialize(std::span<const std::uint8_t> bytes);

 private:
  [[nodiscard]] std::size_t leaf_of_symbol(std::size_t c) const noexcept {
    return c >= 1 && c <= sigma_ ? leaf_of_symbol_[c] : CodeTreeNode::npos;
  }
  void index_symbols();

  std::size_t n_ = 0;
  std::size_t sigma_ = 0;
  bool depth_limited_ = false;
  BitVectorKind kind_ = BitVectorKind::compressed;
  CodeTree tree_;  // leaf symbol k stands for symbol_of_leaf_[k]
  std::vector<std::size_t> symbol_of_leaf_;
  std::vector<std::size_t> leaf_of_symbol_;  // by symbol, npos when absent
  std::vector<NodeSequence> sequences_;
};

}  // namespace runperm
