#pragma once

// Bit vectors with rank/select in three space regimes.
//
// Public positions are 1-based: access(i) reads the i-th bit, rank(b, i)
// counts occurrences of b in positions 1..i, select(b, j) returns the
// position of the j-th occurrence of b. The variant classes below expose the
// 0-based primitives the wrapper is built on.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "runperm/binary_io.hpp"
#include "runperm/bit_ops.hpp"

namespace runperm {

enum class BitVectorKind : std::uint8_t { plain = 0, compressed = 1, sparse = 2 };

[[nodiscard]] std::string_view to_string(BitVectorKind kind) noexcept;
// Accepts "plain", "compressed", "sparse"; throws std::invalid_argument.
[[nodiscard]] BitVectorKind parse_bitvector_kind(std::string_view name);

// Measured footprint: `payload` is the bit content proper (raw bits, block
// classes and offsets, Elias-Fano halves); `index` is everything kept to answer
// queries fast plus the fixed n/count header fields.
struct BitSize {
  std::size_t payload = 0;
  std::size_t index = 0;

  [[nodiscard]] std::size_t total() const noexcept { return payload + index; }
  BitSize& operator+=(const BitSize& other) noexcept {
    payload += other.payload;
    index += other.index;
    return *this;
  }
};

// Uncompressed bits with a two-level rank directory (2^16-bit superblocks,
// 512-bit blocks) and sampled select hints.
class PlainBitVector {
 public:
  PlainBitVector() = default;
  explicit PlainBitVector(const BitBuffer& bits);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_; }
  [[nodiscard]] bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }
  // Ones in [0, i).
  [[nodiscard]] std::size_t rank1(std::size_t i) const noexcept;
  // 0-based position of the j-th one / zero, 1 <= j <= count.
  [[nodiscard]] std::size_t select1(std::size_t j) const noexcept;
  [[nodiscard]] std::size_t select0(std::size_t j) const noexcept;

  [[nodiscard]] BitSize size_in_bits() const noexcept;
  void write_payload(ByteWriter& out) const;
  static PlainBitVector read_payload(ByteReader& in, std::size_t n);

 private:
  static constexpr std::size_t kBlockBits = 512;
  static constexpr std::size_t kBlocksPerSuper = 128;
  static constexpr std::size_t kSelectSample = 4096;

  void build_index();
  [[nodiscard]] std::size_t block_rank(std::size_t b) const noexcept {
    return super_[b / kBlocksPerSuper] + blocks_[b];
  }

  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
  std::size_t ones_ = 0;
  std::vector<std::uint64_t> super_;
  std::vector<std::uint16_t> blocks_;
  std::vector<std::uint32_t> select1_hints_;
  std::vector<std::uint32_t> select0_hints_;
};

// Enumeratively coded 63-bit blocks: each block stores its class (number of
// ones, 6 bits) and its rank among blocks of that class in ceil(lg C(63, k))
// bits. Superblocks of 16 blocks carry absolute rank and stream offset.
class CompressedBitVector {
 public:
  static constexpr unsigned kBlockBits = 63;
  static constexpr std::size_t kBlocksPerSuper = 16;

  CompressedBitVector() = default;
  explicit CompressedBitVector(const BitBuffer& bits);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t ones() const noexcept { return ones_; }
  [[nodiscard]] bool get(std::size_t i) const noexcept;
  [[nodiscard]] std::size_t rank1(std::size_t i) const noexcept;
  [[nodiscard]] std::size_t select1(std::size_t j) const noexcept;
  [[nodiscard]] std::size_t select0(std::size_t j) const noexcept;
  // Bit value at i together with the ones in [0, i): a single block decode.
  [[nodiscard]] std::pair<bool, std::size_t> get_and_rank1(std::size_t i) const noexcept;

  [[nodiscard]] BitSize size_in_bits() const noexcept;
  void write_payload(ByteWriter& out) const;
  static CompressedBitVector read_payload(ByteReader& in, std::size_t n);

  // Block coding primitives, exposed for tests.
  [[nodiscard]] static unsigned offset_width(unsigned ones_in_block) noexcept;
  [[nodiscard]] static std::uint64_t encode_block(std::uint64_t bits, unsigned ones_in_block) noexcept;
  [[nodiscard]] static std::uint64_t decode_block(unsigned ones_in_block, std::uint64_t offset) noexcept;

 private:
  struct Cursor {
    std::size_t block;
    std::size_t rank;
    std::size_t offset_pos;
  };

  void build_index();
  [[nodiscard]] unsigned block_class(std::size_t b) const noexcept {
    return static_cast<unsigned>(read_bits(classes_, b * 6, 6));
  }
  [[nodiscard]] std::size_t block_length(std::size_t b) const noexcept {
    const std::size_t start = b * kBlockBits;
    return n_ - start < kBlockBits ? n_ - start : kBlockBits;
  }
  // Walks from the superblock of `block` up to `block`.
  [[nodiscard]] Cursor seek(std::size_t block) const noexcept;
  [[nodiscard]] std::uint64_t block_bits(const Cursor& c) const noexcept;

  std::size_t n_ = 0;
  std::size_t ones_ = 0;
  std::size_t blocks_ = 0;
  std::vector<std::uint64_t> classes_;
  std::vector<std::uint64_t> offsets_;
  std::size_t offset_bits_ = 0;
  std::vector<std::uint64_t> super_rank_;
  std::vector<std::uint64_t> super_offset_;
};

// Elias-Fano layout over the positions of the ones: low floor(lg(n/m)) bits
// of each position in a fixed-width array, high parts in unary. No sampled
// directory is kept, so the footprint stays within m(2 + lg(n/m)) plus a
// 128-bit header; select and rank scan the high-part words.
class SparseBitVector {
 public:
  SparseBitVector() = default;
  explicit SparseBitVector(const BitBuffer& bits);
  // Strictly increasing 0-based positions of the ones, all < n.
  SparseBitVector(std::size_t n, std::span<const std::size_t> positions);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t ones() const noexcept { return m_; }
  [[nodiscard]] bool get(std::size_t i) const noexcept { return rank1(i + 1) != rank1(i); }
  [[nodiscard]] std::size_t rank1(std::size_t i) const noexcept;
  [[nodiscard]] std::size_t select1(std::size_t j) const noexcept;
  [[nodiscard]] std::size_t select0(std::size_t j) const noexcept;
  [[nodiscard]] unsigned low_width() const noexcept { return low_width_; }

  [[nodiscard]] BitSize size_in_bits() const noexcept;
  void write_payload(ByteWriter& out) const;
  static SparseBitVector read_payload(ByteReader& in, std::size_t n);

 private:
  void init(std::size_t n, std::size_t m);
  [[nodiscard]] std::size_t upper_bits() const noexcept;
  [[nodiscard]] std::uint64_t low(std::size_t idx) const noexcept {
    return read_bits(lower_, idx * low_width_, low_width_);
  }
  // Samples over the high part: for every kSample-th one (zero), the word
  // holding it and the ones (zeros) before that word. None when the high
  // part has at most kScanBits bits.
  static constexpr std::size_t kSample = 512;
  static constexpr std::size_t kScanBits = 2048;
  void build_samples();
  [[nodiscard]] std::size_t upper_select(bool bit, std::size_t j) const noexcept;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  unsigned low_width_ = 0;
  std::vector<std::uint64_t> lower_;
  std::vector<std::uint64_t> upper_;
  std::vector<std::size_t> one_samples_;   // word, count pairs
  std::vector<std::size_t> zero_samples_;
};

// Variant front end with the 1-based public interface. Immutable after
// construction; concurrent const queries are safe.
class BitVector {
 public:
  BitVector() = default;
  BitVector(const BitBuffer& bits, BitVectorKind kind);
  // Bit vector of length n whose ones are at the given strictly increasing
  // 1-based positions.
  static BitVector from_positions(std::size_t n, std::span<const std::size_t> positions, BitVectorKind kind);

  [[nodiscard]] BitVectorKind kind() const noexcept { return static_cast<BitVectorKind>(impl_.index()); }
  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] std::size_t count(bool bit) const noexcept;

  // 1 <= i <= size().
  [[nodiscard]] bool access(std::size_t i) const;
  // 0 <= i <= size().
  [[nodiscard]] std::size_t rank(bool bit, std::size_t i) const;
  // 1 <= j <= count(bit); throws std::out_of_range("no such occurrence").
  [[nodiscard]] std::size_t select(bool bit, std::size_t j) const;

  [[nodiscard]] std::size_t rank1(std::size_t i) const { return rank(true, i); }
  [[nodiscard]] std::size_t select1(std::size_t j) const { return select(true, j); }
  // Unchecked access-then-rank used by wavelet descent: returns the bit at
  // 1-based i and rank(bit, i).
  [[nodiscard]] std::pair<bool, std::size_t> access_rank(std::size_t i) const noexcept;

  [[nodiscard]] BitSize size_in_bits() const noexcept;

  // "RPBV" | version u16 | variant u8 | n u64 | payload.
  void write(ByteWriter& out) const;
  static BitVector read(ByteReader& in);

 private:
  using Impl = std::variant<PlainBitVector, CompressedBitVector, SparseBitVector>;
  explicit BitVector(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

}  // namespace runperm
