#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace runperm {

// Smallest w with 2^w >= x (0 for x <= 1).
[[nodiscard]] constexpr unsigned ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

// floor(lg x) for x >= 1.
[[nodiscard]] constexpr unsigned floor_log2(std::uint64_t x) noexcept {
  assert(x >= 1);
  return static_cast<unsigned>(std::bit_width(x)) - 1u;
}

[[nodiscard]] constexpr std::uint64_t low_mask(unsigned width) noexcept {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

// Position (0..63) of the k-th set bit of `word`, k counted from 0.
[[nodiscard]] inline unsigned select_in_word(std::uint64_t word, unsigned k) noexcept {
  // Skip whole bytes first, then clear the remaining low bits.
  unsigned base = 0;
  for (;;) {
    const auto byte_ones = static_cast<unsigned>(std::popcount(word & 0xFFu));
    if (k < byte_ones) break;
    k -= byte_ones;
    word >>= 8;
    base += 8;
  }
  for (unsigned i = 0; i < k; ++i) word &= word - 1;
  return base + static_cast<unsigned>(std::countr_zero(word));
}

// Reads `width` (<= 64) bits starting at bit `pos` of a word array; fields may
// straddle a word boundary.
[[nodiscard]] inline std::uint64_t read_bits(std::span<const std::uint64_t> words, std::size_t pos,
                                             unsigned width) noexcept {
  if (width == 0) return 0;
  const std::size_t w = pos / 64;
  const unsigned off = static_cast<unsigned>(pos % 64);
  std::uint64_t v = words[w] >> off;
  if (off + width > 64) v |= words[w + 1] << (64 - off);
  return v & low_mask(width);
}

inline void write_bits(std::span<std::uint64_t> words, std::size_t pos, unsigned width,
                       std::uint64_t value) noexcept {
  if (width == 0) return;
  value &= low_mask(width);
  const std::size_t w = pos / 64;
  const unsigned off = static_cast<unsigned>(pos % 64);
  words[w] = (words[w] & ~(low_mask(width) << off)) | (value << off);
  if (off + width > 64) {
    const unsigned spill = off + width - 64;
    words[w + 1] = (words[w + 1] & ~low_mask(spill)) | (value >> (64 - off));
  }
}

// Growable packed bit sequence; the construction input for every bit vector.
class BitBuffer {
 public:
  BitBuffer() = default;
  explicit BitBuffer(std::size_t n, bool value = false)
      : words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(n) {
    trim();
  }
  BitBuffer(std::initializer_list<int> bits) {
    words_.reserve((bits.size() + 63) / 64);
    for (int b : bits) push_back(b != 0);
  }

  void push_back(bool bit) {
    if (size_ % 64 == 0) words_.push_back(0);
    if (bit) words_.back() |= std::uint64_t{1} << (size_ % 64);
    ++size_;
  }

  void set(std::size_t i, bool bit = true) noexcept {
    assert(i < size_);
    const auto mask = std::uint64_t{1} << (i % 64);
    if (bit) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }

  [[nodiscard]] bool operator[](std::size_t i) const noexcept {
    assert(i < size_);
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }

  [[nodiscard]] std::size_t count_ones() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

 private:
  void trim() noexcept {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= low_mask(size_ % 64);
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

// Fixed-width integer array; values never straddle a 64-bit word when the
// width divides into `per_word` slots.
class PackedInts {
 public:
  PackedInts() = default;
  PackedInts(std::size_t count, unsigned width)
      : width_(width), per_word_(width == 0 ? 0 : 64 / width), size_(count) {
    assert(width <= 64);
    if (width_ > 0) words_.assign((count + per_word_ - 1) / per_word_, 0);
  }

  void set(std::size_t i, std::uint64_t value) noexcept {
    assert(i < size_);
    if (width_ == 0) return;
    const auto shift = static_cast<unsigned>((i % per_word_) * width_);
    auto& w = words_[i / per_word_];
    w = (w & ~(low_mask(width_) << shift)) | ((value & low_mask(width_)) << shift);
  }

  [[nodiscard]] std::uint64_t get(std::size_t i) const noexcept {
    assert(i < size_);
    if (width_ == 0) return 0;
    const auto shift = static_cast<unsigned>((i % per_word_) * width_);
    return (words_[i / per_word_] >> shift) & low_mask(width_);
  }

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] unsigned width() const noexcept { return width_; }
  [[nodiscard]] unsigned per_word() const noexcept { return per_word_; }
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
  [[nodiscard]] std::span<std::uint64_t> mutable_words() noexcept { return words_; }
  [[nodiscard]] std::size_t size_in_bits() const noexcept { return words_.size() * 64; }

 private:
  std::vector<std::uint64_t> words_;
  unsigned width_ = 0;
  unsigned per_word_ = 0;
  std::size_t size_ = 0;
};

}  // namespace runperm
