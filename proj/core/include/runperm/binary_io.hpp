#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace runperm {

// Raised when a serialized structure is truncated, has a bad magic, or is
// internally inconsistent.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint16_t kFormatVersion = 1;

// Little-endian byte sink.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void magic(std::string_view tag);
  // First `bit_count` bits of `words`, LSB-first, padded to a byte boundary.
  void bits(std::span<const std::uint64_t> words, std::size_t bit_count);

  [[nodiscard]] const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  [[nodiscard]] std::vector<std::uint8_t> take() noexcept { return std::move(bytes_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> bytes_;
};

// Little-endian byte source over a borrowed buffer.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) noexcept : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  void expect_magic(std::string_view tag);
  // Reads a version field and rejects anything newer than kFormatVersion.
  std::uint16_t version();
  // Inverse of ByteWriter::bits; returns ceil(bit_count / 64) words.
  std::vector<std::uint64_t> bits(std::size_t bit_count);

  [[nodiscard]] std::string_view peek_magic() const;
  [[nodiscard]] bool at_end() const noexcept { return pos_ == data_.size(); }
  [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  std::uint64_t get(int width);

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace runperm
