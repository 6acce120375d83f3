#include "runperm/binary_io.hpp"

namespace runperm {

void ByteWriter::magic(std::string_view tag) {
  for (char c : tag) bytes_.push_back(static_cast<std::uint8_t>(c));
}

void ByteWriter::bits(std::span<const std::uint64_t> words, std::size_t bit_count) {
  const std::size_t byte_count = (bit_count + 7) / 8;
  for (std::size_t b = 0; b < byte_count; ++b) {
    auto byte = static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8)));
    if (b + 1 == byte_count && bit_count % 8 != 0) {
      byte &= static_cast<std::uint8_t>((1u << (bit_count % 8)) - 1);
    }
    bytes_.push_back(byte);
  }
}

void ByteReader::expect_magic(std::string_view tag) {
  if (remaining() < tag.size()) throw FormatError("truncated input: missing magic");
  const auto got = std::string_view(reinterpret_cast<const char*>(data_.data() + pos_), tag.size());
  if (got != tag) {
    throw FormatError("bad magic: expected '" + std::string(tag) + "', found '" + std::string(got) + "'");
  }
  pos_ += tag.size();
}

std::string_view ByteReader::peek_magic() const {
  if (remaining() < 4) return {};
  return {reinterpret_cast<const char*>(data_.data() + pos_), 4};
}

std::uint16_t ByteReader::version() {
  const auto v = u16();
  if (v == 0 || v > kFormatVersion) throw FormatError("unsupported format version " + std::to_string(v));
  return v;
}

std::vector<std::uint64_t> ByteReader::bits(std::size_t bit_count) {
  const std::size_t byte_count = (bit_count + 7) / 8;
  if (remaining() < byte_count) throw FormatError("truncated bit stream");
  std::vector<std::uint64_t> words((bit_count + 63) / 64, 0);
  for (std::size_t b = 0; b < byte_count; ++b) {
    words[b / 8] |= std::uint64_t{data_[pos_ + b]} << (8 * (b % 8));
  }
  pos_ += byte_count;
  return words;
}

std::uint64_t ByteReader::get(int width) {
  if (remaining() < static_cast<std::size_t>(width)) throw FormatError("truncated input");
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= std::uint64_t{data_[pos_ + static_cast<std::size_t>(i)]} << (8 * i);
  pos_ += static_cast<std::size_t>(width);
  return v;
}

}  // namespace runperm
