#include "runperm/bitvector.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace runperm {

namespace {

using BinomialTable = std::array<std::array<std::uint64_t, 64>, 64>;

constexpr BinomialTable make_binomials() {
  BinomialTable c{};
  for (std::size_t n = 0; n < 64; ++n) {
    c[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
  }
  return c;
}

constexpr BinomialTable kBinomial = make_binomials();

constexpr std::array<std::uint8_t, 64> make_offset_widths() {
  std::array<std::uint8_t, 64> w{};
  for (unsigned k = 0; k <= CompressedBitVector::kBlockBits; ++k) {
    w[k] = static_cast<std::uint8_t>(ceil_log2(kBinomial[CompressedBitVector::kBlockBits][k]));
  }
  return w;
}

constexpr std::array<std::uint8_t, 64> kOffsetWidth = make_offset_widths();

bool bit_at(std::span<const std::uint64_t> words, std::size_t i) noexcept {
  return (words[i / 64] >> (i % 64)) & 1u;
}

}  // namespace

std::string_view to_string(BitVectorKind kind) noexcept {
  switch (kind) {
    case BitVectorKind::plain: return "plain";
    case BitVectorKind::compressed: return "compressed";
    case BitVectorKind::sparse: return "sparse";
  }
  return "unknown";
}

BitVectorKind parse_bitvector_kind(std::string_view name) {
  if (name == "plain") return BitVectorKind::plain;
  if (name == "compressed") return BitVectorKind::compressed;
  if (name == "sparse") return BitVectorKind::sparse;
  throw std::invalid_argument("unknown bit vector variant '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// PlainBitVector

PlainBitVector::PlainBitVector(const BitBuffer& bits)
    : words_(bits.words().begin(), bits.words().end()), n_(bits.size()) {
  build_index();
}

void PlainBitVector::build_index() {
  if (n_ == 0) {
    *this = PlainBitVector();
    return;
  }
  const std::size_t nblocks = n_ / kBlockBits + 1;
  super_.assign((nblocks - 1) / kBlocksPerSuper + 1, 0);
  blocks_.assign(nblocks, 0);
  std::size_t cum = 0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    if (b % kBlocksPerSuper == 0) super_[b / kBlocksPerSuper] = cum;
    blocks_[b] = static_cast<std::uint16_t>(cum - super_[b / kBlocksPerSuper]);
    const std::size_t w_end = std::min(words_.size(), (b + 1) * (kBlockBits / 64));
    for (std::size_t w = b * (kBlockBits / 64); w < w_end; ++w) cum += static_cast<std::size_t>(std::popcount(words_[w]));
  }
  ones_ = cum;

  select1_hints_.clear();
  select0_hints_.clear();
  std::size_t b = 0;
  for (std::size_t t = 1; t <= ones_; t += kSelectSample) {
    while (b + 1 < nblocks && block_rank(b + 1) < t) ++b;
    select1_hints_.push_back(static_cast<std::uint32_t>(b));
  }
  b = 0;
  const std::size_t zeros = n_ - ones_;
  for (std::size_t t = 1; t <= zeros; t += kSelectSample) {
    while (b + 1 < nblocks && (b + 1) * kBlockBits - block_rank(b + 1) < t) ++b;
    select0_hints_.push_back(static_cast<std::uint32_t>(b));
  }
}

std::size_t PlainBitVector::rank1(std::size_t i) const noexcept {
  const std::size_t b = i / kBlockBits;
  std::size_t r = block_rank(b);
  for (std::size_t w = b * (kBlockBits / 64); w < i / 64; ++w) r += static_cast<std::size_t>(std::popcount(words_[w]));
  if (i % 64 != 0) r += static_cast<std::size_t>(std::popcount(words_[i / 64] & low_mask(i % 64)));
  return r;
}

std::size_t PlainBitVector::select1(std::size_t j) const noexcept {
  const std::size_t h = (j - 1) / kSelectSample;
  std::size_t lo = select1_hints_[h];
  std::size_t hi = h + 1 < select1_hints_.size() ? select1_hints_[h + 1] : blocks_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (block_rank(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::size_t r = block_rank(lo);
  for (std::size_t w = lo * (kBlockBits / 64);; ++w) {
    const auto pc = static_cast<std::size_t>(std::popcount(words_[w]));
    if (r + pc >= j) return w * 64 + select_in_word(words_[w], static_cast<unsigned>(j - r - 1));
    r += pc;
  }
}

std::size_t PlainBitVector::select0(std::size_t j) const noexcept {
  const std::size_t h = (j - 1) / kSelectSample;
  std::size_t lo = select0_hints_[h];
  std::size_t hi = h + 1 < select0_hints_.size() ? select0_hints_[h + 1] : blocks_.size() - 1;
  auto zero_rank = [this](std::size_t b) { return b * kBlockBits - block_rank(b); };
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (zero_rank(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  std::size_t r = zero_rank(lo);
  for (std::size_t w = lo * (kBlockBits / 64);; ++w) {
    const auto pc = static_cast<std::size_t>(std::popcount(~words_[w]));
    if (r + pc >= j) return w * 64 + select_in_word(~words_[w], static_cast<unsigned>(j - r - 1));
    r += pc;
  }
}

BitSize PlainBitVector::size_in_bits() const noexcept {
  return {n_, 128 + super_.size() * 64 + blocks_.size() * 16 +
                  (select1_hints_.size() + select0_hints_.size()) * 32};
}

void PlainBitVector::write_payload(ByteWriter& out) const { out.bits(words_, n_); }

PlainBitVector PlainBitVector::read_payload(ByteReader& in, std::size_t n) {
  PlainBitVector bv;
  bv.words_ = in.bits(n);
  bv.n_ = n;
  bv.build_index();
  return bv;
}

// ---------------------------------------------------------------------------
// CompressedBitVector

unsigned CompressedBitVector::offset_width(unsigned ones_in_block) noexcept { return kOffsetWidth[ones_in_block]; }

std::uint64_t CompressedBitVector::encode_block(std::uint64_t bits, unsigned ones_in_block) noexcept {
  std::uint64_t offset = 0;
  unsigned k = ones_in_block;
  for (unsigned p = 0; p < kBlockBits && k > 0; ++p) {
    if ((bits >> p) & 1u) {
      offset += kBinomial[kBlockBits - 1 - p][k];
      --k;
    }
  }
  return offset;
}

std::uint64_t CompressedBitVector::decode_block(unsigned ones_in_block, std::uint64_t offset) noexcept {
  std::uint64_t bits = 0;
  unsigned k = ones_in_block;
  for (unsigned p = 0; p < kBlockBits && k > 0; ++p) {
    const unsigned rest = kBlockBits - 1 - p;
    if (k == rest + 1) {
      bits |= low_mask(k) << p;
      break;
    }
    const std::uint64_t c = kBinomial[rest][k];
    if (offset >= c) {
      bits |= std::uint64_t{1} << p;
      offset -= c;
      --k;
    }
  }
  return bits;
}

CompressedBitVector::CompressedBitVector(const BitBuffer& bits) : n_(bits.size()) {
  blocks_ = (n_ + kBlockBits - 1) / kBlockBits;
  classes_.assign((blocks_ * 6 + 63) / 64 + 1, 0);
  std::vector<std::uint64_t> raw(blocks_);
  for (std::size_t b = 0; b < blocks_; ++b) {
    raw[b] = read_bits(bits.words(), b * kBlockBits, static_cast<unsigned>(block_length(b)));
    const auto k = static_cast<unsigned>(std::popcount(raw[b]));
    write_bits(classes_, b * 6, 6, k);
    offset_bits_ += kOffsetWidth[k];
  }
  classes_.resize((blocks_ * 6 + 63) / 64);
  offsets_.assign(offset_bits_ / 64 + 1, 0);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < blocks_; ++b) {
    const unsigned k = block_class(b);
    write_bits(offsets_, pos, kOffsetWidth[k], encode_block(raw[b], k));
    pos += kOffsetWidth[k];
  }
  offsets_.resize((offset_bits_ + 63) / 64);
  build_index();
}

void CompressedBitVector::build_index() {
  if (n_ == 0) {
    *this = CompressedBitVector();
    return;
  }
  const std::size_t nsuper = (blocks_ + kBlocksPerSuper - 1) / kBlocksPerSuper;
  super_rank_.assign(nsuper + 1, 0);
  super_offset_.assign(nsuper + 1, 0);
  std::size_t rank = 0;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < blocks_; ++b) {
    if (b % kBlocksPerSuper == 0) {
      super_rank_[b / kBlocksPerSuper] = rank;
      super_offset_[b / kBlocksPerSuper] = pos;
    }
    const unsigned k = block_class(b);
    rank += k;
    pos += kOffsetWidth[k];
  }
  super_rank_[nsuper] = rank;
  super_offset_[nsuper] = pos;
  ones_ = rank;
}

CompressedBitVector::Cursor CompressedBitVector::seek(std::size_t block) const noexcept {
  const std::size_t sb = block / kBlocksPerSuper;
  Cursor c{sb * kBlocksPerSuper, super_rank_[sb], super_offset_[sb]};
  while (c.block < block) {
    const unsigned k = block_class(c.block);
    c.rank += k;
    c.offset_pos += kOffsetWidth[k];
    ++c.block;
  }
  return c;
}

std::uint64_t CompressedBitVector::block_bits(const Cursor& c) const noexcept {
  const unsigned k = block_class(c.block);
  return decode_block(k, read_bits(offsets_, c.offset_pos, kOffsetWidth[k]));
}

bool CompressedBitVector::get(std::size_t i) const noexcept {
  return (block_bits(seek(i / kBlockBits)) >> (i % kBlockBits)) & 1u;
}

std::size_t CompressedBitVector::rank1(std::size_t i) const noexcept {
  if (i >= n_) return ones_;
  const Cursor c = seek(i / kBlockBits);
  return c.rank + static_cast<std::size_t>(std::popcount(block_bits(c) & low_mask(i % kBlockBits)));
}

std::pair<bool, std::size_t> CompressedBitVector::get_and_rank1(std::size_t i) const noexcept {
  const Cursor c = seek(i / kBlockBits);
  const std::uint64_t bits = block_bits(c);
  const unsigned off = i % kBlockBits;
  return {((bits >> off) & 1u) != 0, c.rank + static_cast<std::size_t>(std::popcount(bits & low_mask(off)))};
}

std::size_t CompressedBitVector::select1(std::size_t j) const noexcept {
  std::size_t lo = 0;
  std::size_t hi = super_rank_.size() - 2;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (super_rank_[mid] < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  Cursor c{lo * kBlocksPerSuper, super_rank_[lo], super_offset_[lo]};
  for (;;) {
    const unsigned k = block_class(c.block);
    if (c.rank + k >= j) {
      return c.block * kBlockBits + select_in_word(block_bits(c), static_cast<unsigned>(j - c.rank - 1));
    }
    c.rank += k;
    c.offset_pos += kOffsetWidth[k];
    ++c.block;
  }
}

std::size_t CompressedBitVector::select0(std::size_t j) const noexcept {
  auto zero_rank = [this](std::size_t sb) {
    return std::min(sb * kBlocksPerSuper * kBlockBits, n_) - super_rank_[sb];
  };
  std::size_t lo = 0;
  std::size_t hi = super_rank_.size() - 2;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (zero_rank(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  Cursor c{lo * kBlocksPerSuper, super_rank_[lo], super_offset_[lo]};
  std::size_t zeros = zero_rank(lo);
  for (;;) {
    const unsigned k = block_class(c.block);
    const std::size_t len = block_length(c.block);
    if (zeros + (len - k) >= j) {
      const std::uint64_t inverted = ~block_bits(c) & low_mask(static_cast<unsigned>(len));
      return c.block * kBlockBits + select_in_word(inverted, static_cast<unsigned>(j - zeros - 1));
    }
    zeros += len - k;
    c.offset_pos += kOffsetWidth[k];
    ++c.block;
  }
}

BitSize CompressedBitVector::size_in_bits() const noexcept {
  return {blocks_ * 6 + offset_bits_, 128 + (super_rank_.size() + super_offset_.size()) * 64};
}

void CompressedBitVector::write_payload(ByteWriter& out) const {
  out.bits(classes_, blocks_ * 6);
  out.u64(offset_bits_);
  out.bits(offsets_, offset_bits_);
}

CompressedBitVector CompressedBitVector::read_payload(ByteReader& in, std::size_t n) {
  CompressedBitVector bv;
  bv.n_ = n;
  bv.blocks_ = (n + kBlockBits - 1) / kBlockBits;
  bv.classes_ = in.bits(bv.blocks_ * 6);
  bv.offset_bits_ = in.u64();
  std::size_t expected = 0;
  for (std::size_t b = 0; b < bv.blocks_; ++b) {
    const unsigned k = bv.block_class(b);
    if (k > bv.block_length(b)) throw FormatError("compressed bit vector: block class exceeds block length");
    expected += kOffsetWidth[k];
  }
  if (expected != bv.offset_bits_) throw FormatError("compressed bit vector: offset stream length mismatch");
  bv.offsets_ = in.bits(bv.offset_bits_);
  bv.build_index();
  return bv;
}

// ---------------------------------------------------------------------------
// SparseBitVector

void SparseBitVector::init(std::size_t n, std::size_t m) {
  n_ = n;
  m_ = m;
  low_width_ = m == 0 ? 0 : floor_log2(n / m);
  lower_.assign((m * low_width_ + 63) / 64, 0);
  upper_.assign((upper_bits() + 63) / 64, 0);
}

std::size_t SparseBitVector::upper_bits() const noexcept {
  return m_ == 0 ? 0 : m_ + ((n_ - 1) >> low_width_);
}

SparseBitVector::SparseBitVector(std::size_t n, std::span<const std::size_t> positions) {
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] >= n || (k > 0 && positions[k] <= positions[k - 1])) {
      throw std::invalid_argument("sparse bit vector: positions must be strictly increasing and < n");
    }
  }
  init(n, positions.size());
  for (std::size_t k = 0; k < m_; ++k) {
    write_bits(lower_, k * low_width_, low_width_, positions[k]);
    const std::size_t q = (positions[k] >> low_width_) + k;
    upper_[q / 64] |= std::uint64_t{1} << (q % 64);
  }
  build_samples();
}

SparseBitVector::SparseBitVector(const BitBuffer& bits) {
  std::vector<std::size_t> positions;
  positions.reserve(bits.count_ones());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) positions.push_back(i);
  }
  *this = SparseBitVector(bits.size(), positions);
}

void SparseBitVector::build_samples() {
  one_samples_.clear();
  zero_samples_.clear();
  // Short high parts are scanned from the start.
  if (upper_bits() <= kScanBits) return;
  std::size_t ones = 0;
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < upper_.size(); ++w) {
    const auto pc = static_cast<std::size_t>(std::popcount(upper_[w]));
    // Sample s targets occurrence s * kSample + 1.
    while ((one_samples_.size() / 2) * kSample + 1 <= ones + pc) {
      one_samples_.push_back(w);
      one_samples_.push_back(ones);
    }
    while ((zero_samples_.size() / 2) * kSample + 1 <= zeros + 64 - pc) {
      zero_samples_.push_back(w);
      zero_samples_.push_back(zeros);
    }
    ones += pc;
    zeros += 64 - pc;
  }
}

// 0-based position in upper_ of the j-th (1-based) one or zero.
std::size_t SparseBitVector::upper_select(bool bit, std::size_t j) const noexcept {
  const auto& samples = bit ? one_samples_ : zero_samples_;
  std::size_t w = 0;
  if (!samples.empty()) {
    const std::size_t s = (j - 1) / kSample;
    w = samples[2 * s];
    j -= samples[2 * s + 1];
  }
  for (;; ++w) {
    const std::uint64_t word = bit ? upper_[w] : ~upper_[w];
    const auto pc = static_cast<std::size_t>(std::popcount(word));
    if (pc >= j) return w * 64 + select_in_word(word, static_cast<unsigned>(j - 1));
    j -= pc;
  }
}

std::size_t SparseBitVector::rank1(std::size_t i) const noexcept {
  if (m_ == 0 || i == 0) return 0;
  if (i >= n_) return m_;
  const std::size_t h = i >> low_width_;
  std::size_t e = 0;
  std::size_t q = 0;
  if (h > 0) {
    const std::size_t p = upper_select(false, h);
    e = p - h + 1;
    q = p + 1;
  }
  const std::uint64_t target = i & low_mask(low_width_);
  const std::size_t ub = upper_bits();
  while (e < m_ && q < ub && bit_at(upper_, q) && low(e) < target) {
    ++e;
    ++q;
  }
  return e;
}

std::size_t SparseBitVector::select1(std::size_t j) const noexcept {
  const std::size_t high = upper_select(true, j) - (j - 1);
  return (high << low_width_) | low(j - 1);
}

std::size_t SparseBitVector::select0(std::size_t j) const noexcept {
  // The t-th one (0-based) has t zeros before it in the array iff
  // select1(t+1) - t <= j - 1; that quantity is non-decreasing in t.
  std::size_t lo = 0;
  std::size_t hi = m_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (select1(mid + 1) - mid <= j - 1) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return j - 1 + lo;
}

BitSize SparseBitVector::size_in_bits() const noexcept {
  return {m_ * low_width_ + upper_bits(), 128 + 64 * (one_samples_.size() + zero_samples_.size())};
}

void SparseBitVector::write_payload(ByteWriter& out) const {
  out.u64(m_);
  out.u8(static_cast<std::uint8_t>(low_width_));
  out.bits(lower_, m_ * low_width_);
  out.bits(upper_, upper_bits());
}

SparseBitVector SparseBitVector::read_payload(ByteReader& in, std::size_t n) {
  SparseBitVector bv;
  const std::size_t m = in.u64();
  if (m > n) throw FormatError("sparse bit vector: more ones than bits");
  bv.init(n, m);
  if (in.u8() != bv.low_width_) throw FormatError("sparse bit vector: unexpected low width");
  bv.lower_ = in.bits(m * bv.low_width_);
  bv.upper_ = in.bits(bv.upper_bits());
  std::size_t ones = 0;
  for (auto w : bv.upper_) ones += static_cast<std::size_t>(std::popcount(w));
  if (ones != m) throw FormatError("sparse bit vector: high-part population mismatch");
  bv.build_samples();
  return bv;
}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(const BitBuffer& bits, BitVectorKind kind) {
  switch (kind) {
    case BitVectorKind::plain: impl_ = PlainBitVector(bits); break;
    case BitVectorKind::compressed: impl_ = CompressedBitVector(bits); break;
    case BitVectorKind::sparse: impl_ = SparseBitVector(bits); break;
  }
}

BitVector BitVector::from_positions(std::size_t n, std::span<const std::size_t> positions, BitVectorKind kind) {
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] < 1 || positions[k] > n || (k > 0 && positions[k] <= positions[k - 1])) {
      throw std::invalid_argument("bit positions must be strictly increasing and within [1..n]");
    }
  }
  if (kind == BitVectorKind::sparse) {
    std::vector<std::size_t> zero_based(positions.begin(), positions.end());
    for (auto& p : zero_based) --p;
    return BitVector(Impl(SparseBitVector(n, zero_based)));
  }
  BitBuffer bits(n);
  for (auto p : positions) bits.set(p - 1);
  return BitVector(bits, kind);
}

std::size_t BitVector::size() const noexcept {
  return std::visit([](const auto& bv) { return bv.size(); }, impl_);
}

std::size_t BitVector::count(bool bit) const noexcept {
  return std::visit([bit](const auto& bv) { return bit ? bv.ones() : bv.size() - bv.ones(); }, impl_);
}

bool BitVector::access(std::size_t i) const {
  if (i < 1 || i > size()) throw std::out_of_range("bit vector access: position out of range");
  return std::visit([i](const auto& bv) { return bv.get(i - 1); }, impl_);
}

std::size_t BitVector::rank(bool bit, std::size_t i) const {
  if (i > size()) throw std::out_of_range("bit vector rank: position out of range");
  if (i == 0) return 0;
  const std::size_t ones = std::visit([i](const auto& bv) { return bv.rank1(i); }, impl_);
  return bit ? ones : i - ones;
}

std::size_t BitVector::select(bool bit, std::size_t j) const {
  if (j < 1 || j > count(bit)) throw std::out_of_range("bit vector select: no such occurrence");
  return 1 + std::visit([bit, j](const auto& bv) { return bit ? bv.select1(j) : bv.select0(j); }, impl_);
}

std::pair<bool, std::size_t> BitVector::access_rank(std::size_t i) const noexcept {
  if (const auto* c = std::get_if<CompressedBitVector>(&impl_)) {
    const auto [bit, before] = c->get_and_rank1(i - 1);
    return {bit, bit ? before + 1 : i - before};
  }
  return std::visit(
      [i](const auto& bv) -> std::pair<bool, std::size_t> {
        const bool bit = bv.get(i - 1);
        const std::size_t ones = bv.rank1(i);
        return {bit, bit ? ones : i - ones};
      },
      impl_);
}

BitSize BitVector::size_in_bits() const noexcept {
  return std::visit([](const auto& bv) { return bv.size_in_bits(); }, impl_);
}

void BitVector::write(ByteWriter& out) const {
  out.magic("RPBV");
  out.u16(kFormatVersion);
  out.u8(static_cast<std::uint8_t>(kind()));
  out.u64(size());
  std::visit([&out](const auto& bv) { bv.write_payload(out); }, impl_);
}

BitVector BitVector::read(ByteReader& in) {
  in.expect_magic("RPBV");
  in.version();
  const auto tag = in.u8();
  const std::size_t n = in.u64();
  switch (tag) {
    case 0: return BitVector(Impl(PlainBitVector::read_payload(in, n)));
    case 1: return BitVector(Impl(CompressedBitVector::read_payload(in, n)));
    case 2: return BitVector(Impl(SparseBitVector::read_payload(in, n)));
    default: throw FormatError("unknown bit vector variant tag " + std::to_string(tag));
  }
}

}  // namespace runperm
