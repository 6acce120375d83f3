#include "runperm/strict_perm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "runperm/runs.hpp"

namespace runperm {

BitVectorKind StrictPermutationCoder::choose_bitmap_kind(std::size_t n, std::size_t tau) noexcept {
  if (tau == 0) return BitVectorKind::sparse;
  // Elias-Fano cost of tau ones: tau lg(n/tau) low bits plus about 2 tau
  // high bits.
  const double cost = static_cast<double>(tau) * (2.0 + std::log2(static_cast<double>(n) / static_cast<double>(tau)));
  return cost < static_cast<double>(n) / 4 ? BitVectorKind::sparse : BitVectorKind::compressed;
}

StrictPermutationCoder StrictPermutationCoder::encode(std::span<const std::size_t> perm,
                                                      const CoderConfig& inner_config, BitVectorKind bitmaps) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  const StrictRunProfile strict = strict_ascending_runs(perm);
  const std::size_t n = perm.size();
  const std::size_t tau = strict.count();

  std::vector<std::size_t> sorted_heads = strict.head_values;
  std::sort(sorted_heads.begin(), sorted_heads.end());

  StrictPermutationCoder c;
  c.n_ = n;
  c.heads_ = BitVector::from_positions(n, strict.heads, bitmaps);
  c.head_values_ = BitVector::from_positions(n, sorted_heads, bitmaps);

  Permutation collapsed(tau);
  for (std::size_t k = 0; k < tau; ++k) collapsed[k] = c.head_values_.rank1(strict.head_values[k]);
  c.inner_ = PermutationCoder::encode(collapsed, inner_config);
  return c;
}

std::size_t StrictPermutationCoder::apply(std::size_t i, QueryCounters* counters) const {
  if (i < 1 || i > n_) throw std::out_of_range("apply: position " + std::to_string(i) + " outside [1..n]");
  const std::size_t run = heads_.rank1(i);
  const std::size_t target = inner_.apply(run, counters);
  if (counters != nullptr) counters->bitvector_ops += 3;
  return head_values_.select1(target) + i - heads_.select1(run);
}

std::size_t StrictPermutationCoder::inverse(std::size_t j, QueryCounters* counters) const {
  if (j < 1 || j > n_) throw std::out_of_range("inverse: value " + std::to_string(j) + " outside [1..n]");
  const std::size_t value_run = head_values_.rank1(j);
  const std::size_t run = inner_.inverse(value_run, counters);
  if (counters != nullptr) counters->bitvector_ops += 3;
  return heads_.select1(run) + j - head_values_.select1(value_run);
}

Permutation StrictPermutationCoder::decode() const {
  Permutation out(n_);
  for (std::size_t i = 1; i <= n_; ++i) out[i - 1] = apply(i);
  return out;
}

StrictSizeBreakdown StrictPermutationCoder::measured_size_bits() const {
  StrictSizeBreakdown b;
  b.inner = inner_.measured_size_bits();
  b.heads = heads_.size_in_bits().total();
  b.head_values = head_values_.size_in_bits().total();
  b.header = 184;
  return b;
}

void StrictPermutationCoder::write(ByteWriter& out) const {
  out.magic("RPSR");
  out.u16(kFormatVersion);
  out.u64(n_);
  out.u64(strict_run_count());
  out.u8(static_cast<std::uint8_t>(bitmap_kind()));
  heads_.write(out);
  head_values_.write(out);
  inner_.write(out);
}

StrictPermutationCoder StrictPermutationCoder::read(ByteReader& in) {
  in.expect_magic("RPSR");
  in.version();
  StrictPermutationCoder c;
  c.n_ = in.u64();
  const std::size_t tau = in.u64();
  const auto kind = in.u8();
  if (kind > 2) throw FormatError("strict coder: unknown bitmap variant");
  c.heads_ = BitVector::read(in);
  c.head_values_ = BitVector::read(in);
  c.inner_ = PermutationCoder::read(in);
  if (c.heads_.kind() != static_cast<BitVectorKind>(kind) || c.head_values_.kind() != c.heads_.kind()) {
    throw FormatError("strict coder: bitmap variant mismatch");
  }
  if (c.heads_.size() != c.n_ || c.head_values_.size() != c.n_ || c.heads_.count(true) != tau ||
      c.head_values_.count(true) != tau || c.inner_.size() != tau) {
    throw FormatError("strict coder: bitmaps do not match n and tau");
  }
  if (tau == 0 || !c.heads_.access(1) || !c.head_values_.access(1)) {
    throw FormatError("strict coder: first position must start a run");
  }
  return c;
}

std::vector<std::uint8_t> StrictPermutationCoder::serialize() const {
  ByteWriter out;
  write(out);
  return out.take();
}

StrictPermutationCoder StrictPermutationCoder::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto c = read(in);
  if (!in.at_end()) throw FormatError("strict coder: trailing bytes");
  return c;
}

}  // namespace runperm
