#include "runperm/sus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "runperm/strict_perm.hpp"

namespace runperm {

SusPartition partition_from_labels(std::span<const std::size_t> labels) {
  if (labels.empty()) throw std::invalid_argument("partition: no labels");
  SusPartition p;
  p.labels.assign(labels.begin(), labels.end());
  p.k = *std::max_element(labels.begin(), labels.end());
  if (p.k > labels.size()) throw std::invalid_argument("partition: label exceeds length");
  p.lengths.assign(p.k, 0);
  for (auto l : labels) {
    if (l < 1) throw std::invalid_argument("partition: labels are 1-based");
    ++p.lengths[l - 1];
  }
  for (std::size_t l = 0; l < p.k; ++l) {
    if (p.lengths[l] == 0) throw std::invalid_argument("partition: label " + std::to_string(l + 1) + " is unused");
  }
  return p;
}

namespace detail {

void EndTree::rotate(std::size_t x) noexcept {
  const std::size_t p = parent_[x];
  const std::size_t g = parent_[p];
  if (left_[p] == x) {
    left_[p] = right_[x];
    if (right_[x] != npos) parent_[right_[x]] = p;
    right_[x] = p;
  } else {
    right_[p] = left_[x];
    if (left_[x] != npos) parent_[left_[x]] = p;
    left_[x] = p;
  }
  parent_[p] = x;
  parent_[x] = g;
  if (g == npos) {
    root_ = x;
  } else if (left_[g] == p) {
    left_[g] = x;
  } else {
    right_[g] = x;
  }
}

void EndTree::splay(std::size_t x) noexcept {
  while (parent_[x] != npos) {
    const std::size_t p = parent_[x];
    const std::size_t g = parent_[p];
    if (g == npos) {
      rotate(x);
    } else if ((left_[g] == p) == (left_[p] == x)) {
      rotate(p);
      rotate(x);
    } else {
      rotate(x);
      rotate(x);
    }
  }
}

void EndTree::push_min(std::size_t min_node) {
  const std::size_t id = left_.size();
  left_.push_back(npos);
  right_.push_back(npos);
  parent_.push_back(npos);
  if (min_node != npos) {
    splay(min_node);
    right_[id] = min_node;
    parent_[min_node] = id;
  }
  root_ = id;
}

}  // namespace detail

SusCoder SusCoder::encode(std::span<const std::size_t> perm, const CoderConfig& config) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  validate_permutation(perm);
  return build(perm, partition_sus(perm), {}, config);
}

SusCoder SusCoder::encode(std::span<const std::size_t> perm, const SusPartition& partition,
                          const CoderConfig& config) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  validate_permutation(perm);
  validate_sus_partition(perm, partition);
  return build(perm, partition, {}, config);
}

SusCoder SusCoder::encode_sms(std::span<const std::size_t> perm, std::span<const std::size_t> labels,
                              std::span<const RunDirection> directions, const CoderConfig& config) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  validate_permutation(perm);
  if (labels.size() != perm.size()) throw std::invalid_argument("sms: label count does not match permutation length");
  const SusPartition p = partition_from_labels(labels);
  if (directions.size() != p.k) throw std::invalid_argument("sms: need one direction per label");
  std::vector<std::size_t> last(p.k, 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const std::size_t l = labels[i] - 1;
    if (last[l] != 0) {
      const bool up = perm[i] > last[l];
      if (up != (directions[l] == RunDirection::ascending)) {
        throw std::invalid_argument("sms: label " + std::to_string(l + 1) + " is not monotone in its direction at position " +
                                    std::to_string(i + 1));
      }
    }
    last[l] = perm[i];
  }
  return build(perm, p, directions, config);
}

SusCoder SusCoder::build(std::span<const std::size_t> perm, const SusPartition& partition,
                         std::span<const RunDirection> directions, const CoderConfig& config) {
  const std::size_t n = perm.size();
  const std::size_t k = partition.k;
  SusCoder c;
  c.n_ = n;
  c.offsets_.assign(k + 1, 0);
  for (std::size_t l = 0; l < k; ++l) c.offsets_[l + 1] = c.offsets_[l] + partition.lengths[l];

  std::vector<std::size_t> cursor(c.offsets_.begin(), c.offsets_.end() - 1);
  Permutation rearranged(n);
  for (std::size_t i = 0; i < n; ++i) rearranged[cursor[partition.labels[i] - 1]++] = perm[i];

  std::vector<std::size_t> starts(k);
  for (std::size_t l = 0; l < k; ++l) starts[l] = c.offsets_[l] + 1;
  c.boundaries_ = BitVector::from_positions(n, starts, StrictPermutationCoder::choose_bitmap_kind(n, k));

  // pi' is a concatenation of k ascending blocks unless some label is
  // descending; mixed runs are only switched on in that case.
  CoderConfig inner = config;
  inner.mixed_runs = false;
  if (!directions.empty()) {
    BitBuffer flags(k);
    for (std::size_t l = 0; l < k; ++l) {
      if (directions[l] == RunDirection::descending) {
        flags.set(l);
        inner.mixed_runs = true;
      }
    }
    c.directions_ = BitVector(flags, BitVectorKind::plain);
  }
  c.labels_ = SequenceCoder::encode(partition.labels, k, SequenceConfig{config.arity, config.depth_limit, config.bitvector});
  c.inner_ = PermutationCoder::encode(rearranged, inner);
  return c;
}

std::vector<std::size_t> SusCoder::lengths() const {
  std::vector<std::size_t> out(subsequence_count());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = offsets_[l + 1] - offsets_[l];
  return out;
}

std::size_t SusCoder::apply(std::size_t i, QueryCounters* counters) const {
  if (i < 1 || i > n_) throw std::out_of_range("apply: position " + std::to_string(i) + " outside [1..n]");
  const auto [label, r] = labels_.access_rank(i, counters);
  return inner_.apply(offsets_[label - 1] + r, counters);
}

std::size_t SusCoder::inverse(std::size_t j, QueryCounters* counters) const {
  if (j < 1 || j > n_) throw std::out_of_range("inverse: value " + std::to_string(j) + " outside [1..n]");
  const std::size_t p = inner_.inverse(j, counters);
  const std::size_t label = boundaries_.rank1(p);
  if (counters != nullptr) ++counters->bitvector_ops;
  return labels_.select(label, p - offsets_[label - 1], counters);
}

Permutation SusCoder::decode() const {
  const auto s = labels_.decode();
  const auto rearranged = inner_.decode();
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  Permutation out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = rearranged[cursor[s[i] - 1]++];
  return out;
}

double SusCoder::payload_entropy_bits() const {
  return labels_.payload_entropy_bits() + inner_.payload_entropy_bits();
}

SusSizeBreakdown SusCoder::measured_size_bits() const {
  SusSizeBreakdown b;
  b.labels = labels_.measured_size_bits();
  b.inner = inner_.measured_size_bits();
  b.boundaries = boundaries_.size_in_bits().total();
  b.directions = monotone() ? directions_.size_in_bits().total() : 0;
  b.header = 184;
  return b;
}

void SusCoder::write(ByteWriter& out) const {
  out.magic("RPSU");
  out.u16(kFormatVersion);
  out.u64(n_);
  out.u64(subsequence_count());
  out.u8(monotone() ? 1 : 0);
  boundaries_.write(out);
  if (monotone()) directions_.write(out);
  labels_.write(out);
  inner_.write(out);
}

SusCoder SusCoder::read(ByteReader& in) {
  in.expect_magic("RPSU");
  in.version();
  SusCoder c;
  c.n_ = in.u64();
  const std::size_t k = in.u64();
  const auto flags = in.u8();
  if (flags > 1) throw FormatError("sus coder: unknown flags");
  c.boundaries_ = BitVector::read(in);
  if (c.boundaries_.size() != c.n_ || c.boundaries_.count(true) != k || k == 0 || !c.boundaries_.access(1)) {
    throw FormatError("sus coder: boundary bitmap does not match n and k");
  }
  if (flags & 1) {
    c.directions_ = BitVector::read(in);
    if (c.directions_.size() != k) throw FormatError("sus coder: direction bitmap does not match k");
  }
  c.labels_ = SequenceCoder::read(in);
  c.inner_ = PermutationCoder::read(in);
  if (c.labels_.size() != c.n_ || c.labels_.alphabet_size() != k || c.inner_.size() != c.n_) {
    throw FormatError("sus coder: component sizes do not match");
  }
  c.offsets_.assign(k + 1, c.n_);
  for (std::size_t l = 1; l <= k; ++l) c.offsets_[l - 1] = c.boundaries_.select1(l) - 1;
  for (std::size_t l = 1; l <= k; ++l) {
    if (c.labels_.frequency(l) != c.offsets_[l] - c.offsets_[l - 1]) {
      throw FormatError("sus coder: label frequencies do not match boundaries");
    }
  }
  return c;
}

std::vector<std::uint8_t> SusCoder::serialize() const {
  ByteWriter out;
  write(out);
  return out.take();
}

SusCoder SusCoder::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto c = read(in);
  if (!in.at_end()) throw FormatError("sus coder: trailing bytes");
  return c;
}

StrictSusCoder StrictSusCoder::encode(std::span<const std::size_t> perm, const CoderConfig& config) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  StrictSusCoder c;
  c.inverse_ = PermutationCoder::encode(inverse_permutation(perm), config);
  return c;
}

Permutation StrictSusCoder::decode() const { return inverse_permutation(inverse_.decode()); }

SizeBreakdown StrictSusCoder::measured_size_bits() const {
  SizeBreakdown b = inverse_.measured_size_bits();
  b.tree += 48;
  return b;
}

void StrictSusCoder::write(ByteWriter& out) const {
  out.magic("RPSI");
  out.u16(kFormatVersion);
  inverse_.write(out);
}

StrictSusCoder StrictSusCoder::read(ByteReader& in) {
  in.expect_magic("RPSI");
  in.version();
  StrictSusCoder c;
  c.inverse_ = PermutationCoder::read(in);
  return c;
}

std::vector<std::uint8_t> StrictSusCoder::serialize() const {
  ByteWriter out;
  write(out);
  return out.take();
}

StrictSusCoder StrictSusCoder::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto c = read(in);
  if (!in.at_end()) throw FormatError("strict sus coder: trailing bytes");
  return c;
}

}  // namespace runperm
