#include "runperm/perm_wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "runperm/tree_merge.hpp"

namespace runperm {

namespace {

constexpr std::uint16_t kFlagMixed = 1u << 8;
constexpr std::uint16_t kFlagDepthLimited = 1u << 9;
constexpr unsigned kVariantShift = 10;
constexpr std::uint16_t kFlagMonotoneStarts = 1u << 12;

// Reads preorder child counts until the tree closes.
std::vector<std::uint8_t> read_shape(ByteReader& in, std::size_t leaf_count) {
  std::vector<std::uint8_t> counts;
  std::size_t open = 1;
  std::size_t leaves = 0;
  while (open > 0) {
    const auto k = in.u8();
    counts.push_back(k);
    --open;
    open += k;
    if (k == 0 && ++leaves > leaf_count) throw FormatError("tree shape has more leaves than runs");
  }
  return counts;
}

}  // namespace

unsigned default_arity(std::size_t n) noexcept {
  if (n <= 2) return 2;
  const auto t = static_cast<unsigned>(std::floor(std::sqrt(std::log2(static_cast<double>(n)))));
  return std::max(2u, t);
}

PermutationCoder PermutationCoder::encode(std::span<const std::size_t> perm, const CoderConfig& config) {
  if (perm.empty()) throw std::invalid_argument("cannot encode an empty permutation");
  validate_permutation(perm);
  const std::size_t n = perm.size();
  const unsigned arity = config.arity == 0 ? default_arity(n) : config.arity;
  if (arity < 2 || arity > 255) throw std::invalid_argument("arity must be in [2..255]");

  PermutationCoder c;
  c.n_ = n;
  c.mixed_ = config.mixed_runs;
  c.depth_limited_ = config.depth_limit;
  c.kind_ = config.bitvector;

  std::vector<std::size_t> sigma(perm.begin(), perm.end());
  RunProfile mono;
  if (c.mixed_) {
    mono = monotone_runs(perm);
    for (std::size_t k = 0; k < mono.count(); ++k) {
      if (mono.directions[k] == RunDirection::descending) {
        auto first = sigma.begin() + static_cast<std::ptrdiff_t>(mono.starts[k] - 1);
        std::reverse(first, first + static_cast<std::ptrdiff_t>(mono.lengths[k]));
      }
    }
  }
  const RunProfile runs = ascending_runs(sigma);

  c.tree_ = CodeTree::huffman(runs.lengths, arity);
  if (c.depth_limited_) c.tree_ = c.tree_.limit_depth(depth_limit_for(runs.count(), arity));

  std::vector<std::size_t> data(n);
  for (auto leaf : c.tree_.leaves_in_order()) {
    const auto& node = c.tree_.node(leaf);
    const auto from = sigma.begin() + static_cast<std::ptrdiff_t>(runs.starts[node.symbol] - 1);
    std::copy(from, from + static_cast<std::ptrdiff_t>(node.length),
              data.begin() + static_cast<std::ptrdiff_t>(node.pos_prime - 1));
  }
  const auto labels = merge_along_tree<true>(c.tree_, data, std::less<>{});
  c.sequences_.resize(c.tree_.node_count());
  for (std::size_t v = 0; v < c.tree_.node_count(); ++v) {
    const auto& node = c.tree_.node(v);
    if (!node.is_leaf()) {
      c.sequences_[v] = NodeSequence(labels.of(c.tree_, v), node.child_count, c.kind_);
    }
  }

  c.run_pos_ = runs.starts;
  c.run_starts_ = BitVector::from_positions(n, runs.starts, BitVectorKind::compressed);
  if (c.mixed_) {
    BitBuffer dirs(mono.count());
    for (std::size_t k = 0; k < mono.count(); ++k) {
      if (mono.directions[k] == RunDirection::descending) dirs.set(k);
    }
    c.directions_ = BitVector(dirs, BitVectorKind::compressed);
    c.has_monotone_starts_ = mono.count() != runs.count();
    if (c.has_monotone_starts_) {
      c.monotone_starts_ = BitVector::from_positions(n, mono.starts, BitVectorKind::compressed);
    }
  }
  return c;
}

std::size_t PermutationCoder::monotone_run_count() const noexcept {
  return mixed_ ? directions_.size() : run_count();
}

std::size_t PermutationCoder::apply_ascending(std::size_t i, QueryCounters* counters) const {
  const std::size_t run = run_starts_.rank1(i) - 1;
  std::size_t v = tree_.leaf_of(run);
  std::size_t x = i - run_pos_[run] + 1;
  std::size_t steps = 0;
  while (v != 0) {
    const auto& node = tree_.node(v);
    x = sequences_[node.parent].select(node.child_rank, x);
    v = node.parent;
    ++steps;
  }
  if (counters != nullptr) {
    counters->tree_steps += steps;
    counters->bitvector_ops += steps + 1;
  }
  return x;
}

std::size_t PermutationCoder::inverse_ascending(std::size_t j, QueryCounters* counters) const {
  std::size_t v = 0;
  std::size_t x = j;
  std::size_t steps = 0;
  while (!tree_.node(v).is_leaf()) {
    const auto [c, r] = sequences_[v].access_rank(x);
    v = tree_.child(v, c);
    x = r;
    ++steps;
  }
  if (counters != nullptr) {
    counters->tree_steps += steps;
    counters->bitvector_ops += steps;
  }
  return run_pos_[tree_.node(v).symbol] + x - 1;
}

bool PermutationCoder::descending_run_of(std::size_t i, std::size_t& l, std::size_t& r,
                                         QueryCounters* counters) const {
  const BitVector& starts = monotone_starts();
  const std::size_t k = starts.rank1(i);
  if (counters != nullptr) counters->bitvector_ops += 2;
  if (!directions_.access(k)) return false;
  l = starts.select1(k);
  r = k < starts.count(true) ? starts.select1(k + 1) - 1 : n_;
  if (counters != nullptr) counters->bitvector_ops += 2;
  return true;
}

std::size_t PermutationCoder::apply(std::size_t i, QueryCounters* counters) const {
  if (i < 1 || i > n_) throw std::out_of_range("apply: position " + std::to_string(i) + " outside [1..n]");
  std::size_t l = 0;
  std::size_t r = 0;
  if (mixed_ && descending_run_of(i, l, r, counters)) i = l + r - i;
  return apply_ascending(i, counters);
}

std::size_t PermutationCoder::inverse(std::size_t j, QueryCounters* counters) const {
  if (j < 1 || j > n_) throw std::out_of_range("inverse: value " + std::to_string(j) + " outside [1..n]");
  std::size_t p = inverse_ascending(j, counters);
  std::size_t l = 0;
  std::size_t r = 0;
  if (mixed_ && descending_run_of(p, l, r, counters)) p = l + r - p;
  return p;
}

Permutation PermutationCoder::decode() const {
  Permutation out(n_);
  for (std::size_t i = 1; i <= n_; ++i) out[i - 1] = apply(i);
  return out;
}

double PermutationCoder::payload_entropy_bits() const {
  double bits = 0;
  for (const auto& s : sequences_) bits += s.entropy_bits();
  return bits;
}

SizeBreakdown PermutationCoder::measured_size_bits() const {
  SizeBreakdown b;
  for (const auto& s : sequences_) {
    if (s.size() == 0) continue;
    const auto sz = s.size_in_bits();
    b.payload += sz.payload;
    b.index += sz.index;
  }
  const std::size_t rho = run_count();
  b.tree = 192 + tree_.node_count() * 8 + rho * 128;
  b.phi = rho * ceil_log2(rho);
  b.run_starts = run_starts_.size_in_bits().total();
  if (mixed_) {
    b.directions = directions_.size_in_bits().total();
    if (has_monotone_starts_) b.directions += monotone_starts_.size_in_bits().total();
  }
  return b;
}

void PermutationCoder::write(ByteWriter& out) const {
  auto flags = static_cast<std::uint16_t>(tree_.arity());
  if (mixed_) flags |= kFlagMixed;
  if (depth_limited_) flags |= kFlagDepthLimited;
  flags |= static_cast<std::uint16_t>(static_cast<unsigned>(kind_) << kVariantShift);
  if (has_monotone_starts_) flags |= kFlagMonotoneStarts;

  out.magic("RPRM");
  out.u16(kFormatVersion);
  out.u16(flags);
  out.u64(n_);
  const std::size_t rho = run_count();
  out.u64(rho);
  for (auto k : tree_.shape()) out.u8(k);
  for (auto leaf : tree_.leaves_in_order()) {
    const auto s = tree_.node(leaf).symbol;
    out.u64(s);
    out.u64(run_pos_[s]);
  }
  const unsigned width = ceil_log2(rho);
  std::vector<std::uint64_t> phi_words((rho * width + 63) / 64 + 1, 0);
  for (std::size_t s = 0; s < rho; ++s) write_bits(phi_words, s * width, width, tree_.node(tree_.leaf_of(s)).leaf_rank);
  out.bits(phi_words, rho * width);
  run_starts_.write(out);
  if (mixed_) directions_.write(out);
  if (has_monotone_starts_) monotone_starts_.write(out);
  for (std::size_t v = 0; v < tree_.node_count(); ++v) {
    if (!tree_.node(v).is_leaf()) sequences_[v].write(out);
  }
}

PermutationCoder PermutationCoder::read(ByteReader& in) {
  in.expect_magic("RPRM");
  in.version();
  const std::uint16_t flags = in.u16();
  PermutationCoder c;
  const unsigned arity = flags & 0xFFu;
  if (arity < 2) throw FormatError("permutation coder: arity below 2");
  c.mixed_ = (flags & kFlagMixed) != 0;
  c.depth_limited_ = (flags & kFlagDepthLimited) != 0;
  const unsigned variant = (flags >> kVariantShift) & 3u;
  if (variant > 2) throw FormatError("permutation coder: unknown bit vector variant");
  c.kind_ = static_cast<BitVectorKind>(variant);
  c.has_monotone_starts_ = (flags & kFlagMonotoneStarts) != 0;
  if (c.has_monotone_starts_ && !c.mixed_) throw FormatError("permutation coder: monotone starts without mixed runs");
  c.n_ = in.u64();
  const std::size_t rho = in.u64();
  if (c.n_ == 0 || rho == 0 || rho > c.n_) throw FormatError("permutation coder: bad n or run count");

  const auto shape = read_shape(in, rho);
  std::vector<std::size_t> leaf_symbols(rho);
  c.run_pos_.assign(rho, 0);
  std::vector<bool> seen(rho, false);
  for (std::size_t k = 0; k < rho; ++k) {
    const std::size_t s = in.u64();
    const std::size_t pos = in.u64();
    if (s >= rho || seen[s]) throw FormatError("permutation coder: bad leaf index");
    seen[s] = true;
    leaf_symbols[k] = s;
    c.run_pos_[s] = pos;
  }
  std::vector<std::size_t> weights(rho);
  for (std::size_t s = 0; s < rho; ++s) {
    const std::size_t end = s + 1 < rho ? c.run_pos_[s + 1] : c.n_ + 1;
    if ((s == 0 && c.run_pos_[0] != 1) || end <= c.run_pos_[s] || end > c.n_ + 1) {
      throw FormatError("permutation coder: run starts are not increasing");
    }
    weights[s] = end - c.run_pos_[s];
  }
  try {
    c.tree_ = CodeTree::from_shape(arity, shape, leaf_symbols, weights);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("permutation coder: ") + e.what());
  }
  if (c.depth_limited_ && c.tree_.max_depth() > depth_limit_for(rho, arity)) {
    throw FormatError("permutation coder: tree deeper than its depth limit");
  }
  const unsigned width = ceil_log2(rho);
  const auto phi_words = in.bits(rho * width);
  for (std::size_t s = 0; s < rho; ++s) {
    if (read_bits(phi_words, s * width, width) != c.tree_.node(c.tree_.leaf_of(s)).leaf_rank) {
      throw FormatError("permutation coder: leaf order does not match tree");
    }
  }
  c.run_starts_ = BitVector::read(in);
  if (c.run_starts_.size() != c.n_ || c.run_starts_.count(true) != rho) {
    throw FormatError("permutation coder: run-start bitmap does not match");
  }
  for (std::size_t s = 0; s < rho; ++s) {
    if (c.run_starts_.select1(s + 1) != c.run_pos_[s]) throw FormatError("permutation coder: run-start mismatch");
  }
  if (c.mixed_) {
    c.directions_ = BitVector::read(in);
    if (c.has_monotone_starts_) {
      c.monotone_starts_ = BitVector::read(in);
      if (c.monotone_starts_.size() != c.n_) throw FormatError("permutation coder: monotone-start bitmap size");
    }
    if (c.directions_.size() != c.monotone_starts().count(true)) {
      throw FormatError("permutation coder: direction bitmap does not match run count");
    }
  }
  c.sequences_.resize(c.tree_.node_count());
  for (std::size_t v = 0; v < c.tree_.node_count(); ++v) {
    const auto& node = c.tree_.node(v);
    if (node.is_leaf()) continue;
    c.sequences_[v] = NodeSequence::read(in, node.child_count);
    const auto& seq = c.sequences_[v];
    if (seq.size() != node.length) throw FormatError("permutation coder: node sequence length mismatch");
    for (std::size_t k = 0; k < node.child_count; ++k) {
      if (seq.count(static_cast<unsigned>(k)) != c.tree_.node(c.tree_.child(v, static_cast<unsigned>(k))).length) {
        throw FormatError("permutation coder: node sequence counts do not match child lengths");
      }
    }
  }
  return c;
}

std::vector<std::uint8_t> PermutationCoder::serialize() const {
  ByteWriter out;
  write(out);
  return out.take();
}

PermutationCoder PermutationCoder::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto c = read(in);
  if (!in.at_end()) throw FormatError("permutation coder: trailing bytes");
  return c;
}

}  // namespace runperm
