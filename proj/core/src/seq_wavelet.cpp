#include "runperm/seq_wavelet.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "runperm/runs.hpp"

namespace runperm {

namespace {

constexpr std::uint16_t kFlagDepthLimited = 1u << 9;
constexpr unsigned kVariantShift = 10;

}  // namespace

void SequenceCoder::index_symbols() {
  leaf_of_symbol_.assign(sigma_ + 1, CodeTreeNode::npos);
  for (std::size_t k = 0; k < symbol_of_leaf_.size(); ++k) leaf_of_symbol_[symbol_of_leaf_[k]] = tree_.leaf_of(k);
}

SequenceCoder SequenceCoder::encode(std::span<const std::size_t> symbols, std::size_t sigma,
                                    const SequenceConfig& config) {
  if (symbols.empty()) throw std::invalid_argument("cannot encode an empty sequence");
  std::vector<std::size_t> freq(sigma + 1, 0);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto c = symbols[i];
    if (c < 1 || c > sigma) {
      throw std::invalid_argument("symbol " + std::to_string(c) + " at position " + std::to_string(i + 1) +
                                  " is outside [1.." + std::to_string(sigma) + "]");
    }
    ++freq[c];
  }
  const unsigned arity = config.arity == 0 ? default_arity(symbols.size()) : config.arity;

  SequenceCoder s;
  s.n_ = symbols.size();
  s.sigma_ = sigma;
  s.depth_limited_ = config.depth_limit;
  s.kind_ = config.bitvector;
  std::vector<std::size_t> weights;
  for (std::size_t c = 1; c <= sigma; ++c) {
    if (freq[c] > 0) {
      s.symbol_of_leaf_.push_back(c);
      weights.push_back(freq[c]);
    }
  }
  s.tree_ = CodeTree::huffman(weights, arity);
  if (s.depth_limited_) s.tree_ = s.tree_.limit_depth(depth_limit_for(weights.size(), arity));
  s.index_symbols();

  std::vector<std::vector<std::uint8_t>> labels(s.tree_.node_count());
  for (std::size_t v = 0; v < s.tree_.node_count(); ++v) labels[v].reserve(s.tree_.node(v).length);
  for (auto c : symbols) {
    // Climb from the leaf, then append top-down.
    std::array<std::pair<std::size_t, std::uint8_t>, kMaxDepth> path;
    std::size_t depth = 0;
    for (std::size_t v = s.leaf_of_symbol_[c]; v != 0; v = s.tree_.node(v).parent) {
      path[depth++] = {s.tree_.node(v).parent, static_cast<std::uint8_t>(s.tree_.node(v).child_rank)};
    }
    while (depth > 0) {
      --depth;
      labels[path[depth].first].push_back(path[depth].second);
    }
  }
  s.sequences_.resize(s.tree_.node_count());
  for (std::size_t v = 0; v < s.tree_.node_count(); ++v) {
    const auto& node = s.tree_.node(v);
    if (!node.is_leaf()) {
      s.sequences_[v] = NodeSequence(labels[v], node.child_count, s.kind_);
    }
  }
  return s;
}

std::size_t SequenceCoder::frequency(std::size_t c) const noexcept {
  const auto leaf = leaf_of_symbol(c);
  return leaf == CodeTreeNode::npos ? 0 : tree_.node(leaf).length;
}

std::size_t SequenceCoder::access(std::size_t i, QueryCounters* counters) const {
  return access_rank(i, counters).first;
}

std::pair<std::size_t, std::size_t> SequenceCoder::access_rank(std::size_t i, QueryCounters* counters) const {
  if (i < 1 || i > n_) throw std::out_of_range("access: position " + std::to_string(i) + " outside [1..n]");
  std::size_t v = 0;
  std::size_t x = i;
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
  return {symbol_of_leaf_[tree_.node(v).symbol], x};
}

std::size_t SequenceCoder::rank(std::size_t c, std::size_t i, QueryCounters* counters) const {
  if (i > n_) throw std::out_of_range("rank: position " + std::to_string(i) + " outside [0..n]");
  const auto leaf = leaf_of_symbol(c);
  if (leaf == CodeTreeNode::npos) return 0;
  std::array<std::pair<std::size_t, unsigned>, kMaxDepth> path;
  std::size_t depth = 0;
  for (std::size_t v = leaf; v != 0; v = tree_.node(v).parent) {
    path[depth++] = {tree_.node(v).parent, tree_.node(v).child_rank};
  }
  std::size_t x = i;
  std::size_t steps = 0;
  while (depth > 0 && x > 0) {
    --depth;
    x = sequences_[path[depth].first].rank(path[depth].second, x);
    ++steps;
  }
  if (counters != nullptr) {
    counters->tree_steps += steps;
    counters->bitvector_ops += steps;
  }
  return x;
}

std::size_t SequenceCoder::select(std::size_t c, std::size_t j, QueryCounters* counters) const {
  const auto leaf = leaf_of_symbol(c);
  if (leaf == CodeTreeNode::npos || j < 1 || j > tree_.node(leaf).length) {
    throw std::out_of_range("select: no such occurrence");
  }
  std::size_t x = j;
  std::size_t steps = 0;
  for (std::size_t v = leaf; v != 0; v = tree_.node(v).parent) {
    const auto& node = tree_.node(v);
    x = sequences_[node.parent].select(node.child_rank, x);
    ++steps;
  }
  if (counters != nullptr) {
    counters->tree_steps += steps;
    counters->bitvector_ops += steps;
  }
  return x;
}

std::vector<std::size_t> SequenceCoder::decode() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t i = 1; i <= n_; ++i) out[i - 1] = access(i);
  return out;
}

double SequenceCoder::payload_entropy_bits() const {
  double bits = 0;
  for (const auto& s : sequences_) bits += s.entropy_bits();
  return bits;
}

SizeBreakdown SequenceCoder::measured_size_bits() const {
  SizeBreakdown b;
  for (const auto& s : sequences_) {
    if (s.size() == 0) continue;
    const auto sz = s.size_in_bits();
    b.payload += sz.payload;
    b.index += sz.index;
  }
  b.tree = 240 + tree_.node_count() * 8 + distinct_symbols() * 128;
  return b;
}

void SequenceCoder::write(ByteWriter& out) const {
  auto flags = static_cast<std::uint16_t>(tree_.arity());
  if (depth_limited_) flags |= kFlagDepthLimited;
  flags |= static_cast<std::uint16_t>(static_cast<unsigned>(kind_) << kVariantShift);
  out.magic("RPSQ");
  out.u16(kFormatVersion);
  out.u16(flags);
  out.u64(n_);
  out.u64(sigma_);
  out.u64(distinct_symbols());
  for (auto leaf : tree_.leaves_in_order()) {
    const auto k = tree_.node(leaf).symbol;
    out.u64(symbol_of_leaf_[k]);
    out.u64(tree_.node(leaf).length);
  }
  for (auto k : tree_.shape()) out.u8(k);
  for (std::size_t v = 0; v < tree_.node_count(); ++v) {
    if (!tree_.node(v).is_leaf()) sequences_[v].write(out);
  }
}

SequenceCoder SequenceCoder::read(ByteReader& in) {
  in.expect_magic("RPSQ");
  in.version();
  const std::uint16_t flags = in.u16();
  SequenceCoder s;
  const unsigned arity = flags & 0xFFu;
  if (arity < 2) throw FormatError("sequence coder: arity below 2");
  s.depth_limited_ = (flags & kFlagDepthLimited) != 0;
  const unsigned variant = (flags >> kVariantShift) & 3u;
  if (variant > 2) throw FormatError("sequence coder: unknown bit vector variant");
  s.kind_ = static_cast<BitVectorKind>(variant);
  s.n_ = in.u64();
  s.sigma_ = in.u64();
  const std::size_t distinct = in.u64();
  if (s.n_ == 0 || distinct == 0 || distinct > s.sigma_ || distinct > s.n_ || s.sigma_ > (std::size_t{1} << 32)) {
    throw FormatError("sequence coder: bad header");
  }

  // Leaves are listed left to right; leaf symbol k is the k-th smallest
  // present symbol.
  std::vector<std::pair<std::size_t, std::size_t>> table(distinct);
  std::size_t total = 0;
  for (auto& [sym, freq] : table) {
    sym = in.u64();
    freq = in.u64();
    if (sym < 1 || sym > s.sigma_ || freq == 0) throw FormatError("sequence coder: bad symbol table entry");
    total += freq;
  }
  if (total != s.n_) throw FormatError("sequence coder: frequencies do not sum to n");
  std::vector<std::size_t> by_symbol(s.sigma_ + 1, 0);
  for (const auto& [sym, freq] : table) {
    if (by_symbol[sym] != 0) throw FormatError("sequence coder: repeated symbol");
    by_symbol[sym] = freq;
  }
  std::vector<std::size_t> compact(s.sigma_ + 1, 0);
  std::vector<std::size_t> weights;
  for (std::size_t c = 1; c <= s.sigma_; ++c) {
    if (by_symbol[c] != 0) {
      compact[c] = s.symbol_of_leaf_.size();
      s.symbol_of_leaf_.push_back(c);
      weights.push_back(by_symbol[c]);
    }
  }
  std::vector<std::size_t> leaf_symbols;
  for (const auto& entry : table) leaf_symbols.push_back(compact[entry.first]);

  std::vector<std::uint8_t> shape;
  std::size_t open = 1;
  std::size_t leaves = 0;
  while (open > 0) {
    const auto k = in.u8();
    shape.push_back(k);
    open = open - 1 + k;
    if (k == 0 && ++leaves > distinct) throw FormatError("sequence coder: tree has more leaves than symbols");
  }
  try {
    s.tree_ = CodeTree::from_shape(arity, shape, leaf_symbols, weights);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("sequence coder: ") + e.what());
  }
  if (s.tree_.max_depth() >= kMaxDepth) throw FormatError("sequence coder: tree too deep");
  s.index_symbols();
  s.sequences_.resize(s.tree_.node_count());
  for (std::size_t v = 0; v < s.tree_.node_count(); ++v) {
    const auto& node = s.tree_.node(v);
    if (node.is_leaf()) continue;
    s.sequences_[v] = NodeSequence::read(in, node.child_count);
    const auto& seq = s.sequences_[v];
    if (seq.size() != node.length) throw FormatError("sequence coder: node sequence length mismatch");
    for (std::size_t k = 0; k < node.child_count; ++k) {
      if (seq.count(static_cast<unsigned>(k)) != s.tree_.node(s.tree_.child(v, static_cast<unsigned>(k))).length) {
        throw FormatError("sequence coder: node sequence counts do not match child frequencies");
      }
    }
  }
  return s;
}

std::vector<std::uint8_t> SequenceCoder::serialize() const {
  ByteWriter out;
  write(out);
  return out.take();
}

SequenceCoder SequenceCoder::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto s = read(in);
  if (!in.at_end()) throw FormatError("sequence coder: trailing bytes");
  return s;
}

}  // namespace runperm
