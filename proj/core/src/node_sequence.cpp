#include "runperm/node_sequence.hpp"

#include <algorithm>
#include <string>

#include "runperm/runs.hpp"

namespace runperm {

namespace {

std::uint64_t field_low_bits(unsigned width, unsigned per_word) noexcept {
  std::uint64_t m = 0;
  for (unsigned k = 0; k < per_word; ++k) m |= std::uint64_t{1} << (k * width);
  return m;
}

}  // namespace

NodeSequence::NodeSequence(std::span<const std::uint8_t> symbols, unsigned arity, BitVectorKind kind)
    : n_(symbols.size()), arity_(arity) {
  choose_layout();
  const unsigned w = width();
  switch (layout_) {
    case Layout::inline_word:
      for (std::size_t i = 0; i < n_; ++i) inline_ |= std::uint64_t{symbols[i]} << (i * w);
      break;
    case Layout::bits: {
      BitBuffer b(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        if (symbols[i] != 0) b.set(i);
      }
      bits_ = BitVector(b, kind);
      break;
    }
    case Layout::packed:
      packed_ = PackedInts(n_, w);
      counts_.assign(arity_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        packed_.set(i, symbols[i]);
        ++counts_[symbols[i]];
      }
      build_samples();
      break;
  }
}

void NodeSequence::build_samples() {
  const std::size_t nsamples = n_ / kSample + 1;
  samples_.assign(nsamples * arity_, 0);
  std::vector<std::uint32_t> running(arity_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i % kSample == 0) std::copy(running.begin(), running.end(), samples_.begin() + (i / kSample) * arity_);
    ++running[packed_.get(i)];
  }
  if (n_ % kSample == 0) std::copy(running.begin(), running.end(), samples_.begin() + (n_ / kSample) * arity_);
}

std::uint64_t NodeSequence::match_mask(unsigned c, std::size_t w) const noexcept {
  const unsigned wd = width();
  const std::uint64_t low = field_low_bits(wd, per_word());
  const std::uint64_t x = word(w) ^ (low * c);
  std::uint64_t y = x;
  for (unsigned s = 1; s < wd; ++s) y |= x >> s;
  return ~y & low;
}

std::size_t NodeSequence::count_range(unsigned c, std::size_t from, std::size_t to) const noexcept {
  if (from >= to) return 0;
  const unsigned pw = per_word();
  const unsigned wd = width();
  std::size_t total = 0;
  const std::size_t last = (to - 1) / pw;
  for (std::size_t w = from / pw; w <= last; ++w) {
    std::uint64_t m = match_mask(c, w);
    const std::size_t base = w * pw;
    if (from > base) m &= ~low_mask(static_cast<unsigned>((from - base) * wd));
    if (to < base + pw) m &= low_mask(static_cast<unsigned>((to - base) * wd));
    total += static_cast<std::size_t>(std::popcount(m));
  }
  return total;
}

std::size_t NodeSequence::scan_select(unsigned c, std::size_t from, std::size_t r, std::size_t j) const noexcept {
  const unsigned pw = per_word();
  const unsigned wd = width();
  for (std::size_t w = from / pw;; ++w) {
    std::uint64_t m = match_mask(c, w);
    const std::size_t base = w * pw;
    if (from > base) m &= ~low_mask(static_cast<unsigned>((from - base) * wd));
    const auto pc = static_cast<std::size_t>(std::popcount(m));
    if (r + pc >= j) return base + select_in_word(m, static_cast<unsigned>(j - r - 1)) / wd + 1;
    r += pc;
  }
}

unsigned NodeSequence::access(std::size_t i) const noexcept {
  switch (layout_) {
    case Layout::inline_word: return static_cast<unsigned>((inline_ >> ((i - 1) * width())) & low_mask(width()));
    case Layout::bits: return bits_.access_rank(i).first ? 1u : 0u;
    case Layout::packed: break;
  }
  return static_cast<unsigned>(packed_.get(i - 1));
}

std::size_t NodeSequence::rank(unsigned c, std::size_t i) const noexcept {
  switch (layout_) {
    case Layout::inline_word: return count_range(c, 0, i);
    case Layout::bits: {
      const std::size_t ones = bits_.rank1(i);
      return c != 0 ? ones : i - ones;
    }
    case Layout::packed: break;
  }
  const std::size_t s = i / kSample;
  return sample(s, c) + count_range(c, s * kSample, i);
}

std::pair<unsigned, std::size_t> NodeSequence::access_rank(std::size_t i) const noexcept {
  if (layout_ == Layout::bits) {
    const auto [bit, r] = bits_.access_rank(i);
    return {bit ? 1u : 0u, r};
  }
  const unsigned c = access(i);
  return {c, rank(c, i)};
}

std::size_t NodeSequence::select(unsigned c, std::size_t j) const noexcept {
  switch (layout_) {
    case Layout::inline_word: return scan_select(c, 0, 0, j);
    case Layout::bits: return bits_.select(c != 0, j);
    case Layout::packed: break;
  }
  std::size_t lo = 0;
  std::size_t hi = samples_.size() / arity_ - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (sample(mid, c) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return scan_select(c, lo * kSample, sample(lo, c), j);
}

std::size_t NodeSequence::count(unsigned c) const noexcept {
  switch (layout_) {
    case Layout::inline_word: return count_range(c, 0, n_);
    case Layout::bits: return bits_.count(c != 0);
    case Layout::packed: break;
  }
  return counts_[c];
}

double NodeSequence::entropy_bits() const {
  std::vector<std::size_t> counts(arity_);
  for (unsigned c = 0; c < arity_; ++c) counts[c] = count(c);
  return runperm::entropy_bits(counts);
}

BitSize NodeSequence::size_in_bits() const noexcept {
  switch (layout_) {
    case Layout::inline_word: return {n_ * width(), 64};
    case Layout::bits: return bits_.size_in_bits();
    case Layout::packed: break;
  }
  return {n_ * width(), 64 + samples_.size() * 32};
}

void NodeSequence::write(ByteWriter& out) const {
  out.u64(n_);
  switch (layout_) {
    case Layout::inline_word: {
      const std::uint64_t w[1] = {inline_};
      out.bits(w, n_ * width());
      break;
    }
    case Layout::bits: bits_.write(out); break;
    case Layout::packed: out.bits(packed_.words(), packed_.words().size() * 64); break;
  }
}

NodeSequence NodeSequence::read(ByteReader& in, unsigned arity) {
  NodeSequence seq;
  seq.n_ = in.u64();
  seq.arity_ = arity;
  seq.choose_layout();
  switch (seq.layout_) {
    case Layout::inline_word: {
      const auto w = in.bits(seq.n_ * seq.width());
      seq.inline_ = w.empty() ? 0 : w[0];
      break;
    }
    case Layout::bits:
      seq.bits_ = BitVector::read(in);
      if (seq.bits_.size() != seq.n_) throw FormatError("node sequence: bit vector length mismatch");
      break;
    case Layout::packed: {
      seq.packed_ = PackedInts(seq.n_, seq.width());
      const auto words = in.bits(seq.packed_.words().size() * 64);
      std::copy(words.begin(), words.end(), seq.packed_.mutable_words().begin());
      seq.counts_.assign(arity, 0);
      for (std::size_t i = 0; i < seq.n_; ++i) {
        const auto c = seq.packed_.get(i);
        if (c >= arity) throw FormatError("node sequence: symbol " + std::to_string(c) + " exceeds arity");
        ++seq.counts_[c];
      }
      seq.build_samples();
      break;
    }
  }
  if (seq.layout_ == Layout::inline_word) {
    for (std::size_t i = 1; i <= seq.n_; ++i) {
      if (seq.access(i) >= arity) throw FormatError("node sequence: symbol exceeds arity");
    }
  }
  return seq;
}

}  // namespace runperm
