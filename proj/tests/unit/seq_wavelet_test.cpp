#include "runperm/seq_wavelet.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "oracles.hpp"

using runperm::BitVectorKind;
using runperm::SequenceCoder;
using runperm::SequenceConfig;
using Symbols = std::vector<std::size_t>;

namespace {

// a=1 b=2 c=3 d=4 r=5
Symbols abracadabra() {
  Symbols s;
  for (char ch : std::string_view("abracadabra")) {
    switch (ch) {
      case 'a': s.push_back(1); break;
      case 'b': s.push_back(2); break;
      case 'c': s.push_back(3); break;
      case 'd': s.push_back(4); break;
      default: s.push_back(5); break;
    }
  }
  return s;
}

std::size_t naive_rank(const Symbols& s, std::size_t c, std::size_t i) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < i; ++k) r += s[k] == c ? 1 : 0;
  return r;
}

std::size_t naive_select(const Symbols& s, std::size_t c, std::size_t j) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == c && --j == 0) return k + 1;
  }
  return 0;
}

void check_all(const SequenceCoder& c, const Symbols& s, std::size_t sigma) {
  ASSERT_EQ(c.size(), s.size());
  ASSERT_EQ(c.decode(), s);
  std::vector<std::size_t> seen(sigma + 1, 0);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const std::size_t sym = s[i - 1];
    ++seen[sym];
    ASSERT_EQ(c.access(i), sym);
    const auto [a, r] = c.access_rank(i);
    ASSERT_EQ(a, sym);
    ASSERT_EQ(r, seen[sym]);
    ASSERT_EQ(c.rank(sym, i), seen[sym]);
    ASSERT_EQ(c.select(sym, seen[sym]), i);
  }
  for (std::size_t sym = 1; sym <= sigma; ++sym) {
    ASSERT_EQ(c.frequency(sym), seen[sym]);
    ASSERT_EQ(c.rank(sym, s.size()), seen[sym]);
  }
}

Symbols random_string(std::size_t n, std::size_t sigma, std::mt19937_64& rng) {
  Symbols s(n);
  for (auto& x : s) x = 1 + rng() % sigma;
  return s;
}

}  // namespace

TEST(SequenceCoder, Abracadabra) {
  const auto s = abracadabra();
  for (unsigned arity : {2u, 3u, 4u}) {
    const auto c = SequenceCoder::encode(s, 5, SequenceConfig{arity, true, BitVectorKind::compressed});
    EXPECT_EQ(c.frequency(1), 5u);
    EXPECT_EQ(c.frequency(2), 2u);
    EXPECT_EQ(c.frequency(5), 2u);
    EXPECT_EQ(c.frequency(3), 1u);
    EXPECT_EQ(c.frequency(4), 1u);
    EXPECT_EQ(c.access(5), 3u);
    EXPECT_EQ(c.rank(1, 8), 4u);
    EXPECT_EQ(c.select(2, 2), 9u);
    check_all(c, s, 5);
  }
}

TEST(SequenceCoder, ConstantString) {
  const Symbols s(40, 3);
  const auto c = SequenceCoder::encode(s, 7);
  EXPECT_EQ(c.distinct_symbols(), 1u);
  EXPECT_EQ(c.tree().node_count(), 1u);
  EXPECT_EQ(c.measured_size_bits().payload, 0u);
  EXPECT_DOUBLE_EQ(c.payload_entropy_bits(), 0.0);
  for (std::size_t i = 1; i <= 40; ++i) {
    EXPECT_EQ(c.access(i), 3u);
    EXPECT_EQ(c.select(3, i), i);
  }
  EXPECT_EQ(c.rank(1, 40), 0u);
}

TEST(SequenceCoder, UniformFourSymbols) {
  Symbols s;
  for (std::size_t i = 0; i < 400; ++i) s.push_back(1 + i % 4);
  const auto c = SequenceCoder::encode(s, 4, SequenceConfig{2, true, BitVectorKind::plain});
  EXPECT_EQ(c.tree().max_depth(), 2u);
  EXPECT_NEAR(c.payload_entropy_bits(), 800.0, 1e-6);
  EXPECT_EQ(c.measured_size_bits().payload, 800u);
}

TEST(SequenceCoder, AbsentSymbols) {
  const Symbols s{1, 4, 4, 1, 6};
  const auto c = SequenceCoder::encode(s, 8);
  EXPECT_EQ(c.distinct_symbols(), 3u);
  EXPECT_EQ(c.rank(2, 5), 0u);
  EXPECT_EQ(c.rank(8, 3), 0u);
  EXPECT_EQ(c.rank(99, 3), 0u);
  EXPECT_THROW((void)c.select(2, 1), std::out_of_range);
  EXPECT_THROW((void)c.select(4, 3), std::out_of_range);
  EXPECT_THROW((void)c.select(4, 0), std::out_of_range);
  EXPECT_THROW((void)c.access(0), std::out_of_range);
  EXPECT_THROW((void)c.access(6), std::out_of_range);
  EXPECT_THROW((void)c.rank(1, 6), std::out_of_range);
  check_all(c, s, 8);
}

TEST(SequenceCoder, RejectsBadInput) {
  EXPECT_THROW((void)SequenceCoder::encode(Symbols{}, 3), std::invalid_argument);
  EXPECT_THROW((void)SequenceCoder::encode(Symbols{1, 4}, 3), std::invalid_argument);
  EXPECT_THROW((void)SequenceCoder::encode(Symbols{0, 1}, 3), std::invalid_argument);
}

TEST(SequenceCoder, MatchesOracleOnRandomStrings) {
  std::mt19937_64 rng(61);
  const std::size_t sigmas[] = {2, 5, 26, 200};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t sigma = sigmas[trial % 4];
    const std::size_t n = 1 + rng() % 10000;
    const auto s = random_string(n, sigma, rng);
    const SequenceConfig cfg{static_cast<unsigned>(2 + rng() % 5), rng() % 2 == 0,
                             static_cast<BitVectorKind>(rng() % 3)};
    const auto c = SequenceCoder::encode(s, sigma, cfg);
    // Occurrence lists answer rank by binary search and select by index.
    std::vector<std::vector<std::size_t>> occ(sigma + 1);
    for (std::size_t i = 1; i <= n; ++i) occ[s[i - 1]].push_back(i);
    for (int q = 0; q < 1000; ++q) {
      const std::size_t i = 1 + rng() % n;
      const std::size_t sym = 1 + rng() % sigma;
      const auto& list = occ[sym];
      ASSERT_EQ(c.access(i), s[i - 1]);
      ASSERT_EQ(c.rank(sym, i),
                static_cast<std::size_t>(std::upper_bound(list.begin(), list.end(), i) - list.begin()));
      if (!list.empty()) {
        const std::size_t j = 1 + rng() % list.size();
        ASSERT_EQ(c.select(sym, j), list[j - 1]);
      }
    }
    if (trial % 100 == 0) {
      for (std::size_t sym = 1; sym <= sigma; ++sym) {
        if (c.frequency(sym) > 0) EXPECT_EQ(c.select(sym, 1), naive_select(s, sym, 1));
        EXPECT_EQ(c.rank(sym, n / 2), naive_rank(s, sym, n / 2));
      }
    }
  }
}

TEST(SequenceCoder, SkewedStringsExhaustiveQueries) {
  std::mt19937_64 rng(62);
  std::geometric_distribution<std::size_t> geo(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sigma = 2 + rng() % 40;
    Symbols s(1 + rng() % 3000);
    for (auto& x : s) x = 1 + std::min(geo(rng), sigma - 1);
    for (unsigned arity : {2u, 3u, 5u}) {
      for (auto kind : {BitVectorKind::plain, BitVectorKind::compressed, BitVectorKind::sparse}) {
        check_all(SequenceCoder::encode(s, sigma, SequenceConfig{arity, true, kind}), s, sigma);
      }
    }
  }
}

TEST(SequenceCoder, EntropyIdentityAndDepth) {
  std::mt19937_64 rng(63);
  std::geometric_distribution<std::size_t> geo(0.2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t sigma = 2 + rng() % 100;
    Symbols s(1 + rng() % 20000);
    for (auto& x : s) x = 1 + std::min(geo(rng), sigma - 1);
    const unsigned arity = 2 + static_cast<unsigned>(rng() % 6);
    const auto c = SequenceCoder::encode(s, sigma, SequenceConfig{arity, false, BitVectorKind::compressed});
    const double nh = oracle::string_entropy_bits(s);
    EXPECT_NEAR(c.payload_entropy_bits(), nh, 1e-6 * std::max(1.0, nh));
    const double h0 = nh / static_cast<double>(s.size());
    EXPECT_LE(c.tree().average_depth(), 1.0 + h0 / std::log2(static_cast<double>(arity)) + 1e-9);
    // Depth-limited trees stay within the limit.
    const auto lim = SequenceCoder::encode(s, sigma, SequenceConfig{arity, true, BitVectorKind::compressed});
    EXPECT_LE(lim.tree().max_depth(), runperm::depth_limit_for(lim.distinct_symbols(), arity));
    EXPECT_NEAR(lim.payload_entropy_bits(), nh, 1e-6 * std::max(1.0, nh));
  }
}

TEST(SequenceCoder, SerializationRoundTrip) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t sigma = 1 + rng() % 30;
    const auto s = random_string(1 + rng() % 2000, sigma, rng);
    const auto c = SequenceCoder::encode(s, sigma + rng() % 3,
                                         SequenceConfig{static_cast<unsigned>(2 + rng() % 4), rng() % 2 == 0,
                                                        static_cast<BitVectorKind>(rng() % 3)});
    const auto bytes = c.serialize();
    const auto back = SequenceCoder::deserialize(bytes);
    EXPECT_EQ(back.serialize(), bytes);
    EXPECT_EQ(back.alphabet_size(), c.alphabet_size());
    check_all(back, s, sigma);
  }
  auto bytes = SequenceCoder::encode(abracadabra(), 5).serialize();
  bytes[1] = '?';
  EXPECT_THROW((void)SequenceCoder::deserialize(bytes), runperm::FormatError);
  bytes = SequenceCoder::encode(abracadabra(), 5).serialize();
  bytes.resize(bytes.size() - 2);
  EXPECT_THROW((void)SequenceCoder::deserialize(bytes), runperm::FormatError);
}
