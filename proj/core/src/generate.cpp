#include "runperm/generate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "runperm/sus.hpp"

namespace runperm {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  const std::uint64_t threshold = (std::uint64_t{0} - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  rng.shuffle(std::span<std::size_t>(p));
  return p;
}

std::vector<std::size_t> random_composition(std::size_t n, std::size_t parts, Rng& rng) {
  if (parts == 0 || parts > n) {
    throw InfeasibleError("cannot split " + std::to_string(n) + " into " + std::to_string(parts) + " positive parts");
  }
  // Floyd's sampling of parts-1 distinct cut points in [1, n-1].
  std::vector<bool> cut(n, false);
  const std::size_t universe = n - 1;
  for (std::size_t j = universe - (parts - 1) + 1; j <= universe; ++j) {
    const std::size_t t = rng.between(1, j);
    cut[cut[t] ? j : t] = true;
  }
  std::vector<std::size_t> lengths;
  lengths.reserve(parts);
  std::size_t prev = 0;
  for (std::size_t c = 1; c < n; ++c) {
    if (cut[c]) {
      lengths.push_back(c - prev);
      prev = c;
    }
  }
  lengths.push_back(n - prev);
  return lengths;
}

namespace {

constexpr int kAttempts = 64;

std::size_t checked_total(std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw InfeasibleError("need at least one run");
  std::size_t n = 0;
  for (auto l : lengths) {
    if (l == 0) throw InfeasibleError("run lengths must be positive");
    n += l;
  }
  return n;
}

// Run (or label) of every value: a shuffled multiset with lengths[r] copies
// of r.
std::vector<std::size_t> shuffled_labels(std::span<const std::size_t> lengths, std::size_t n, Rng& rng) {
  std::vector<std::size_t> label;
  label.reserve(n);
  for (std::size_t r = 0; r < lengths.size(); ++r) label.insert(label.end(), lengths[r], r);
  rng.shuffle(std::span<std::size_t>(label));
  return label;
}

// Makes every run boundary a descent: run r's largest value must exceed run
// r+1's smallest, i.e. in value order the last r comes after the first r+1.
// Violations are fixed by swapping those two labels. Returns false if the
// step budget runs out.
bool repair_boundaries(std::vector<std::size_t>& label, std::span<const std::size_t> lengths) {
  const std::size_t rho = lengths.size();
  std::vector<std::size_t> first(rho, label.size());
  std::vector<std::size_t> last(rho, 0);
  for (std::size_t v = 0; v < label.size(); ++v) {
    first[label[v]] = std::min(first[label[v]], v);
    last[label[v]] = v;
  }
  std::vector<std::size_t> work;
  for (std::size_t r = 0; r + 1 < rho; ++r) work.push_back(r);
  // Chains of length-1 runs must end up strictly decreasing, which costs up
  // to a quadratic number of swaps in the chain length.
  std::size_t chain = 0;
  std::size_t longest = 0;
  for (auto l : lengths) {
    chain = l == 1 ? chain + 1 : 0;
    longest = std::max(longest, chain);
  }
  std::size_t budget = 8 * label.size() + 64 + (longest + 1) * (longest + 1);
  while (!work.empty()) {
    const std::size_t r = work.back();
    work.pop_back();
    if (last[r] > first[r + 1]) continue;
    if (budget-- == 0) return false;
    const std::size_t p = last[r];
    const std::size_t q = first[r + 1];
    std::swap(label[p], label[q]);
    last[r] = q;
    first[r + 1] = p;
    if (lengths[r] == 1) {
      first[r] = q;
      if (r > 0) work.push_back(r - 1);
    }
    if (lengths[r + 1] == 1) {
      last[r + 1] = p;
      if (r + 2 < rho) work.push_back(r + 1);
    }
  }
  return true;
}

// Places values 1..n: value v goes to the next free slot of group label[v-1],
// where group g owns the positions listed in slots[g].
Permutation place_values(const std::vector<std::size_t>& label, const std::vector<std::vector<std::size_t>>& slots) {
  std::size_t n = 0;
  for (const auto& s : slots) n += s.size();
  Permutation p(n);
  std::vector<std::size_t> next(slots.size(), 0);
  for (std::size_t v = 0; v < label.size(); ++v) {
    const std::size_t g = label[v];
    p[slots[g][next[g]++]] = v + 1;
  }
  return p;
}

bool monotone_segments(std::span<const std::size_t> perm, std::span<const std::size_t> lengths,
                       std::span<const RunDirection> directions) {
  std::size_t at = 0;
  for (std::size_t r = 0; r < lengths.size(); ++r) {
    const bool up = directions[r] == RunDirection::ascending;
    for (std::size_t i = at + 1; i < at + lengths[r]; ++i) {
      if ((perm[i] > perm[i - 1]) != up) return false;
    }
    at += lengths[r];
  }
  return true;
}

}  // namespace

Permutation runs_permutation(std::span<const std::size_t> lengths, std::span<const RunDirection> directions,
                             Rng& rng) {
  const std::size_t n = checked_total(lengths);
  std::vector<RunDirection> dirs(directions.begin(), directions.end());
  if (dirs.empty()) dirs.assign(lengths.size(), RunDirection::ascending);
  if (dirs.size() != lengths.size()) throw InfeasibleError("need one direction per run");
  const bool all_ascending =
      std::all_of(dirs.begin(), dirs.end(), [](RunDirection d) { return d == RunDirection::ascending; });

  std::vector<std::vector<std::size_t>> slots(lengths.size());
  std::size_t at = 0;
  for (std::size_t r = 0; r < lengths.size(); ++r) {
    for (std::size_t k = 0; k < lengths[r]; ++k) slots[r].push_back(at + k);
    if (dirs[r] == RunDirection::descending) std::reverse(slots[r].begin(), slots[r].end());
    at += lengths[r];
  }

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    auto label = shuffled_labels(lengths, n, rng);
    if (!repair_boundaries(label, lengths)) continue;
    Permutation p = place_values(label, slots);
    if (all_ascending) {
      if (ascending_runs(p).lengths == std::vector<std::size_t>(lengths.begin(), lengths.end())) return p;
    } else if (monotone_segments(p, lengths, dirs)) {
      return p;
    }
  }
  throw InfeasibleError("could not generate a permutation with the requested runs");
}

Permutation strict_permutation(std::span<const std::size_t> lengths, std::span<const std::size_t> head_ranks,
                               Rng& rng) {
  checked_total(lengths);
  const std::size_t tau = lengths.size();
  std::vector<std::size_t> ranks(head_ranks.begin(), head_ranks.end());
  auto has_succession = [&] {
    for (std::size_t k = 0; k + 1 < tau; ++k) {
      if (ranks[k + 1] == ranks[k] + 1) return true;
    }
    return false;
  };
  if (ranks.empty()) {
    int tries = 0;
    do {
      if (++tries > 1000) throw InfeasibleError("could not draw a head order without successions");
      ranks = random_permutation(tau, rng);
    } while (has_succession());
  } else {
    if (ranks.size() != tau || !is_permutation(ranks)) throw InfeasibleError("head ranks must be a permutation of 1..tau");
    if (has_succession()) throw InfeasibleError("head ranks with k+1 right after k would merge two strict runs");
  }

  std::vector<std::size_t> block_len(tau + 1, 0);
  for (std::size_t k = 0; k < tau; ++k) block_len[ranks[k]] = lengths[k];
  std::vector<std::size_t> block_start(tau + 2, 1);
  for (std::size_t h = 1; h <= tau; ++h) block_start[h + 1] = block_start[h] + block_len[h];

  Permutation p;
  for (std::size_t k = 0; k < tau; ++k) {
    for (std::size_t t = 0; t < lengths[k]; ++t) p.push_back(block_start[ranks[k]] + t);
  }
  if (strict_ascending_runs(p).lengths != std::vector<std::size_t>(lengths.begin(), lengths.end())) {
    throw InfeasibleError("strict generator produced merged runs");
  }
  return p;
}

Permutation sus_permutation(std::size_t n, std::size_t k, InterleaveLaw law, bool strict, Rng& rng) {
  if (k == 0 || k > n) throw InfeasibleError("need 1 <= k <= n");
  std::vector<std::size_t> label;
  label.reserve(n);
  for (std::size_t l = 0; l < k; ++l) label.push_back(l);
  for (std::size_t i = k; i < n; ++i) {
    if (law == InterleaveLaw::uniform) {
      label.push_back(rng.below(k));
    } else {
      std::size_t l = 0;
      while (l + 1 < k && (rng.next() & 1u) != 0) ++l;
      label.push_back(l);
    }
  }
  rng.shuffle(std::span<std::size_t>(label));

  std::vector<std::vector<std::size_t>> slots(k);
  for (std::size_t i = 0; i < n; ++i) slots[label[i]].push_back(i);

  Permutation p;
  if (strict) {
    // Label blocks of consecutive values in a random block order.
    const Permutation order = random_permutation(k, rng);
    std::vector<std::size_t> by_rank(k);
    for (std::size_t l = 0; l < k; ++l) by_rank[order[l] - 1] = l;
    std::vector<std::size_t> value_label;
    value_label.reserve(n);
    for (auto l : by_rank) value_label.insert(value_label.end(), slots[l].size(), l);
    p = place_values(value_label, slots);
  } else {
    std::vector<std::size_t> lengths(k);
    for (std::size_t l = 0; l < k; ++l) lengths[l] = slots[l].size();
    p = place_values(shuffled_labels(lengths, n, rng), slots);
  }

  if (partition_sus(std::span<const std::size_t>(p)).k > k) {
    throw InfeasibleError("sus generator exceeded k subsequences");
  }
  if (strict && ascending_runs(inverse_permutation(p)).count() > k) {
    throw InfeasibleError("strict sus generator exceeded k runs in the inverse");
  }
  return p;
}

}  // namespace runperm
