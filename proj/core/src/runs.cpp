#include "runperm/runs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace runperm {

namespace {

RunProfile greedy_monotone(std::span<const std::size_t> v, std::size_t* comparisons) {
  RunProfile p;
  p.n = v.size();
  std::size_t cmp = 0;
  std::size_t s = 0;
  while (s < v.size()) {
    std::size_t e = s + 1;
    auto dir = RunDirection::ascending;
    if (e < v.size()) {
      ++cmp;
      dir = v[e] < v[s] ? RunDirection::descending : RunDirection::ascending;
      ++e;
      while (e < v.size()) {
        ++cmp;
        const bool down = v[e] < v[e - 1];
        if (down != (dir == RunDirection::descending)) break;
        ++e;
      }
    }
    p.starts.push_back(s + 1);
    p.lengths.push_back(e - s);
    p.directions.push_back(dir);
    s = e;
  }
  if (comparisons != nullptr) *comparisons += cmp;
  return p;
}

}  // namespace

double entropy(std::span<const std::size_t> lengths) {
  if (lengths.empty()) throw std::invalid_argument("entropy of an empty length vector");
  double n = 0;
  for (auto x : lengths) {
    if (x == 0) throw std::invalid_argument("entropy: zero entry in length vector");
    n += static_cast<double>(x);
  }
  double h = 0;
  for (auto x : lengths) {
    const double p = static_cast<double>(x) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double entropy_bits(std::span<const std::size_t> counts) {
  double n = 0;
  for (auto x : counts) n += static_cast<double>(x);
  double bits = 0;
  for (auto x : counts) {
    if (x > 0) bits += static_cast<double>(x) * std::log2(n / static_cast<double>(x));
  }
  return bits;
}

double lg_multinomial(std::span<const std::size_t> lengths) {
  double n = 0;
  double r = 0;
  for (auto x : lengths) {
    n += static_cast<double>(x);
    r -= std::lgamma(static_cast<double>(x) + 1);
  }
  r += std::lgamma(n + 1);
  return r / std::log(2.0);
}

bool is_permutation(std::span<const std::size_t> values) noexcept {
  std::vector<bool> seen(values.size() + 1, false);
  for (auto v : values) {
    if (v < 1 || v > values.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void validate_permutation(std::span<const std::size_t> values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = values[i];
    if (v < 1 || v > values.size()) {
      throw std::invalid_argument("not a permutation: value " + std::to_string(v) + " at position " +
                                  std::to_string(i + 1) + " is outside [1.." + std::to_string(values.size()) +
                                  "]");
    }
    if (seen[v]) {
      throw std::invalid_argument("not a permutation: value " + std::to_string(v) + " repeats at position " +
                                  std::to_string(i + 1));
    }
    seen[v] = true;
  }
}

Permutation inverse_permutation(std::span<const std::size_t> perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i] - 1] = i + 1;
  return inv;
}

RunProfile ascending_runs(std::span<const std::size_t> perm, std::size_t* comparisons) {
  validate_permutation(perm);
  RunProfile p;
  p.n = perm.size();
  if (perm.empty()) return p;
  std::size_t start = 0;
  for (std::size_t i = 1; i < perm.size(); ++i) {
    if (perm[i] < perm[i - 1]) {
      p.starts.push_back(start + 1);
      p.lengths.push_back(i - start);
      start = i;
    }
  }
  p.starts.push_back(start + 1);
  p.lengths.push_back(perm.size() - start);
  p.directions.assign(p.lengths.size(), RunDirection::ascending);
  if (comparisons != nullptr) *comparisons += perm.size() - 1;
  return p;
}

RunProfile monotone_runs(std::span<const std::size_t> perm, std::size_t* comparisons) {
  validate_permutation(perm);
  return greedy_monotone(perm, comparisons);
}

RunProfile monotone_runs_of_values(std::span<const std::size_t> values) { return greedy_monotone(values, nullptr); }

StrictRunProfile strict_ascending_runs(std::span<const std::size_t> perm) {
  validate_permutation(perm);
  StrictRunProfile p;
  p.n = perm.size();
  if (perm.empty()) return p;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= perm.size(); ++i) {
    if (i == perm.size() || perm[i] != perm[i - 1] + 1) {
      p.heads.push_back(start + 1);
      p.lengths.push_back(i - start);
      p.head_values.push_back(perm[start]);
      start = i;
    }
  }
  return p;
}

RunProfile head_run_profile(const StrictRunProfile& strict) { return greedy_monotone(strict.head_values, nullptr); }

}  // namespace runperm
