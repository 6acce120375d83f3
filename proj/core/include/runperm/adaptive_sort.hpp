#pragma once

// Adaptive merge sorts driven by the wavelet tree construction, without
// storing any bitmaps: detect runs (or shuffled upsequences), lay them out in
// the leaf order of a binary Huffman tree over their lengths, and merge
// bottom-up along the tree.
//
// Ascending runs are non-decreasing; descending runs (mixed mode) are
// strictly decreasing so that reversing them keeps equal elements in input
// order. Merges take the left operand on ties.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "runperm/code_tree.hpp"
#include "runperm/runs.hpp"
#include "runperm/sus.hpp"
#include "runperm/tree_merge.hpp"

namespace runperm {

struct SortStats {
  std::size_t comparisons = 0;
  std::size_t runs_detected = 0;  // runs, or subsequences for sort_by_sus
  double entropy = 0.0;           // of the detected length vector
  std::size_t element_moves = 0;  // placements into the leaf layout plus merge outputs
};

template <class T>
struct SortResult {
  std::vector<T> sorted;
  SortStats stats;
};

namespace detail {

// Lays the groups out in leaf order, merges along a binary Huffman tree and
// records moves. groups[r] must already be sorted.
template <class T, class Less>
std::vector<T> merge_groups(std::vector<std::vector<T>>& groups, Less& less, SortStats& stats) {
  std::vector<std::size_t> lengths(groups.size());
  std::size_t n = 0;
  for (std::size_t r = 0; r < groups.size(); ++r) {
    lengths[r] = groups[r].size();
    n += lengths[r];
  }
  stats.runs_detected = groups.size();
  stats.entropy = groups.size() > 1 ? entropy(lengths) : 0.0;
  if (groups.size() == 1) return std::move(groups[0]);

  const CodeTree tree = CodeTree::huffman(lengths, 2);
  std::vector<T> data(n);
  for (std::size_t r = 0; r < groups.size(); ++r) {
    const std::size_t at = tree.node(tree.leaf_of(r)).pos_prime - 1;
    std::move(groups[r].begin(), groups[r].end(), data.begin() + static_cast<std::ptrdiff_t>(at));
  }
  stats.element_moves += n;
  for (const auto& node : tree.nodes()) {
    if (!node.is_leaf()) stats.element_moves += node.length;
  }
  merge_along_tree<false>(tree, data, less);
  return data;
}

template <class Less>
auto counting(Less& less, std::size_t& count) {
  return [&less, &count](const auto& a, const auto& b) {
    ++count;
    return less(a, b);
  };
}

}  // namespace detail

// Sorts by merging contiguous runs; with mixed, descending runs are detected
// and reversed too. Run detection compares every adjacent pair once.
template <class T, class Less = std::less<>>
SortResult<T> sort_by_runs(std::span<const T> values, bool mixed = false, Less less = {}) {
  SortResult<T> out;
  if (values.empty()) return out;
  auto cmp = detail::counting(less, out.stats.comparisons);

  std::vector<std::vector<T>> runs;
  const std::size_t n = values.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    if (mixed && j < n && cmp(values[j], values[i])) {
      ++j;
      while (j < n && cmp(values[j], values[j - 1])) ++j;
      runs.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i), values.begin() + static_cast<std::ptrdiff_t>(j));
      std::reverse(runs.back().begin(), runs.back().end());
      out.stats.element_moves += j - i;
    } else {
      // The pair (i, i+1) was compared above in mixed mode and is ascending.
      if (mixed && j < n) ++j;
      while (j < n && !cmp(values[j], values[j - 1])) ++j;
      runs.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(i), values.begin() + static_cast<std::ptrdiff_t>(j));
    }
    i = j;
  }
  out.sorted = detail::merge_groups(runs, cmp, out.stats);
  return out;
}

// Sorts by splitting the input into the fewest non-decreasing subsequences
// (greedy, splay-searched) and merging those.
template <class T, class Less = std::less<>>
SortResult<T> sort_by_sus(std::span<const T> values, Less less = {}) {
  SortResult<T> out;
  if (values.empty()) return out;
  auto cmp = detail::counting(less, out.stats.comparisons);

  const SusPartition p = partition_sus(values, cmp);
  std::vector<std::vector<T>> groups(p.k);
  for (std::size_t l = 0; l < p.k; ++l) groups[l].reserve(p.lengths[l]);
  for (std::size_t i = 0; i < values.size(); ++i) groups[p.labels[i] - 1].push_back(values[i]);
  out.sorted = detail::merge_groups(groups, cmp, out.stats);
  return out;
}

}  // namespace runperm
