#pragma once

// Bottom-up merge of sorted leaf areas along a code tree.
//
// `data` holds the leaf areas concatenated in left-to-right leaf order, each
// area already sorted. Internal nodes are processed children-first; when a
// node is done its covered area of `data` is sorted. With Record, the result
// holds for every internal node the child rank each merged element came from.

#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "runperm/code_tree.hpp"

namespace runperm {

struct MergeLabels {
  std::vector<std::uint8_t> symbols;  // all internal nodes, concatenated
  std::vector<std::size_t> offset;    // start of node v in symbols

  [[nodiscard]] std::span<const std::uint8_t> of(const CodeTree& tree, std::size_t v) const noexcept {
    return std::span<const std::uint8_t>(symbols).subspan(offset[v], tree.node(v).length);
  }
};

template <bool Record, class T, class Less>
MergeLabels merge_along_tree(const CodeTree& tree, std::vector<T>& data, Less&& less) {
  MergeLabels labels;
  if constexpr (Record) {
    labels.offset.assign(tree.node_count(), 0);
    std::size_t total = 0;
    for (std::size_t v = 0; v < tree.node_count(); ++v) {
      labels.offset[v] = total;
      if (!tree.node(v).is_leaf()) total += tree.node(v).length;
    }
    labels.symbols.resize(total);
  }
  if (tree.node_count() <= 1) return labels;

  std::vector<T> buffer(data.size());
  struct Front {
    std::size_t at;
    std::size_t end;
  };
  std::vector<Front> fronts;
  for (std::size_t v = tree.node_count(); v-- > 0;) {
    const auto& node = tree.node(v);
    if (node.is_leaf()) continue;
    const auto kids = tree.children(v);
    const std::size_t begin = node.pos_prime - 1;
    std::uint8_t* out_label = nullptr;
    if constexpr (Record) out_label = labels.symbols.data() + labels.offset[v];
    std::size_t out = begin;

    fronts.clear();
    for (const std::size_t c : kids) {
      const auto& cn = tree.node(c);
      fronts.push_back({cn.pos_prime - 1, cn.pos_prime - 1 + cn.length});
    }

    if (kids.size() == 2) {
      auto [a, a_end] = fronts[0];
      auto [b, b_end] = fronts[1];
      while (a < a_end && b < b_end) {
        if (less(data[b], data[a])) {
          buffer[out++] = std::move(data[b++]);
          if constexpr (Record) *out_label++ = 1;
        } else {
          buffer[out++] = std::move(data[a++]);
          if constexpr (Record) *out_label++ = 0;
        }
      }
      while (a < a_end) {
        buffer[out++] = std::move(data[a++]);
        if constexpr (Record) *out_label++ = 0;
      }
      while (b < b_end) {
        buffer[out++] = std::move(data[b++]);
        if constexpr (Record) *out_label++ = 1;
      }
    } else if (kids.size() <= 8) {
      // Linear scan of the fronts; the first minimal front wins.
      const std::size_t end = begin + node.length;
      while (out < end) {
        std::size_t best = kids.size();
        for (std::size_t k = 0; k < kids.size(); ++k) {
          if (fronts[k].at == fronts[k].end) continue;
          if (best == kids.size() || less(data[fronts[k].at], data[fronts[best].at])) best = k;
        }
        buffer[out++] = std::move(data[fronts[best].at++]);
        if constexpr (Record) *out_label++ = static_cast<std::uint8_t>(best);
      }
    } else {
      // Equal keys leave the lower child rank first.
      auto after = [&](std::uint8_t x, std::uint8_t y) {
        const auto& fx = data[fronts[x].at];
        const auto& fy = data[fronts[y].at];
        if (less(fy, fx)) return true;
        if (less(fx, fy)) return false;
        return x > y;
      };
      std::priority_queue<std::uint8_t, std::vector<std::uint8_t>, decltype(after)> heap(after);
      for (std::size_t k = 0; k < kids.size(); ++k) heap.push(static_cast<std::uint8_t>(k));
      while (!heap.empty()) {
        const std::uint8_t k = heap.top();
        heap.pop();
        buffer[out++] = std::move(data[fronts[k].at++]);
        if constexpr (Record) *out_label++ = k;
        if (fronts[k].at < fronts[k].end) heap.push(k);
      }
    }
    for (std::size_t p = begin; p < out; ++p) data[p] = std::move(buffer[p]);
  }
  return labels;
}

}  // namespace runperm
