#include "runperm/code_tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "runperm/bit_ops.hpp"

namespace runperm {

namespace {

constexpr std::size_t kDummy = CodeTreeNode::npos - 1;

void check_arity(unsigned arity) {
  if (arity < 2 || arity > 255) throw std::invalid_argument("code tree arity must be in [2..255]");
}

}  // namespace

std::size_t min_feasible_depth(std::size_t leaf_count, unsigned arity) noexcept {
  std::size_t d = 0;
  std::size_t cap = 1;
  while (cap < leaf_count) {
    cap = cap > leaf_count / arity ? leaf_count : cap * arity;
    ++d;
  }
  return d;
}

std::size_t depth_limit_for(std::size_t leaf_count, unsigned arity) noexcept {
  if (leaf_count <= 1) return 0;
  std::size_t limit = 0;
  if (arity == 2) {
    limit = 2 * static_cast<std::size_t>(ceil_log2(leaf_count));
  } else {
    const double bound = 5.0 * std::log2(static_cast<double>(leaf_count)) / std::log2(static_cast<double>(arity));
    limit = static_cast<std::size_t>(std::ceil(bound - 1e-9));
  }
  return std::max(limit, min_feasible_depth(leaf_count, arity));
}

CodeTree CodeTree::huffman(std::span<const std::size_t> weights, unsigned arity) {
  check_arity(arity);
  if (weights.empty()) throw std::invalid_argument("huffman: empty weight vector");
  for (auto w : weights) {
    if (w == 0) throw std::invalid_argument("huffman: zero weight");
  }
  const std::size_t r = weights.size();
  DraftForest f;
  if (r == 1) {
    f.drafts.push_back({0, 0, 0});
    return finalize(arity, f, 0, weights);
  }

  const std::size_t dummies = ((arity - 1) - (r - 1) % (arity - 1)) % (arity - 1);
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });

  // Leaves sit in creation order (dummies first, then by weight), so the
  // leaf queue is just a cursor over drafts [0, r + dummies).
  const std::size_t leaf_total = r + dummies;
  f.drafts.reserve(2 * leaf_total);
  std::vector<std::size_t> weight;
  weight.reserve(2 * leaf_total);
  for (std::size_t k = 0; k < dummies; ++k) {
    f.drafts.push_back({0, 0, kDummy});
    weight.push_back(0);
  }
  for (auto s : order) {
    f.drafts.push_back({0, 0, s});
    weight.push_back(weights[s]);
  }

  std::size_t next_leaf = 0;
  std::size_t next_node = leaf_total;
  std::size_t remaining = leaf_total;
  while (remaining > 1) {
    Draft merged{f.children.size(), 0, CodeTreeNode::npos};
    std::size_t w = 0;
    for (unsigned k = 0; k < arity; ++k) {
      std::size_t pick;
      const bool node_available = next_node < f.drafts.size();
      if (next_leaf < leaf_total && (!node_available || weight[next_leaf] <= weight[next_node])) {
        pick = next_leaf++;
      } else {
        pick = next_node++;
      }
      w += weight[pick];
      if (f.drafts[pick].symbol != kDummy) {
        f.children.push_back(pick);
        ++merged.child_count;
      }
    }
    f.drafts.push_back(merged);
    weight.push_back(w);
    remaining -= arity - 1;
  }
  return finalize(arity, f, f.drafts.size() - 1, weights);
}

CodeTree CodeTree::finalize(unsigned arity, const DraftForest& f, std::size_t root,
                            std::span<const std::size_t> weights) {
  CodeTree t;
  t.arity_ = arity;
  t.weights_.assign(weights.begin(), weights.end());

  // Preorder numbering of the drafts reachable from root.
  std::vector<std::size_t> preorder;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t d = stack.back();
    stack.pop_back();
    preorder.push_back(d);
    const auto& dr = f.drafts[d];
    for (unsigned k = dr.child_count; k-- > 0;) stack.push_back(f.children[dr.child_begin + k]);
  }
  std::vector<std::size_t> id_of(f.drafts.size(), CodeTreeNode::npos);
  for (std::size_t v = 0; v < preorder.size(); ++v) id_of[preorder[v]] = v;

  t.nodes_.resize(preorder.size());
  t.child_ids_.reserve(preorder.size());
  t.leaf_of_symbol_.assign(weights.size(), CodeTreeNode::npos);
  for (std::size_t v = 0; v < preorder.size(); ++v) {
    const auto& dr = f.drafts[preorder[v]];
    auto& node = t.nodes_[v];
    node.child_begin = t.child_ids_.size();
    node.child_count = dr.child_count;
    for (unsigned k = 0; k < dr.child_count; ++k) {
      const std::size_t c = id_of[f.children[dr.child_begin + k]];
      t.child_ids_.push_back(c);
      t.nodes_[c].parent = v;
      t.nodes_[c].child_rank = k;
    }
    if (node.is_leaf()) {
      if (dr.symbol >= weights.size() || t.leaf_of_symbol_[dr.symbol] != CodeTreeNode::npos) {
        throw std::invalid_argument("code tree: leaf symbols must be distinct and in range");
      }
      node.symbol = dr.symbol;
      node.leaf_rank = t.leaves_in_order_.size();
      t.leaves_in_order_.push_back(v);
      t.leaf_of_symbol_[dr.symbol] = v;
    }
  }
  if (t.leaves_in_order_.size() != weights.size()) {
    throw std::invalid_argument("code tree: leaf count does not match weight count");
  }
  for (std::size_t v = t.nodes_.size(); v-- > 0;) {
    auto& node = t.nodes_[v];
    if (node.is_leaf()) {
      node.length = weights[node.symbol];
      node.leaves = 1;
    } else {
      for (auto c : t.children(v)) {
        node.length += t.nodes_[c].length;
        node.leaves += t.nodes_[c].leaves;
      }
    }
  }
  for (std::size_t v = 0; v < t.nodes_.size(); ++v) {
    std::size_t pos = t.nodes_[v].pos_prime;
    for (auto c : t.children(v)) {
      t.nodes_[c].pos_prime = pos;
      t.nodes_[c].depth = t.nodes_[v].depth + 1;
      pos += t.nodes_[c].length;
    }
  }
  return t;
}

CodeTree CodeTree::from_shape(unsigned arity, std::span<const std::uint8_t> child_counts,
                              std::span<const std::size_t> leaf_symbols, std::span<const std::size_t> weights) {
  check_arity(arity);
  if (child_counts.empty()) throw std::invalid_argument("code tree shape: no nodes");
  DraftForest f;
  f.drafts.resize(child_counts.size());
  std::vector<std::vector<std::size_t>> kids(child_counts.size());
  std::size_t next_leaf = 0;
  // (draft id, children still to attach)
  std::vector<std::pair<std::size_t, unsigned>> open;
  for (std::size_t v = 0; v < child_counts.size(); ++v) {
    if (v > 0) {
      if (open.empty()) throw std::invalid_argument("code tree shape: trailing nodes");
      kids[open.back().first].push_back(v);
      if (--open.back().second == 0) open.pop_back();
    }
    const unsigned k = child_counts[v];
    if (k > arity) throw std::invalid_argument("code tree shape: node has more than t children");
    if (k == 0) {
      if (next_leaf >= leaf_symbols.size()) throw std::invalid_argument("code tree shape: too many leaves");
      f.drafts[v].symbol = leaf_symbols[next_leaf++];
    } else {
      open.emplace_back(v, k);
    }
  }
  if (!open.empty() || next_leaf != leaf_symbols.size()) {
    throw std::invalid_argument("code tree shape: node count does not match leaves");
  }
  for (std::size_t v = 0; v < kids.size(); ++v) {
    f.drafts[v].child_begin = f.children.size();
    f.drafts[v].child_count = static_cast<unsigned>(kids[v].size());
    f.children.insert(f.children.end(), kids[v].begin(), kids[v].end());
  }
  return finalize(arity, f, 0, weights);
}

CodeTree CodeTree::limit_depth(std::size_t max_depth) const {
  if (max_depth < min_feasible_depth(leaf_count(), arity_)) {
    throw std::invalid_argument("limit_depth: " + std::to_string(leaf_count()) + " leaves do not fit in depth " +
                                std::to_string(max_depth) + " at arity " + std::to_string(arity_));
  }
  if (this->max_depth() <= max_depth) return *this;

  std::vector<std::size_t> height(nodes_.size(), 0);
  for (std::size_t v = nodes_.size(); v-- > 0;) {
    for (auto c : children(v)) height[v] = std::max(height[v], height[c] + 1);
  }

  DraftForest f;
  auto add = [&f](std::span<const std::size_t> kids, std::size_t symbol) {
    f.drafts.push_back({f.children.size(), static_cast<unsigned>(kids.size()), symbol});
    f.children.insert(f.children.end(), kids.begin(), kids.end());
    return f.drafts.size() - 1;
  };
  auto balanced = [&](auto&& self, std::span<const std::size_t> syms) -> std::size_t {
    if (syms.size() == 1) return add({}, syms[0]);
    const std::size_t g = std::min<std::size_t>(arity_, syms.size());
    const std::size_t base = syms.size() / g;
    const std::size_t extra = syms.size() % g;
    std::array<std::size_t, 256> kids{};
    std::size_t at = 0;
    for (std::size_t k = 0; k < g; ++k) {
      const std::size_t len = base + (k < extra ? 1 : 0);
      kids[k] = self(self, syms.subspan(at, len));
      at += len;
    }
    return add(std::span<const std::size_t>(kids.data(), g), CodeTreeNode::npos);
  };
  auto copy = [&](auto&& self, std::size_t v) -> std::size_t {
    if (nodes_[v].is_leaf()) return add({}, nodes_[v].symbol);
    std::array<std::size_t, 256> kids{};
    const auto ch = children(v);
    for (std::size_t k = 0; k < ch.size(); ++k) kids[k] = self(self, ch[k]);
    return add(std::span<const std::size_t>(kids.data(), ch.size()), CodeTreeNode::npos);
  };
  auto process = [&](auto&& self, std::size_t v, std::size_t budget) -> std::size_t {
    if (height[v] <= budget) return copy(copy, v);
    bool children_fit = budget > 0;
    for (auto c : children(v)) {
      if (budget == 0 || min_feasible_depth(nodes_[c].leaves, arity_) > budget - 1) children_fit = false;
    }
    if (children_fit) {
      std::array<std::size_t, 256> kids{};
      const auto ch = children(v);
      for (std::size_t k = 0; k < ch.size(); ++k) kids[k] = self(self, ch[k], budget - 1);
      return add(std::span<const std::size_t>(kids.data(), ch.size()), CodeTreeNode::npos);
    }
    // Leaves below v (a contiguous preorder range), heaviest first.
    std::vector<std::size_t> syms;
    for (std::size_t u = v; u == v || (u < nodes_.size() && nodes_[u].depth > nodes_[v].depth); ++u) {
      if (nodes_[u].is_leaf()) syms.push_back(nodes_[u].symbol);
    }
    std::stable_sort(syms.begin(), syms.end(), [&](std::size_t a, std::size_t b) { return weights_[a] > weights_[b]; });
    return balanced(balanced, syms);
  };
  const std::size_t root = process(process, 0, max_depth);
  return finalize(arity_, f, root, weights_);
}

std::size_t CodeTree::max_depth() const noexcept {
  std::size_t d = 0;
  for (auto v : leaves_in_order_) d = std::max(d, nodes_[v].depth);
  return d;
}

std::size_t CodeTree::weighted_path_length() const noexcept {
  std::size_t total = 0;
  for (auto v : leaves_in_order_) total += nodes_[v].length * nodes_[v].depth;
  return total;
}

double CodeTree::average_depth() const noexcept {
  const std::size_t n = total_weight();
  return n == 0 ? 0.0 : static_cast<double>(weighted_path_length()) / static_cast<double>(n);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> CodeTree::leaf_order() const {
  std::vector<std::size_t> phi(leaf_count());
  std::vector<std::size_t> phi_inv(leaf_count());
  for (std::size_t s = 0; s < leaf_count(); ++s) {
    const std::size_t rank = nodes_[leaf_of_symbol_[s]].leaf_rank;
    phi[s] = rank + 1;
    phi_inv[rank] = s + 1;
  }
  return {std::move(phi), std::move(phi_inv)};
}

std::vector<std::uint8_t> CodeTree::shape() const {
  std::vector<std::uint8_t> counts(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) counts[v] = static_cast<std::uint8_t>(nodes_[v].child_count);
  return counts;
}

}  // namespace runperm
