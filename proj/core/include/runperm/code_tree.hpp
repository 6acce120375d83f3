#pragma once

// Huffman-shaped code trees over run lengths or symbol frequencies.
//
// Nodes are stored in preorder (root = 0). Leaves carry the 0-based index of
// the weight they stand for ("symbol"); children are ordered left to right,
// which fixes the leaf order phi.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace runperm {

struct CodeTreeNode {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::size_t parent = npos;
  std::size_t child_begin = 0;  // offset into the tree's child list
  unsigned child_count = 0;
  unsigned child_rank = 0;     // index among the parent's children
  std::size_t length = 0;      // total weight below
  std::size_t leaves = 0;      // leaf count below
  std::size_t pos_prime = 1;   // 1-based start of the covered area in leaf order
  std::size_t depth = 0;
  std::size_t symbol = npos;   // leaves only
  std::size_t leaf_rank = npos;  // leaves only: 0-based left-to-right rank

  [[nodiscard]] bool is_leaf() const noexcept { return child_count == 0; }
};

class CodeTree {
 public:
  CodeTree() = default;

  // t-ary Huffman tree. Zero-weight dummies pad the leaf count so every merge
  // takes t nodes; they are removed afterwards. Ties take leaves before
  // internal nodes and earlier nodes before later ones.
  static CodeTree huffman(std::span<const std::size_t> weights, unsigned arity);

  // Rebuilds a tree from its preorder child counts and the symbols of its
  // leaves in left-to-right order. Throws std::invalid_argument when the shape
  // is malformed.
  static CodeTree from_shape(unsigned arity, std::span<const std::uint8_t> child_counts,
                             std::span<const std::size_t> leaf_symbols, std::span<const std::size_t> weights);

  // Every leaf ends at depth <= max_depth. Subtrees that cannot be kept within
  // the budget are replaced by balanced arity-t trees over their leaves,
  // rebalancing as deep in the tree as possible. Throws std::invalid_argument
  // if max_depth < ceil(log_t(leaf_count)).
  [[nodiscard]] CodeTree limit_depth(std::size_t max_depth) const;

  [[nodiscard]] unsigned arity() const noexcept { return arity_; }
  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
  [[nodiscard]] const CodeTreeNode& node(std::size_t v) const noexcept { return nodes_[v]; }
  [[nodiscard]] const std::vector<CodeTreeNode>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] std::span<const std::size_t> children(std::size_t v) const noexcept {
    return std::span<const std::size_t>(child_ids_).subspan(nodes_[v].child_begin, nodes_[v].child_count);
  }
  [[nodiscard]] std::size_t child(std::size_t v, unsigned k) const noexcept { return child_ids_[nodes_[v].child_begin + k]; }
  [[nodiscard]] std::size_t leaf_count() const noexcept { return leaf_of_symbol_.size(); }
  [[nodiscard]] std::size_t leaf_of(std::size_t symbol) const noexcept { return leaf_of_symbol_[symbol]; }
  // Leaf node ids in left-to-right order.
  [[nodiscard]] const std::vector<std::size_t>& leaves_in_order() const noexcept { return leaves_in_order_; }
  [[nodiscard]] std::span<const std::size_t> weights() const noexcept { return weights_; }

  [[nodiscard]] std::size_t total_weight() const noexcept { return nodes_.empty() ? 0 : nodes_[0].length; }
  [[nodiscard]] std::size_t max_depth() const noexcept;
  // L = sum n_i * depth_i.
  [[nodiscard]] std::size_t weighted_path_length() const noexcept;
  // L / n.
  [[nodiscard]] double average_depth() const noexcept;
  // phi[i-1] = left-to-right rank (1-based) of the leaf for weight i; and its
  // inverse.
  [[nodiscard]] std::pair<std::vector<std::size_t>, std::vector<std::size_t>> leaf_order() const;
  // Preorder child counts, as used by from_shape.
  [[nodiscard]] std::vector<std::uint8_t> shape() const;

 private:
  // Construction-time node; children are a slice of a shared id list.
  struct Draft {
    std::size_t child_begin = 0;
    unsigned child_count = 0;
    std::size_t symbol = CodeTreeNode::npos;
  };
  struct DraftForest {
    std::vector<Draft> drafts;
    std::vector<std::size_t> children;
  };

  // Converts the draft tree rooted at `root` into the preorder representation.
  static CodeTree finalize(unsigned arity, const DraftForest& forest, std::size_t root,
                           std::span<const std::size_t> weights);

  unsigned arity_ = 2;
  std::vector<CodeTreeNode> nodes_;
  std::vector<std::size_t> child_ids_;
  std::vector<std::size_t> leaf_of_symbol_;
  std::vector<std::size_t> leaves_in_order_;
  std::vector<std::size_t> weights_;
};

// Depth bound applied when depth limiting is on: 2 ceil(lg rho) for t = 2,
// ceil(5 lg rho / lg t) otherwise; 0 for a single leaf.
[[nodiscard]] std::size_t depth_limit_for(std::size_t leaf_count, unsigned arity) noexcept;

// Smallest d with t^d >= leaf_count.
[[nodiscard]] std::size_t min_feasible_depth(std::size_t leaf_count, unsigned arity) noexcept;

}  // namespace runperm
