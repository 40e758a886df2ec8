#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "rans/random.hpp"

namespace rans {

class TreeCountTable;

/// Rooted plane ternary tree. Only internal nodes are stored, numbered in
/// preorder (root = 0); a missing child is kLeaf. Child order is significant.
///
/// Preorder numbering is canonical, so two trees are equal iff their node
/// arrays are equal.
class TernaryTree {
 public:
  static constexpr std::int32_t kLeaf = -1;

  struct Node {
    std::array<std::int32_t, 3> child{kLeaf, kLeaf, kLeaf};
    friend bool operator==(const Node&, const Node&) = default;
  };

  /// The empty tree (a single leaf).
  TernaryTree() = default;

  /// Internal node + three ordered subtrees.
  static TernaryTree join(const TernaryTree& s1, const TernaryTree& s2, const TernaryTree& s3);

  /// Number of internal nodes.
  std::size_t order() const noexcept { return nodes_.size(); }
  bool is_leaf() const noexcept { return nodes_.empty(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// Order of every subtree, indexed by node.
  std::vector<std::uint32_t> subtree_orders() const;

  friend bool operator==(const TernaryTree&, const TernaryTree&) = default;

 private:
  friend TernaryTree decode_tree(std::string_view word);
  friend TernaryTree sample_tree(std::size_t n, Rng& rng, const TreeCountTable& table);
  explicit TernaryTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}
  std::vector<Node> nodes_;
};

/// Preorder word: 'N' for an internal node, 'L' for a leaf. Length 3n+1.
std::string encode_tree(const TernaryTree& tree);

/// Inverse of encode_tree. Throws ParseError carrying the offending offset.
TernaryTree decode_tree(std::string_view word);

/// Exact counts T_0..T_max of ternary trees, from the convolution recurrence
/// of T = 1 + zT^3. Immutable once built; `extended` returns a larger copy.
class TreeCountTable {
 public:
  explicit TreeCountTable(std::size_t max_order);

  std::size_t max_order() const noexcept { return counts_.size() - 1; }
  /// T_n. Throws if n > max_order().
  const mpz_class& count(std::size_t n) const;
  /// [z^n] T(z)^2, the number of ordered pairs of trees of total order n.
  const mpz_class& pair_count(std::size_t n) const;

  TreeCountTable extended(std::size_t max_order) const;

 private:
  std::vector<mpz_class> counts_;
  std::vector<mpz_class> pairs_;
};

/// T_n, the number of ternary trees (and of RANS) of order n.
mpz_class count_trees(std::size_t n);

inline constexpr std::size_t kDefaultEnumerationCap = 8;

/// Calls `visit` once for every tree of order n. Refuses n above `cap`.
void enumerate_trees(std::size_t n, const std::function<void(const TernaryTree&)>& visit,
                     std::size_t cap = kDefaultEnumerationCap);

/// All trees of order n, in enumeration order.
std::vector<TernaryTree> all_trees(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

enum class SamplingStrategy {
  /// Child orders drawn with probability T_a T_b T_c / T_n; exact big-integer
  /// draws. Cost grows with n times the tree height.
  kRecursiveSplitting,
  /// Uniform arrangement of n 'N' and 2n+1 'L' symbols, rotated to the unique
  /// valid preorder word by the cycle lemma. Linear time.
  kCycleLemma,
};

/// Uniform random tree of order n.
TernaryTree sample_tree(std::size_t n, Rng& rng,
                        SamplingStrategy strategy = SamplingStrategy::kCycleLemma);

/// Recursive-splitting sampler reusing a caller-owned count table
/// (table.max_order() must be >= n).
TernaryTree sample_tree(std::size_t n, Rng& rng, const TreeCountTable& table);

}  // namespace rans
