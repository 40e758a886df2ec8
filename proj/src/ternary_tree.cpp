#include "rans/ternary_tree.hpp"

#include <algorithm>
#include <utility>

#include "rans/errors.hpp"

namespace rans {

TernaryTree TernaryTree::join(const TernaryTree& s1, const TernaryTree& s2, const TernaryTree& s3) {
  std::vector<Node> nodes;
  nodes.reserve(1 + s1.order() + s2.order() + s3.order());
  nodes.emplace_back();
  const std::array<const TernaryTree*, 3> parts{&s1, &s2, &s3};
  for (std::size_t slot = 0; slot < 3; ++slot) {
    const auto& sub = parts[slot]->nodes_;
    if (sub.empty()) continue;
    const auto offset = static_cast<std::int32_t>(nodes.size());
    nodes[0].child[slot] = offset;
    for (Node n : sub) {
      for (auto& c : n.child)
        if (c != kLeaf) c += offset;
      nodes.push_back(n);
    }
  }
  return TernaryTree(std::move(nodes));
}

std::vector<std::uint32_t> TernaryTree::subtree_orders() const {
  std::vector<std::uint32_t> size(nodes_.size(), 1);
  for (std::size_t i = nodes_.size(); i-- > 0;)
    for (auto c : nodes_[i].child)
      if (c != kLeaf) size[i] += size[static_cast<std::size_t>(c)];
  return size;
}

std::string encode_tree(const TernaryTree& tree) {
  const auto& nodes = tree.nodes();
  std::string out;
  out.reserve(3 * nodes.size() + 1);
  std::vector<std::int32_t> stack{nodes.empty() ? TernaryTree::kLeaf : 0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v == TernaryTree::kLeaf) {
      out.push_back('L');
      continue;
    }
    out.push_back('N');
    const auto& ch = nodes[static_cast<std::size_t>(v)].child;
    stack.insert(stack.end(), {ch[2], ch[1], ch[0]});
  }
  return out;
}

TernaryTree decode_tree(std::string_view word) {
  if (word.empty()) throw ParseError(0, "empty tree word");
  std::vector<TernaryTree::Node> nodes;
  // Open child slots, innermost last: (parent, slot); parent -1 is the root.
  std::vector<std::pair<std::int32_t, int>> open{{-1, 0}};
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char ch = word[i];
    if (ch != 'N' && ch != 'L') throw ParseError(i, std::string("invalid symbol '") + ch + "'");
    if (open.empty()) throw ParseError(i, "trailing symbols after a complete tree");
    const auto [parent, slot] = open.back();
    open.pop_back();
    if (ch == 'L') continue;
    const auto idx = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    if (parent >= 0) nodes[static_cast<std::size_t>(parent)].child[static_cast<std::size_t>(slot)] = idx;
    open.insert(open.end(), {{idx, 2}, {idx, 1}, {idx, 0}});
  }
  if (!open.empty()) throw ParseError(word.size(), "word ends with unfilled child slots");
  return TernaryTree(std::move(nodes));
}

TreeCountTable::TreeCountTable(std::size_t max_order) {
  counts_.reserve(max_order + 1);
  pairs_.reserve(max_order + 1);
  for (std::size_t n = 0; n <= max_order; ++n) {
    // T_n = sum_{a} T_a * [z^{n-1-a}] T^2, with the pair table built alongside.
    mpz_class t = (n == 0) ? mpz_class(1) : mpz_class(0);
    for (std::size_t a = 0; a + 1 <= n; ++a) t += counts_[a] * pairs_[n - 1 - a];
    counts_.push_back(t);
    mpz_class p = 0;
    for (std::size_t a = 0; a <= n; ++a) p += counts_[a] * counts_[n - a];
    pairs_.push_back(p);
  }
}

const mpz_class& TreeCountTable::count(std::size_t n) const {
  if (n >= counts_.size())
    throw Error(ErrorCode::kOutOfRange, "TreeCountTable: order " + std::to_string(n) + " beyond table");
  return counts_[n];
}

const mpz_class& TreeCountTable::pair_count(std::size_t n) const {
  if (n >= pairs_.size())
    throw Error(ErrorCode::kOutOfRange, "TreeCountTable: order " + std::to_string(n) + " beyond table");
  return pairs_[n];
}

TreeCountTable TreeCountTable::extended(std::size_t max_order) const {
  return TreeCountTable(std::max(max_order, this->max_order()));
}

mpz_class count_trees(std::size_t n) { return TreeCountTable(n).count(n); }

std::vector<TernaryTree> all_trees(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceeded("enumerate_trees", n, cap);
  std::vector<std::vector<TernaryTree>> by_order(n + 1);
  by_order[0].emplace_back();
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; a + b < m; ++b) {
        const std::size_t c = m - 1 - a - b;
        for (const auto& x : by_order[a])
          for (const auto& y : by_order[b])
            for (const auto& z : by_order[c]) by_order[m].push_back(TernaryTree::join(x, y, z));
      }
  }
  return std::move(by_order[n]);
}

void enumerate_trees(std::size_t n, const std::function<void(const TernaryTree&)>& visit,
                     std::size_t cap) {
  for (const auto& t : all_trees(n, cap)) visit(t);
}

namespace {

TernaryTree sample_cycle_lemma(std::size_t n, Rng& rng) {
  const std::size_t len = 3 * n + 1;
  std::string word(len, 'L');
  std::fill_n(word.begin(), n, 'N');
  for (std::size_t i = len; i > 1; --i) std::swap(word[i - 1], word[uniform_below(rng, i)]);

  // Step +2 for 'N', -1 for 'L'; total is -1. The valid rotation starts just
  // after the first position where the prefix sum reaches its minimum.
  long long sum = 0, best = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < len; ++i) {
    sum += (word[i] == 'N') ? 2 : -1;
    if (sum < best) {
      best = sum;
      start = i + 1;
    }
  }
  std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(start % len), word.end());
  return decode_tree(word);
}

}  // namespace

TernaryTree sample_tree(std::size_t n, Rng& rng, const TreeCountTable& table) {
  if (table.max_order() < n)
    throw Error(ErrorCode::kInvalidArgument, "sample_tree: count table too small");
  std::vector<std::pair<std::int32_t, int>> open;
  std::vector<std::uint32_t> pending_order;
  std::vector<TernaryTree::Node> nodes;
  nodes.reserve(n);
  auto push = [&](std::int32_t parent, int slot, std::size_t m) {
    open.emplace_back(parent, slot);
    pending_order.push_back(static_cast<std::uint32_t>(m));
  };
  push(-1, 0, n);
  while (!open.empty()) {
    const auto [parent, slot] = open.back();
    const std::size_t m = pending_order.back();
    open.pop_back();
    pending_order.pop_back();
    if (m == 0) continue;
    const auto idx = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    if (parent >= 0) nodes[static_cast<std::size_t>(parent)].child[static_cast<std::size_t>(slot)] = idx;

    // x uniform in [0, T_m); select a by cumulative weights T_a * P_{m-1-a},
    // then reuse the quotient to select b within T_b * T_{rest-b}.
    mpz_class x = uniform_below(rng, table.count(m));
    std::size_t a = 0;
    for (;; ++a) {
      const mpz_class w = table.count(a) * table.pair_count(m - 1 - a);
      if (x < w) break;
      x -= w;
    }
    const std::size_t rest = m - 1 - a;
    mpz_class y = x / table.count(a);
    std::size_t b = 0;
    for (;; ++b) {
      const mpz_class w = table.count(b) * table.count(rest - b);
      if (y < w) break;
      y -= w;
    }
    const std::size_t c = rest - b;
    push(idx, 2, c);
    push(idx, 1, b);
    push(idx, 0, a);
  }
  // Children are expanded depth-first, first child first, so creation order
  // is already preorder.
  return TernaryTree(std::move(nodes));
}

TernaryTree sample_tree(std::size_t n, Rng& rng, SamplingStrategy strategy) {
  if (strategy == SamplingStrategy::kCycleLemma) return sample_cycle_lemma(n, rng);
  return sample_tree(n, rng, TreeCountTable(n));
}

}  // namespace rans
