#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lacuna/word.hpp"

namespace lacuna {

// Prefix index over a symmetrized set. One pass of O(total length)
// preprocessing buys O(depth) walks for the piece scan and the Dehn-step
// search, which matters on sets with thousands of cyclic shifts.
class PrefixTrie {
 public:
  explicit PrefixTrie(const SymmetrizedSet& s) : set_(&s) {
    nodes_.push_back(Node{});
    for (int32_t w = 0; w < static_cast<int32_t>(s.size()); ++w) {
      const Word& word = s[w];
      int32_t node = 0;
      bump(node, w, word);
      for (char c : word.letters()) {
        int32_t child = find_child(node, c);
        if (child < 0) {
          child = static_cast<int32_t>(nodes_.size());
          nodes_.push_back(Node{});
          nodes_[node].children.emplace_back(c, child);
        }
        node = child;
        bump(node, w, word);
      }
      nodes_[node].word_end = w;
    }
    for (Node& n : nodes_) std::sort(n.children.begin(), n.children.end());
  }

  const SymmetrizedSet& set() const { return *set_; }

  int32_t root() const { return 0; }

  int32_t child(int32_t node, char letter) const {
    return find_child(node, letter);
  }

  // Number of distinct set words having this node's prefix.
  int32_t words_through(int32_t node) const { return nodes_[node].through; }

  // Shortest set word with this prefix, and its index in the set.
  int32_t min_word_length(int32_t node) const { return nodes_[node].min_len; }
  int32_t min_word_index(int32_t node) const { return nodes_[node].min_word; }

  int32_t word_ending_here(int32_t node) const { return nodes_[node].word_end; }

  size_t node_count() const { return nodes_.size(); }

  // Children of a node in letter order, as (letter, node) pairs.
  const std::vector<std::pair<char, int32_t>>& children(int32_t node) const {
    return nodes_[node].children;
  }

 private:
  struct Node {
    std::vector<std::pair<char, int32_t>> children;
    int32_t through = 0;
    int32_t min_len = INT32_MAX;
    int32_t min_word = -1;
    int32_t word_end = -1;
  };

  int32_t find_child(int32_t node, char letter) const {
    for (const auto& [c, idx] : nodes_[node].children)
      if (c == letter) return idx;
    return -1;
  }

  void bump(int32_t node, int32_t word_index, const Word& word) {
    Node& n = nodes_[node];
    n.through += 1;
    int32_t len = static_cast<int32_t>(word.size());
    if (len < n.min_len) {
      n.min_len = len;
      n.min_word = word_index;
    }
  }

  const SymmetrizedSet* set_;
  std::vector<Node> nodes_;
};

}  // namespace lacuna
