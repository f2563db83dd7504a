#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/presentation.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

// A closed coset table for a subgroup H <= G of finite index. Rows are
// cosets, columns the 2|S| directed letters. Closure is verified at
// construction time, so a CosetTable is always a genuine transitive action of
// G on G/H with every relator acting trivially; in particular its size is the
// exact index of H.
class CosetTable {
 public:
  CosetTable(Alphabet alphabet, std::vector<int> table, int ncosets)
      : alphabet_(std::move(alphabet)),
        nletters_(static_cast<int>(alphabet_.size()) * 2),
        table_(std::move(table)),
        ncosets_(ncosets) {}

  const Alphabet& alphabet() const { return alphabet_; }
  int size() const { return ncosets_; }

  int step(int coset, char letter) const {
    return table_[static_cast<size_t>(coset) * nletters_ +
                  alphabet_.letter_index(letter)];
  }

  int trace(int coset, const Word& w) const {
    for (char c : w.letters()) coset = step(coset, c);
    return coset;
  }

  // The permutation of cosets induced by a word. Equality of these
  // permutations is equality in the finite quotient G / core(H).
  std::vector<int> permutation(const Word& w) const {
    std::vector<int> out(ncosets_);
    for (int c = 0; c < ncosets_; ++c) out[c] = trace(c, w);
    return out;
  }

 private:
  Alphabet alphabet_;
  int nletters_;
  std::vector<int> table_;  // ncosets x nletters
  int ncosets_;
};

struct CosetEnumerationResult {
  std::optional<CosetTable> table;  // nullopt: INCONCLUSIVE (budget exhausted)
  Int order_or_index = 0;           // valid when table is set
  size_t cosets_allocated = 0;

  bool conclusive() const { return table.has_value(); }
};

namespace detail {

// HLT-style enumeration with row filling and full coincidence processing.
class CosetEnumerator {
 public:
  CosetEnumerator(const Alphabet& alphabet, const std::vector<Word>& relators,
                  const std::vector<Word>& subgroup_gens, size_t max_cosets)
      : alphabet_(alphabet),
        nletters_(static_cast<int>(alphabet.size()) * 2),
        max_cosets_(max_cosets) {
    for (const Word& r : relators) relator_rows_.push_back(letters_of(r));
    for (const Word& g : subgroup_gens) subgroup_rows_.push_back(letters_of(g));
    new_coset();
  }

  CosetEnumerationResult run() {
    for (const auto& g : subgroup_rows_) {
      if (overflow_) return inconclusive();
      scan_and_fill(0, g);
    }
    for (size_t alpha = 0; alpha < p_.size(); ++alpha) {
      if (overflow_) return inconclusive();
      if (!alive(alpha)) continue;
      for (const auto& r : relator_rows_) {
        scan_and_fill(static_cast<int>(alpha), r);
        if (overflow_) return inconclusive();
        if (!alive(alpha)) break;
      }
      if (!alive(alpha)) continue;
      for (int x = 0; x < nletters_ && alive(alpha); ++x) {
        if (overflow_) return inconclusive();
        if (entry(static_cast<int>(alpha), x) < 0)
          define(static_cast<int>(alpha), x);
      }
    }
    return finish();
  }

 private:
  std::vector<int> letters_of(const Word& w) {
    std::vector<int> row;
    row.reserve(w.size());
    for (char c : w.letters()) row.push_back(alphabet_.letter_index(c));
    return row;
  }

  int& entry(int coset, int letter) {
    return table_[static_cast<size_t>(coset) * nletters_ + letter];
  }

  bool alive(size_t coset) const { return p_[coset] == static_cast<int>(coset); }

  int rep(int c) {
    int r = c;
    while (p_[r] != r) r = p_[r];
    while (p_[c] != r) {
      int next = p_[c];
      p_[c] = r;
      c = next;
    }
    return r;
  }

  int new_coset() {
    if (table_.size() / nletters_ >= max_cosets_) {
      overflow_ = true;
      return -1;
    }
    table_.resize(table_.size() + nletters_, -1);
    p_.push_back(static_cast<int>(p_.size()));
    return static_cast<int>(p_.size()) - 1;
  }

  int define(int coset, int letter) {
    int fresh = new_coset();
    if (fresh < 0) return -1;
    entry(coset, letter) = fresh;
    entry(fresh, letter ^ 1) = coset;
    return fresh;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p_[b] = a;
    dead_queue_.push_back(b);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!dead_queue_.empty()) {
      int gamma = dead_queue_.front();
      dead_queue_.pop_front();
      for (int x = 0; x < nletters_; ++x) {
        int delta = entry(gamma, x);
        if (delta < 0) continue;
        entry(gamma, x) = -1;
        if (entry(delta, x ^ 1) == gamma) entry(delta, x ^ 1) = -1;
        int mu = rep(gamma), nu = rep(delta);
        if (entry(mu, x) >= 0)
          merge(nu, entry(mu, x));
        else if (entry(nu, x ^ 1) >= 0)
          merge(mu, entry(nu, x ^ 1));
        else {
          entry(mu, x) = nu;
          entry(nu, x ^ 1) = mu;
        }
      }
    }
  }

  // Scans word from coset alpha, filling gaps with new cosets; closing the
  // scan may trigger a deduction or a coincidence.
  void scan_and_fill(int alpha, const std::vector<int>& word) {
    if (word.empty()) return;
    alpha = rep(alpha);
    int f = alpha, b = alpha;
    int i = 0, j = static_cast<int>(word.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, word[i]) >= 0) f = entry(f, word[i]), ++i;
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && entry(b, word[j] ^ 1) >= 0) b = entry(b, word[j] ^ 1), --j;
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (j == i) {
        entry(f, word[i]) = b;
        entry(b, word[i] ^ 1) = f;
        return;
      }
      int fresh = define(f, word[i]);
      if (fresh < 0) return;  // overflow
      f = fresh;
      ++i;
    }
  }

  CosetEnumerationResult inconclusive() {
    CosetEnumerationResult r;
    r.cosets_allocated = p_.size();
    return r;
  }

  CosetEnumerationResult finish() {
    // Compact live cosets.
    std::vector<int> live_index(p_.size(), -1);
    int n = 0;
    for (size_t c = 0; c < p_.size(); ++c)
      if (alive(c)) live_index[c] = n++;
    std::vector<int> compact(static_cast<size_t>(n) * nletters_, -1);
    for (size_t c = 0; c < p_.size(); ++c) {
      if (!alive(c)) continue;
      for (int x = 0; x < nletters_; ++x) {
        int d = entry(static_cast<int>(c), x);
        if (d < 0) return inconclusive();  // incomplete table: treat as unresolved
        compact[static_cast<size_t>(live_index[c]) * nletters_ + x] =
            live_index[rep(d)];
      }
    }
    // Certify closure: relators fix every coset, subgroup generators fix 0.
    // A table passing this check is a genuine action, so the reported index
    // is exact regardless of the enumeration path that produced it.
    auto trace = [&](int c, const std::vector<int>& w) {
      for (int x : w) c = compact[static_cast<size_t>(c) * nletters_ + x];
      return c;
    };
    for (int c = 0; c < n; ++c)
      for (const auto& r : relator_rows_)
        if (trace(c, r) != c)
          return inconclusive();
    for (const auto& g : subgroup_rows_)
      if (trace(0, g) != 0) return inconclusive();

    CosetEnumerationResult result;
    result.table = CosetTable(alphabet_, std::move(compact), n);
    result.order_or_index = n;
    result.cosets_allocated = p_.size();
    return result;
  }

  Alphabet alphabet_;
  int nletters_;
  size_t max_cosets_;
  std::vector<std::vector<int>> relator_rows_;
  std::vector<std::vector<int>> subgroup_rows_;
  std::vector<int> table_;
  std::vector<int> p_;
  std::deque<int> dead_queue_;
  bool overflow_ = false;
};

}  // namespace detail

// Returns the exact index of <subgroup_gens> in the presented group when the
// enumeration fits in max_cosets rows, the group order for an empty generator
// list. Never returns a wrong finite answer: an unverifiable run reports
// INCONCLUSIVE (empty optional) instead.
inline CosetEnumerationResult coset_enumerate(
    const Presentation& p, const std::vector<Word>& subgroup_gens,
    size_t max_cosets) {
  if (max_cosets < 1) throw InvalidInput("max_cosets must be at least 1");
  p.validate();
  for (const Word& g : subgroup_gens)
    if (!p.alphabet.contains_word(g))
      throw InvalidInput("subgroup generator uses letters outside the alphabet");
  detail::CosetEnumerator e(p.alphabet, p.relators, subgroup_gens, max_cosets);
  return e.run();
}

}  // namespace lacuna
