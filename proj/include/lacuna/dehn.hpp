#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/cancellation.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/trie.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

struct DehnStep {
  int32_t position;       // start of the replaced subword in the cyclic word
  int32_t word_index;     // matched set word
  int32_t replaced_len;   // |U|
  int32_t replacement_len;  // |R| - |U|
};

struct DehnTrace {
  std::vector<DehnStep> steps;
  int32_t cells_used = 0;
  Int perimeter_sum = 0;  // sum of |R| over applied set words
  Word final;             // empty iff the input is trivial in the group
};

// Word-problem solver for C'(mu) presentations with mu <= 1/6. Each round
// scans the doubled cyclic word for a set-word prefix U with |U| > |R|/2 and
// replaces it by the inverse of the complementary part, which strictly
// shortens the word; the Greendlinger property guarantees a match exists
// whenever the word is trivial. Ties go to the largest length drop, then the
// lowest position, then the largest |U|.
class DehnSolver {
 public:
  DehnSolver(SymmetrizedSet s, Rat mu)
      : set_(std::move(s)), mu_(std::move(mu)), trie_(set_) {
    if (mu_ <= 0 || mu_ > Rat(1, 6))
      throw NotSmallCancellationError(
          "Dehn solver requires 0 < mu <= 1/6, got mu = " + to_string(mu_));
    ClassicalCheck check = check_classical(set_, mu_);
    if (!check.ok)
      throw NotSmallCancellationError(
          "relator set is not C'(" + to_string(mu_) + "): piece ratio " +
          to_string(check.max_ratio));
  }

  const SymmetrizedSet& set() const { return set_; }
  const Rat& mu() const { return mu_; }

  DehnTrace reduce(const Word& w) const {
    DehnTrace trace;
    Word current = cyclic_reduce(w).first;
    while (!current.empty()) {
      std::optional<Match> m = best_match(current);
      if (!m) break;
      const Word& relator = set_[m->word_index];
      Word complement(relator.letters().substr(static_cast<size_t>(m->depth)));
      // Rotate the match to the front, substitute, and renormalize.
      Word rotated = cyclic_shift(current, static_cast<size_t>(m->position));
      Word rest(rotated.letters().substr(static_cast<size_t>(m->depth)));
      Word replaced = invert(complement) * rest;
      trace.steps.push_back(DehnStep{
          m->position, m->word_index, m->depth,
          static_cast<int32_t>(relator.size()) - m->depth});
      trace.perimeter_sum += Int(static_cast<int64_t>(relator.size()));
      current = cyclic_reduce(replaced).first;
    }
    trace.cells_used = static_cast<int32_t>(trace.steps.size());
    trace.final = current;
    return trace;
  }

  bool is_trivial(const Word& w) const { return reduce(w).final.empty(); }

  bool equal(const Word& u, const Word& v) const {
    return is_trivial(u * invert(v));
  }

 private:
  struct Match {
    int32_t drop = 0;   // |U| - (|R| - |U|) = 2|U| - |R|
    int32_t position = 0;
    int32_t depth = 0;  // |U|
    int32_t word_index = -1;
  };

  // Scans every window of the doubled cyclic word for the match with the
  // greatest length drop, requiring 2|U| > |R|.
  std::optional<Match> best_match(const Word& cyclic) const {
    const std::string& text = cyclic.letters();
    int32_t n = static_cast<int32_t>(text.size());
    std::optional<Match> best;
    for (int32_t pos = 0; pos < n; ++pos) {
      int32_t node = trie_.root();
      for (int32_t d = 0; d < n; ++d) {
        node = trie_.child(node, text[static_cast<size_t>((pos + d) % n)]);
        if (node < 0) break;
        int32_t depth = d + 1;
        int32_t rlen = trie_.min_word_length(node);
        if (rlen >= 2 * depth) continue;
        Match m{2 * depth - rlen, pos, depth, trie_.min_word_index(node)};
        if (!best || m.drop > best->drop ||
            (m.drop == best->drop && m.position < best->position) ||
            (m.drop == best->drop && m.position == best->position &&
             m.depth > best->depth))
          best = m;
      }
    }
    return best;
  }

  SymmetrizedSet set_;
  Rat mu_;
  PrefixTrie trie_;
};

inline DehnTrace dehn_reduce(const Word& w, const SymmetrizedSet& s, const Rat& mu) {
  return DehnSolver(s, mu).reduce(w);
}

struct AreaCheck {
  bool holds;
  Int lhs;  // |original|
  Rat rhs;  // (1 - 6 mu) * perimeter_sum
  bool warning;  // set when the inequality fails: the trace's diagram proxy
                 // need not be a reduced diagram, so failure is advisory
};

// Advisory check of the boundary-vs-area inequality
// |original| > (1 - 6 mu) * perimeter_sum on a trace that closed.
inline AreaCheck check_area_inequality(const DehnTrace& trace, const Word& original,
                                       const Rat& mu) {
  if (!trace.final.empty())
    throw TraceNotClosedError("trace did not reduce the word to the identity");
  AreaCheck out;
  out.lhs = Int(static_cast<int64_t>(original.size()));
  out.rhs = (Rat(1) - Rat(6) * mu) * Rat(trace.perimeter_sum);
  out.holds = Rat(out.lhs) > out.rhs;
  out.warning = !out.holds;
  return out;
}

}  // namespace lacuna
