#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/presentation.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/trie.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

struct PieceOccurrence {
  int32_t word_index;  // index into the symmetrized set
  int32_t offset;
};

struct Piece {
  Word piece;
  PieceOccurrence occurrence_a;
  PieceOccurrence occurrence_b;
};

// Pieces are common initial subwords of two distinct set words; only maximal
// ones are listed (every prefix of a piece is again a piece). max_ratio is
// taken over literal subword occurrences of pieces inside set words, which is
// what the C'(mu) condition bounds.
//
// Proper powers are a known convention split: a cyclic shift that reproduces
// the word letter-for-letter is not a distinct word and creates no piece
// here. The report records this reading.
struct PieceReport {
  std::vector<Piece> pieces;
  Rat max_ratio;  // 0 when there are no pieces
  int32_t relator_count = 0;
  int32_t piece_count = 0;
  std::optional<Piece> longest_in_relator;  // argmax occurrence of max_ratio
  static constexpr const char* convention =
      "pieces are common initial subwords of letterwise-distinct set words";
};

namespace detail {

// Longest piece starting at position pos of text: the deepest trie node on
// the walk shared by at least two set words.
inline int32_t longest_piece_from(const PrefixTrie& trie, const std::string& text,
                                  size_t pos) {
  int32_t node = trie.root();
  int32_t best = 0;
  for (size_t d = 0; pos + d < text.size(); ++d) {
    node = trie.child(node, text[pos + d]);
    if (node < 0) break;
    if (trie.words_through(node) >= 2) best = static_cast<int32_t>(d) + 1;
  }
  return best;
}

struct RatioScan {
  Rat max_ratio;
  std::optional<Piece> argmax;
};

inline RatioScan scan_piece_ratios(const SymmetrizedSet& s, const PrefixTrie& trie) {
  RatioScan out;
  out.max_ratio = 0;
  for (int32_t w = 0; w < static_cast<int32_t>(s.size()); ++w) {
    const std::string& text = s[w].letters();
    for (size_t k = 0; k < text.size(); ++k) {
      int32_t len = longest_piece_from(trie, text, k);
      if (len == 0) continue;
      Rat ratio(len, static_cast<int32_t>(text.size()));
      if (ratio > out.max_ratio) {
        out.max_ratio = ratio;
        PieceOccurrence occ{w, static_cast<int32_t>(k)};
        out.argmax = Piece{Word(text.substr(k, static_cast<size_t>(len))), occ, occ};
      }
    }
  }
  return out;
}

}  // namespace detail

inline PieceReport enumerate_pieces(const SymmetrizedSet& s) {
  if (s.size() == 0) throw InvalidInput("empty symmetrized set");
  if (!is_symmetrized(s))
    throw NotSymmetrizedError("input set is not closed under inverses and shifts");

  PrefixTrie trie(s);
  PieceReport report;
  report.relator_count = static_cast<int32_t>(s.size());

  // A node where some pair of words splits (two populated child subtrees, or
  // a word terminating while another passes through) marks a pairwise-maximal
  // common prefix. Only globally maximal ones are listed: a split node with a
  // split descendant yields a piece that is a prefix of a longer piece.
  struct Frame {
    int32_t node;
    std::string prefix;
    bool expanded;
  };
  std::vector<char> split_below(trie.node_count(), 0);
  std::vector<Frame> stack;
  stack.push_back({trie.root(), "", false});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (!top.expanded) {
      top.expanded = true;
      for (const auto& [letter, child] : trie.children(top.node))
        stack.push_back({child, top.prefix + letter, false});
      continue;
    }
    Frame f = top;
    stack.pop_back();
    bool below = false;
    for (const auto& [letter, child] : trie.children(f.node))
      below = below || split_below[static_cast<size_t>(child)];
    bool ends_here = trie.word_ending_here(f.node) >= 0;
    size_t nchildren = trie.children(f.node).size();
    bool split =
        nchildren >= 2 || (ends_here && trie.words_through(f.node) >= 2);
    split_below[static_cast<size_t>(f.node)] = split || below;
    if (split && !below && !f.prefix.empty()) {
      int32_t wa = -1, wb = -1;
      if (ends_here) wa = trie.word_ending_here(f.node);
      for (const auto& [letter, child] : trie.children(f.node)) {
        int32_t w = trie.min_word_index(child);
        if (wa < 0)
          wa = w;
        else if (wb < 0 && w != wa)
          wb = w;
      }
      report.pieces.push_back(Piece{Word(f.prefix), {wa, 0}, {wb, 0}});
    }
  }
  std::sort(report.pieces.begin(), report.pieces.end(),
            [&](const Piece& a, const Piece& b) {
              return s.alphabet().shortlex_less(a.piece, b.piece);
            });
  report.piece_count = static_cast<int32_t>(report.pieces.size());

  detail::RatioScan scan = detail::scan_piece_ratios(s, trie);
  report.max_ratio = scan.max_ratio;
  report.longest_in_relator = scan.argmax;
  return report;
}

struct ClassicalCheck {
  bool ok;
  Rat max_ratio;
  std::optional<Piece> violating_piece;  // worst occurrence when not ok
};

// C'(mu): every piece occurring inside a set word R is strictly shorter than
// mu * |R|, i.e. the worst occurrence ratio stays below mu.
inline ClassicalCheck check_classical(const SymmetrizedSet& s, const Rat& mu) {
  if (mu <= 0 || mu >= 1) throw InvalidInput("mu must lie in (0,1)");
  if (!is_symmetrized(s))
    throw NotSymmetrizedError("input set is not closed under inverses and shifts");
  PrefixTrie trie(s);
  detail::RatioScan scan = detail::scan_piece_ratios(s, trie);
  ClassicalCheck result;
  result.max_ratio = scan.max_ratio;
  result.ok = scan.max_ratio < mu;
  if (!result.ok) result.violating_piece = scan.argmax;
  return result;
}

// delta <= 12 * max |R| / (1 - 6 mu)^2 for a finite C'(mu) presentation,
// mu < 1/6.
inline Rat hyperbolicity_bound(const Presentation& p, const Rat& mu) {
  if (mu >= Rat(1, 6)) throw MuTooLargeError("bound requires mu < 1/6");
  if (mu <= 0) throw InvalidInput("mu must be positive");
  SymmetrizedSet s = symmetrize(p.alphabet, p.relators);
  ClassicalCheck check = check_classical(s, mu);
  if (!check.ok)
    throw NotSmallCancellationError(
        "presentation does not satisfy C'(" + to_string(mu) + "): piece ratio " +
        to_string(check.max_ratio));
  Int maxlen(static_cast<int64_t>(s.max_word_length()));
  Rat denom = Rat(1) - Rat(6) * mu;
  return Rat(12) * Rat(maxlen) / (denom * denom);
}

struct GradedTier {
  Int epsilon;
  Rat mu;
  Rat rho;
  Int max_relator_len;
};

struct GradedSchedule {
  std::vector<GradedTier> tiers;  // tier n = tiers[n-1]
  Rat alpha;
  Rat K;
};

struct GradedViolation {
  int tier;  // 1-based
  std::string clause;
  std::string detail;
};

struct GradedCheck {
  bool ok;
  std::vector<GradedViolation> violations;
  bool mu_nonincreasing;  // advisory stand-in for the vanishing-mu clause
};

// Finite-prefix validation of a graded schedule: per tier, mu_n <= alpha and
// mu_n * rho_n > K * eps_n; across tiers, eps_{n+1} > 8 * maxlen_n. The
// asymptotic clauses are not finitely checkable; monotonicity of mu is
// reported as an advisory only.
inline GradedCheck check_graded_schedule(const GradedSchedule& g) {
  if (g.tiers.empty()) throw InvalidInput("schedule needs at least one tier");
  GradedCheck out;
  out.ok = true;
  out.mu_nonincreasing = true;
  for (size_t n = 0; n < g.tiers.size(); ++n) {
    const GradedTier& t = g.tiers[n];
    int tier = static_cast<int>(n) + 1;
    if (t.mu <= 0 || t.mu >= 1 || t.rho <= 0 || t.epsilon < 0 ||
        t.max_relator_len <= 0)
      throw InvalidInput("tier " + std::to_string(tier) +
                         " has out-of-range values");
    if (t.mu > g.alpha) {
      out.ok = false;
      out.violations.push_back({tier, "mu<=alpha",
                                "mu=" + to_string(t.mu) +
                                    " exceeds alpha=" + to_string(g.alpha)});
    }
    if (!(t.mu * t.rho > g.K * Rat(t.epsilon))) {
      out.ok = false;
      out.violations.push_back({tier, "mu*rho>K*eps",
                                "mu*rho=" + to_string(t.mu * t.rho) +
                                    " vs K*eps=" + to_string(g.K * Rat(t.epsilon))});
    }
    if (n + 1 < g.tiers.size()) {
      const GradedTier& next = g.tiers[n + 1];
      if (!(Rat(next.epsilon) > Rat(8) * Rat(t.max_relator_len))) {
        out.ok = false;
        out.violations.push_back({tier + 1, "eps_{n+1}>8*maxlen_n",
                                  "eps=" + next.epsilon.str() + " vs 8*maxlen=" +
                                      (Int(8) * t.max_relator_len).str()});
      }
      if (next.mu > t.mu) out.mu_nonincreasing = false;
    }
  }
  return out;
}

}  // namespace lacuna
