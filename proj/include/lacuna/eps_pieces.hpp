#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lacuna/cancellation.hpp"
#include "lacuna/cayley.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

enum class GeodesicStatus { GEODESIC, NOT_GEODESIC, UNKNOWN };

struct GeodesicResult {
  GeodesicStatus status;
  std::optional<Word> shorter_witness;  // for NOT_GEODESIC
};

// A word is geodesic iff no strictly shorter word equals it in the base
// group, decided by enumerating the base-group ball of radius |w| - 1.
// Budget exhaustion reports UNKNOWN, never a verdict.
inline GeodesicResult is_geodesic_in(const Word& w, const EqualityOracle& base,
                                     int radius_cap, BallBudget budget = {}) {
  if (w.empty()) return {GeodesicStatus::GEODESIC, std::nullopt};
  Word reduced = free_reduce(w);
  int needed = static_cast<int>(reduced.size()) - 1;
  if (reduced.size() < w.size())
    return {GeodesicStatus::NOT_GEODESIC, reduced};
  if (needed > radius_cap) return {GeodesicStatus::UNKNOWN, std::nullopt};
  Ball ball;
  try {
    ball = build_ball(base, needed, budget);
  } catch (const BudgetExceededError&) {
    return {GeodesicStatus::UNKNOWN, std::nullopt};
  }
  std::optional<size_t> hit = ball.find(reduced, base);
  if (hit) return {GeodesicStatus::NOT_GEODESIC, ball.representative(*hit)};
  return {GeodesicStatus::GEODESIC, std::nullopt};
}

struct EpsPiece {
  Word piece;                // U, a prefix of the set word at word_index
  int32_t word_index;        // R
  int32_t other_word_index;  // R'
  Word conjugator_left;      // Y
  Word conjugator_right;     // Z
};

struct EpsPieceViolation {
  Word piece;
  int32_t container_index;  // set word containing the piece as a subword
  int32_t offset;
  Rat ratio;  // |U| / |R|
};

struct EpsPieceReport {
  std::vector<EpsPiece> pieces;  // maximal qualifying prefix per ordered pair
  std::vector<EpsPieceViolation> violations;  // occurrences with |U| >= mu|R|
  bool ok = true;
  size_t oracle_calls = 0;
};

// Detects eps-pieces over a base group: prefixes U of R that match inside
// some R' up to conjugating elements Y, Z of length at most eps, excluding
// matches explained by Y R Y^-1 = R'. Words of s must already be verified
// geodesic in the base group (candidate-length pruning relies on it). The
// search enumerates the eps-ball of the base group and is exponential in eps;
// oracle_budget caps the total work.
inline EpsPieceReport find_eps_pieces(const SymmetrizedSet& s, int eps,
                                      const Rat& mu, const EqualityOracle& base,
                                      size_t oracle_budget = 50'000'000) {
  if (eps < 0) throw InvalidInput("eps must be nonnegative");
  if (mu <= 0 || mu >= 1) throw InvalidInput("mu must lie in (0,1)");
  if (!is_symmetrized(s))
    throw NotSymmetrizedError("input set is not closed under inverses and shifts");

  Ball conj_ball = build_ball(base, eps);
  std::vector<Word> conjugators;
  conjugators.reserve(conj_ball.size());
  for (size_t v = 0; v < conj_ball.size(); ++v)
    conjugators.push_back(conj_ball.representative(v));

  size_t calls = 0;
  auto equal = [&](const Word& u, const Word& v) {
    if (++calls > oracle_budget)
      throw BudgetExceededError("eps-piece search exceeded oracle budget");
    return base.equal(u, v);
  };

  EpsPieceReport report;
  int n = static_cast<int>(s.size());

  for (int32_t ri = 0; ri < n; ++ri) {
    const Word& r = s[ri];
    for (int32_t rj = 0; rj < n; ++rj) {
      const Word& rp = s[rj];
      std::optional<EpsPiece> best;  // longest qualifying U for this pair
      for (size_t ulen = r.size(); ulen >= 1 && !best; --ulen) {
        Word u(r.letters().substr(0, ulen));
        for (const Word& y : conjugators) {
          // Y R Y^-1 = R' disqualifies every U for this Y.
          if (equal(free_reduce(y * r * invert(y)), rp)) continue;
          for (const Word& z : conjugators) {
            Word yuz = free_reduce(y * u * z);
            // U' is a geodesic prefix of R', so |U'| is within 2 eps of |U|.
            size_t lo = ulen > 2 * static_cast<size_t>(eps)
                            ? ulen - 2 * static_cast<size_t>(eps)
                            : 1;
            size_t hi = std::min(rp.size(), ulen + 2 * static_cast<size_t>(eps));
            for (size_t uplen = lo; uplen <= hi && !best; ++uplen) {
              Word up(rp.letters().substr(0, uplen));
              if (equal(up, yuz)) best = EpsPiece{u, ri, rj, y, z};
            }
            if (best) break;
          }
          if (best) break;
        }
      }
      if (!best) continue;
      report.pieces.push_back(*best);
      // Literal occurrences of U inside set words at ratio >= mu violate the
      // cancellation condition.
      const std::string& u = best->piece.letters();
      for (int32_t w = 0; w < n; ++w) {
        const std::string& text = s[w].letters();
        if (u.size() > text.size()) continue;
        for (size_t k = 0; k + u.size() <= text.size(); ++k) {
          if (text.compare(k, u.size(), u) != 0) continue;
          Rat ratio(static_cast<int64_t>(u.size()),
                    static_cast<int64_t>(text.size()));
          if (ratio >= mu) {
            report.violations.push_back(EpsPieceViolation{
                best->piece, w, static_cast<int32_t>(k), ratio});
            report.ok = false;
          }
        }
      }
    }
  }
  // The same subword can be flagged through several pairs.
  std::sort(report.violations.begin(), report.violations.end(),
            [](const EpsPieceViolation& a, const EpsPieceViolation& b) {
              return std::tie(a.container_index, a.offset, a.piece) <
                     std::tie(b.container_index, b.offset, b.piece);
            });
  report.violations.erase(
      std::unique(report.violations.begin(), report.violations.end(),
                  [](const EpsPieceViolation& a, const EpsPieceViolation& b) {
                    return a.container_index == b.container_index &&
                           a.offset == b.offset && a.piece == b.piece;
                  }),
      report.violations.end());
  report.oracle_calls = calls;
  return report;
}

}  // namespace lacuna
