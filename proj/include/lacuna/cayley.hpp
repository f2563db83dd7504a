#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lacuna/oracle.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

struct BallBudget {
  size_t max_oracle_calls = 200'000'000;
  size_t max_vertices = 4'000'000;
};

// A finite radius-r chunk of a Cayley graph with exact distances from the
// identity. Vertices are canonical shortlex-minimal representatives, ordered
// by (distance, shortlex); the graph is the induced subgraph on them.
//
// Exactness rule: the in-ball distance between u and v equals the group
// distance whenever dist0(u) + dist0(v) <= radius (a geodesic between them
// cannot leave the ball). Pairs beyond that margin get flagged values.
class Ball {
 public:
  Ball() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  int radius() const { return radius_; }
  size_t size() const { return reps_.size(); }
  const Word& representative(size_t v) const { return reps_[v]; }
  int dist0(size_t v) const { return dist0_[v]; }
  int exactness_margin() const { return radius_; }

  int degree() const { return static_cast<int>(alphabet_.size()) * 2; }

  // Neighbor along a directed letter, -1 when the product leaves the ball.
  int32_t neighbor(size_t v, int letter_index) const {
    return nbr_[v * degree() + static_cast<size_t>(letter_index)];
  }

  // First and one-past-last vertex index at the given distance.
  std::pair<size_t, size_t> layer(int d) const {
    return {layer_begin_[static_cast<size_t>(d)],
            layer_begin_[static_cast<size_t>(d) + 1]};
  }

  // Letter-exact representative lookup.
  std::optional<size_t> find_representative(const Word& reduced) const {
    auto it = rep_index_.find(reduced.letters());
    if (it == rep_index_.end()) return std::nullopt;
    return it->second;
  }

  // Locates the element of w in the ball, or nullopt when it lies outside.
  std::optional<size_t> find(const Word& w, const EqualityOracle& oracle) const {
    Word r = free_reduce(w);
    if (auto hit = find_representative(r)) return hit;
    if (auto k = oracle.key(r)) {
      auto it = key_index_.find(*k);
      if (it == key_index_.end()) return std::nullopt;
      return it->second;
    }
    for (size_t v = 0; v < reps_.size(); ++v)
      if (oracle.equal(r, reps_[v])) return v;
    return std::nullopt;
  }

  std::vector<int> dists_from(size_t source) const {
    std::vector<int> dist(reps_.size(), -1);
    std::deque<size_t> queue;
    dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
      size_t v = queue.front();
      queue.pop_front();
      for (int x = 0; x < degree(); ++x) {
        int32_t w = neighbor(v, x);
        if (w >= 0 && dist[static_cast<size_t>(w)] < 0) {
          dist[static_cast<size_t>(w)] = dist[v] + 1;
          queue.push_back(static_cast<size_t>(w));
        }
      }
    }
    return dist;
  }

  struct Distance {
    int value;
    bool exact;
  };

  Distance dist(size_t u, size_t v) const {
    check_vertex(u);
    check_vertex(v);
    std::vector<int> d = dists_from(u);
    return Distance{d[v], dist0_[u] + dist0_[v] <= radius_};
  }

  // Up to `limit` distinct geodesic paths u -> v (vertex sequences), in
  // letter-lexicographic order. Requires the pair to satisfy the exactness
  // rule so that all geodesics live inside the ball.
  std::vector<std::vector<size_t>> geodesics(size_t u, size_t v, size_t limit) const {
    check_vertex(u);
    check_vertex(v);
    if (dist0_[u] + dist0_[v] > radius_)
      throw NotExactError("geodesics need an exact pair: dist0(u)+dist0(v) <= radius");
    std::vector<int> du = dists_from(u);
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> path{v};
    enumerate_geodesics(u, v, du, path, limit, out);
    for (auto& p : out) std::reverse(p.begin(), p.end());
    return out;
  }

  struct AvoidingPath {
    int length;
    std::vector<size_t> path;
  };

  // BFS on the ball graph minus the forbidden set; nullopt when u and v are
  // disconnected inside the ball.
  std::optional<AvoidingPath> shortest_path_avoiding(
      size_t u, size_t v, const std::vector<bool>& forbidden) const {
    check_vertex(u);
    check_vertex(v);
    if (forbidden[u] || forbidden[v])
      throw InvalidInput("endpoints of an avoiding path must not be forbidden");
    std::vector<int32_t> parent(reps_.size(), -2);
    std::deque<size_t> queue;
    parent[u] = -1;
    queue.push_back(u);
    while (!queue.empty()) {
      size_t w = queue.front();
      queue.pop_front();
      if (w == v) break;
      for (int x = 0; x < degree(); ++x) {
        int32_t t = neighbor(w, x);
        if (t < 0) continue;
        size_t tu = static_cast<size_t>(t);
        if (forbidden[tu] || parent[tu] != -2) continue;
        parent[tu] = static_cast<int32_t>(w);
        queue.push_back(tu);
      }
    }
    if (parent[v] == -2) return std::nullopt;
    AvoidingPath result;
    for (int32_t cur = static_cast<int32_t>(v); cur != -1;
         cur = parent[static_cast<size_t>(cur)])
      result.path.push_back(static_cast<size_t>(cur));
    std::reverse(result.path.begin(), result.path.end());
    result.length = static_cast<int>(result.path.size()) - 1;
    return result;
  }

  // f(n) = number of ball vertices at distance <= n whose representative
  // satisfies the membership predicate.
  std::vector<Int> growth_intersection(
      const std::function<bool(const Word&)>& member) const {
    std::vector<Int> table(static_cast<size_t>(radius_) + 1, 0);
    for (size_t v = 0; v < reps_.size(); ++v)
      if (member(reps_[v])) table[static_cast<size_t>(dist0_[v])] += 1;
    for (size_t n = 1; n < table.size(); ++n) table[n] += table[n - 1];
    return table;
  }

  static Ball assemble(Alphabet alphabet, int radius, std::vector<Word> reps,
                       std::vector<int> dist0, std::vector<int32_t> nbr,
                       std::unordered_map<std::string, size_t> key_index = {}) {
    Ball b;
    b.alphabet_ = std::move(alphabet);
    b.radius_ = radius;
    b.reps_ = std::move(reps);
    b.dist0_ = std::move(dist0);
    b.nbr_ = std::move(nbr);
    b.key_index_ = std::move(key_index);
    b.rebuild_indices();
    return b;
  }

 private:
  friend Ball build_ball(const EqualityOracle&, int, BallBudget);

  void check_vertex(size_t v) const {
    if (v >= reps_.size()) throw NotInBallError("vertex index out of range");
  }

  void enumerate_geodesics(size_t u, size_t cur, const std::vector<int>& du,
                           std::vector<size_t>& path, size_t limit,
                           std::vector<std::vector<size_t>>& out) const {
    if (out.size() >= limit) return;
    if (cur == u) {
      out.push_back(path);
      return;
    }
    for (int x = 0; x < degree(); ++x) {
      int32_t w = neighbor(cur, x);
      if (w < 0 || du[static_cast<size_t>(w)] != du[cur] - 1) continue;
      path.push_back(static_cast<size_t>(w));
      enumerate_geodesics(u, static_cast<size_t>(w), du, path, limit, out);
      path.pop_back();
      if (out.size() >= limit) return;
    }
  }

  void rebuild_indices() {
    rep_index_.clear();
    for (size_t v = 0; v < reps_.size(); ++v) rep_index_[reps_[v].letters()] = v;
    layer_begin_.assign(static_cast<size_t>(radius_) + 2, 0);
    for (size_t v = 0; v < reps_.size(); ++v)
      layer_begin_[static_cast<size_t>(dist0_[v]) + 1] = v + 1;
    for (size_t d = 1; d < layer_begin_.size(); ++d)
      layer_begin_[d] = std::max(layer_begin_[d], layer_begin_[d - 1]);
  }

  Alphabet alphabet_;
  int radius_ = 0;
  std::vector<Word> reps_;
  std::vector<int> dist0_;
  std::vector<int32_t> nbr_;
  std::vector<size_t> layer_begin_;
  std::unordered_map<std::string, size_t> rep_index_;
  std::unordered_map<std::string, size_t> key_index_;
};

// Layered BFS from the identity. A candidate joins the ball iff it is not
// oracle-equal to any known element; the canonical representative is the
// shortlex-least word reaching the element. Candidates of layer d can only
// collide with layers d-2, d-1 and earlier candidates of layer d, which keeps
// the pairwise fallback quadratic in layer sizes rather than ball size.
inline Ball build_ball(const EqualityOracle& oracle, int radius,
                       BallBudget budget = {}) {
  if (radius < 0) throw InvalidInput("radius must be nonnegative");
  const Alphabet& alphabet = oracle.alphabet();
  const std::string letters = alphabet.letters();

  size_t oracle_calls = 0;
  auto charge = [&](size_t n = 1) {
    oracle_calls += n;
    if (oracle_calls > budget.max_oracle_calls)
      throw OracleBudgetExceededError("ball construction exceeded oracle budget");
  };

  std::vector<Word> reps{Word()};
  std::vector<int> dist0{0};
  std::unordered_map<std::string, size_t> rep_index{{"", 0}};
  std::unordered_map<std::string, size_t> key_index;
  const bool keyed = oracle.key(Word()).has_value();
  if (keyed) {
    charge();
    key_index[*oracle.key(Word())] = 0;
  }
  std::vector<size_t> layer_begin{0, 1};

  for (int d = 1; d <= radius; ++d) {
    std::vector<std::string> candidates;
    for (size_t v = layer_begin[static_cast<size_t>(d) - 1];
         v < layer_begin[static_cast<size_t>(d)]; ++v)
      for (char x : letters)
        candidates.push_back(
            free_reduce(Word::from_letters_unchecked(reps[v].letters() + x))
                .letters());
    std::sort(candidates.begin(), candidates.end(),
              [&](const std::string& a, const std::string& b) {
                return alphabet.shortlex_less(Word::from_letters_unchecked(a),
                                              Word::from_letters_unchecked(b));
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    size_t first_new = reps.size();
    for (std::string& cand : candidates) {
      if (rep_index.count(cand)) continue;
      Word w = Word::from_letters_unchecked(std::move(cand));
      if (keyed) {
        charge();
        std::string k = *oracle.key(w);
        if (key_index.count(k)) continue;
        key_index.emplace(std::move(k), reps.size());
      } else {
        // Compare against layers d-2, d-1 and the new layer so far.
        size_t from = d >= 2 ? layer_begin[static_cast<size_t>(d) - 2] : 0;
        bool known = false;
        for (size_t v = from; v < reps.size() && !known; ++v) {
          charge();
          known = oracle.equal(w, reps[v]);
        }
        if (known) continue;
      }
      if (reps.size() >= budget.max_vertices)
        throw MemoryBudgetExceededError("ball construction exceeded vertex budget");
      rep_index[w.letters()] = reps.size();
      reps.push_back(std::move(w));
      dist0.push_back(d);
    }
    layer_begin.push_back(reps.size());
    if (reps.size() == first_new) break;  // group exhausted
  }
  while (layer_begin.size() < static_cast<size_t>(radius) + 2)
    layer_begin.push_back(reps.size());

  // Edges via right multiplication; a missing target means the product left
  // the ball.
  const int degree = static_cast<int>(letters.size());
  std::vector<int32_t> nbr(reps.size() * static_cast<size_t>(degree), -1);
  for (size_t v = 0; v < reps.size(); ++v) {
    for (int x = 0; x < degree; ++x) {
      Word w = free_reduce(
          Word::from_letters_unchecked(reps[v].letters() + letters[static_cast<size_t>(x)]));
      int32_t target = -1;
      auto lit = rep_index.find(w.letters());
      if (lit != rep_index.end()) {
        target = static_cast<int32_t>(lit->second);
      } else if (keyed) {
        charge();
        auto kit = key_index.find(*oracle.key(w));
        if (kit != key_index.end()) target = static_cast<int32_t>(kit->second);
      } else {
        int lo = std::max(0, dist0[v] - 1), hi = std::min(radius, dist0[v] + 1);
        for (size_t u = layer_begin[static_cast<size_t>(lo)];
             u < layer_begin[static_cast<size_t>(hi) + 1] && target < 0; ++u) {
          charge();
          if (oracle.equal(w, reps[u])) target = static_cast<int32_t>(u);
        }
      }
      nbr[v * static_cast<size_t>(degree) + static_cast<size_t>(x)] = target;
    }
  }

  return Ball::assemble(alphabet, radius, std::move(reps), std::move(dist0),
                        std::move(nbr), std::move(key_index));
}

struct InjectivityRadius {
  bool at_least_cap;  // no collision found up to the cap
  int value;          // meaningful when !at_least_cap
  std::optional<std::pair<Word, Word>> witness;  // a G-distinct, Q-equal pair
};

// Largest r <= cap such that no two distinct elements of the G-ball of
// radius r become equal in Q. The quotient property is spot-checked on ball
// edges; a failure raises NotAQuotient.
inline InjectivityRadius injectivity_radius(const EqualityOracle& oracle_G,
                                            const EqualityOracle& oracle_Q,
                                            int cap, BallBudget budget = {}) {
  Ball ball = build_ball(oracle_G, cap, budget);

  // Spot-check: every ball edge is a G-equality rep_u * x = rep_v, which must
  // persist in Q.
  size_t checked = 0;
  for (size_t v = 0; v < ball.size() && checked < 512; ++v) {
    for (int x = 0; x < ball.degree() && checked < 512; ++x) {
      int32_t t = ball.neighbor(v, x);
      if (t < 0) continue;
      Word image = ball.representative(v) *
                   Word(std::string(1, ball.alphabet().letters()[static_cast<size_t>(x)]));
      if (!oracle_Q.equal(image, ball.representative(static_cast<size_t>(t))))
        throw NotAQuotientError(
            "a G-equality fails in Q: " + image.str() + " vs " +
            ball.representative(static_cast<size_t>(t)).str());
      ++checked;
    }
  }

  // Collision level of a Q-class = second-smallest dist0 in the class; the
  // answer is one below the smallest collision level.
  int best_level = cap + 1;
  std::optional<std::pair<Word, Word>> witness;
  const bool keyed = oracle_Q.key(Word()).has_value();
  if (keyed) {
    std::unordered_map<std::string, size_t> first_seen;
    for (size_t v = 0; v < ball.size(); ++v) {
      std::string k = *oracle_Q.key(ball.representative(v));
      auto [it, fresh] = first_seen.emplace(std::move(k), v);
      if (!fresh) {
        int level = ball.dist0(v);  // vertices ordered by distance
        if (level < best_level) {
          best_level = level;
          witness = {ball.representative(it->second), ball.representative(v)};
        }
      }
    }
  } else {
    for (size_t v = 1; v < ball.size() && ball.dist0(v) < best_level; ++v)
      for (size_t u = 0; u < v; ++u)
        if (oracle_Q.equal(ball.representative(u), ball.representative(v))) {
          best_level = ball.dist0(v);
          witness = {ball.representative(u), ball.representative(v)};
          break;
        }
  }
  if (best_level > cap) return {true, cap, std::nullopt};
  return {false, best_level - 1, witness};
}

}  // namespace lacuna
