#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/cayley.hpp"
#include "lacuna/rational.hpp"

namespace lacuna {

// Clique complex up to dimension 2 at scale d over a finite point set with
// exact pairwise distances. Simplices are metrized as regular of side d, so a
// triangle contributes area (sqrt(3)/4) d^2.
class RipsComplex {
 public:
  RipsComplex(Rat d, size_t n, std::vector<std::string> labels,
              std::vector<std::pair<uint32_t, uint32_t>> edges)
      : d_(std::move(d)), n_(n), labels_(std::move(labels)), edges_(std::move(edges)) {
    for (const auto& [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& [v, nb] : adjacency_) std::sort(nb.begin(), nb.end());
    // Triangles: for each edge, common neighbors above both endpoints.
    for (const auto& [u, v] : edges_) {
      const auto& nu = adjacency_[u];
      const auto& nv = adjacency_[v];
      std::vector<uint32_t> common;
      std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                            std::back_inserter(common));
      for (uint32_t w : common)
        if (w > v) triangles_.push_back({u, v, w});
    }
    std::sort(triangles_.begin(), triangles_.end());
    for (const auto& t : triangles_) {
      apex_[key(t[0], t[1])].push_back(t[2]);
      apex_[key(t[0], t[2])].push_back(t[1]);
      apex_[key(t[1], t[2])].push_back(t[0]);
    }
  }

  const Rat& scale() const { return d_; }
  size_t vertex_count() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<uint32_t, uint32_t>>& edges() const { return edges_; }
  const std::vector<std::array<uint32_t, 3>>& triangles() const { return triangles_; }

  bool has_edge(uint32_t u, uint32_t v) const {
    if (u == v) return false;
    return apexes_or_empty(u, v) != nullptr || edge_set().count(key(u, v)) > 0;
  }

  const std::vector<uint32_t>& apexes(uint32_t u, uint32_t v) const {
    static const std::vector<uint32_t> none;
    const std::vector<uint32_t>* found = apexes_or_empty(u, v);
    return found ? *found : none;
  }

 private:
  static uint64_t key(uint32_t a, uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | b;
  }

  const std::vector<uint32_t>* apexes_or_empty(uint32_t u, uint32_t v) const {
    auto it = apex_.find(key(u, v));
    return it == apex_.end() ? nullptr : &it->second;
  }

  const std::set<uint64_t>& edge_set() const {
    if (edge_keys_.empty() && !edges_.empty())
      for (const auto& [u, v] : edges_) edge_keys_.insert(key(u, v));
    return edge_keys_;
  }

  Rat d_;
  size_t n_;
  std::vector<std::string> labels_;
  std::vector<std::pair<uint32_t, uint32_t>> edges_;
  std::vector<std::array<uint32_t, 3>> triangles_;
  std::map<uint32_t, std::vector<uint32_t>> adjacency_;
  std::map<uint64_t, std::vector<uint32_t>> apex_;
  mutable std::set<uint64_t> edge_keys_;
};

inline RipsComplex build_rips(size_t n,
                              const std::function<Rat(size_t, size_t)>& dist,
                              const Rat& d,
                              std::vector<std::string> labels = {}) {
  if (d <= 0) throw InvalidInput("Rips scale must be positive");
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (size_t u = 0; u < n; ++u)
    for (size_t v = u + 1; v < n; ++v)
      if (dist(u, v) <= d)
        edges.emplace_back(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
  if (labels.empty())
    for (size_t v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  return RipsComplex(d, n, std::move(labels), std::move(edges));
}

// Rips complex over ball vertices at integer scale floor(d). At effective
// scale 1 the whole ball is usable (edges are adjacencies, which are exact
// everywhere); at larger scales the vertex set is restricted to the
// half-radius core so pairwise distances are exact.
inline RipsComplex rips_from_ball(const Ball& ball, const Rat& d) {
  if (d <= 0) throw InvalidInput("Rips scale must be positive");
  Int eff = floor_rat(d);
  if (eff >= 1 && eff < 2) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (size_t v = 0; v < ball.size(); ++v)
      for (int x = 0; x < ball.degree(); ++x) {
        int32_t w = ball.neighbor(v, x);
        if (w >= 0 && static_cast<size_t>(w) > v)
          edges.emplace_back(static_cast<uint32_t>(v), static_cast<uint32_t>(w));
      }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<std::string> labels;
    for (size_t v = 0; v < ball.size(); ++v)
      labels.push_back(ball.representative(v).str());
    return RipsComplex(d, ball.size(), std::move(labels), std::move(edges));
  }
  // Core restriction: distances between core vertices are exact.
  std::vector<size_t> core;
  for (size_t v = 0; v < ball.size(); ++v)
    if (ball.dist0(v) <= ball.radius() / 2) core.push_back(v);
  std::vector<std::vector<int>> rows;
  rows.reserve(core.size());
  for (size_t v : core) rows.push_back(ball.dists_from(v));
  std::vector<std::string> labels;
  for (size_t v : core) labels.push_back(ball.representative(v).str());
  return build_rips(
      core.size(),
      [&](size_t i, size_t j) { return Rat(rows[i][core[j]]); }, d,
      std::move(labels));
}

struct Filling {
  int32_t cells;                                  // number of triangles
  SqrtTerm area;                                  // cells * (sqrt(3)/4) d^2
  std::vector<std::array<uint32_t, 3>> disk;      // triangles used
};

namespace detail {

inline std::vector<uint32_t> normalize_loop(std::vector<uint32_t> loop) {
  // Collapse backtracks (x, y, x) -> (x), cyclically, until stable. A cyclic
  // loop of length 1 or 2 is itself a backtrack and vanishes.
  bool changed = true;
  while (changed && !loop.empty()) {
    changed = false;
    if (loop.size() <= 2) {
      loop.clear();
      break;
    }
    size_t k = loop.size();
    for (size_t i = 0; i < k; ++i) {
      size_t prev = (i + k - 1) % k, next = (i + 1) % k;
      if (loop[prev] == loop[next]) {
        std::vector<uint32_t> smaller;
        smaller.reserve(k - 2);
        for (size_t j = 0; j < k; ++j)
          if (j != i && j != next) smaller.push_back(loop[j]);
        loop = std::move(smaller);
        changed = true;
        break;
      }
    }
  }
  return loop;
}

inline std::vector<uint32_t> canonical_rotation(const std::vector<uint32_t>& loop) {
  if (loop.empty()) return loop;
  size_t k = loop.size(), best = 0;
  for (size_t s = 1; s < k; ++s) {
    for (size_t i = 0; i < k; ++i) {
      uint32_t a = loop[(s + i) % k], b = loop[(best + i) % k];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  std::vector<uint32_t> out(k);
  for (size_t i = 0; i < k; ++i) out[i] = loop[(best + i) % k];
  return out;
}

}  // namespace detail

// Least-area simplicial disk filling a cycle in the 1-skeleton, by exhaustive
// search: each step pushes the boundary across one triangle glued along a
// boundary edge, and backtracks collapse for free. States are explored in
// order of triangle count, so the first completed state is minimal. Returns
// nullopt when no filling with at most max_cells triangles exists;
// exchausting the node budget instead raises BudgetExceededError.
inline std::optional<Filling> filling_area_bruteforce(const RipsComplex& rc,
                                                      const std::vector<uint32_t>& loop,
                                                      int max_cells,
                                                      size_t node_budget = 2'000'000) {
  for (uint32_t v : loop)
    if (v >= rc.vertex_count()) throw InvalidInput("loop vertex out of range");
  for (size_t i = 0; i < loop.size(); ++i) {
    uint32_t a = loop[i], b = loop[(i + 1) % loop.size()];
    if (a == b) throw InvalidInput("loop repeats a vertex consecutively");
    if (loop.size() >= 2 && !rc.has_edge(a, b))
      throw InvalidInput("loop is not a cycle in the 1-skeleton");
  }

  Rat d = rc.scale();
  auto make_filling = [&](int cells, std::vector<std::array<uint32_t, 3>> disk) {
    return Filling{cells, SqrtTerm{Rat(cells) * d * d / 4, 3}, std::move(disk)};
  };

  std::vector<uint32_t> start = detail::normalize_loop(loop);
  if (start.empty()) return make_filling(0, {});

  struct State {
    std::vector<uint32_t> loop;
    int cells;
    int64_t parent;  // index into states, -1 for root
    std::array<uint32_t, 3> via{};
  };
  std::vector<State> states;
  std::map<std::vector<uint32_t>, int> seen;
  std::deque<int64_t> frontier;

  std::vector<uint32_t> canon = detail::canonical_rotation(start);
  states.push_back(State{canon, 0, -1});
  seen.emplace(canon, 0);
  frontier.push_back(0);
  size_t explored = 0;

  while (!frontier.empty()) {
    int64_t cur = frontier.front();
    frontier.pop_front();
    State state = states[static_cast<size_t>(cur)];
    if (state.cells >= max_cells) continue;
    if (++explored > node_budget)
      throw BudgetExceededError("filling search exceeded its node budget");
    size_t k = state.loop.size();
    for (size_t i = 0; i < k; ++i) {
      uint32_t a = state.loop[i], b = state.loop[(i + 1) % k];
      for (uint32_t w : rc.apexes(a, b)) {
        std::vector<uint32_t> next;
        next.reserve(k + 1);
        for (size_t j = 0; j <= i; ++j) next.push_back(state.loop[j]);
        next.push_back(w);
        for (size_t j = i + 1; j < k; ++j) next.push_back(state.loop[j]);
        next = detail::canonical_rotation(detail::normalize_loop(std::move(next)));
        std::array<uint32_t, 3> tri{std::min({a, b, w}), 0, std::max({a, b, w})};
        tri[1] = a ^ b ^ w ^ tri[0] ^ tri[2];
        if (next.empty()) {
          // reconstruct the disk
          std::vector<std::array<uint32_t, 3>> disk{tri};
          for (int64_t p = cur; p > 0; p = states[static_cast<size_t>(p)].parent)
            disk.push_back(states[static_cast<size_t>(p)].via);
          std::reverse(disk.begin(), disk.end());
          return make_filling(state.cells + 1, std::move(disk));
        }
        auto [it, fresh] = seen.emplace(next, 0);
        if (!fresh) continue;
        states.push_back(State{std::move(next), state.cells + 1, cur, tri});
        frontier.push_back(static_cast<int64_t>(states.size()) - 1);
      }
    }
  }
  return std::nullopt;
}

struct IsoperimetricCheck {
  bool holds;
  Rat length;     // L = |loop| * d
  SqrtTerm area;  // A = cells * (sqrt(3)/4) d^2
  int32_t cells;
};

// L(loop) >= (d / (4 sqrt(3))) * A(loop) with exact arithmetic; the radicals
// cancel, leaving 16 |loop| >= cells * d^2. Requires d >= 8 * delta for the
// hyperbolicity constant delta of the underlying space.
inline IsoperimetricCheck check_isoperimetric(const RipsComplex& rc,
                                              const std::vector<uint32_t>& loop,
                                              const Rat& delta, int max_cells = 64,
                                              size_t node_budget = 2'000'000) {
  if (rc.scale() < Rat(8) * delta)
    throw InvalidInput("isoperimetric check requires d >= 8 * delta");
  std::optional<Filling> filling =
      filling_area_bruteforce(rc, loop, max_cells, node_budget);
  if (!filling)
    throw NoFillingFoundError("no filling within " + std::to_string(max_cells) +
                              " cells");
  IsoperimetricCheck out;
  out.cells = filling->cells;
  out.length = Rat(static_cast<int64_t>(loop.size())) * rc.scale();
  out.area = filling->area;
  out.holds = Rat(16) * Rat(static_cast<int64_t>(loop.size())) >=
              Rat(filling->cells) * rc.scale() * rc.scale();
  return out;
}

}  // namespace lacuna
