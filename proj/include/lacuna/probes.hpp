#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lacuna/cayley.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

// Exact all-pairs distances from a set of sources (BFS rows over the whole
// ball). Rows are exact for targets within the exactness margin of their
// source; scans below restrict themselves accordingly.
class DistCache {
 public:
  DistCache(const Ball& ball, int max_dist0) : ball_(&ball) {
    for (size_t v = 0; v < ball.size(); ++v)
      if (ball.dist0(v) <= max_dist0) verts_.push_back(v);
    rows_.reserve(verts_.size());
    for (size_t i = 0; i < verts_.size(); ++i) {
      row_of_[verts_[i]] = i;
      rows_.push_back(ball.dists_from(verts_[i]));
    }
  }

  const std::vector<size_t>& vertices() const { return verts_; }

  bool has(size_t v) const { return row_of_.count(v) > 0; }

  int dist(size_t src, size_t target) const {
    return rows_[row_of_.at(src)][target];
  }

  const std::vector<int>& row(size_t src) const { return rows_[row_of_.at(src)]; }

 private:
  const Ball* ball_;
  std::vector<size_t> verts_;
  std::unordered_map<size_t, size_t> row_of_;
  std::vector<std::vector<int>> rows_;
};

struct FourPointResult {
  Rat delta;
  std::optional<std::array<size_t, 3>> witness;
  size_t scanned_vertices = 0;
};

// Minimal delta for which the four-point condition holds at the basepoint
// over all scanned triples. Scans the core dist0 <= radius/2 so every
// distance involved is exact. Per triple the needed delta is
// (mid - min)/2 of the three doubled Gromov products.
inline FourPointResult gromov_delta_4pt_scan(const Ball& ball, size_t basepoint,
                                             int scan_radius) {
  if (basepoint >= ball.size()) throw NotInBallError("basepoint not in ball");
  if (scan_radius > ball.radius() / 2)
    throw TooFewExactPairsError(
        "scan radius exceeds radius/2: pairwise distances would be inexact");
  if (ball.dist0(basepoint) > scan_radius)
    throw TooFewExactPairsError("basepoint outside the scanned core");

  DistCache cache(ball, scan_radius);
  const std::vector<size_t>& core = cache.vertices();
  const std::vector<int>& from_p = cache.row(basepoint);

  FourPointResult result;
  result.delta = 0;
  result.scanned_vertices = core.size();
  if (core.size() < 3) return result;

  struct Best {
    int delta2 = -1;
    std::array<size_t, 3> ijk{};
  };
  auto chunk_scan = [&](size_t, size_t begin, size_t end) {
    Best best;
    for (size_t i = begin; i < end; ++i) {
      const std::vector<int>& row_i = cache.row(core[i]);
      int pi = from_p[core[i]];
      for (size_t j = i + 1; j < core.size(); ++j) {
        const std::vector<int>& row_j = cache.row(core[j]);
        int pj = from_p[core[j]];
        int pij = pi + pj - row_i[core[j]];
        for (size_t k = j + 1; k < core.size(); ++k) {
          int pk = from_p[core[k]];
          int pik = pi + pk - row_i[core[k]];
          int pjk = pj + pk - row_j[core[k]];
          int lo = std::min({pij, pik, pjk});
          int hi = std::max({pij, pik, pjk});
          int mid = pij + pik + pjk - lo - hi;
          int delta2 = mid - lo;
          if (delta2 > best.delta2) best = Best{delta2, {i, j, k}};
        }
      }
    }
    return best;
  };
  std::vector<Best> per_chunk = parallel_chunks<Best>(core.size(), chunk_scan);
  Best best;
  for (const Best& b : per_chunk)
    if (b.delta2 > best.delta2) best = b;
  if (best.delta2 > 0) {
    result.delta = Rat(best.delta2, 2);
    result.witness = {core[best.ijk[0]], core[best.ijk[1]], core[best.ijk[2]]};
  }
  return result;
}

inline Rat gromov_delta_4pt(const Ball& ball, size_t basepoint = 0) {
  return gromov_delta_4pt_scan(ball, basepoint, ball.radius() / 2).delta;
}

namespace detail {

// Deterministic geodesic: walk from v towards u always taking the neighbor
// with the shortlex-least representative among those that decrease the
// distance to u.
inline std::vector<size_t> canonical_geodesic(const Ball& ball,
                                              const std::vector<int>& dist_from_u,
                                              size_t u, size_t v) {
  std::vector<size_t> path{v};
  size_t cur = v;
  while (cur != u) {
    int32_t pick = -1;
    for (int x = 0; x < ball.degree(); ++x) {
      int32_t w = ball.neighbor(cur, x);
      if (w < 0 || dist_from_u[static_cast<size_t>(w)] != dist_from_u[cur] - 1)
        continue;
      if (pick < 0 || ball.alphabet().shortlex_less(
                          ball.representative(static_cast<size_t>(w)),
                          ball.representative(static_cast<size_t>(pick))))
        pick = w;
    }
    cur = static_cast<size_t>(pick);
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

struct ThinTriangleResult {
  Rat delta;  // minimal R making every scanned triangle R-thin, vertexwise
  std::optional<std::array<size_t, 3>> witness;
  size_t scanned_vertices = 0;
};

// Thin-triangle constant over scanned geodesic triangles, one canonical
// geodesic per side (the all_geodesics mode walks every side combination
// within a budget; either way the result lower-bounds the space's true
// constant). Corners are restricted to dist0 <= radius/4: side points then
// stay within the half-radius core and every point-to-side distance is exact.
inline ThinTriangleResult thin_triangle_delta_scan(const Ball& ball,
                                                   int scan_radius,
                                                   bool all_geodesics = false,
                                                   size_t geodesic_limit = 16) {
  if (scan_radius > ball.radius() / 4)
    throw TooFewExactPairsError(
        "scan radius exceeds radius/4: side-to-side distances would be inexact");
  DistCache cache(ball, ball.radius() / 2);
  std::vector<size_t> corners;
  for (size_t v : cache.vertices())
    if (ball.dist0(v) <= scan_radius) corners.push_back(v);

  ThinTriangleResult result;
  result.delta = 0;
  result.scanned_vertices = corners.size();
  int best = 0;

  auto thinness = [&](const std::vector<size_t>& s1, const std::vector<size_t>& s2,
                      const std::vector<size_t>& s3) {
    int worst = 0;
    auto side_check = [&](const std::vector<size_t>& side,
                          const std::vector<size_t>& o1,
                          const std::vector<size_t>& o2) {
      for (size_t a : side) {
        int near = INT32_MAX;
        for (size_t b : o1) near = std::min(near, cache.dist(a, b));
        for (size_t b : o2) near = std::min(near, cache.dist(a, b));
        worst = std::max(worst, near);
      }
    };
    side_check(s1, s2, s3);
    side_check(s2, s3, s1);
    side_check(s3, s1, s2);
    return worst;
  };

  for (size_t i = 0; i < corners.size(); ++i)
    for (size_t j = i + 1; j < corners.size(); ++j)
      for (size_t k = j + 1; k < corners.size(); ++k) {
        size_t x = corners[i], y = corners[j], z = corners[k];
        int r;
        if (!all_geodesics) {
          std::vector<size_t> sxy =
              detail::canonical_geodesic(ball, cache.row(x), x, y);
          std::vector<size_t> syz =
              detail::canonical_geodesic(ball, cache.row(y), y, z);
          std::vector<size_t> szx =
              detail::canonical_geodesic(ball, cache.row(z), z, x);
          r = thinness(sxy, syz, szx);
        } else {
          auto gxy = ball.geodesics(x, y, geodesic_limit);
          auto gyz = ball.geodesics(y, z, geodesic_limit);
          auto gzx = ball.geodesics(z, x, geodesic_limit);
          r = 0;
          for (const auto& sxy : gxy)
            for (const auto& syz : gyz)
              for (const auto& szx : gzx) r = std::max(r, thinness(sxy, syz, szx));
        }
        if (r > best) {
          best = r;
          result.witness = {x, y, z};
        }
      }
  result.delta = Rat(best);
  return result;
}

inline Rat thin_triangle_delta(const Ball& ball) {
  return thin_triangle_delta_scan(ball, ball.radius() / 4).delta;
}

struct HyperbolicityEstimate {
  Rat gromov_delta_p;
  Word basepoint;
  std::optional<Rat> thin_triangle_delta;  // nullopt: SKIPPED
  Rat exact_pair_fraction;                 // share of scanned pairs known exact
};

inline HyperbolicityEstimate estimate_hyperbolicity(const Ball& ball,
                                                    size_t basepoint = 0,
                                                    bool with_thin = true) {
  HyperbolicityEstimate e;
  e.gromov_delta_p = gromov_delta_4pt(ball, basepoint);
  e.basepoint = ball.representative(basepoint);
  if (with_thin) e.thin_triangle_delta = thin_triangle_delta(ball);
  e.exact_pair_fraction = 1;  // scans restrict themselves to exact cores
  return e;
}

struct DivergenceValue {
  std::optional<int> value;  // nullopt: INFINITE_IN_BALL
  std::vector<size_t> path;  // witness when finite
};

// Shortest path from a to b avoiding the in-ball vertices within distance
// delta * r - lambda of c, where r = min(d(c,a), d(c,b)); a forbidden ball of
// non-positive radius is empty.
inline DivergenceValue divergence(const Ball& ball, size_t a, size_t b, size_t c,
                                  const Rat& delta, const Rat& lambda) {
  if (delta <= 0 || delta >= 1) throw InvalidInput("delta must lie in (0,1)");
  if (lambda < 0) throw InvalidInput("lambda must be nonnegative");
  Ball::Distance ca = ball.dist(c, a), cb = ball.dist(c, b);
  if (!ca.exact || !cb.exact)
    throw NotExactError("divergence needs exact distances from c to a and b");
  int r = std::min(ca.value, cb.value);
  Rat rho = delta * Rat(r) - lambda;
  std::vector<bool> forbidden(ball.size(), false);
  if (rho > 0) {
    std::vector<int> from_c = ball.dists_from(c);
    for (size_t v = 0; v < ball.size(); ++v)
      if (Rat(from_c[v]) <= rho) forbidden[v] = true;
  }
  auto found = ball.shortest_path_avoiding(a, b, forbidden);
  if (!found) return {std::nullopt, {}};
  return {found->length, found->path};
}

struct DivergenceEntry {
  int n;
  std::optional<Int> value;  // nullopt: INFINITE_IN_BALL
  std::array<Word, 3> witness;
};

struct DivergenceProfile {
  Rat delta;
  Rat lambda;
  bool sampled = false;
  uint64_t seed = 0;
  size_t sample_count = 0;
  std::vector<DivergenceEntry> entries;  // n = 1 .. n_max
};

struct SampledMode {
  uint64_t seed;
  size_t count;
};

// Profile n -> sup over triples with d(a,b) <= n of the punctured-path
// length. The triple scan is restricted to the half-radius core so r and
// d(a,b) are exact; values are therefore lower bounds for the group's
// divergence at each n. Exhaustive mode fixes (c, a) and answers every b from
// one punctured BFS; r = min(d(c,a), d(c,b)) is resolved by scanning ordered
// pairs with d(c,a) <= d(c,b).
inline DivergenceProfile divergence_profile(
    const Ball& ball, int n_max, const Rat& delta = Rat(1, 3),
    const Rat& lambda = Rat(2), std::optional<SampledMode> sampled = std::nullopt) {
  if (n_max < 1) throw InvalidInput("n_max must be positive");
  if (delta <= 0 || delta >= 1) throw InvalidInput("delta must lie in (0,1)");
  if (lambda < 0) throw InvalidInput("lambda must be nonnegative");
  if (n_max > ball.radius() / 3)
    throw BallTooSmallError("profile needs n_max <= radius/3");

  DivergenceProfile profile;
  profile.delta = delta;
  profile.lambda = lambda;

  int core_radius = ball.radius() / 2;
  DistCache cache(ball, core_radius);
  const std::vector<size_t>& core = cache.vertices();

  struct Cand {
    bool infinite = false;
    Int value = -1;
    std::array<size_t, 3> abc{};
    bool beats(const Cand& other) const {
      if (infinite != other.infinite) return infinite;
      return value > other.value;
    }
    bool valid() const { return infinite || value >= 0; }
  };
  std::vector<Cand> best(static_cast<size_t>(n_max) + 1);

  auto consider = [&](size_t a, size_t b, size_t c, const std::optional<int>& val) {
    int n = cache.dist(a, b);
    if (n < 1 || n > n_max) return;
    Cand cand;
    if (val)
      cand.value = *val;
    else
      cand.infinite = true;
    cand.abc = {a, b, c};
    if (!best[static_cast<size_t>(n)].valid() ||
        cand.beats(best[static_cast<size_t>(n)]))
      best[static_cast<size_t>(n)] = cand;
  };

  if (!sampled) {
    for (size_t c : core) {
      const std::vector<int>& from_c = cache.row(c);
      for (size_t a : core) {
        int r = from_c[a];
        Rat rho = delta * Rat(r) - lambda;
        if (rho <= 0) {
          // Empty forbidden ball: the punctured distance is the distance.
          for (size_t b : core) {
            if (from_c[b] < r) continue;
            int n = cache.dist(a, b);
            if (n >= 1 && n <= n_max) consider(a, b, c, n);
          }
          continue;
        }
        std::vector<bool> forbidden(ball.size(), false);
        for (size_t v = 0; v < ball.size(); ++v)
          if (Rat(from_c[v]) <= rho) forbidden[v] = true;
        if (forbidden[a]) continue;
        // One punctured BFS answers every b with r determined by a.
        std::vector<int> pd(ball.size(), -1);
        std::deque<size_t> queue;
        pd[a] = 0;
        queue.push_back(a);
        while (!queue.empty()) {
          size_t w = queue.front();
          queue.pop_front();
          for (int x = 0; x < ball.degree(); ++x) {
            int32_t t = ball.neighbor(w, x);
            if (t < 0) continue;
            size_t tu = static_cast<size_t>(t);
            if (forbidden[tu] || pd[tu] >= 0) continue;
            pd[tu] = pd[w] + 1;
            queue.push_back(tu);
          }
        }
        for (size_t b : core) {
          if (from_c[b] < r || forbidden[b]) continue;
          std::optional<int> val;
          if (pd[b] >= 0) val = pd[b];
          consider(a, b, c, val);
        }
      }
    }
  } else {
    profile.sampled = true;
    profile.seed = sampled->seed;
    profile.sample_count = sampled->count;
    std::mt19937_64 rng(sampled->seed);
    std::uniform_int_distribution<size_t> pick(0, core.size() - 1);
    for (size_t s = 0; s < sampled->count; ++s) {
      size_t a = core[pick(rng)], b = core[pick(rng)], c = core[pick(rng)];
      if (cache.dist(a, b) < 1 || cache.dist(a, b) > n_max) continue;
      DivergenceValue dv = divergence(ball, a, b, c, delta, lambda);
      consider(a, b, c, dv.value);
    }
  }

  // sup over a growing constraint set: entries are the running maxima.
  Cand running;
  for (int n = 1; n <= n_max; ++n) {
    if (best[static_cast<size_t>(n)].valid() &&
        (!running.valid() || best[static_cast<size_t>(n)].beats(running)))
      running = best[static_cast<size_t>(n)];
    DivergenceEntry entry;
    entry.n = n;
    if (running.valid()) {
      if (!running.infinite) entry.value = running.value;
      entry.witness = {ball.representative(running.abc[0]),
                       ball.representative(running.abc[1]),
                       ball.representative(running.abc[2])};
    } else {
      entry.value = 0;  // no admissible triple at this n
    }
    profile.entries.push_back(std::move(entry));
  }
  return profile;
}

// Weighted shortest-path distance where the edge from x to y costs
// (1 + min(dist0(x), dist0(y)))^-2, computed with exact rationals.
inline Rat floyd_distance(const Ball& ball, size_t u, size_t v) {
  if (u >= ball.size() || v >= ball.size())
    throw NotInBallError("floyd_distance endpoint not in ball");
  if (u == v) return Rat(0);
  std::vector<Rat> weight_by_level(static_cast<size_t>(ball.radius()) + 1);
  for (int k = 0; k <= ball.radius(); ++k)
    weight_by_level[static_cast<size_t>(k)] = Rat(1, (1 + k) * (1 + k));

  std::vector<std::optional<Rat>> dist(ball.size());
  using Item = std::pair<Rat, size_t>;
  auto cmp = [](const Item& a, const Item& b) {
    return a.first > b.first || (a.first == b.first && a.second > b.second);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  dist[u] = Rat(0);
  heap.push({Rat(0), u});
  while (!heap.empty()) {
    auto [d, w] = heap.top();
    heap.pop();
    if (*dist[w] < d) continue;
    if (w == v) return d;
    for (int x = 0; x < ball.degree(); ++x) {
      int32_t t = ball.neighbor(w, x);
      if (t < 0) continue;
      size_t tu = static_cast<size_t>(t);
      Rat cand = d + weight_by_level[static_cast<size_t>(
                         std::min(ball.dist0(w), ball.dist0(tu)))];
      if (!dist[tu] || cand < *dist[tu]) {
        dist[tu] = cand;
        heap.push({cand, tu});
      }
    }
  }
  throw NotInBallError("floyd_distance: endpoints disconnected in ball");
}

}  // namespace lacuna
