#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lacuna/oracle.hpp"
#include "lacuna/probes.hpp"

using namespace lacuna;

namespace {

Ball free_ball(int radius) {
  FreeOracle o(Alphabet("ab"));
  return build_ball(o, radius);
}

Ball lattice_ball(int radius) {
  AbelianOracle o(Alphabet("ab"));
  return build_ball(o, radius);
}

size_t lattice_vertex(const Ball& b, int x, int y) {
  std::string w;
  w.append(static_cast<size_t>(x >= 0 ? x : 0), 'a');
  w.append(static_cast<size_t>(x < 0 ? -x : 0), 'A');
  w.append(static_cast<size_t>(y >= 0 ? y : 0), 'b');
  w.append(static_cast<size_t>(y < 0 ? -y : 0), 'B');
  AbelianOracle o(Alphabet("ab"));
  auto v = b.find(Word(w), o);
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("four point delta vanishes on trees") {
  for (int r = 2; r <= 8; r += 2) {
    Ball b = free_ball(r);
    CHECK(gromov_delta_4pt(b, 0) == Rat(0));
  }
}

TEST_CASE("four point delta on a single vertex") {
  Ball b = free_ball(0);
  CHECK(gromov_delta_4pt(b, 0) == Rat(0));
}

TEST_CASE("four point delta positive on the lattice") {
  Ball b = lattice_ball(8);
  Rat d = gromov_delta_4pt(b, 0);  // scan radius 4
  CHECK(d > 0);
  // Pinned by the triple x = (4,0), y = (0,4), z = (2,2):
  // products (0, 4, 4) force delta >= 2; the scan confirms 2 is the max.
  CHECK(d == Rat(2));
}

TEST_CASE("thin triangles on trees and the lattice") {
  Ball tree = free_ball(4);
  CHECK(thin_triangle_delta(tree) == Rat(0));

  Ball two = free_ball(1);
  CHECK(thin_triangle_delta(two) == Rat(0));

  for (int r = 8; r <= 16; r += 4) {
    Ball lattice = lattice_ball(r);
    Rat thin = thin_triangle_delta(lattice);
    Rat four = gromov_delta_4pt(lattice, 0);
    CHECK(thin <= Rat(4) * four + 1);
  }
}

TEST_CASE("estimate bundles both probes") {
  Ball lattice = lattice_ball(8);
  HyperbolicityEstimate e = estimate_hyperbolicity(lattice, 0);
  CHECK(e.gromov_delta_p == Rat(2));
  REQUIRE(e.thin_triangle_delta.has_value());
  CHECK(e.exact_pair_fraction == Rat(1));
  CHECK(e.basepoint.str() == "1");
}

TEST_CASE("divergence around a puncture") {
  Ball b = lattice_ball(6);
  size_t a = lattice_vertex(b, -2, 0);
  size_t c = lattice_vertex(b, 0, 0);
  size_t bb = lattice_vertex(b, 2, 0);
  DivergenceValue v = divergence(b, a, bb, c, Rat(1, 3), Rat(0));
  REQUIRE(v.value.has_value());
  CHECK(*v.value == 6);

  // Empty forbidden ball: plain distance.
  DivergenceValue w = divergence(b, a, bb, c, Rat(1, 3), Rat(2));
  REQUIRE(w.value.has_value());
  CHECK(*w.value == 4);
}

TEST_CASE("divergence is infinite across a tree cut point") {
  Ball tree = free_ball(5);
  FreeOracle o(Alphabet("ab"));
  size_t va = *tree.find(Word("aa"), o);
  size_t vA = *tree.find(Word("AA"), o);
  // r = 2 and delta r - lambda = 4/3: the forbidden ball swallows the cut
  // point between the two branches.
  DivergenceValue v = divergence(tree, va, vA, 0, Rat(2, 3), Rat(0));
  CHECK_FALSE(v.value.has_value());
  CHECK_THROWS_AS(divergence(tree, va, vA, 0, Rat(1), Rat(0)), InvalidInput);
}

TEST_CASE("divergence monotonicity in lambda and delta") {
  Ball b = lattice_ball(9);
  size_t a = lattice_vertex(b, -3, 0);
  size_t c = lattice_vertex(b, 0, 0);
  size_t bb = lattice_vertex(b, 3, 0);
  auto value = [&](Rat delta, Rat lambda) {
    DivergenceValue v = divergence(b, a, bb, c, delta, lambda);
    REQUIRE(v.value.has_value());
    return *v.value;
  };
  // Antitone in lambda.
  CHECK(value(Rat(2, 3), Rat(0)) >= value(Rat(2, 3), Rat(1)));
  CHECK(value(Rat(2, 3), Rat(1)) >= value(Rat(2, 3), Rat(2)));
  // Nondecreasing in delta.
  CHECK(value(Rat(1, 3), Rat(0)) <= value(Rat(2, 3), Rat(0)));
}

TEST_CASE("divergence profile on the lattice") {
  Ball b = lattice_ball(12);
  DivergenceProfile profile = divergence_profile(b, 4);
  REQUIRE(profile.entries.size() == 4);
  CHECK(profile.entries[0].n == 1);
  REQUIRE(profile.entries[0].value.has_value());
  CHECK(*profile.entries[0].value == 1);
  for (size_t i = 1; i < profile.entries.size(); ++i) {
    REQUIRE(profile.entries[i].value.has_value());
    CHECK(*profile.entries[i].value >= *profile.entries[i - 1].value);
  }
  CHECK_THROWS_AS(divergence_profile(b, 5), BallTooSmallError);
}

TEST_CASE("sampled profile is reproducible") {
  Ball b = lattice_ball(9);
  SampledMode mode{20240811u, 400};
  DivergenceProfile p1 = divergence_profile(b, 3, Rat(1, 3), Rat(2), mode);
  DivergenceProfile p2 = divergence_profile(b, 3, Rat(1, 3), Rat(2), mode);
  REQUIRE(p1.entries.size() == p2.entries.size());
  for (size_t i = 0; i < p1.entries.size(); ++i) {
    CHECK(p1.entries[i].value == p2.entries[i].value);
    CHECK(p1.entries[i].witness == p2.entries[i].witness);
  }
}

TEST_CASE("floyd distances in the tree") {
  Ball b = free_ball(4);
  FreeOracle o(Alphabet("ab"));
  size_t va = *b.find(Word("a"), o);
  CHECK(floyd_distance(b, 0, va) == Rat(1));
  size_t vab = *b.find(Word("ab"), o);
  CHECK(floyd_distance(b, 0, vab) == Rat(5, 4));

  // Symmetry and the triangle inequality.
  size_t vB = *b.find(Word("B"), o);
  Rat duv = floyd_distance(b, vab, vB);
  CHECK(duv == floyd_distance(b, vB, vab));
  CHECK(duv <= floyd_distance(b, vab, 0) + floyd_distance(b, 0, vB));
  // Tree path through the origin is optimal here.
  CHECK(duv == Rat(5, 4) + Rat(1));

  // Edge weights never exceed one, so the weighted metric is dominated by
  // the graph metric.
  std::mt19937 rng(5);
  std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    size_t u = pick(rng), v = pick(rng);
    Rat f = floyd_distance(b, u, v);
    std::vector<int> du = b.dists_from(u);
    CHECK(f <= Rat(du[v]));
  }
}

TEST_CASE("floyd distance matches the tree path formula") {
  Ball b = free_ball(6);
  // Weighted length of the unique tree path, via meet depth.
  auto harmonic_to = [&](int depth) {
    Rat sum(0);
    for (int k = 0; k < depth; ++k) sum += Rat(1, (1 + k) * (1 + k));
    return sum;
  };
  std::mt19937 rng(11);
  std::uniform_int_distribution<size_t> pick(0, b.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    size_t u = pick(rng), v = pick(rng);
    const std::string& wu = b.representative(u).letters();
    const std::string& wv = b.representative(v).letters();
    size_t meet = 0;
    while (meet < wu.size() && meet < wv.size() && wu[meet] == wv[meet]) ++meet;
    Rat expected = harmonic_to(static_cast<int>(wu.size())) +
                   harmonic_to(static_cast<int>(wv.size())) -
                   2 * harmonic_to(static_cast<int>(meet));
    CHECK(floyd_distance(b, u, v) == expected);
  }
}

TEST_CASE("profile witnesses reproduce their values") {
  Ball b = lattice_ball(12);
  AbelianOracle o(Alphabet("ab"));
  DivergenceProfile profile = divergence_profile(b, 4);
  for (const DivergenceEntry& e : profile.entries) {
    REQUIRE(e.value.has_value());
    size_t a = *b.find(e.witness[0], o);
    size_t bb = *b.find(e.witness[1], o);
    size_t c = *b.find(e.witness[2], o);
    DivergenceValue again = divergence(b, a, bb, c, profile.delta, profile.lambda);
    REQUIRE(again.value.has_value());
    CHECK(Int(*again.value) == *e.value);
  }
}

TEST_CASE("floyd distance is a metric on a small ball") {
  Ball b = free_ball(2);  // 17 vertices
  std::vector<std::vector<Rat>> m(b.size(), std::vector<Rat>(b.size()));
  for (size_t u = 0; u < b.size(); ++u)
    for (size_t v = 0; v < b.size(); ++v) m[u][v] = floyd_distance(b, u, v);
  for (size_t u = 0; u < b.size(); ++u) {
    CHECK(m[u][u] == Rat(0));
    for (size_t v = 0; v < b.size(); ++v) {
      CHECK(m[u][v] == m[v][u]);
      if (u != v) CHECK(m[u][v] > 0);
      for (size_t w = 0; w < b.size(); ++w) CHECK(m[u][w] <= m[u][v] + m[v][w]);
    }
  }
}
