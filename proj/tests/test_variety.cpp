#include <doctest.h>

#include <queue>
#include <stdexcept>

#include "segre/variety.hpp"

using namespace segre;

TEST_CASE("build counts") {
  SegreVariety v32 = SegreVariety::build(3, 2);
  CHECK(v32.point_count() == 16);
  CHECK(v32.lines().size() == 8);

  SegreVariety v33 = SegreVariety::build(3, 3);
  CHECK(v33.point_count() == 64);
  CHECK(v33.lines().size() == 48);
  CHECK(v33.lines_per_direction() == 16);

  SegreVariety v22 = SegreVariety::build(2, 2);
  CHECK(v22.point_count() == 9);
  CHECK(v22.lines().size() == 6);

  CHECK_THROWS_AS(SegreVariety::build(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(SegreVariety::build(3, 5), std::invalid_argument);
}

TEST_CASE("every point lies on exactly k lines, every line has q+1 points") {
  for (uint8_t q : {uint8_t(2), uint8_t(3)})
    for (uint8_t k = 1; k <= 3; ++k) {
      SegreVariety v = SegreVariety::build(q, k);
      std::vector<unsigned> through(v.point_count(), 0);
      for (const VarietyLine& l : v.lines()) {
        CHECK(l.mask.count() == v.labels());
        for (uint16_t a = 0; a < v.labels(); ++a) ++through[l.pts[a]];
      }
      for (unsigned c : through) CHECK(c == v.k());
    }
}

namespace {

// BFS distance in the collinearity graph: the independent oracle.
unsigned bfs_distance(const SegreVariety& v, uint16_t from, uint16_t to) {
  std::vector<int> dist(v.point_count(), -1);
  std::queue<uint16_t> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    uint16_t u = q.front();
    q.pop();
    if (u == to) break;
    for (uint8_t j = 0; j < v.k(); ++j) {
      const VarietyLine& l = v.line(v.line_through(u, j));
      for (uint16_t a = 0; a < v.labels(); ++a)
        if (dist[l.pts[a]] < 0) {
          dist[l.pts[a]] = dist[u] + 1;
          q.push(l.pts[a]);
        }
    }
  }
  return static_cast<unsigned>(dist[to]);
}

}  // namespace

TEST_CASE("distance equals collinearity-graph distance") {
  SegreVariety v = SegreVariety::build(3, 3);
  CHECK(v.distance(0, 0) == 0);
  uint16_t p000 = v.index_of({0, 0, 0}), p111 = v.index_of({1, 1, 1});
  CHECK(v.distance(p000, p111) == 3);
  for (uint16_t p = 0; p < v.point_count(); p += 5)
    for (uint16_t r = 0; r < v.point_count(); r += 7)
      CHECK(v.distance(p, r) == bfs_distance(v, p, r));
}

TEST_CASE("collinearity iff distance one, unique joining line") {
  SegreVariety v = SegreVariety::build(3, 2);
  for (uint16_t p = 0; p < v.point_count(); ++p)
    for (uint16_t r = static_cast<uint16_t>(p + 1); r < v.point_count(); ++r) {
      unsigned joint = 0;
      for (const VarietyLine& l : v.lines())
        if (l.mask.test(p) && l.mask.test(r)) ++joint;
      CHECK(joint == (v.distance(p, r) == 1 ? 1u : 0u));
    }
}

TEST_CASE("tensor coordinates") {
  SegreVariety v = SegreVariety::build(3, 2);
  CHECK(v.tensor_coordinates(v.index_of({0, 0})) == GfVec{1, 0, 0, 0});
  CHECK(v.tensor_coordinates(v.index_of({1, 1})) == GfVec{0, 0, 0, 1});
  CHECK(v.tensor_coordinates(v.index_of({2, 3})) == GfVec{1, 2, 1, 2});

  SegreVariety v3 = SegreVariety::build(3, 3);
  GfVec first(8, 0), last(8, 0);
  first[0] = 1;
  last[7] = 1;
  CHECK(v3.tensor_coordinates(v3.index_of({0, 0, 0})) == first);
  CHECK(v3.tensor_coordinates(v3.index_of({1, 1, 1})) == last);
}

TEST_CASE("lines map to lines under the Segre embedding") {
  for (uint8_t k = 2; k <= 3; ++k) {
    SegreVariety v = SegreVariety::build(3, k);
    for (const VarietyLine& l : v.lines()) {
      DenseMatrix m(3, 1u << k);
      for (uint16_t a = 0; a < v.labels(); ++a) m.append_row(v.tensor_coordinates(l.pts[a]));
      CHECK(m.rank() == 2);
    }
  }
}

TEST_CASE("layers and spreads") {
  SegreVariety v = SegreVariety::build(3, 3);
  for (uint8_t j = 0; j < 3; ++j) {
    PointSet seen = v.empty_set();
    for (uint8_t a = 0; a < 4; ++a) {
      const PointSet& lm = v.layer_mask(j, a);
      CHECK(lm.count() == 16);
      CHECK((seen & lm).none());  // pairwise disjoint
      seen = seen | lm;
    }
    CHECK(seen.count() == 64);  // cover
    // Every direction-j line meets every direction-j layer exactly once.
    for (const VarietyLine& l : v.lines())
      if (l.dir == j)
        for (uint8_t a = 0; a < 4; ++a) CHECK((l.mask & v.layer_mask(j, a)).count() == 1);
  }
}
