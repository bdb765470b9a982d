#include <doctest.h>

#include "segre/blowup.hpp"
#include "segre/hyperplane.hpp"

using namespace segre;

TEST_CASE("is_hyperplane on S_2(3)") {
  SegreVariety v = SegreVariety::build(3, 2);
  // Two intersecting lines: row 0 and column 0.
  PointSet two_lines = v.line(v.line_through(0, 0)).mask | v.line(v.line_through(0, 1)).mask;
  CHECK(two_lines.count() == 7);
  CHECK(is_hyperplane(v, two_lines));
  CHECK_FALSE(is_hyperplane(v, v.line(0).mask));  // a single line
  CHECK_FALSE(is_hyperplane(v, v.full_set()));    // not proper
  CHECK_FALSE(is_hyperplane(v, v.empty_set()));
}

TEST_CASE("singular hyperplanes") {
  for (uint8_t k = 2; k <= 4; ++k) {
    SegreVariety v = SegreVariety::build(3, k);
    PointSet s = singular_hyperplane(v, 0);
    unsigned expect = 1;
    for (uint8_t i = 0; i < k; ++i) expect *= 4;
    unsigned cube = 1;
    for (uint8_t i = 0; i < k; ++i) cube *= 3;
    CHECK(s.count() == expect - cube);  // 4^k - 3^k
    CHECK(is_hyperplane(v, s));
  }
  // k = 3: 37 points, 21 lines, 10 points of order 3.
  SegreVariety v3 = SegreVariety::build(3, 3);
  Hyperplane h = Hyperplane::make(v3, singular_hyperplane(v3, 5));
  CHECK(h.points.count() == 37);
  CHECK(h.order_profile == std::vector<uint32_t>{0, 0, 27, 10});
  CHECK(h.deep_points.count() == 10);
  // k = 4: 175 points, 67 points of order 4.
  SegreVariety v4 = SegreVariety::build(3, 4);
  Hyperplane h4 = Hyperplane::make(v4, singular_hyperplane(v4, 77));
  CHECK(h4.points.count() == 175);
  CHECK(h4.order_profile == std::vector<uint32_t>{0, 0, 0, 108, 67});
}

TEST_CASE("k = 2 brute force census: 16 singular + 24 ovoids") {
  SegreVariety v = SegreVariety::build(3, 2);
  std::vector<PointSet> masks = enumerate_masks(v, nullptr, true, 0);
  HyperplaneStore store = HyperplaneStore::build(v, std::move(masks));
  CHECK(store.size() == 40);
  unsigned singular = 0, ovoid = 0;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.pts(i) == 7 && store.lns(i) == 2) ++singular;
    if (store.pts(i) == 4 && store.lns(i) == 0) ++ovoid;
  }
  CHECK(singular == 16);
  CHECK(ovoid == 24);
  // All 40 are projective (they form a PG(3,3)).
  for (std::size_t i = 0; i < store.size(); ++i) CHECK(store.is_projective(i));
  // Every singular hyperplane is in the store.
  for (uint16_t n = 0; n < 16; ++n) CHECK(store.find(singular_hyperplane(v, n)) >= 0);
}

TEST_CASE("projectivity: rank test and dual round trip") {
  SegreVariety v = SegreVariety::build(3, 2);
  PointSet s = singular_hyperplane(v, 0);
  // The 7-row tensor matrix of a singular hyperplane of S_2(3) has rank 3.
  DenseMatrix m(3, 4);
  for (uint16_t p = 0; p < 16; ++p)
    if (s.test(p)) m.append_row(v.tensor_coordinates(p));
  CHECK(m.rank() == 3);

  Projectivity pr = projectivity(v, s);
  REQUIRE(pr.projective);
  // The dual form vanishes exactly on the hyperplane.
  CHECK(zero_locus(v, pr.dual) == s);

  SegreVariety v3 = SegreVariety::build(3, 3);
  PointSet s3 = singular_hyperplane(v3, 11);
  Projectivity pr3 = projectivity(v3, s3);
  REQUIRE(pr3.projective);
  CHECK(zero_locus(v3, pr3.dual) == s3);
}

TEST_CASE("ovoids meet every spread line exactly once") {
  SegreVariety v = SegreVariety::build(3, 2);
  std::vector<PointSet> masks = enumerate_masks(v, nullptr, true, 0);
  HyperplaneStore store = HyperplaneStore::build(v, std::move(masks));
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store.lns(i) != 0) continue;
    CHECK(store.pts(i) == 4);  // (q+1)^(k-1)
    for (const VarietyLine& l : v.lines()) CHECK((l.mask & store.mask(i)).count() == 1);
  }
}

TEST_CASE("dual key packing") {
  GfVec form = {1, 2, 0, 1};
  CHECK(unpack_dual(pack_dual(form), 4) == form);
}
