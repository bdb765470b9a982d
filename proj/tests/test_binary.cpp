#include <doctest.h>

#include <stdexcept>
#include "segre/binary.hpp"

using namespace segre;

TEST_CASE("binary copies of S_3(2) inside S_3(3)") {
  SegreVariety v3 = SegreVariety::build(3, 3);
  std::vector<BinaryCopy> copies = binary_copies(v3);
  CHECK(copies.size() == 64);
  for (const BinaryCopy& c : copies) CHECK(c.mask.count() == 27);
  // Copies differing in exactly one factor share 2*3*3 = 18 points.
  CHECK((copies[0].mask & copies[16].mask).count() == 18);
  // Each copy has 27 induced lines of size 3: every ternary line whose fixed
  // coordinates stay inside the label sets contributes one truncated line.
  const BinaryCopy& c0 = copies[0];
  unsigned induced = 0;
  for (const VarietyLine& l : v3.lines()) {
    unsigned inside = (l.mask & c0.mask).count();
    CHECK((inside == 3 || inside <= 2));
    if (inside == 3) ++induced;
  }
  CHECK(induced == 27);
  CHECK_THROWS_AS(binary_copies(SegreVariety::build(2, 3)), std::invalid_argument);
}

TEST_CASE("q=2 pipeline: S_2(2) and S_3(2) censuses") {
  TowerOptions opts;
  opts.q = 2;
  opts.max_k = 3;
  Tower t = Tower::build(opts);
  CHECK(t.level(2).hyps.size() == 15);
  CHECK(t.level(2).lines.size() == 35);
  CHECK(t.level(3).hyps.size() == 255);
  CHECK(t.level(3).hyp_classes.size() == 5);
  CHECK(t.level(3).lines.size() == 10795);
  CHECK(t.level(3).lines.size() == 255ull * 254 / 6);  // PG(7,2) line count
  CHECK(t.level(3).line_classes.size() == 41);
}

TEST_CASE("restriction classification and hyperplane extension") {
  SegreVariety v3 = SegreVariety::build(3, 3);
  TowerOptions b;
  b.q = 2;
  b.max_k = 3;
  Tower bt = Tower::build(b);
  const Level& b3 = bt.level(3);
  std::vector<BinaryCopy> copies = binary_copies(v3);
  const BinaryCopy& c0 = copies[0];

  // A ternary singular hyperplane with nucleus inside the copy restricts to a
  // binary singular hyperplane (19 points).
  PointSet s = singular_hyperplane(v3, c0.emb[0]);
  uint32_t r = restrict_to_copy(c0, b3.hyps, s);
  REQUIRE(r != kFullCopy);
  REQUIRE(r != kNotSection);
  CHECK(b3.hyps.pts(r) == 19);

  // copies[0] omits label 0 in every factor. A nucleus with one coordinate
  // outside the copy's label sets gives a non-section (the hyperplane axiom
  // is not hereditary under truncated lines); a fully outside nucleus gives
  // the empty restriction.
  CHECK(restrict_to_copy(c0, b3.hyps, singular_hyperplane(v3, v3.index_of({0, 1, 1}))) ==
        kNotSection);
  CHECK(restrict_to_copy(c0, b3.hyps, singular_hyperplane(v3, v3.index_of({0, 0, 0}))) ==
        kNotSection);

  TowerOptions t3;
  t3.q = 3;
  t3.max_k = 3;
  t3.lines_at_top = false;
  Tower tt = Tower::build(t3);
  const Level& l3 = tt.level(3);
  std::vector<uint32_t> ext = extend_hyperplane(l3, c0, b3.hyps, r);
  CHECK(!ext.empty());
  for (uint32_t id : ext) CHECK((l3.hyps.mask(id) & c0.mask).count() == 19);
}
