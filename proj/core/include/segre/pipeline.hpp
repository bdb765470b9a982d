#pragma once

#include <cstdint>
#include <vector>

#include "segre/orbits.hpp"
#include "segre/veldkamp.hpp"

namespace segre {

struct HypClass {
  TypeSignature sig;
  uint64_t count = 0;
  uint32_t rep = 0;  // smallest member id
};

struct LineClassInfo {
  LineSignature sig;
  uint64_t count = 0;
  uint32_t rep = 0;
  // Orbit refinement (filled by compute_line_orbits): number of group orbits
  // inside the class and their sizes, smallest first.
  uint8_t suborbits = 0;
  std::vector<uint64_t> suborbit_sizes;
};

// Everything known about one level: the variety S_k(q), its classified
// hyperplanes, and (when built) its classified ordinary Veldkamp lines.
// The store references the level's own variety: access levels through the
// owning Tower rather than moving them out.
struct Level {
  SegreVariety v;
  HyperplaneStore hyps;
  std::vector<uint16_t> hyp_type;
  std::vector<HypClass> hyp_classes;
  OrbitPartition hyp_orbits;

  LineStore lines;  // over the full hyperplane store
  std::vector<uint16_t> line_type;
  std::vector<LineClassInfo> line_classes;
  OrbitPartition line_orbits;
  std::vector<uint8_t> line_sublabel;  // orbit sublabel within the class (0 = smallest orbit)
  bool lines_built = false;
  bool line_orbits_built = false;

  std::vector<uint32_t> projective_line_ids() const;
  // Lines whose members are all projective but the line itself is not.
  std::vector<uint32_t> starred_line_ids(const HyperplaneStore& store) const;
};

// The hyperplane-type signature of one store entry, using the lower level's
// hyperplane classifier for the section census and its line classifier for
// the spread projections (omitted when absent, e.g. at k = 2).
TypeSignature hyp_signature(const SegreVariety& v, const HyperplaneStore& store,
                            std::size_t i, const Level* lower);

struct TowerOptions {
  uint8_t q = 3;
  uint8_t max_k = 3;
  bool lines_at_top = true;   // run Algorithm 1 at the top level too
  bool orbits_at_top = true;  // orbit-refine the top-level lines
  unsigned threads = 0;
};

// Bottom-up construction of levels 2..max_k: brute force at k = 2, blow-ups
// of the lower level's Veldkamp lines above that; classification at each
// level feeds the next one's section census and VL columns.
class Tower {
 public:
  static Tower build(const TowerOptions& opts);
  const Level& level(uint8_t k) const { return levels_.at(k); }
  Level& level(uint8_t k) { return levels_.at(k); }
  uint8_t q() const { return q_; }

 private:
  uint8_t q_ = 3;
  std::vector<Level> levels_;
};

// Classification passes (exposed for tests; Tower::build runs them).
void classify_level_hyperplanes(Level& lvl, const Level* lower, unsigned threads);
void classify_level_lines(Level& lvl, unsigned threads);
void compute_hyp_orbits(Level& lvl, unsigned threads);
void compute_line_orbits(Level& lvl, unsigned threads);

}  // namespace segre
