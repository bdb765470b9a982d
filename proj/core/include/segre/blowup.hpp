#pragma once

#include <map>
#include <string>

#include "segre/pipeline.hpp"

namespace segre {

// Provenance of one blow-up output.
struct BlowupRecord {
  uint32_t source = 0;  // line id (ordinary) or hyperplane id (trivial)
  uint8_t perm = 0;     // permutation index (ordinary) or full-layer index (trivial)
  bool trivial = false;
};

// H = union_i h_{perm[i]} x {[x_i]}, the new factor prepended as the first
// coordinate. Throws if the members' pairwise intersections differ.
PointSet blow_up_ordinary(const SegreVariety& target, const HyperplaneStore& src,
                          const std::array<uint32_t, 4>& members, uint8_t member_count,
                          const std::array<uint8_t, 4>& perm);

// H' = X x {[x_j]} union h x {[x_i]} for i != j.
PointSet blow_up_trivial(const SegreVariety& target, const HyperplaneStore& src, uint32_t h,
                         uint8_t full_layer);

// The permutations of 0..count-1 in lexicographic order.
std::vector<std::array<uint8_t, 4>> layer_permutations(uint8_t count);

// All hyperplane point sets of S_k(q) for k <= 3: brute force over subsets at
// k = 2 (the completeness oracle), blow-ups of the lower level's ordinary and
// trivial Veldkamp lines above that.
std::vector<PointSet> enumerate_masks(const SegreVariety& target, const Level* lower,
                                      bool include_nonprojective, unsigned threads);

// ---- k = 4 streaming enumeration and census ------------------------------

struct K4Provenance {
  uint16_t tag = 0;      // line type (ordinary) or kTrivialTag | hyperplane type
  uint8_t sublabel = 0;  // orbit sublabel of the source line (0 when unsplit)
  bool operator<(const K4Provenance& o) const {
    return std::tie(tag, sublabel) < std::tie(o.tag, o.sublabel);
  }
};

struct K4Class {
  TypeSignature sig;
  uint64_t count = 0;
  std::map<K4Provenance, uint64_t> provenance;  // members per generating source
  // One representative per provenance key: (source id, perm, trivial flag, dual key).
  std::map<K4Provenance, std::tuple<uint32_t, uint8_t, bool, DualKey>> reps;
};

struct K4Census {
  std::vector<K4Class> classes;  // canonical signature order
  uint64_t total = 0;
  bool projective_run = true;

  // Projective run only: every canonical dual key, sorted; all_distinct set
  // by the zero-collision check.
  std::vector<DualKey> keys;
  bool all_distinct = false;

  // Non-projective run only: the deduplicated point sets.
  std::vector<PointSet> masks;

  // Ovoid (64-point) outputs with their source-line orbit sublabels, for the
  // direct-closure cross-check of the type-43 split.
  std::vector<std::pair<PointSet, uint8_t>> ovoids;
};

struct K4Options {
  unsigned threads = 0;
  bool keep_keys = true;
  bool keep_ovoids = false;
  uint64_t max_mem_bytes = 0;  // 0 = unlimited; low values switch the dedup
                               // check to a chunked external merge
  std::string scratch_dir;     // for the external merge (default: system tmp)
};

// Blows up every projective line of V(S_3(3)) (24 permutations each) and the
// trivial line of every projective hyperplane (4 positions each), classifying
// each output on the fly. Requires tower levels up to 3 with classified lines.
K4Census enumerate_k4_projective(const Tower& tower, const K4Options& opts);

// Blows up the starred lines (non-projective lines with all-projective
// members) and the trivial lines of the non-projective ovoids.
K4Census enumerate_k4_nonprojective(const Tower& tower, const K4Options& opts);

// Materializes one blow-up output as a k = 4 point set (for property sweeps).
PointSet k4_mask(const SegreVariety& v4, const HyperplaneStore& hyps3,
                 const std::array<uint32_t, 4>& members, uint8_t member_count,
                 const std::array<uint8_t, 4>& perm);

// The dual form of a blown-up projective line (normalized), and of a trivial
// blow-up of a projective hyperplane.
GfVec blowup_dual_ordinary(const HyperplaneStore& hyps3, const std::array<uint32_t, 4>& members,
                           const std::array<uint8_t, 4>& perm);
GfVec blowup_dual_trivial(const HyperplaneStore& hyps3, uint32_t h, uint8_t full_layer);

// Bare key + provenance enumeration over explicit sources (the CLI blowup
// path; no classification, so unclassified line stores work). Output sorted
// by key byte order; `all_distinct` reports the zero-collision check.
std::vector<std::pair<DualKey, BlowupRecord>> k4_keys_with_provenance(
    const HyperplaneStore& hyps3, const LineStore& lines, const std::vector<uint32_t>& line_ids,
    const std::vector<uint32_t>& trivial_ids, unsigned threads, bool* all_distinct);

// Classification of a bare dual-key collection (e.g. read back from a .svh
// file): the four layer forms of each key recover the level-3 sections, so
// the geometric type and the generating source are reconstructed exactly.
K4Census classify_k4_keys(const Tower& tower, const std::vector<DualKey>& keys, unsigned threads);

// ---- orbit refinement of the k = 4 census --------------------------------

struct RefinedK4Class {
  std::size_t base_class = 0;  // index into census.classes
  uint8_t sublabel = 0;        // suborbit label of the generating lines
  bool split = false;          // base class split by line suborbits
  uint64_t count = 0;
};

// Splits each geometric class by the orbit sublabel of its generating line
// type (Algorithm 3 pushed one level up). Throws if a split subtype's
// cardinality disagrees with 24x the line-suborbit cardinality.
std::vector<RefinedK4Class> refine_k4_types(const K4Census& census, const Level& l3);

// Direct generator closure over a collection of k = 4 point sets (the slow
// verification used on sampled types).
OrbitPartition k4_mask_orbits(const SegreVariety& v4, const std::vector<PointSet>& masks);

}  // namespace segre
