#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "segre/store.hpp"

namespace segre {

constexpr uint32_t kNoMember = 0xFFFFFFFFu;

// A Veldkamp line. Ordinary: q+1 pairwise distinct hyperplanes whose pairwise
// intersections all equal the core. Trivial: the whole variety together with
// one hyperplane counted q times; stored as that hyperplane's id with kind
// Trivial (members[i] = h for all used slots).
struct VeldkampLine {
  enum Kind : uint8_t { Ordinary = 0, Trivial = 1 };
  std::array<uint32_t, 4> members{kNoMember, kNoMember, kNoMember, kNoMember};
  Kind kind = Ordinary;
  bool projective = false;
};

// Sorted, deduplicated collection of ordinary Veldkamp lines over one
// hyperplane store. Member ids index the store; records are ordered
// lexicographically by member tuple.
class LineStore {
 public:
  uint8_t member_count = 4;  // q+1
  std::vector<std::array<uint32_t, 4>> members;
  std::vector<uint8_t> projective;

  std::size_t size() const { return members.size(); }
  int64_t find(const std::array<uint32_t, 4>& key) const;  // -1 if absent

  static uint64_t pack_key(const std::array<uint32_t, 4>& m) {
    return (uint64_t(m[0] & 0xFFFF) << 48) | (uint64_t(m[1] & 0xFFFF) << 32) |
           (uint64_t(m[2] & 0xFFFF) << 16) | uint64_t(m[3] & 0xFFFF);
  }

  VeldkampLine line(std::size_t i) const {
    VeldkampLine l;
    l.members = members[i];
    l.kind = VeldkampLine::Ordinary;
    l.projective = projective[i] != 0;
    return l;
  }

  PointSet core(const HyperplaneStore& store, std::size_t i) const;
};

// Pairs whose candidate list in Algorithm 1 is empty; diagnostic for the
// "lines of size two" phenomenon (no 4-member完成 exists through the pair).
struct EmptyPairReport {
  std::vector<std::array<uint32_t, 2>> pairs;  // hyperplane ids
};

// Algorithm 1. For every unordered pair over `scope`, collect all h with
// h&hi == h&hj == hi&hj, then emit every member tuple whose pairwise
// intersections equal the core. Output deduplicated and sorted; independent
// of the worker count. Lines are tagged projective iff all members are
// projective and their dual vectors are collinear.
LineStore find_lines(const SegreVariety& v, const HyperplaneStore& store,
                     const std::vector<uint32_t>& scope, unsigned threads = 0,
                     EmptyPairReport* diag = nullptr);

// Dual-space shortcut: lines of the dual projective space through pairs of
// dual points; the remaining members are the nontrivial combinations of the
// two dual vectors. Requires every scope member to carry a dual vector.
LineStore projective_lines_fast(const SegreVariety& v, const HyperplaneStore& store,
                                const std::vector<uint32_t>& scope, unsigned threads = 0);

// One trivial line per hyperplane.
std::vector<VeldkampLine> trivial_lines(const HyperplaneStore& store);

// Tie-breaker record distinguishing line types that share core and
// composition (the extended classification features). Deep-point distances
// are computed for reporting but stay out of the class key: every distinction
// that mentions them is already decided by the other fields, and keying on
// them would cut across group orbits.
struct LineTiebreak {
  uint8_t core_line_concurrency = 0;  // pairs of core lines sharing a point
  std::vector<std::array<uint16_t, 2>> zero_in_core;  // (member type, order-0 points in core, total per type)
  std::vector<uint8_t> deep_distances;  // pairwise distances between single-deep members' deep points
  uint8_t deep_in_core = 0;             // single-deep members whose deep point lies in the core
  std::vector<uint8_t> order2_core_distances;  // see core_features

  auto tie() const {
    return std::tie(core_line_concurrency, zero_in_core, deep_in_core, order2_core_distances);
  }
  bool operator==(const LineTiebreak& o) const { return tie() == o.tie(); }
  bool operator<(const LineTiebreak& o) const { return tie() < o.tie(); }
};

// Canonical invariant tuple for bucketing lines into table rows.
struct LineSignature {
  uint16_t core_pts = 0;
  uint16_t core_lns = 0;
  std::vector<uint16_t> member_types;  // sorted hyperplane type ids
  bool projective = false;
  LineTiebreak tiebreak;

  auto tie() const { return std::tie(core_pts, core_lns, member_types, projective, tiebreak); }
  bool operator==(const LineSignature& o) const { return tie() == o.tie(); }
};

// Computes the tie-breaker record for an ordinary line.
LineTiebreak core_features(const SegreVariety& v, const HyperplaneStore& store,
                           const std::vector<uint16_t>& hyp_type,
                           const std::array<uint32_t, 4>& members, uint8_t member_count,
                           const PointSet& core);

LineSignature line_signature(const SegreVariety& v, const HyperplaneStore& store,
                             const std::vector<uint16_t>& hyp_type, const LineStore& lines,
                             std::size_t i);

}  // namespace segre
