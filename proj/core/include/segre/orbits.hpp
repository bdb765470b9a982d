#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "segre/variety.hpp"

namespace segre {

// Generator of the stabilizer G = (sigma_{q+1} x ... x sigma_{q+1}) : sigma_k.
// CoordPerm permutes the q+1 labels of one factor; DimPerm permutes the
// factors. The induced point map is a bijection preserving the line set.
struct GroupGenerator {
  enum class Kind : uint8_t { CoordPerm, DimPerm };
  Kind kind = Kind::CoordPerm;
  uint8_t factor = 0;                  // CoordPerm
  std::array<uint8_t, 4> label_perm{}; // CoordPerm: label -> label
  std::array<uint8_t, 4> factor_perm{};// DimPerm: position -> position
  std::vector<uint16_t> point_map;     // induced map on point indices
};

// Generating set: per factor the label transposition (0 1) and the full label
// cycle, plus (for k >= 2) the factor transposition (0 1) and the factor
// k-cycle; 2k+2 generators (2k for k = 1).
std::vector<GroupGenerator> generators(const SegreVariety& v);

uint64_t group_order(uint8_t q, uint8_t k);

PointSet apply_generator(const GroupGenerator& g, const PointSet& s);

// Byte-table point-permutation on single-word masks (<= 64 points).
struct WordPerm {
  std::array<std::array<uint64_t, 256>, 8> t{};
  uint64_t apply(uint64_t m) const {
    uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out |= t[i][(m >> (8 * i)) & 0xFFu];
    return out;
  }
};
WordPerm make_word_perm(const std::vector<uint16_t>& point_map);

struct OrbitPartition {
  std::vector<uint32_t> orbit_id;    // dense, numbered by smallest member
  std::vector<uint64_t> orbit_sizes;
  uint32_t count() const { return static_cast<uint32_t>(orbit_sizes.size()); }
};

// Generator-closure partition of [0, n). Follows the two-stage scheme: first
// the coordinate permutations, then the dimension permutations. `apply` must
// return the index of the image element; a missing image (the universe not
// closed) must be signalled by the callback itself.
OrbitPartition orbit_partition(
    std::size_t n, const std::vector<GroupGenerator>& gens,
    const std::function<uint32_t(const GroupGenerator&, uint32_t)>& apply);

}  // namespace segre
