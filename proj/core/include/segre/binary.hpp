#pragma once

#include <map>

#include "segre/pipeline.hpp"

namespace segre {

// One of the 64 embedded copies of S_3(2) inside S_3(3): a choice of three of
// the four labels in each factor. Binary points are indexed canonically (the
// chosen labels in ascending order).
struct BinaryCopy {
  std::array<std::array<uint8_t, 3>, 3> labels;
  std::array<uint16_t, 27> emb;  // binary point index -> ternary point index
  PointSet mask;                 // ternary mask of the 27 embedded points
};

std::vector<BinaryCopy> binary_copies(const SegreVariety& v3);

constexpr uint32_t kFullCopy = 0xFFFFFFFEu;
constexpr uint32_t kNotSection = 0xFFFFFFFDu;

// Classifies the restriction of a ternary point set to the copy: kFullCopy,
// the id of a hyperplane of the canonical S_3(2), or kNotSection. The last
// case is real: a ternary line truncates to a 3-point copy line, so a
// hyperplane meeting the full line only in the dropped point misses the copy
// line entirely.
uint32_t restrict_to_copy(const BinaryCopy& c, const HyperplaneStore& binary_hyps,
                          const PointSet& ternary_set);

// Ternary hyperplanes H with H ∩ copy equal to the given binary hyperplane.
std::vector<uint32_t> extend_hyperplane(const Level& ternary, const BinaryCopy& c,
                                        const HyperplaneStore& binary_hyps, uint32_t binary_hyp);

// Ternary ordinary lines whose member restrictions to the copy reproduce the
// binary line's members (one member restricting to the full copy).
std::vector<uint32_t> extend_line(const Level& ternary, const BinaryCopy& c,
                                  const Level& binary3, uint32_t binary_line);

// Full extension census for one copy: for every binary hyperplane/line type,
// the ternary types that extend it (with extension counts).
struct CopyExtensionCensus {
  // binary hyperplane type -> ternary hyperplane type -> extensions
  std::vector<std::map<uint16_t, uint64_t>> hyp_ext;
  // binary line type -> ternary line type -> extensions
  std::vector<std::map<uint16_t, uint64_t>> line_ext;
};
CopyExtensionCensus copy_extension_census(const Level& ternary, const Level& binary3,
                                          const BinaryCopy& c, unsigned threads = 0);

}  // namespace segre
