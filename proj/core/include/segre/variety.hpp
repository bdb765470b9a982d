#pragma once

#include <cstdint>
#include <vector>

#include "segre/gf.hpp"
#include "segre/pointset.hpp"

namespace segre {

struct VarietyLine {
  uint8_t dir;                     // coordinate that varies along the line
  std::array<uint16_t, 4> pts;     // q+1 entries used, ascending label order
  PointSet mask;
};

// The Segre variety S_k(q): the k-fold direct product of projective lines
// PG(1,q) as a point-line incidence structure. (q+1)^k points, k(q+1)^(k-1)
// lines of size q+1, k lines through each point.
//
// Point index: tuple (a_0,...,a_{k-1}) with a_j in 0..q maps to
// sum a_j (q+1)^(k-1-j); the first coordinate is most significant.
// Lines are stored direction-major, within a direction by base tuple.
// Spread j = all lines of direction j. Layer (j,a) = points with a_j = a,
// a sub-Segre S_{k-1}(q) indexed row-major over the remaining coordinates.
class SegreVariety {
 public:
  // q in {2,3}, 1 <= k <= 4; anything else throws std::invalid_argument.
  static SegreVariety build(uint8_t q, uint8_t k);

  uint8_t q() const { return q_; }
  uint8_t k() const { return k_; }
  uint16_t labels() const { return labels_; }       // q+1
  uint16_t point_count() const { return points_; }  // (q+1)^k
  uint32_t lines_per_direction() const { return per_dir_; }

  const std::vector<VarietyLine>& lines() const { return lines_; }
  const VarietyLine& line(uint32_t i) const { return lines_[i]; }

  uint8_t coord(uint16_t p, uint8_t j) const { return coords_[std::size_t(p) * k_ + j]; }
  uint16_t index_of(const std::vector<uint8_t>& tuple) const;

  unsigned distance(uint16_t p, uint16_t r) const {
    unsigned d = 0;
    for (uint8_t j = 0; j < k_; ++j) d += coord(p, j) != coord(r, j);
    return d;
  }

  // Per-factor representative vectors: over GF(3) labels 0..3 map to
  // (1,0),(0,1),(1,1),(1,2); over GF(2) labels 0..2 map to (1,0),(0,1),(1,1).
  Vec2 label_vector(uint8_t label) const;
  GfVec tensor_coordinates(uint16_t p) const;

  // Index of the unique line through p in direction j.
  uint32_t line_through(uint16_t p, uint8_t j) const {
    return point_line_[std::size_t(p) * k_ + j];
  }

  // Layer (j,a): canonical sub-order -> global point index, and its mask.
  const std::vector<uint16_t>& layer_points(uint8_t j, uint8_t a) const {
    return layer_points_[std::size_t(j) * labels_ + a];
  }
  const PointSet& layer_mask(uint8_t j, uint8_t a) const {
    return layer_masks_[std::size_t(j) * labels_ + a];
  }

  PointSet empty_set() const { return PointSet::empty(points_); }
  PointSet full_set() const { return PointSet::full(points_); }

 private:
  uint8_t q_ = 0, k_ = 0;
  uint16_t labels_ = 0, points_ = 0;
  uint32_t per_dir_ = 0;
  std::vector<uint8_t> coords_;        // points_ x k
  std::vector<VarietyLine> lines_;
  std::vector<uint32_t> point_line_;   // points_ x k
  std::vector<std::vector<uint16_t>> layer_points_;  // k x labels
  std::vector<PointSet> layer_masks_;
};

}  // namespace segre
