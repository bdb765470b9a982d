#include "segre/variety.hpp"

#include <stdexcept>

namespace segre {

SegreVariety SegreVariety::build(uint8_t q, uint8_t k) {
  if ((q != 2 && q != 3) || k < 1 || k > 4)
    throw std::invalid_argument("SegreVariety::build: q must be 2 or 3 and 1 <= k <= 4");
  SegreVariety v;
  v.q_ = q;
  v.k_ = k;
  v.labels_ = static_cast<uint16_t>(q + 1);
  uint32_t points = 1;
  for (uint8_t i = 0; i < k; ++i) points *= v.labels_;
  v.points_ = static_cast<uint16_t>(points);
  v.per_dir_ = points / v.labels_;

  v.coords_.resize(std::size_t(points) * k);
  for (uint32_t p = 0; p < points; ++p) {
    uint32_t rem = p;
    for (int j = k - 1; j >= 0; --j) {
      v.coords_[std::size_t(p) * k + j] = static_cast<uint8_t>(rem % v.labels_);
      rem /= v.labels_;
    }
  }

  // Lines direction-major; within a direction ordered by base point (the
  // point with coordinate j = 0), ascending.
  v.point_line_.assign(std::size_t(points) * k, 0);
  uint32_t stride[4] = {0, 0, 0, 0};
  for (uint8_t j = 0; j < k; ++j) {
    uint32_t s = 1;
    for (uint8_t i = j + 1; i < k; ++i) s *= v.labels_;
    stride[j] = s;
  }
  for (uint8_t j = 0; j < k; ++j) {
    for (uint32_t p = 0; p < points; ++p) {
      if (v.coords_[std::size_t(p) * k + j] != 0) continue;
      VarietyLine line;
      line.dir = j;
      line.mask = PointSet::empty(v.points_);
      line.pts = {0, 0, 0, 0};
      for (uint16_t a = 0; a < v.labels_; ++a) {
        uint16_t pt = static_cast<uint16_t>(p + a * stride[j]);
        line.pts[a] = pt;
        line.mask.set(pt);
        v.point_line_[std::size_t(pt) * k + j] = static_cast<uint32_t>(v.lines_.size());
      }
      v.lines_.push_back(line);
    }
  }

  // Layers: fixed coordinate j = a; canonical sub-index is row-major over the
  // remaining coordinates in original order.
  v.layer_points_.resize(std::size_t(k) * v.labels_);
  v.layer_masks_.resize(std::size_t(k) * v.labels_, PointSet::empty(v.points_));
  for (uint8_t j = 0; j < k; ++j) {
    for (uint8_t a = 0; a < v.labels_; ++a) {
      auto& list = v.layer_points_[std::size_t(j) * v.labels_ + a];
      auto& mask = v.layer_masks_[std::size_t(j) * v.labels_ + a];
      list.resize(v.per_dir_);
      for (uint32_t s = 0; s < v.per_dir_; ++s) {
        // decode s over k-1 coordinates, insert a at position j
        uint32_t rem = s;
        uint8_t tuple[4] = {0, 0, 0, 0};
        for (int pos = k - 1; pos >= 0; --pos) {
          if (pos == j) continue;
          tuple[pos] = static_cast<uint8_t>(rem % v.labels_);
          rem /= v.labels_;
        }
        tuple[j] = a;
        uint32_t idx = 0;
        for (uint8_t pos = 0; pos < k; ++pos) idx = idx * v.labels_ + tuple[pos];
        list[s] = static_cast<uint16_t>(idx);
        mask.set(idx);
      }
    }
  }
  return v;
}

uint16_t SegreVariety::index_of(const std::vector<uint8_t>& tuple) const {
  if (tuple.size() != k_) throw std::invalid_argument("index_of: tuple length mismatch");
  uint32_t idx = 0;
  for (uint8_t j = 0; j < k_; ++j) {
    if (tuple[j] >= labels_) throw std::invalid_argument("index_of: label out of range");
    idx = idx * labels_ + tuple[j];
  }
  return static_cast<uint16_t>(idx);
}

Vec2 SegreVariety::label_vector(uint8_t label) const {
  static constexpr Vec2 table[4] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  return table[label];
}

GfVec SegreVariety::tensor_coordinates(uint16_t p) const {
  std::vector<Vec2> vecs(k_);
  for (uint8_t j = 0; j < k_; ++j) vecs[j] = label_vector(coord(p, j));
  return tensor_product(vecs, q_);
}

}  // namespace segre
