#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "segre/hyperplane.hpp"

namespace segre {

constexpr uint16_t kNoType = 0xFFFF;
// VL tags: an ordinary line of type t is tagged t; the trivial line of a
// type-h hyperplane is tagged kTrivialTag | h.
constexpr uint16_t kTrivialTag = 0x8000;

// Canonical invariant tuple bucketing hyperplanes into census table rows:
// point/line counts, order histogram, sub-Segre section census and the types
// of Veldkamp lines cut out along the distinguished spreads.
struct TypeSignature {
  uint16_t pts = 0;
  uint16_t lns = 0;
  std::vector<uint32_t> order_hist;      // orders 0..k
  std::vector<uint32_t> section_census;  // [D, lower type 0, lower type 1, ...]
  std::vector<uint16_t> vl_set;          // sorted unique VL tags; empty without a lower line classifier
  bool projective = false;

  auto tie() const { return std::tie(pts, lns, order_hist, section_census, vl_set, projective); }
  bool operator==(const TypeSignature& o) const { return tie() == o.tie(); }
  // Table presentation order: big hyperplanes first, projective before
  // non-projective twins; the remaining fields only pin determinism.
  bool operator<(const TypeSignature& o) const {
    if (pts != o.pts) return pts > o.pts;
    if (lns != o.lns) return lns > o.lns;
    if (projective != o.projective) return projective;
    return std::tie(order_hist, section_census, vl_set) <
           std::tie(o.order_hist, o.section_census, o.vl_set);
  }
};

// Immutable collection of validated hyperplanes of one variety, in canonical
// (serialized byte string) order with cached per-hyperplane metadata. The
// index of a hyperplane in the store is its id everywhere else.
class HyperplaneStore {
 public:
  static HyperplaneStore build(const SegreVariety& v, std::vector<PointSet> masks,
                               unsigned threads = 0);

  const SegreVariety& variety() const { return *v_; }
  std::size_t size() const { return masks_.size(); }

  const PointSet& mask(std::size_t i) const { return masks_[i]; }
  int64_t find(const PointSet& m) const;  // -1 if absent

  uint16_t pts(std::size_t i) const { return pts_[i]; }
  uint16_t lns(std::size_t i) const { return lns_[i]; }
  bool is_projective(std::size_t i) const { return projective_[i] != 0; }
  const GfVec& dual(std::size_t i) const { return duals_[i]; }
  DualKey dual_key(std::size_t i) const { return dual_keys_[i]; }

  uint8_t order_of(std::size_t i, uint16_t p) const { return orders_[i * points_ + p]; }
  const PointSet& order_mask(std::size_t i, uint8_t order) const {
    return order_masks_[i * (k_ + 1u) + order];
  }
  PointSet zero_mask(std::size_t i) const { return order_mask(i, 0); }
  PointSet deep_mask(std::size_t i) const { return order_mask(i, k_); }
  uint8_t max_order(std::size_t i) const { return max_order_[i]; }
  // Hyperplanes with exactly one point of maximal possible order k.
  bool single_deep(std::size_t i) const { return deep_count_[i] == 1; }
  uint16_t deep_point(std::size_t i) const { return deep_point_[i]; }

  std::vector<uint32_t> order_profile(std::size_t i) const;

  // Word-level view of the masks, for hot scans (requires <= 64 points).
  const std::vector<uint64_t>& word_masks() const { return word_masks_; }

  std::vector<uint32_t> all_ids() const;
  std::vector<uint32_t> projective_ids() const;

 private:
  const SegreVariety* v_ = nullptr;
  uint16_t points_ = 0;
  uint8_t k_ = 0;
  std::vector<PointSet> masks_;
  std::vector<uint64_t> word_masks_;
  std::vector<uint16_t> pts_, lns_;
  std::vector<uint8_t> projective_;
  std::vector<GfVec> duals_;
  std::vector<DualKey> dual_keys_;
  std::vector<uint8_t> orders_;
  std::vector<PointSet> order_masks_;
  std::vector<uint8_t> max_order_;
  std::vector<uint16_t> deep_count_;
  std::vector<uint16_t> deep_point_;
};

}  // namespace segre
