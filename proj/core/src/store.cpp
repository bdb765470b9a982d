#include "segre/store.hpp"

#include <algorithm>
#include <stdexcept>

#include "segre/parallel.hpp"

namespace segre {

HyperplaneStore HyperplaneStore::build(const SegreVariety& v, std::vector<PointSet> masks,
                                       unsigned threads) {
  std::sort(masks.begin(), masks.end(), byte_less);
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  HyperplaneStore s;
  s.v_ = &v;
  s.points_ = v.point_count();
  s.k_ = v.k();
  s.masks_ = std::move(masks);
  const std::size_t n = s.masks_.size();

  if (s.points_ <= 64) {
    s.word_masks_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.word_masks_[i] = s.masks_[i].word0();
  }

  s.pts_.resize(n);
  s.lns_.resize(n);
  s.projective_.resize(n);
  s.duals_.resize(n);
  s.dual_keys_.assign(n, 0);
  s.orders_.assign(n * s.points_, 0);
  s.order_masks_.assign(n * (s.k_ + 1u), PointSet::empty(s.points_));
  s.max_order_.assign(n, 0);
  s.deep_count_.assign(n, 0);
  s.deep_point_.assign(n, 0);

  parallel_for(n, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      const PointSet& m = s.masks_[i];
      s.pts_[i] = static_cast<uint16_t>(m.count());
      uint16_t lns = 0;
      for (const VarietyLine& line : v.lines())
        if (line.mask.is_subset_of(m)) {
          ++lns;
          for (uint16_t a = 0; a < v.labels(); ++a) ++s.orders_[i * s.points_ + line.pts[a]];
        }
      s.lns_[i] = lns;
      for (uint16_t p = 0; p < s.points_; ++p) {
        if (!m.test(p)) {
          s.orders_[i * s.points_ + p] = 0;
          continue;
        }
        uint8_t o = s.orders_[i * s.points_ + p];
        s.order_masks_[i * (s.k_ + 1u) + o].set(p);
        if (o > s.max_order_[i]) s.max_order_[i] = o;
        if (o == s.k_) {
          ++s.deep_count_[i];
          s.deep_point_[i] = p;
        }
      }
      Projectivity pr = projectivity(v, m);
      s.projective_[i] = pr.projective ? 1 : 0;
      if (pr.projective) {
        s.dual_keys_[i] = pack_dual(pr.dual);
        s.duals_[i] = std::move(pr.dual);
      }
    }
  }, threads);
  return s;
}

int64_t HyperplaneStore::find(const PointSet& m) const {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), m, byte_less);
  if (it == masks_.end() || !(*it == m)) return -1;
  return it - masks_.begin();
}

std::vector<uint32_t> HyperplaneStore::order_profile(std::size_t i) const {
  std::vector<uint32_t> prof(k_ + 1u, 0);
  for (uint8_t o = 0; o <= k_; ++o) prof[o] = order_mask(i, o).count();
  return prof;
}

std::vector<uint32_t> HyperplaneStore::all_ids() const {
  std::vector<uint32_t> ids(size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<uint32_t>(i);
  return ids;
}

std::vector<uint32_t> HyperplaneStore::projective_ids() const {
  std::vector<uint32_t> ids;
  for (std::size_t i = 0; i < size(); ++i)
    if (projective_[i]) ids.push_back(static_cast<uint32_t>(i));
  return ids;
}

}  // namespace segre
