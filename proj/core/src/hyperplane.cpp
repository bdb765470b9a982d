#include "segre/hyperplane.hpp"

#include <stdexcept>

namespace segre {

bool is_hyperplane(const SegreVariety& v, const PointSet& s) {
  unsigned c = s.count();
  if (c == 0 || c >= v.point_count()) return false;  // proper, nonempty
  unsigned full = v.labels();
  for (const VarietyLine& line : v.lines()) {
    unsigned m = (line.mask & s).count();
    if (m != 1 && m != full) return false;
  }
  return true;
}

PointSet singular_hyperplane(const SegreVariety& v, uint16_t nucleus) {
  PointSet s = v.empty_set();
  for (uint16_t p = 0; p < v.point_count(); ++p)
    if (v.distance(p, nucleus) < v.k()) s.set(p);
  return s;
}

DualKey pack_dual(const GfVec& form) {
  DualKey key = 0;
  for (std::size_t i = 0; i < form.size(); ++i)
    key |= static_cast<DualKey>(form[i] & 3u) << (2 * i);
  return key;
}

GfVec unpack_dual(DualKey key, unsigned len) {
  GfVec v(len);
  for (unsigned i = 0; i < len; ++i) v[i] = static_cast<uint8_t>((key >> (2 * i)) & 3u);
  return v;
}

Projectivity projectivity(const SegreVariety& v, const PointSet& h) {
  const unsigned dim = 1u << v.k();
  DenseMatrix m(v.q(), dim);
  for (uint16_t p = 0; p < v.point_count(); ++p)
    if (h.test(p)) m.append_row(v.tensor_coordinates(p));
  std::size_t r = m.rank();
  if (r == dim) return Projectivity{false, {}};
  if (r == dim - 1) return Projectivity{true, m.kernel_vector()};
  throw std::logic_error("hyperplane spans too little");
}

std::vector<uint8_t> point_orders(const SegreVariety& v, const PointSet& h) {
  std::vector<uint8_t> orders(v.point_count(), 0);
  for (const VarietyLine& line : v.lines()) {
    if (!line.mask.is_subset_of(h)) continue;
    for (uint16_t a = 0; a < v.labels(); ++a) ++orders[line.pts[a]];
  }
  for (uint16_t p = 0; p < v.point_count(); ++p)
    if (!h.test(p)) orders[p] = 0;
  return orders;
}

PointSet zero_locus(const SegreVariety& v, const GfVec& form) {
  PointSet s = v.empty_set();
  for (uint16_t p = 0; p < v.point_count(); ++p)
    if (gf_dot(form, v.tensor_coordinates(p), v.q()) == 0) s.set(p);
  return s;
}

Hyperplane Hyperplane::make(const SegreVariety& v, const PointSet& pts) {
  if (!is_hyperplane(v, pts)) throw std::invalid_argument("Hyperplane::make: not a geometric hyperplane");
  Hyperplane h;
  h.points = pts;
  Projectivity pr = projectivity(v, pts);
  h.projective = pr.projective;
  h.dual = std::move(pr.dual);
  std::vector<uint8_t> orders = point_orders(v, pts);
  h.order_profile.assign(v.k() + 1u, 0);
  h.deep_points = v.empty_set();
  for (uint16_t p = 0; p < v.point_count(); ++p) {
    if (!pts.test(p)) continue;
    ++h.order_profile[orders[p]];
    if (orders[p] == v.k()) h.deep_points.set(p);
  }
  return h;
}

}  // namespace segre
