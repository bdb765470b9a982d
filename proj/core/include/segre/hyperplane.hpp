#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "segre/variety.hpp"

namespace segre {

// A geometric hyperplane is a proper point subset such that every line lies
// fully inside it or meets it in exactly one point.
bool is_hyperplane(const SegreVariety& v, const PointSet& s);

// All points not at maximum distance from the nucleus: distance < k.
PointSet singular_hyperplane(const SegreVariety& v, uint16_t nucleus);

// Normalized dual form packed two bits per coordinate, coordinate i at bits
// 2i..2i+1 (so byte i/4 of the serialized record holds coordinates 4(i/4)..).
using DualKey = uint32_t;
DualKey pack_dual(const GfVec& form);
GfVec unpack_dual(DualKey key, unsigned len);

struct Projectivity {
  bool projective = false;
  GfVec dual;  // normalized; empty when not projective
};

// Tensor-span rank test: the hyperplane is projective iff the tensor images
// of its points span a codimension-1 subspace, in which case the dual form is
// the (normalized) kernel of the span matrix. Asserts rank in {2^k-1, 2^k};
// anything lower throws std::logic_error("hyperplane spans too little").
Projectivity projectivity(const SegreVariety& v, const PointSet& h);

// Order of every point of h (number of lines through the point fully inside
// h); zero for points outside h.
std::vector<uint8_t> point_orders(const SegreVariety& v, const PointSet& h);

// Zero locus of a linear form on the variety's tensor image.
PointSet zero_locus(const SegreVariety& v, const GfVec& form);

// A validated hyperplane with cached metadata.
struct Hyperplane {
  PointSet points;
  bool projective = false;
  GfVec dual;                         // set iff projective
  std::vector<uint32_t> order_profile;  // counts of points of order 0..k
  PointSet deep_points;                 // points of order k

  static Hyperplane make(const SegreVariety& v, const PointSet& pts);
};

}  // namespace segre
