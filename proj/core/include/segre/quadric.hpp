#pragma once

#include "segre/blowup.hpp"

namespace segre {

// Packed GF(3)^16 dual-vector arithmetic.
DualKey dual_add(DualKey a, DualKey b);
DualKey dual_scale(DualKey a, uint8_t s);
DualKey dual_normalize(DualKey a);
uint32_t dual_base3_index(DualKey a);  // sum coord_i 3^i

// Hyperbolic-quadric membership of one k = 4 class: every generating source
// is a trivial line, or an ordinary line whose core size is 1 mod 3. Returns
// (members satisfying the criterion, total members).
std::pair<uint64_t, uint64_t> quadric_member_count(const K4Class& cls, const Level& l3);

// Classes lying entirely on Q0+(15,3). Throws if some class is mixed.
std::vector<std::size_t> quadric_classes(const K4Census& census, const Level& l3);

// Among the quadric classes, those whose section census carries neither
// H3-like nor H5-like sections; their cardinalities must sum to the number of
// generators of W(7,3), (3+1)(3^2+1)(3^3+1)(3^4+1), else this throws.
std::vector<std::size_t> symplectic_generator_classes(const K4Census& census, const Level& l3,
                                                      const std::vector<std::size_t>& quadric);

// Inductive weight over one level (k <= 3, exhaustive): weight 1 for singular
// hyperplanes, weight n for a hyperplane lying on an ordinary Veldkamp line
// that carries a singular member and a weight-(n-1) member, n minimal.
// Returns one weight per hyperplane; 0 = unreachable (the non-projective
// ovoids, whose weight is undefined).
std::vector<uint8_t> hyperplane_weights(const Level& lvl);

// Dense weight table for k = 4 over the dual keys of PG(15,3): levels 1..4
// marked by breadth-first layering over dual lines through the 256 singular
// hyperplanes; unmarked keys have weight >= 5.
struct K4Weights {
  std::vector<uint8_t> table;               // indexed by dual_base3_index
  std::array<uint64_t, 6> level_counts{};   // [1..4] marked counts; [5] unmarked nonzero keys
  std::vector<DualKey> singular_keys;       // the 256 weight-1 keys

  uint8_t weight_of(DualKey key) const { return table[dual_base3_index(dual_normalize(key))]; }
};
K4Weights k4_weights(unsigned threads = 0);

// Witness that an unmarked key has weight exactly 5: some dual line through
// it carries a singular point and a weight-4 point.
bool k4_weight5_witness(const K4Weights& w, DualKey key);

}  // namespace segre
