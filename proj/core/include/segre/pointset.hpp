#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace segre {

// Fixed-width bitset over the points of a Segre variety (at most 256 points,
// i.e. q = 3, k = 4). Bit p corresponds to point index p; bits at or beyond
// the universe size stay zero.
struct PointSet {
  std::array<uint64_t, 4> w{0, 0, 0, 0};
  uint16_t n = 0;

  static PointSet empty(uint16_t n) {
    PointSet s;
    s.n = n;
    return s;
  }
  static PointSet full(uint16_t n) {
    PointSet s = empty(n);
    for (unsigned p = 0; p < n; ++p) s.set(p);
    return s;
  }
  static PointSet from_word(uint64_t word, uint16_t n) {
    PointSet s = empty(n);
    s.w[0] = word;
    return s;
  }

  bool test(unsigned p) const { return (w[p >> 6] >> (p & 63u)) & 1u; }
  void set(unsigned p) { w[p >> 6] |= uint64_t(1) << (p & 63u); }
  void reset(unsigned p) { w[p >> 6] &= ~(uint64_t(1) << (p & 63u)); }

  unsigned count() const {
    unsigned c = 0;
    for (uint64_t x : w) c += static_cast<unsigned>(std::popcount(x));
    return c;
  }
  bool none() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }

  PointSet operator&(const PointSet& o) const {
    PointSet r = *this;
    for (int i = 0; i < 4; ++i) r.w[i] &= o.w[i];
    return r;
  }
  PointSet operator|(const PointSet& o) const {
    PointSet r = *this;
    for (int i = 0; i < 4; ++i) r.w[i] |= o.w[i];
    return r;
  }
  PointSet operator^(const PointSet& o) const {
    PointSet r = *this;
    for (int i = 0; i < 4; ++i) r.w[i] ^= o.w[i];
    return r;
  }
  PointSet complement() const {
    PointSet r = full(n);
    for (int i = 0; i < 4; ++i) r.w[i] &= ~w[i];
    return r;
  }
  bool is_subset_of(const PointSet& o) const {
    return (w[0] & ~o.w[0]) == 0 && (w[1] & ~o.w[1]) == 0 && (w[2] & ~o.w[2]) == 0 &&
           (w[3] & ~o.w[3]) == 0;
  }
  bool operator==(const PointSet& o) const { return n == o.n && w == o.w; }

  uint64_t word0() const { return w[0]; }

  std::vector<uint16_t> members() const {
    std::vector<uint16_t> out;
    out.reserve(count());
    for (unsigned p = 0; p < n; ++p)
      if (test(p)) out.push_back(static_cast<uint16_t>(p));
    return out;
  }

  // Serialized record: ceil(n/8) bytes, least-significant bit = point 0.
  std::vector<uint8_t> bytes() const {
    std::vector<uint8_t> out((n + 7) / 8);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<uint8_t>(w[i >> 3] >> (8 * (i & 7u)));
    return out;
  }
  static PointSet from_bytes(const std::vector<uint8_t>& b, uint16_t n) {
    PointSet s = empty(n);
    for (std::size_t i = 0; i < b.size() && i < 32; ++i)
      s.w[i >> 3] |= static_cast<uint64_t>(b[i]) << (8 * (i & 7u));
    return s;
  }
};

// Ordering of serialized records as byte strings (the .svh file order).
inline bool byte_less(const PointSet& a, const PointSet& b) {
  for (int i = 0; i < 4; ++i) {
    uint64_t x = __builtin_bswap64(a.w[i]);
    uint64_t y = __builtin_bswap64(b.w[i]);
    if (x != y) return x < y;
  }
  return false;
}

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (uint64_t x : s.w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace segre
