#include "segre/binary.hpp"

#include <algorithm>
#include <stdexcept>

#include "segre/parallel.hpp"

namespace segre {

std::vector<BinaryCopy> binary_copies(const SegreVariety& v3) {
  if (v3.q() != 3 || v3.k() != 3)
    throw std::invalid_argument("binary_copies: requires S_3(3)");
  // 3-subsets of {0,1,2,3} per factor, by the omitted label.
  std::vector<std::array<uint8_t, 3>> subsets;
  for (uint8_t omit = 0; omit < 4; ++omit) {
    std::array<uint8_t, 3> s{};
    uint8_t n = 0;
    for (uint8_t a = 0; a < 4; ++a)
      if (a != omit) s[n++] = a;
    subsets.push_back(s);
  }
  std::vector<BinaryCopy> copies;
  for (const auto& s0 : subsets)
    for (const auto& s1 : subsets)
      for (const auto& s2 : subsets) {
        BinaryCopy c;
        c.labels = {s0, s1, s2};
        c.mask = v3.empty_set();
        for (uint8_t b0 = 0; b0 < 3; ++b0)
          for (uint8_t b1 = 0; b1 < 3; ++b1)
            for (uint8_t b2 = 0; b2 < 3; ++b2) {
              uint16_t bin = static_cast<uint16_t>(b0 * 9 + b1 * 3 + b2);
              uint16_t ter = v3.index_of({s0[b0], s1[b1], s2[b2]});
              c.emb[bin] = ter;
              c.mask.set(ter);
            }
        copies.push_back(c);
      }
  return copies;
}

uint32_t restrict_to_copy(const BinaryCopy& c, const HyperplaneStore& binary_hyps,
                          const PointSet& ternary_set) {
  PointSet sub = PointSet::empty(27);
  for (uint16_t b = 0; b < 27; ++b)
    if (ternary_set.test(c.emb[b])) sub.set(b);
  if (sub.count() == 27) return kFullCopy;
  int64_t id = binary_hyps.find(sub);
  if (id < 0) return kNotSection;
  return static_cast<uint32_t>(id);
}

std::vector<uint32_t> extend_hyperplane(const Level& ternary, const BinaryCopy& c,
                                        const HyperplaneStore& binary_hyps, uint32_t binary_hyp) {
  PointSet target = ternary.v.empty_set();
  const PointSet& bh = binary_hyps.mask(binary_hyp);
  for (uint16_t b = 0; b < 27; ++b)
    if (bh.test(b)) target.set(c.emb[b]);
  std::vector<uint32_t> out;
  for (std::size_t i = 0; i < ternary.hyps.size(); ++i)
    if ((ternary.hyps.mask(i) & c.mask) == target) out.push_back(static_cast<uint32_t>(i));
  return out;
}

namespace {

// Per ternary hyperplane: restriction class (kFullCopy or binary hyperplane id).
std::vector<uint32_t> restrictions(const Level& ternary, const Level& binary3,
                                   const BinaryCopy& c, unsigned threads) {
  std::vector<uint32_t> r(ternary.hyps.size());
  parallel_for(ternary.hyps.size(), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i)
      r[i] = restrict_to_copy(c, binary3.hyps, ternary.hyps.mask(i));
  }, threads);
  return r;
}

// The binary line formed by a ternary line's restriction, or -1. A match has
// exactly three members restricting to pairwise distinct hyperplanes of the
// copy, together forming a line of V(S_3(2)); the remaining member restricts
// to the whole copy or to a non-section. (No hyperplane of S_3(3) contains a
// whole copy, so in practice the fourth restriction is a non-section.)
int64_t restricted_line(const Level& binary3, const std::vector<uint32_t>& restr,
                        const std::array<uint32_t, 4>& mem) {
  std::array<uint32_t, 4> sec = {kNoMember, kNoMember, kNoMember, kNoMember};
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    uint32_t r = restr[mem[i]];
    if (r == kFullCopy || r == kNotSection) continue;
    if (n == 3) return -1;
    sec[n++] = r;
  }
  if (n != 3) return -1;
  std::sort(sec.begin(), sec.begin() + 3);
  if (sec[0] == sec[1] || sec[1] == sec[2]) return -1;
  return binary3.lines.find({sec[0], sec[1], sec[2], kNoMember});
}

}  // namespace

std::vector<uint32_t> extend_line(const Level& ternary, const BinaryCopy& c,
                                  const Level& binary3, uint32_t binary_line) {
  std::vector<uint32_t> restr = restrictions(ternary, binary3, c, 0);
  std::vector<uint32_t> out;
  for (std::size_t i = 0; i < ternary.lines.size(); ++i)
    if (restricted_line(binary3, restr, ternary.lines.members[i]) ==
        static_cast<int64_t>(binary_line))
      out.push_back(static_cast<uint32_t>(i));
  return out;
}

CopyExtensionCensus copy_extension_census(const Level& ternary, const Level& binary3,
                                          const BinaryCopy& c, unsigned threads) {
  CopyExtensionCensus census;
  census.hyp_ext.resize(binary3.hyp_classes.size());
  census.line_ext.resize(binary3.line_classes.size());

  std::vector<uint32_t> restr = restrictions(ternary, binary3, c, threads);
  for (std::size_t i = 0; i < ternary.hyps.size(); ++i)
    if (restr[i] != kFullCopy && restr[i] != kNotSection)
      ++census.hyp_ext[binary3.hyp_type[restr[i]]][ternary.hyp_type[i]];

  unsigned t = threads ? threads : default_threads();
  std::vector<CopyExtensionCensus> locals(t);
  for (auto& l : locals) {
    l.hyp_ext.resize(binary3.hyp_classes.size());
    l.line_ext.resize(binary3.line_classes.size());
  }
  parallel_for(ternary.lines.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
    for (std::size_t i = b; i < e; ++i) {
      int64_t bl = restricted_line(binary3, restr, ternary.lines.members[i]);
      if (bl >= 0) ++locals[tid].line_ext[binary3.line_type[bl]][ternary.line_type[i]];
    }
  }, t);
  for (auto& l : locals)
    for (std::size_t b = 0; b < l.line_ext.size(); ++b)
      for (auto& [tt, cnt] : l.line_ext[b]) census.line_ext[b][tt] += cnt;
  return census;
}

}  // namespace segre
