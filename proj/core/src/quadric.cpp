#include "segre/quadric.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "segre/parallel.hpp"

namespace segre {

DualKey dual_add(DualKey a, DualKey b) {
  const auto& T = detail::gf3_byte_add();
  DualKey r = 0;
  for (int i = 0; i < 4; ++i)
    r |= static_cast<DualKey>(T[(a >> (8 * i)) & 0xFFu][(b >> (8 * i)) & 0xFFu]) << (8 * i);
  return r;
}

DualKey dual_scale(DualKey a, uint8_t s) {
  const auto& T = detail::gf3_byte_mul();
  DualKey r = 0;
  for (int i = 0; i < 4; ++i) r |= static_cast<DualKey>(T[s][(a >> (8 * i)) & 0xFFu]) << (8 * i);
  return r;
}

DualKey dual_normalize(DualKey a) {
  if (a == 0) return 0;
  unsigned lane = static_cast<unsigned>(__builtin_ctz(a)) >> 1;
  uint8_t v = static_cast<uint8_t>((a >> (2 * lane)) & 3u);
  return v == 1 ? a : dual_scale(a, 2);
}

namespace {
struct Base3Tables {
  std::array<std::array<uint32_t, 256>, 4> t{};
  Base3Tables() {
    for (int byte_pos = 0; byte_pos < 4; ++byte_pos) {
      uint32_t base = 1;
      for (int i = 0; i < 4 * byte_pos; ++i) base *= 3;
      for (unsigned b = 0; b < 256; ++b) {
        uint32_t acc = 0, p = base;
        for (int lane = 0; lane < 4; ++lane) {
          acc += ((b >> (2 * lane)) & 3u) * p;
          p *= 3;
        }
        t[byte_pos][b] = acc;
      }
    }
  }
};
const Base3Tables& base3_tables() {
  static const Base3Tables t;
  return t;
}
}  // namespace

uint32_t dual_base3_index(DualKey a) {
  const auto& T = base3_tables().t;
  return T[0][a & 0xFFu] + T[1][(a >> 8) & 0xFFu] + T[2][(a >> 16) & 0xFFu] +
         T[3][(a >> 24) & 0xFFu];
}

std::pair<uint64_t, uint64_t> quadric_member_count(const K4Class& cls, const Level& l3) {
  uint64_t pos = 0, total = 0;
  for (const auto& [prov, count] : cls.provenance) {
    total += count;
    if (prov.tag & kTrivialTag) {
      pos += count;
    } else {
      uint16_t core_pts = l3.line_classes[prov.tag].sig.core_pts;
      if (core_pts % 3 == 1) pos += count;
    }
  }
  return {pos, total};
}

std::vector<std::size_t> quadric_classes(const K4Census& census, const Level& l3) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < census.classes.size(); ++c) {
    auto [pos, total] = quadric_member_count(census.classes[c], l3);
    if (pos != 0 && pos != total)
      throw std::logic_error("quadric criterion is not aligned with a hyperplane type");
    if (pos == total && total > 0) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> symplectic_generator_classes(const K4Census& census, const Level& l3,
                                                      const std::vector<std::size_t>& quadric) {
  // Identify the lower types by their invariants: H3-like = 22 points at
  // q = 3; H5-like = the ovoids (line count 0), projective or not.
  std::vector<std::size_t> banned;  // census slots (1 + type id)
  for (std::size_t t = 0; t < l3.hyp_classes.size(); ++t) {
    const TypeSignature& sig = l3.hyp_classes[t].sig;
    bool h3_like = sig.lns > 0 && sig.order_hist.size() > 3 && sig.order_hist[3] == 0;
    bool ovoid = sig.lns == 0;
    if (h3_like || ovoid) banned.push_back(1 + t);
  }
  std::vector<std::size_t> out;
  uint64_t sum = 0;
  for (std::size_t c : quadric) {
    const TypeSignature& sig = census.classes[c].sig;
    bool ok = true;
    for (std::size_t slot : banned)
      if (sig.section_census[slot] != 0) ok = false;
    if (ok) {
      out.push_back(c);
      sum += census.classes[c].count;
    }
  }
  const uint64_t expected = 4ull * 10ull * 28ull * 82ull;  // (3+1)(3^2+1)(3^3+1)(3^4+1)
  if (sum != expected)
    throw std::logic_error("symplectic generator selection does not sum to 91840");
  return out;
}

std::vector<uint8_t> hyperplane_weights(const Level& lvl) {
  const std::size_t n = lvl.hyps.size();
  std::vector<uint8_t> w(n, 0);
  // Weight 1: singular hyperplanes.
  PointSet s0 = singular_hyperplane(lvl.v, 0);
  int64_t rep = lvl.hyps.find(s0);
  if (rep < 0) throw std::logic_error("hyperplane_weights: singular hyperplane missing");
  uint16_t singular_type = lvl.hyp_type[rep];
  for (std::size_t i = 0; i < n; ++i)
    if (lvl.hyp_type[i] == singular_type) w[i] = 1;

  for (uint8_t level = 2;; ++level) {
    bool changed = false;
    for (std::size_t li = 0; li < lvl.lines.size(); ++li) {
      const auto& mem = lvl.lines.members[li];
      bool has_singular = false, has_prev = false;
      for (uint8_t i = 0; i < lvl.lines.member_count; ++i) {
        if (w[mem[i]] == 1) {
          // A singular member; a second weight-(level-1) member must differ.
          for (uint8_t j = 0; j < lvl.lines.member_count; ++j)
            if (j != i && w[mem[j]] == level - 1) has_prev = true;
          has_singular = true;
        }
      }
      if (!has_singular || !has_prev) continue;
      for (uint8_t i = 0; i < lvl.lines.member_count; ++i)
        if (w[mem[i]] == 0) {
          w[mem[i]] = level;
          changed = true;
        }
    }
    if (!changed) break;
  }
  return w;
}

K4Weights k4_weights(unsigned threads) {
  K4Weights kw;
  SegreVariety v4 = SegreVariety::build(3, 4);
  for (uint16_t nucleus = 0; nucleus < 256; ++nucleus) {
    Projectivity pr = projectivity(v4, singular_hyperplane(v4, nucleus));
    if (!pr.projective) throw std::logic_error("k4_weights: singular hyperplane not projective");
    kw.singular_keys.push_back(pack_dual(pr.dual));
  }
  std::sort(kw.singular_keys.begin(), kw.singular_keys.end());
  kw.singular_keys.erase(std::unique(kw.singular_keys.begin(), kw.singular_keys.end()),
                         kw.singular_keys.end());

  uint32_t span = 1;
  for (int i = 0; i < 16; ++i) span *= 3;
  kw.table.assign(span, 0);

  std::vector<DualKey> frontier;
  for (DualKey s : kw.singular_keys) {
    kw.table[dual_base3_index(s)] = 1;
    frontier.push_back(s);
  }

  for (uint8_t level = 2; level <= 4; ++level) {
    unsigned t = threads ? threads : default_threads();
    std::vector<std::vector<DualKey>> next_local(t);
    const bool collect = level < 4;  // the level-4 frontier is never expanded
    parallel_for(frontier.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
      for (std::size_t fi = b; fi < e; ++fi) {
        DualKey h = frontier[fi];
        for (DualKey s : kw.singular_keys) {
          if (level == 2 && s >= h) continue;  // unordered singular pairs
          for (uint8_t lambda = 1; lambda <= 2; ++lambda) {
            DualKey c = dual_normalize(dual_add(s, dual_scale(h, lambda)));
            if (c == 0) continue;
            uint32_t idx = dual_base3_index(c);
            if (kw.table[idx] == 0) {
              kw.table[idx] = level;
              if (collect) next_local[tid].push_back(c);
            }
          }
        }
      }
    }, t);
    frontier.clear();
    for (auto& nl : next_local) frontier.insert(frontier.end(), nl.begin(), nl.end());
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    if (level == 2) {
      // Recollect exactly the level-2 set (parallel duplicates removed above).
    }
  }

  uint64_t marked[5] = {0, 0, 0, 0, 0};
  for (uint32_t i = 0; i < span; ++i)
    if (kw.table[i]) ++marked[kw.table[i]];
  for (int l = 1; l <= 4; ++l) kw.level_counts[l] = marked[l];
  // Normalized nonzero duals: (3^16 - 1) / 2.
  uint64_t normalized = (uint64_t(span) - 1) / 2;
  kw.level_counts[5] = normalized - marked[1] - marked[2] - marked[3] - marked[4];
  return kw;
}

bool k4_weight5_witness(const K4Weights& w, DualKey key) {
  if (w.weight_of(key) != 0) return false;
  for (DualKey s : w.singular_keys)
    for (uint8_t lambda = 1; lambda <= 2; ++lambda) {
      DualKey c = dual_normalize(dual_add(s, dual_scale(key, lambda)));
      if (c != 0 && w.weight_of(c) == 4) return true;
    }
  return false;
}

}  // namespace segre
