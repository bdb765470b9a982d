#include "segre/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "segre/blowup.hpp"

namespace segre {

namespace {

uint64_t factorial(unsigned n) {
  uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<uint16_t> coord_perm_point_map(const SegreVariety& v, uint8_t factor,
                                           const std::array<uint8_t, 4>& sigma) {
  std::vector<uint16_t> map(v.point_count());
  std::vector<uint8_t> tuple(v.k());
  for (uint16_t p = 0; p < v.point_count(); ++p) {
    for (uint8_t j = 0; j < v.k(); ++j) tuple[j] = v.coord(p, j);
    tuple[factor] = sigma[tuple[factor]];
    map[p] = v.index_of(tuple);
  }
  return map;
}

std::vector<uint16_t> dim_perm_point_map(const SegreVariety& v,
                                         const std::array<uint8_t, 4>& tau) {
  std::vector<uint16_t> map(v.point_count());
  std::vector<uint8_t> tuple(v.k());
  for (uint16_t p = 0; p < v.point_count(); ++p) {
    for (uint8_t j = 0; j < v.k(); ++j) tuple[tau[j]] = v.coord(p, j);
    map[p] = v.index_of(tuple);
  }
  return map;
}

struct Dsu {
  std::vector<uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

std::vector<GroupGenerator> generators(const SegreVariety& v) {
  std::vector<GroupGenerator> gens;
  const uint8_t labels = static_cast<uint8_t>(v.labels());
  for (uint8_t f = 0; f < v.k(); ++f) {
    GroupGenerator swap01;
    swap01.kind = GroupGenerator::Kind::CoordPerm;
    swap01.factor = f;
    swap01.label_perm = {1, 0, 2, 3};
    swap01.point_map = coord_perm_point_map(v, f, swap01.label_perm);
    gens.push_back(std::move(swap01));

    GroupGenerator cycle;
    cycle.kind = GroupGenerator::Kind::CoordPerm;
    cycle.factor = f;
    for (uint8_t a = 0; a < labels; ++a) cycle.label_perm[a] = static_cast<uint8_t>((a + 1) % labels);
    for (uint8_t a = labels; a < 4; ++a) cycle.label_perm[a] = a;
    cycle.point_map = coord_perm_point_map(v, f, cycle.label_perm);
    gens.push_back(std::move(cycle));
  }
  if (v.k() >= 2) {
    GroupGenerator swap_factors;
    swap_factors.kind = GroupGenerator::Kind::DimPerm;
    swap_factors.factor_perm = {1, 0, 2, 3};
    for (uint8_t j = v.k(); j < 4; ++j) swap_factors.factor_perm[j] = j;
    swap_factors.point_map = dim_perm_point_map(v, swap_factors.factor_perm);
    gens.push_back(std::move(swap_factors));

    GroupGenerator cycle_factors;
    cycle_factors.kind = GroupGenerator::Kind::DimPerm;
    for (uint8_t j = 0; j < v.k(); ++j)
      cycle_factors.factor_perm[j] = static_cast<uint8_t>((j + 1) % v.k());
    for (uint8_t j = v.k(); j < 4; ++j) cycle_factors.factor_perm[j] = j;
    cycle_factors.point_map = dim_perm_point_map(v, cycle_factors.factor_perm);
    gens.push_back(std::move(cycle_factors));
  }
  return gens;
}

uint64_t group_order(uint8_t q, uint8_t k) {
  uint64_t per_factor = factorial(q + 1u);
  uint64_t order = factorial(k);
  for (uint8_t i = 0; i < k; ++i) order *= per_factor;
  return order;
}

PointSet apply_generator(const GroupGenerator& g, const PointSet& s) {
  PointSet out = PointSet::empty(s.n);
  for (unsigned p = 0; p < s.n; ++p)
    if (s.test(p)) out.set(g.point_map[p]);
  return out;
}

WordPerm make_word_perm(const std::vector<uint16_t>& point_map) {
  if (point_map.size() > 64) throw std::invalid_argument("make_word_perm: at most 64 points");
  WordPerm wp;
  for (int block = 0; block < 8; ++block)
    for (unsigned byte = 0; byte < 256; ++byte) {
      uint64_t out = 0;
      for (int bit = 0; bit < 8; ++bit) {
        unsigned p = 8u * block + bit;
        if ((byte >> bit) & 1u) {
          if (p < point_map.size()) out |= uint64_t(1) << point_map[p];
        }
      }
      wp.t[block][byte] = out;
    }
  return wp;
}

OrbitPartition orbit_partition(
    std::size_t n, const std::vector<GroupGenerator>& gens,
    const std::function<uint32_t(const GroupGenerator&, uint32_t)>& apply) {
  Dsu dsu(n);
  // Stage 1: coordinate permutations; stage 2: dimension permutations.
  for (int stage = 0; stage < 2; ++stage) {
    for (const GroupGenerator& g : gens) {
      bool dim = g.kind == GroupGenerator::Kind::DimPerm;
      if (dim != (stage == 1)) continue;
      for (uint32_t e = 0; e < n; ++e) dsu.unite(e, apply(g, e));
    }
  }
  OrbitPartition part;
  part.orbit_id.assign(n, 0);
  std::vector<uint32_t> root_to_orbit(n, UINT32_MAX);
  for (uint32_t e = 0; e < n; ++e) {
    uint32_t r = dsu.find(e);
    if (root_to_orbit[r] == UINT32_MAX) {
      root_to_orbit[r] = static_cast<uint32_t>(part.orbit_sizes.size());
      part.orbit_sizes.push_back(0);
    }
    part.orbit_id[e] = root_to_orbit[r];
    ++part.orbit_sizes[root_to_orbit[r]];
  }
  return part;
}

std::vector<RefinedK4Class> refine_k4_types(const K4Census& census, const Level& l3) {
  std::vector<RefinedK4Class> out;
  for (std::size_t c = 0; c < census.classes.size(); ++c) {
    const K4Class& cls = census.classes[c];
    std::map<uint8_t, uint64_t> by_label;
    bool has_trivial = false;
    for (const auto& [prov, count] : cls.provenance) {
      by_label[prov.sublabel] += count;
      if (prov.tag & kTrivialTag) has_trivial = true;
    }
    if (by_label.size() <= 1) {
      out.push_back(RefinedK4Class{c, 0, false, cls.count});
      continue;
    }
    if (has_trivial) throw std::logic_error("refine_k4_types: split class with trivial provenance");
    for (const auto& [label, count] : by_label) {
      // Each subtype must be exactly 24x the cardinality of its line suborbits.
      uint64_t expected = 0;
      for (const auto& [prov, cnt] : cls.provenance) {
        if (prov.sublabel != label) continue;
        const LineClassInfo& lc = l3.line_classes[prov.tag];
        if (label >= lc.suborbit_sizes.size())
          throw std::logic_error("refine_k4_types: sublabel without a line suborbit");
        expected += 24ull * lc.suborbit_sizes[label];
        if (cnt != 24ull * lc.suborbit_sizes[label])
          throw std::logic_error(
              "refine_k4_types: subtype cardinality disagrees with 24 x line-subtype cardinality");
      }
      (void)expected;
      out.push_back(RefinedK4Class{c, label, true, count});
    }
  }
  return out;
}

OrbitPartition k4_mask_orbits(const SegreVariety& v4, const std::vector<PointSet>& masks) {
  if (!std::is_sorted(masks.begin(), masks.end(), byte_less))
    throw std::invalid_argument("k4_mask_orbits: masks must be sorted");
  std::vector<GroupGenerator> gens = generators(v4);
  return orbit_partition(masks.size(), gens,
                         [&](const GroupGenerator& g, uint32_t e) -> uint32_t {
                           PointSet img = apply_generator(g, masks[e]);
                           auto it = std::lower_bound(masks.begin(), masks.end(), img, byte_less);
                           if (it == masks.end() || !(*it == img))
                             throw std::logic_error("k4_mask_orbits: universe not closed");
                           return static_cast<uint32_t>(it - masks.begin());
                         });
}

}  // namespace segre
