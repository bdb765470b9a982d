#include "segre/pipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "segre/blowup.hpp"
#include "segre/parallel.hpp"

namespace segre {

namespace {

// Table presentation order for line classes: big cores first, composition by
// sorted member types, projective before starred twins.
bool line_sig_less(const LineSignature& a, const LineSignature& b) {
  if (a.core_pts != b.core_pts) return a.core_pts > b.core_pts;
  if (a.core_lns != b.core_lns) return a.core_lns > b.core_lns;
  if (a.member_types != b.member_types) return a.member_types < b.member_types;
  if (a.projective != b.projective) return a.projective;
  return a.tiebreak < b.tiebreak;
}

struct LineSigLess {
  bool operator()(const LineSignature& a, const LineSignature& b) const {
    return line_sig_less(a, b);
  }
};

}  // namespace

std::vector<uint32_t> Level::projective_line_ids() const {
  std::vector<uint32_t> ids;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines.projective[i]) ids.push_back(static_cast<uint32_t>(i));
  return ids;
}

std::vector<uint32_t> Level::starred_line_ids(const HyperplaneStore& store) const {
  std::vector<uint32_t> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines.projective[i]) continue;
    bool all_proj = true;
    for (uint8_t j = 0; j < lines.member_count; ++j)
      if (!store.is_projective(lines.members[i][j])) all_proj = false;
    if (all_proj) ids.push_back(static_cast<uint32_t>(i));
  }
  return ids;
}

TypeSignature hyp_signature(const SegreVariety& v, const HyperplaneStore& store, std::size_t i,
                            const Level* lower) {
  TypeSignature sig;
  sig.pts = store.pts(i);
  sig.lns = store.lns(i);
  sig.projective = store.is_projective(i);
  sig.order_hist = store.order_profile(i);
  const PointSet& m = store.mask(i);

  if (v.k() == 2) {
    // Layers are single lines; a section is the full line or one point.
    uint32_t d = 0, pt = 0;
    for (uint8_t j = 0; j < 2; ++j)
      for (uint8_t a = 0; a < v.labels(); ++a) {
        const PointSet& lm = v.layer_mask(j, a);
        unsigned c = (m & lm).count();
        if (c == v.labels()) ++d;
        else if (c == 1) ++pt;
        else throw std::logic_error("layer section is neither full nor a hyperplane of the layer");
      }
    sig.section_census = {d, pt};
    return sig;
  }

  if (!lower) throw std::invalid_argument("hyp_signature: lower level required for k >= 3");
  const uint16_t lower_points = lower->v.point_count();
  sig.section_census.assign(1 + lower->hyp_classes.size(), 0);
  std::vector<uint16_t> vl;
  for (uint8_t j = 0; j < v.k(); ++j) {
    std::array<int64_t, 4> sec{-1, -1, -1, -1};
    int full_count = 0, full_at = -1;
    for (uint8_t a = 0; a < v.labels(); ++a) {
      const std::vector<uint16_t>& pts = v.layer_points(j, a);
      PointSet sub = PointSet::empty(lower_points);
      for (uint16_t s = 0; s < lower_points; ++s)
        if (m.test(pts[s])) sub.set(s);
      if (sub.count() == lower_points) {
        ++full_count;
        full_at = a;
        ++sig.section_census[0];
        continue;
      }
      int64_t id = lower->hyps.find(sub);
      if (id < 0)
        throw std::logic_error("layer section is neither full nor a hyperplane of the layer");
      sec[a] = id;
      ++sig.section_census[1 + lower->hyp_type[id]];
    }
    if (!lower->lines_built) continue;
    uint16_t tag;
    if (full_count > 0) {
      if (full_count != 1) throw std::logic_error("spread projection has several full layers");
      int64_t rep = -1;
      for (uint8_t a = 0; a < v.labels(); ++a) {
        if (a == full_at) continue;
        if (rep < 0) rep = sec[a];
        else if (rep != sec[a])
          throw std::logic_error("spread projection is not a trivial Veldkamp line");
      }
      tag = static_cast<uint16_t>(kTrivialTag | lower->hyp_type[rep]);
    } else {
      std::array<uint32_t, 4> key = {kNoMember, kNoMember, kNoMember, kNoMember};
      for (uint8_t a = 0; a < v.labels(); ++a) key[a] = static_cast<uint32_t>(sec[a]);
      std::sort(key.begin(), key.begin() + v.labels());
      int64_t line = lower->lines.find(key);
      if (line < 0) throw std::logic_error("spread projection is not a Veldkamp line");
      tag = lower->line_type[line];
    }
    vl.push_back(tag);
  }
  std::sort(vl.begin(), vl.end());
  vl.erase(std::unique(vl.begin(), vl.end()), vl.end());
  sig.vl_set = std::move(vl);
  return sig;
}

void classify_level_hyperplanes(Level& lvl, const Level* lower, unsigned threads) {
  const std::size_t n = lvl.hyps.size();
  std::vector<TypeSignature> sigs(n);
  parallel_for(n, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) sigs[i] = hyp_signature(lvl.v, lvl.hyps, i, lower);
  }, threads);

  std::map<TypeSignature, std::pair<uint64_t, uint32_t>> buckets;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = buckets.try_emplace(sigs[i], 0, static_cast<uint32_t>(i));
    ++it->second.first;
  }
  lvl.hyp_classes.clear();
  std::map<TypeSignature, uint16_t> type_of;
  for (auto& [sig, info] : buckets) {
    type_of[sig] = static_cast<uint16_t>(lvl.hyp_classes.size());
    lvl.hyp_classes.push_back(HypClass{sig, info.first, info.second});
  }
  lvl.hyp_type.assign(n, kNoType);
  for (std::size_t i = 0; i < n; ++i) lvl.hyp_type[i] = type_of[sigs[i]];
}

void classify_level_lines(Level& lvl, unsigned threads) {
  const std::size_t n = lvl.lines.size();
  unsigned t = threads ? threads : default_threads();
  using Bucket = std::map<LineSignature, std::pair<uint64_t, uint32_t>, LineSigLess>;
  std::vector<Bucket> locals(t);
  parallel_for(n, [&](std::size_t b, std::size_t e, unsigned tid) {
    Bucket& local = locals[tid];
    for (std::size_t i = b; i < e; ++i) {
      LineSignature sig = line_signature(lvl.v, lvl.hyps, lvl.hyp_type, lvl.lines, i);
      auto [it, fresh] = local.try_emplace(std::move(sig), 0, static_cast<uint32_t>(i));
      ++it->second.first;
      if (static_cast<uint32_t>(i) < it->second.second) it->second.second = static_cast<uint32_t>(i);
    }
  }, t);

  Bucket merged;
  for (Bucket& local : locals)
    for (auto& [sig, info] : local) {
      auto [it, fresh] = merged.try_emplace(sig, 0, info.second);
      it->second.first += info.first;
      if (info.second < it->second.second) it->second.second = info.second;
    }

  lvl.line_classes.clear();
  std::map<LineSignature, uint16_t, LineSigLess> type_of;
  for (auto& [sig, info] : merged) {
    type_of[sig] = static_cast<uint16_t>(lvl.line_classes.size());
    LineClassInfo ci;
    ci.sig = sig;
    ci.count = info.first;
    ci.rep = info.second;
    lvl.line_classes.push_back(std::move(ci));
  }

  lvl.line_type.assign(n, kNoType);
  parallel_for(n, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      LineSignature sig = line_signature(lvl.v, lvl.hyps, lvl.hyp_type, lvl.lines, i);
      auto it = type_of.find(sig);
      if (it == type_of.end()) throw std::logic_error("classify_level_lines: signature drift");
      lvl.line_type[i] = it->second;
    }
  }, t);
}

void compute_hyp_orbits(Level& lvl, unsigned threads) {
  (void)threads;
  std::vector<GroupGenerator> gens = generators(lvl.v);
  lvl.hyp_orbits = orbit_partition(
      lvl.hyps.size(), gens, [&](const GroupGenerator& g, uint32_t e) -> uint32_t {
        PointSet img = apply_generator(g, lvl.hyps.mask(e));
        int64_t id = lvl.hyps.find(img);
        if (id < 0) throw std::logic_error("hyperplane orbit universe not closed");
        return static_cast<uint32_t>(id);
      });
}

void compute_line_orbits(Level& lvl, unsigned threads) {
  if (!lvl.lines_built) throw std::logic_error("compute_line_orbits: lines not built");
  const std::size_t n = lvl.lines.size();
  std::vector<GroupGenerator> gens = generators(lvl.v);
  std::vector<WordPerm> wps;
  wps.reserve(gens.size());
  for (const GroupGenerator& g : gens) wps.push_back(make_word_perm(g.point_map));

  std::unordered_map<uint64_t, uint32_t> mask_to_id;
  mask_to_id.reserve(lvl.hyps.size() * 2);
  for (std::size_t i = 0; i < lvl.hyps.size(); ++i)
    mask_to_id.emplace(lvl.hyps.word_masks()[i], static_cast<uint32_t>(i));

  std::vector<uint64_t> packed(n);
  for (std::size_t i = 0; i < n; ++i) packed[i] = LineStore::pack_key(lvl.lines.members[i]);

  const std::size_t g_count = gens.size();
  std::vector<uint32_t> img(n * g_count);
  parallel_for(n, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t gi = 0; gi < g_count; ++gi) {
        std::array<uint32_t, 4> mem = {kNoMember, kNoMember, kNoMember, kNoMember};
        for (uint8_t j = 0; j < lvl.lines.member_count; ++j) {
          uint64_t w = wps[gi].apply(lvl.hyps.word_masks()[lvl.lines.members[i][j]]);
          auto it = mask_to_id.find(w);
          if (it == mask_to_id.end()) throw std::logic_error("line orbit universe not closed");
          mem[j] = it->second;
        }
        std::sort(mem.begin(), mem.begin() + lvl.lines.member_count);
        uint64_t key = LineStore::pack_key(mem);
        auto pos = std::lower_bound(packed.begin(), packed.end(), key);
        if (pos == packed.end() || *pos != key)
          throw std::logic_error("line orbit universe not closed");
        img[i * g_count + gi] = static_cast<uint32_t>(pos - packed.begin());
      }
    }
  }, threads);

  lvl.line_orbits = orbit_partition(n, gens, [&](const GroupGenerator& g, uint32_t e) -> uint32_t {
    std::size_t gi = static_cast<std::size_t>(&g - gens.data());
    return img[std::size_t(e) * g_count + gi];
  });
  lvl.line_orbits_built = true;

  // Orbit sublabels within each class: orbits ordered by size ascending, ties
  // by smallest member line.
  const uint32_t orbit_count = lvl.line_orbits.count();
  std::vector<uint32_t> orbit_min(orbit_count, UINT32_MAX);
  std::vector<uint16_t> orbit_class(orbit_count, kNoType);
  for (std::size_t i = 0; i < n; ++i) {
    uint32_t o = lvl.line_orbits.orbit_id[i];
    if (static_cast<uint32_t>(i) < orbit_min[o]) orbit_min[o] = static_cast<uint32_t>(i);
    if (orbit_class[o] == kNoType) orbit_class[o] = lvl.line_type[i];
    else if (orbit_class[o] != lvl.line_type[i])
      throw std::logic_error("orbit crosses signature classes");  // orbits must refine classes
  }
  std::vector<std::vector<uint32_t>> class_orbits(lvl.line_classes.size());
  for (uint32_t o = 0; o < orbit_count; ++o) class_orbits[orbit_class[o]].push_back(o);
  std::vector<uint8_t> orbit_sublabel(orbit_count, 0);
  for (std::size_t c = 0; c < class_orbits.size(); ++c) {
    auto& orbs = class_orbits[c];
    std::sort(orbs.begin(), orbs.end(), [&](uint32_t a, uint32_t b) {
      if (lvl.line_orbits.orbit_sizes[a] != lvl.line_orbits.orbit_sizes[b])
        return lvl.line_orbits.orbit_sizes[a] < lvl.line_orbits.orbit_sizes[b];
      return orbit_min[a] < orbit_min[b];
    });
    lvl.line_classes[c].suborbits = static_cast<uint8_t>(orbs.size());
    lvl.line_classes[c].suborbit_sizes.clear();
    for (std::size_t s = 0; s < orbs.size(); ++s) {
      orbit_sublabel[orbs[s]] = static_cast<uint8_t>(s);
      lvl.line_classes[c].suborbit_sizes.push_back(lvl.line_orbits.orbit_sizes[orbs[s]]);
    }
  }
  lvl.line_sublabel.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    lvl.line_sublabel[i] = orbit_sublabel[lvl.line_orbits.orbit_id[i]];
}

Tower Tower::build(const TowerOptions& opts) {
  if (opts.max_k < 2 || opts.max_k > 3)
    throw std::invalid_argument("Tower::build: levels 2..3 are materialized (k = 4 streams)");
  Tower t;
  t.q_ = opts.q;
  t.levels_.resize(opts.max_k + 1u);
  for (uint8_t k = 2; k <= opts.max_k; ++k) {
    Level& lvl = t.levels_[k];
    lvl.v = SegreVariety::build(opts.q, k);
    const Level* lower = (k > 2) ? &t.levels_[k - 1] : nullptr;
    std::vector<PointSet> masks = enumerate_masks(lvl.v, lower, true, opts.threads);
    lvl.hyps = HyperplaneStore::build(lvl.v, std::move(masks), opts.threads);
    classify_level_hyperplanes(lvl, lower, opts.threads);
    compute_hyp_orbits(lvl, opts.threads);
    bool want_lines = (k < opts.max_k) || opts.lines_at_top;
    if (want_lines) {
      lvl.lines = find_lines(lvl.v, lvl.hyps, lvl.hyps.all_ids(), opts.threads);
      lvl.lines_built = true;
      classify_level_lines(lvl, opts.threads);
      bool want_orbits = (k < opts.max_k) || opts.orbits_at_top;
      if (want_orbits) compute_line_orbits(lvl, opts.threads);
    }
  }
  return t;
}

}  // namespace segre
