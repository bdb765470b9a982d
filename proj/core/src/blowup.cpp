#include "segre/blowup.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "segre/parallel.hpp"

namespace segre {

namespace {

void place_bits(PointSet& dst, uint64_t src, unsigned offset) {
  unsigned word = offset >> 6, lo = offset & 63u;
  dst.w[word] |= src << lo;
  if (lo && word + 1 < 4) dst.w[word + 1] |= src >> (64 - lo);
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Open-addressing map for nonzero 64-bit keys.
struct U64Map {
  std::vector<uint64_t> keys;
  std::vector<uint32_t> vals;
  uint64_t mask = 0;

  void build(const std::vector<std::pair<uint64_t, uint32_t>>& pairs) {
    std::size_t cap = 16;
    while (cap < pairs.size() * 2) cap <<= 1;
    keys.assign(cap, 0);
    vals.assign(cap, 0);
    mask = cap - 1;
    for (auto& [k, v] : pairs) {
      if (k == 0) throw std::logic_error("U64Map: zero key");
      std::size_t h = mix64(k) & mask;
      while (keys[h] != 0) h = (h + 1) & mask;
      keys[h] = k;
      vals[h] = v;
    }
  }
  int64_t get(uint64_t k) const {
    std::size_t h = mix64(k) & mask;
    while (keys[h] != 0) {
      if (keys[h] == k) return vals[h];
      h = (h + 1) & mask;
    }
    return -1;
  }
};

}  // namespace

std::vector<std::array<uint8_t, 4>> layer_permutations(uint8_t count) {
  std::array<uint8_t, 4> base = {0, 1, 2, 3};
  std::vector<std::array<uint8_t, 4>> perms;
  std::vector<uint8_t> idx(base.begin(), base.begin() + count);
  do {
    std::array<uint8_t, 4> p = {0, 1, 2, 3};
    for (uint8_t i = 0; i < count; ++i) p[i] = idx[i];
    perms.push_back(p);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return perms;
}

PointSet blow_up_ordinary(const SegreVariety& target, const HyperplaneStore& src,
                          const std::array<uint32_t, 4>& members, uint8_t member_count,
                          const std::array<uint8_t, 4>& perm) {
  const unsigned per = src.variety().point_count();
  if (target.k() != src.variety().k() + 1 || target.q() != src.variety().q())
    throw std::invalid_argument("blow_up_ordinary: target is not X x PG(1,q)");
  PointSet core = src.mask(members[0]) & src.mask(members[1]);
  for (uint8_t a = 0; a < member_count; ++a)
    for (uint8_t b = a + 1; b < member_count; ++b)
      if (!((src.mask(members[a]) & src.mask(members[b])) == core))
        throw std::invalid_argument("blow_up_ordinary: line members inconsistent");
  PointSet out = target.empty_set();
  for (uint8_t i = 0; i < member_count; ++i)
    place_bits(out, src.mask(members[perm[i]]).word0(), i * per);
  return out;
}

PointSet blow_up_trivial(const SegreVariety& target, const HyperplaneStore& src, uint32_t h,
                         uint8_t full_layer) {
  const unsigned per = src.variety().point_count();
  const uint64_t full = per == 64 ? ~uint64_t(0) : (uint64_t(1) << per) - 1;
  PointSet out = target.empty_set();
  for (uint8_t i = 0; i < target.labels(); ++i)
    place_bits(out, i == full_layer ? full : src.mask(h).word0(), i * per);
  return out;
}

PointSet k4_mask(const SegreVariety& v4, const HyperplaneStore& hyps3,
                 const std::array<uint32_t, 4>& members, uint8_t member_count,
                 const std::array<uint8_t, 4>& perm) {
  PointSet out = v4.empty_set();
  for (uint8_t i = 0; i < member_count; ++i)
    place_bits(out, hyps3.mask(members[perm[i]]).word0(), i * 64u);
  return out;
}

std::vector<PointSet> enumerate_masks(const SegreVariety& target, const Level* lower,
                                      bool include_nonprojective, unsigned threads) {
  if (target.k() == 2) {
    // Brute force over all subsets: the completeness oracle.
    const unsigned pts = target.point_count();
    std::vector<uint64_t> line_masks;
    for (const VarietyLine& l : target.lines()) line_masks.push_back(l.mask.word0());
    const uint64_t limit = uint64_t(1) << pts;
    unsigned t = threads ? threads : default_threads();
    std::vector<std::vector<PointSet>> found(t);
    parallel_for(limit, [&](std::size_t b, std::size_t e, unsigned tid) {
      for (uint64_t s = b; s < e; ++s) {
        if (s == 0 || s + 1 == limit) continue;
        bool ok = true;
        for (uint64_t lm : line_masks) {
          unsigned c = static_cast<unsigned>(__builtin_popcountll(s & lm));
          if (c != 1 && c != target.labels()) {
            ok = false;
            break;
          }
        }
        if (ok) found[tid].push_back(PointSet::from_word(s, static_cast<uint16_t>(pts)));
      }
    }, t);
    std::vector<PointSet> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    return out;
  }

  if (!lower || !lower->lines_built)
    throw std::invalid_argument("enumerate_masks: lower level with lines required for k >= 3");
  auto perms = layer_permutations(static_cast<uint8_t>(target.labels()));
  std::vector<uint32_t> line_ids;
  for (std::size_t i = 0; i < lower->lines.size(); ++i)
    if (include_nonprojective || lower->lines.projective[i])
      line_ids.push_back(static_cast<uint32_t>(i));
  std::vector<uint32_t> hyp_ids;
  for (std::size_t i = 0; i < lower->hyps.size(); ++i)
    if (include_nonprojective || lower->hyps.is_projective(i))
      hyp_ids.push_back(static_cast<uint32_t>(i));

  unsigned t = threads ? threads : default_threads();
  std::vector<std::vector<PointSet>> found(t);
  parallel_for(line_ids.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
    for (std::size_t i = b; i < e; ++i)
      for (const auto& perm : perms)
        found[tid].push_back(blow_up_ordinary(target, lower->hyps,
                                              lower->lines.members[line_ids[i]],
                                              lower->lines.member_count, perm));
  }, t);
  for (uint32_t h : hyp_ids)
    for (uint8_t j = 0; j < target.labels(); ++j)
      found[0].push_back(blow_up_trivial(target, lower->hyps, h, j));

  std::vector<PointSet> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

GfVec blowup_dual_ordinary(const HyperplaneStore& hyps3, const std::array<uint32_t, 4>& members,
                           const std::array<uint8_t, 4>& perm) {
  const uint8_t q = hyps3.variety().q();
  const GfVec& d0 = hyps3.dual(members[perm[0]]);
  const GfVec& d1 = hyps3.dual(members[perm[1]]);
  const GfVec& d2 = hyps3.dual(members[perm[2]]);
  const std::size_t dim = d0.size();
  if (d0.empty() || d1.empty() || d2.empty())
    throw std::invalid_argument("blowup_dual_ordinary: member dual vector absent");

  // Solve lambda d0 + mu d1 = d2 from two independent coordinates.
  int p1 = -1, p2 = -1, det = 0;
  for (std::size_t c = 0; c < dim; ++c)
    if (d0[c] || d1[c]) {
      p1 = static_cast<int>(c);
      break;
    }
  for (std::size_t c = p1 + 1; c < dim; ++c) {
    det = (int(d0[p1]) * d1[c] - int(d0[c]) * d1[p1]) % q;
    if (det < 0) det += q;
    if (det) {
      p2 = static_cast<int>(c);
      break;
    }
  }
  if (p1 < 0 || p2 < 0) throw std::logic_error("blowup_dual_ordinary: duals not independent");
  int inv_det = gf_inv(q, static_cast<uint8_t>(det));
  int lam = ((int(d2[p1]) * d1[p2] - int(d1[p1]) * d2[p2]) % q) * inv_det % q;
  int mu = ((int(d0[p1]) * d2[p2] - int(d2[p1]) * d0[p2]) % q) * inv_det % q;
  lam = ((lam % q) + q) % q;
  mu = ((mu % q) + q) % q;
  if (!lam || !mu) throw std::logic_error("blowup_dual_ordinary: degenerate combination");
  for (std::size_t c = 0; c < dim; ++c)
    if (gf_add(q, gf_mul(q, uint8_t(lam), d0[c]), gf_mul(q, uint8_t(mu), d1[c])) != d2[c])
      throw std::logic_error("blowup_dual_ordinary: members not collinear in dual space");

  GfVec out(2 * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    out[c] = gf_mul(q, uint8_t(lam), d0[c]);
    out[dim + c] = gf_mul(q, uint8_t(mu), d1[c]);
  }
  if (q == 3) {
    // Fourth member must be row0 + 2 row1 (label vector (1,2)).
    const GfVec& d3 = hyps3.dual(members[perm[3]]);
    int s = -1;
    for (std::size_t c = 0; c < dim; ++c) {
      uint8_t u = gf_add(q, out[c], gf_mul(q, 2, out[dim + c]));
      if (s < 0 && (u || d3[c])) {
        if (!u || !d3[c]) throw std::logic_error("blowup_dual_ordinary: fourth member mismatch");
        s = gf_mul(q, u, gf_inv(q, d3[c]));
      }
      if (s >= 0 && u != gf_mul(q, uint8_t(s), d3[c]))
        throw std::logic_error("blowup_dual_ordinary: fourth member mismatch");
    }
  }
  return normalize_form(std::move(out), q);
}

GfVec blowup_dual_trivial(const HyperplaneStore& hyps3, uint32_t h, uint8_t full_layer) {
  const uint8_t q = hyps3.variety().q();
  const GfVec& d = hyps3.dual(h);
  if (d.empty()) throw std::invalid_argument("blowup_dual_trivial: dual vector absent");
  const std::size_t dim = d.size();
  GfVec out(2 * dim, 0);
  if (full_layer == 0) {
    for (std::size_t c = 0; c < dim; ++c) out[dim + c] = d[c];
  } else if (full_layer == 1) {
    for (std::size_t c = 0; c < dim; ++c) out[c] = d[c];
  } else {
    // label (1,lambda): row0 + lambda row1 = 0, row0 = d.
    uint8_t lambda = static_cast<uint8_t>(full_layer - 1);
    uint8_t coef = gf_neg(q, gf_inv(q, lambda));
    for (std::size_t c = 0; c < dim; ++c) {
      out[c] = d[c];
      out[dim + c] = gf_mul(q, coef, d[c]);
    }
  }
  return normalize_form(std::move(out), q);
}

// ---------------------------------------------------------------------------
// k = 4 streaming census
// ---------------------------------------------------------------------------

namespace {

// Fixed-size accumulation key: the geometric signature of one blow-up output
// together with its provenance bucket. Padding-free so it can be hashed as
// raw bytes.
struct AccKey {
  uint16_t pts = 0, lns = 0;
  std::array<uint16_t, 5> hist{};
  std::array<uint8_t, 8> census{};  // [D, lower type 0.., pad]
  std::array<uint16_t, 4> vl{};     // sorted unique, padded 0xFFFF
  uint16_t tag = 0;
  uint8_t sub = 0;
  uint8_t projective = 0;
  bool operator==(const AccKey&) const = default;
};
static_assert(sizeof(AccKey) == 34);

struct AccKeyHash {
  std::size_t operator()(const AccKey& k) const {
    const unsigned char* p = reinterpret_cast<const unsigned char*>(&k);
    uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < sizeof(AccKey); ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Acc {
  uint64_t count = 0;
  bool rep_trivial = true;
  uint32_t rep_src = UINT32_MAX;
  uint8_t rep_perm = 0;
  DualKey rep_key = 0;

  void offer(bool trivial, uint32_t src, uint8_t perm, DualKey key) {
    ++count;
    if (std::tie(trivial, src, perm) < std::tie(rep_trivial, rep_src, rep_perm)) {
      rep_trivial = trivial;
      rep_src = src;
      rep_perm = perm;
      rep_key = key;
    }
  }
};

using AccMap = std::unordered_map<AccKey, Acc, AccKeyHash>;

// External merge sink for dual keys under a memory ceiling.
struct KeySink {
  bool external = false;
  std::vector<DualKey> direct;
  // external mode
  std::filesystem::path dir;
  std::size_t chunk_cap = 0;
  std::vector<std::vector<DualKey>> buf;
  std::vector<std::vector<std::filesystem::path>> files;
  std::mutex io_mutex;

  void init(uint64_t total, const K4Options& opts, unsigned t) {
    external = opts.max_mem_bytes && total * sizeof(DualKey) * 2 > opts.max_mem_bytes;
    if (!external) {
      direct.assign(total, 0);
      return;
    }
    dir = opts.scratch_dir.empty() ? std::filesystem::temp_directory_path()
                                   : std::filesystem::path(opts.scratch_dir);
    chunk_cap = std::max<std::size_t>(1 << 16, opts.max_mem_bytes / sizeof(DualKey) / (2 * t));
    buf.resize(t);
    files.resize(t);
  }
  void put(unsigned tid, uint64_t slot, DualKey key) {
    if (!external) {
      direct[slot] = key;
      return;
    }
    buf[tid].push_back(key);
    if (buf[tid].size() >= chunk_cap) flush(tid);
  }
  void flush(unsigned tid) {
    if (buf[tid].empty()) return;
    std::sort(buf[tid].begin(), buf[tid].end(),
              [](DualKey a, DualKey b) { return __builtin_bswap32(a) < __builtin_bswap32(b); });
    std::filesystem::path p;
    {
      std::lock_guard<std::mutex> lock(io_mutex);
      p = dir / ("segre-k4-" + std::to_string(tid) + "-" + std::to_string(files[tid].size()) +
                 ".keys");
    }
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(buf[tid].data()),
              static_cast<std::streamsize>(buf[tid].size() * sizeof(DualKey)));
    files[tid].push_back(p);
    buf[tid].clear();
  }
  // Returns (count, all_distinct); leaves `direct` sorted in the in-memory case.
  std::pair<uint64_t, bool> finalize(unsigned t) {
    if (!external) {
      std::sort(direct.begin(), direct.end(),
                [](DualKey a, DualKey b) { return __builtin_bswap32(a) < __builtin_bswap32(b); });
      bool distinct = std::adjacent_find(direct.begin(), direct.end()) == direct.end();
      return {direct.size(), distinct};
    }
    for (unsigned tid = 0; tid < t; ++tid) flush(tid);
    struct Cursor {
      std::ifstream in;
      DualKey cur = 0;
      bool ok = false;
      void advance() { ok = static_cast<bool>(in.read(reinterpret_cast<char*>(&cur), 4)); }
    };
    std::vector<Cursor> cursors;
    for (auto& fl : files)
      for (auto& p : fl) {
        cursors.emplace_back();
        cursors.back().in.open(p, std::ios::binary);
        cursors.back().advance();
      }
    auto cmp = [](const std::pair<uint32_t, std::size_t>& a,
                  const std::pair<uint32_t, std::size_t>& b) { return a.first > b.first; };
    std::priority_queue<std::pair<uint32_t, std::size_t>,
                        std::vector<std::pair<uint32_t, std::size_t>>, decltype(cmp)>
        heap(cmp);
    for (std::size_t i = 0; i < cursors.size(); ++i)
      if (cursors[i].ok) heap.push({__builtin_bswap32(cursors[i].cur), i});
    uint64_t count = 0;
    bool distinct = true;
    bool have_prev = false;
    uint32_t prev = 0;
    while (!heap.empty()) {
      auto [val, idx] = heap.top();
      heap.pop();
      if (have_prev && val == prev) distinct = false;
      prev = val;
      have_prev = true;
      ++count;
      cursors[idx].advance();
      if (cursors[idx].ok) heap.push({__builtin_bswap32(cursors[idx].cur), idx});
    }
    for (auto& fl : files)
      for (auto& p : fl) std::filesystem::remove(p);
    return {count, distinct};
  }
};

struct StreamContext {
  const Level* l3 = nullptr;
  U64Map section_map;  // S3 hyperplane word mask -> id
  U64Map line_map;     // packed sorted member ids -> line id
  uint8_t ext_idx[3][4][16];  // [S3 direction][layer value][sub index] -> S3 point
  std::vector<std::array<uint8_t, 8>> duals;  // per S3 hyperplane (projective only)
  std::vector<std::array<uint64_t, 4>> order_words;  // order-o masks, o = 0..3
  std::vector<std::array<std::array<uint16_t, 4>, 3>> full_sub16;  // of the full layer

  void build(const Level& level3) {
    l3 = &level3;
    const HyperplaneStore& hs = level3.hyps;
    std::vector<std::pair<uint64_t, uint32_t>> pairs;
    pairs.reserve(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i)
      pairs.push_back({hs.word_masks()[i], static_cast<uint32_t>(i)});
    section_map.build(pairs);

    pairs.clear();
    pairs.reserve(level3.lines.size());
    for (std::size_t i = 0; i < level3.lines.size(); ++i)
      pairs.push_back({LineStore::pack_key(level3.lines.members[i]), static_cast<uint32_t>(i)});
    line_map.build(pairs);

    for (uint8_t j = 0; j < 3; ++j)
      for (uint8_t a = 0; a < 4; ++a) {
        const auto& lp = level3.v.layer_points(j, a);
        for (uint8_t s = 0; s < 16; ++s) ext_idx[j][a][s] = static_cast<uint8_t>(lp[s]);
      }

    duals.resize(hs.size());
    order_words.resize(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (hs.is_projective(i)) {
        const GfVec& d = hs.dual(i);
        for (int c = 0; c < 8; ++c) duals[i][c] = d[c];
      }
      for (uint8_t o = 0; o < 4; ++o) order_words[i][o] = hs.order_mask(i, o).word0();
    }
  }

  uint16_t extract16(uint64_t m, uint8_t j, uint8_t a) const {
    uint16_t out = 0;
    for (int s = 0; s < 16; ++s) out |= static_cast<uint16_t>(((m >> ext_idx[j][a][s]) & 1u) << s);
    return out;
  }
};

constexpr uint64_t kFullS3 = ~uint64_t(0);

// VL tag of one direction's four layer sections.
uint16_t direction_tag(const StreamContext& ctx, const std::array<uint64_t, 4>& sections) {
  int full_at = -1;
  std::array<uint32_t, 4> ids = {kNoMember, kNoMember, kNoMember, kNoMember};
  for (int a = 0; a < 4; ++a) {
    if (sections[a] == kFullS3) {
      if (full_at >= 0) throw std::logic_error("k4 projection has several full layers");
      full_at = a;
      continue;
    }
    int64_t id = ctx.section_map.get(sections[a]);
    if (id < 0) throw std::logic_error("k4 layer section is not a hyperplane of the layer");
    ids[a] = static_cast<uint32_t>(id);
  }
  if (full_at >= 0) {
    uint32_t rep = kNoMember;
    for (int a = 0; a < 4; ++a) {
      if (a == full_at) continue;
      if (rep == kNoMember) rep = ids[a];
      else if (rep != ids[a]) throw std::logic_error("k4 projection is not a trivial line");
    }
    return static_cast<uint16_t>(kTrivialTag | ctx.l3->hyp_type[rep]);
  }
  std::sort(ids.begin(), ids.end());
  int64_t line = ctx.line_map.get(LineStore::pack_key(ids));
  if (line < 0) throw std::logic_error("k4 projection is not a Veldkamp line");
  return ctx.l3->line_type[line];
}

// Dual key of an ordinary blow-up, all arithmetic on 8-coordinate byte duals.
DualKey ordinary_dual_key(const StreamContext& ctx, const std::array<uint32_t, 4>& mem,
                          const std::array<uint8_t, 4>& perm) {
  const auto& d0 = ctx.duals[mem[perm[0]]];
  const auto& d1 = ctx.duals[mem[perm[1]]];
  const auto& d2 = ctx.duals[mem[perm[2]]];
  const auto& d3 = ctx.duals[mem[perm[3]]];
  int p1 = -1, p2 = -1, det = 0;
  for (int c = 0; c < 8; ++c)
    if (d0[c] || d1[c]) {
      p1 = c;
      break;
    }
  for (int c = p1 + 1; c < 8; ++c) {
    det = (d0[p1] * d1[c] - d0[c] * d1[p1]) % 3;
    if (det < 0) det += 3;
    if (det) {
      p2 = c;
      break;
    }
  }
  if (p1 < 0 || p2 < 0) throw std::logic_error("k4 dual: member duals not independent");
  int inv_det = det;  // self-inverse over GF(3)
  int lam = (((d2[p1] * d1[p2] - d1[p1] * d2[p2]) % 3 + 3) % 3) * inv_det % 3;
  int mu = (((d0[p1] * d2[p2] - d2[p1] * d0[p2]) % 3 + 3) % 3) * inv_det % 3;
  if (!lam || !mu) throw std::logic_error("k4 dual: degenerate combination");

  std::array<uint8_t, 16> D;
  int s = -1;
  for (int c = 0; c < 8; ++c) {
    uint8_t r0 = static_cast<uint8_t>(lam * d0[c] % 3);
    uint8_t r1 = static_cast<uint8_t>(mu * d1[c] % 3);
    if (static_cast<uint8_t>((r0 + r1) % 3) != d2[c])
      throw std::logic_error("k4 dual: members not collinear in dual space");
    uint8_t u = static_cast<uint8_t>((r0 + 2 * r1) % 3);
    if (s < 0 && (u || d3[c])) {
      if (!u || !d3[c]) throw std::logic_error("k4 dual: fourth member mismatch");
      s = u * d3[c] % 3;  // u * inv(d3[c]), inv = identity on {1,2}
    }
    if (s >= 0 && u != static_cast<uint8_t>(s * d3[c] % 3))
      throw std::logic_error("k4 dual: fourth member mismatch");
    D[c] = r0;
    D[8 + c] = r1;
  }
  // Normalize first nonzero coordinate to 1 and pack.
  int scale = 1;
  for (int c = 0; c < 16; ++c)
    if (D[c]) {
      scale = D[c];  // inverse of D[c]
      break;
    }
  DualKey key = 0;
  for (int c = 0; c < 16; ++c) key |= static_cast<DualKey>(D[c] * scale % 3) << (2 * c);
  return key;
}

DualKey trivial_dual_key(const StreamContext& ctx, uint32_t h, uint8_t full_layer) {
  const auto& d = ctx.duals[h];
  std::array<uint8_t, 16> D{};
  switch (full_layer) {
    case 0:
      for (int c = 0; c < 8; ++c) D[8 + c] = d[c];
      break;
    case 1:
      for (int c = 0; c < 8; ++c) D[c] = d[c];
      break;
    case 2:
      for (int c = 0; c < 8; ++c) {
        D[c] = d[c];
        D[8 + c] = static_cast<uint8_t>(2 * d[c] % 3);
      }
      break;
    default:
      for (int c = 0; c < 8; ++c) {
        D[c] = d[c];
        D[8 + c] = d[c];
      }
  }
  int scale = 1;
  for (int c = 0; c < 16; ++c)
    if (D[c]) {
      scale = D[c];
      break;
    }
  DualKey key = 0;
  for (int c = 0; c < 16; ++c) key |= static_cast<DualKey>(D[c] * scale % 3) << (2 * c);
  return key;
}

K4Census run_stream(const Tower& tower, const std::vector<uint32_t>& line_ids,
                    const std::vector<uint32_t>& trivial_ids, bool projective_run,
                    const K4Options& opts) {
  const Level& l3 = tower.level(3);
  if (!l3.lines_built) throw std::invalid_argument("k4 stream: level-3 lines required");
  StreamContext ctx;
  ctx.build(l3);
  const HyperplaneStore& hs = l3.hyps;
  auto perms = layer_permutations(4);

  const uint64_t total = line_ids.size() * 24ull + trivial_ids.size() * 4ull;
  unsigned t = opts.threads ? opts.threads : default_threads();

  KeySink sink;
  if (projective_run && opts.keep_keys) sink.init(total, opts, t);

  std::vector<AccMap> locals(t);
  std::vector<std::vector<std::pair<PointSet, uint8_t>>> local_ovoids(t);
  std::vector<std::vector<PointSet>> local_masks(t);
  const bool keep_masks = !projective_run;

  parallel_for(line_ids.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
    AccMap& acc = locals[tid];
    for (std::size_t li = b; li < e; ++li) {
      const uint32_t line = line_ids[li];
      const std::array<uint32_t, 4>& mem = l3.lines.members[line];
      std::array<uint64_t, 4> wm;
      for (int i = 0; i < 4; ++i) wm[i] = hs.word_masks()[mem[i]];
      const uint64_t core = wm[0] & wm[1] & wm[2] & wm[3];
      const uint16_t core_pts = static_cast<uint16_t>(__builtin_popcountll(core));

      AccKey base{};
      base.projective = projective_run ? 1 : 0;
      base.tag = l3.line_type[line];
      base.sub = l3.line_sublabel.empty() ? 0 : l3.line_sublabel[line];
      uint32_t pts = 0, lns = core_pts;
      for (int i = 0; i < 4; ++i) {
        pts += hs.pts(mem[i]);
        lns += hs.lns(mem[i]);
        ++base.census[1 + l3.hyp_type[mem[i]]];
        for (uint8_t o = 0; o < 4; ++o) {
          uint64_t om = ctx.order_words[mem[i]][o];
          base.hist[o + 1] += static_cast<uint16_t>(__builtin_popcountll(om & core));
          base.hist[o] += static_cast<uint16_t>(__builtin_popcountll(om & ~core));
        }
      }
      base.pts = static_cast<uint16_t>(pts);
      base.lns = static_cast<uint16_t>(lns);

      uint16_t sub16[4][3][4];
      for (int i = 0; i < 4; ++i)
        for (uint8_t j = 0; j < 3; ++j)
          for (uint8_t a = 0; a < 4; ++a) sub16[i][j][a] = ctx.extract16(wm[i], j, a);

      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        const auto& perm = perms[pi];
        AccKey key = base;
        std::array<uint16_t, 4> vl;
        vl[0] = base.tag;
        for (uint8_t J = 0; J < 3; ++J) {
          std::array<uint64_t, 4> sections;
          for (uint8_t a = 0; a < 4; ++a) {
            uint64_t w = 0;
            for (int i = 0; i < 4; ++i)
              w |= static_cast<uint64_t>(sub16[perm[i]][J][a]) << (16 * i);
            sections[a] = w;
          }
          uint16_t tag = direction_tag(ctx, sections);
          vl[J + 1] = tag;
          for (uint8_t a = 0; a < 4; ++a) {
            if (sections[a] == kFullS3) ++key.census[0];
            else ++key.census[1 + l3.hyp_type[ctx.section_map.get(sections[a])]];
          }
        }
        std::sort(vl.begin(), vl.end());
        int n = 0;
        for (int i = 0; i < 4; ++i)
          if (i == 0 || vl[i] != vl[i - 1]) key.vl[n++] = vl[i];
        for (; n < 4; ++n) key.vl[n] = 0xFFFF;

        DualKey dk = 0;
        if (projective_run) {
          dk = ordinary_dual_key(ctx, mem, perm);
          if (opts.keep_keys) sink.put(tid, li * 24ull + pi, dk);
        }
        acc[key].offer(false, line, static_cast<uint8_t>(pi), dk);

        if (opts.keep_ovoids && pts == 64) {
          PointSet m4 = PointSet::empty(256);
          for (int i = 0; i < 4; ++i) m4.w[i] = wm[perm[i]];
          local_ovoids[tid].push_back({m4, base.sub});
        }
        if (keep_masks) {
          PointSet m4 = PointSet::empty(256);
          for (int i = 0; i < 4; ++i) m4.w[i] = wm[perm[i]];
          local_masks[tid].push_back(m4);
        }
      }
    }
  }, t);

  // Trivial blow-ups.
  const uint64_t trivial_base = line_ids.size() * 24ull;
  parallel_for(trivial_ids.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
    AccMap& acc = locals[tid];
    for (std::size_t hi = b; hi < e; ++hi) {
      const uint32_t h = trivial_ids[hi];
      const uint64_t wmh = hs.word_masks()[h];
      const uint16_t hp = hs.pts(h);

      AccKey base{};
      base.projective = projective_run ? 1 : 0;
      base.tag = static_cast<uint16_t>(kTrivialTag | l3.hyp_type[h]);
      base.sub = 0;
      base.pts = static_cast<uint16_t>(64 + 3 * hp);
      base.lns = static_cast<uint16_t>(hp + 48 + 3 * hs.lns(h));
      for (uint8_t o = 0; o < 4; ++o)
        base.hist[o + 1] += static_cast<uint16_t>(3 * __builtin_popcountll(ctx.order_words[h][o]));
      base.hist[3] += static_cast<uint16_t>(64 - hp);
      base.hist[4] += hp;
      base.census[0] = 1;
      base.census[1 + l3.hyp_type[h]] += 3;

      uint16_t sub16_h[3][4], sub16_full[3][4];
      for (uint8_t j = 0; j < 3; ++j)
        for (uint8_t a = 0; a < 4; ++a) {
          sub16_h[j][a] = ctx.extract16(wmh, j, a);
          sub16_full[j][a] = 0xFFFF;
        }

      for (uint8_t pos = 0; pos < 4; ++pos) {
        AccKey key = base;
        std::array<uint16_t, 4> vl;
        vl[0] = base.tag;
        for (uint8_t J = 0; J < 3; ++J) {
          std::array<uint64_t, 4> sections;
          for (uint8_t a = 0; a < 4; ++a) {
            uint64_t w = 0;
            for (int i = 0; i < 4; ++i) {
              uint16_t s16 = (i == pos) ? sub16_full[J][a] : sub16_h[J][a];
              w |= static_cast<uint64_t>(s16) << (16 * i);
            }
            sections[a] = w;
          }
          uint16_t tag = direction_tag(ctx, sections);
          vl[J + 1] = tag;
          for (uint8_t a = 0; a < 4; ++a) {
            if (sections[a] == kFullS3) ++key.census[0];
            else ++key.census[1 + l3.hyp_type[ctx.section_map.get(sections[a])]];
          }
        }
        std::sort(vl.begin(), vl.end());
        int n = 0;
        for (int i = 0; i < 4; ++i)
          if (i == 0 || vl[i] != vl[i - 1]) key.vl[n++] = vl[i];
        for (; n < 4; ++n) key.vl[n] = 0xFFFF;

        DualKey dk = 0;
        if (projective_run) {
          dk = trivial_dual_key(ctx, h, pos);
          if (opts.keep_keys) sink.put(tid, trivial_base + hi * 4ull + pos, dk);
        }
        acc[key].offer(true, h, pos, dk);

        if (keep_masks) {
          PointSet m4 = PointSet::empty(256);
          for (int i = 0; i < 4; ++i) m4.w[i] = (i == pos) ? kFullS3 : wmh;
          local_masks[tid].push_back(m4);
        }
      }
    }
  }, t);

  // Deterministic merge.
  K4Census census;
  census.projective_run = projective_run;
  census.total = total;

  std::map<TypeSignature, K4Class> classes;
  const std::size_t lower_types = l3.hyp_classes.size();
  for (AccMap& local : locals) {
    for (auto& [key, acc] : local) {
      TypeSignature sig;
      sig.pts = key.pts;
      sig.lns = key.lns;
      sig.order_hist.assign(key.hist.begin(), key.hist.end());
      sig.section_census.assign(1 + lower_types, 0);
      for (std::size_t i = 0; i < 1 + lower_types; ++i) sig.section_census[i] = key.census[i];
      for (int i = 0; i < 4; ++i)
        if (key.vl[i] != 0xFFFF) sig.vl_set.push_back(key.vl[i]);
      sig.projective = key.projective != 0;

      K4Class& cls = classes[sig];
      cls.sig = sig;
      cls.count += acc.count;
      K4Provenance prov{key.tag, key.sub};
      cls.provenance[prov] += acc.count;
      auto rep = std::make_tuple(acc.rep_src, acc.rep_perm, acc.rep_trivial, acc.rep_key);
      auto it = cls.reps.find(prov);
      if (it == cls.reps.end()) {
        cls.reps.emplace(prov, rep);
      } else {
        auto cur = it->second;
        auto cur_key = std::make_tuple(std::get<2>(cur), std::get<0>(cur), std::get<1>(cur));
        auto new_key = std::make_tuple(acc.rep_trivial, acc.rep_src, acc.rep_perm);
        if (new_key < cur_key) it->second = rep;
      }
    }
    local.clear();
  }
  for (auto& [sig, cls] : classes) census.classes.push_back(std::move(cls));

  if (projective_run && opts.keep_keys) {
    auto [count, distinct] = sink.finalize(t);
    census.all_distinct = distinct && count == total;
    census.keys = std::move(sink.direct);
  }
  if (opts.keep_ovoids) {
    for (auto& lo : local_ovoids)
      census.ovoids.insert(census.ovoids.end(), lo.begin(), lo.end());
    std::sort(census.ovoids.begin(), census.ovoids.end(),
              [](const auto& a, const auto& b) { return byte_less(a.first, b.first); });
  }
  if (keep_masks) {
    for (auto& lm : local_masks) census.masks.insert(census.masks.end(), lm.begin(), lm.end());
    std::sort(census.masks.begin(), census.masks.end(), byte_less);
  }
  return census;
}

}  // namespace

std::vector<std::pair<DualKey, BlowupRecord>> k4_keys_with_provenance(
    const HyperplaneStore& hyps3, const LineStore& lines, const std::vector<uint32_t>& line_ids,
    const std::vector<uint32_t>& trivial_ids, unsigned threads, bool* all_distinct) {
  // Local duals-as-bytes context (no classification required). Duals are
  // needed only for the referenced sources; the store may hold the
  // non-projective ovoids too.
  StreamContext ctx;
  std::vector<std::array<uint8_t, 8>>& duals = ctx.duals;
  duals.resize(hyps3.size());
  for (std::size_t i = 0; i < hyps3.size(); ++i) {
    if (!hyps3.is_projective(i)) continue;
    const GfVec& d = hyps3.dual(i);
    for (int c = 0; c < 8; ++c) duals[i][c] = d[c];
  }
  auto require_projective = [&](uint32_t h) {
    if (!hyps3.is_projective(h))
      throw std::invalid_argument("k4_keys_with_provenance: non-projective source in scope");
  };
  for (uint32_t li : line_ids)
    for (uint8_t m = 0; m < 4; ++m) require_projective(lines.members[li][m]);
  for (uint32_t h : trivial_ids) require_projective(h);
  auto perms = layer_permutations(4);
  const uint64_t total = line_ids.size() * 24ull + trivial_ids.size() * 4ull;
  std::vector<std::pair<DualKey, BlowupRecord>> out(total);
  parallel_for(line_ids.size(), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t li = b; li < e; ++li) {
      const auto& mem = lines.members[line_ids[li]];
      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        DualKey key = ordinary_dual_key(ctx, mem, perms[pi]);
        out[li * 24 + pi] = {key, BlowupRecord{line_ids[li], static_cast<uint8_t>(pi), false}};
      }
    }
  }, threads);
  const uint64_t base = line_ids.size() * 24ull;
  for (std::size_t hi = 0; hi < trivial_ids.size(); ++hi)
    for (uint8_t pos = 0; pos < 4; ++pos)
      out[base + hi * 4 + pos] = {trivial_dual_key(ctx, trivial_ids[hi], pos),
                                  BlowupRecord{trivial_ids[hi], pos, true}};
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return __builtin_bswap32(a.first) < __builtin_bswap32(b.first);
  });
  if (all_distinct) {
    *all_distinct = true;
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i].first == out[i - 1].first) *all_distinct = false;
  }
  return out;
}

K4Census classify_k4_keys(const Tower& tower, const std::vector<DualKey>& keys, unsigned threads) {
  const Level& l3 = tower.level(3);
  if (!l3.lines_built) throw std::invalid_argument("classify_k4_keys: level-3 lines required");
  StreamContext ctx;
  ctx.build(l3);

  // Dense lookup: normalized level-3 dual -> hyperplane id.
  std::vector<int32_t> by_dual(6561, -1);
  for (std::size_t i = 0; i < l3.hyps.size(); ++i) {
    if (!l3.hyps.is_projective(i)) continue;
    uint32_t idx = 0, p = 1;
    const GfVec& d = l3.hyps.dual(i);
    for (int c = 0; c < 8; ++c) {
      idx += d[c] * p;
      p *= 3;
    }
    by_dual[idx] = static_cast<int32_t>(i);
  }

  unsigned t = threads ? threads : default_threads();
  std::vector<AccMap> locals(t);
  parallel_for(keys.size(), [&](std::size_t b, std::size_t e, unsigned tid) {
    AccMap& acc = locals[tid];
    for (std::size_t ki = b; ki < e; ++ki) {
      const DualKey key = keys[ki];
      // Layer forms: f0 = row0, f1 = row1, f2 = row0+row1, f3 = row0+2row1.
      std::array<uint8_t, 8> row0, row1;
      for (int c = 0; c < 8; ++c) {
        row0[c] = static_cast<uint8_t>((key >> (2 * c)) & 3u);
        row1[c] = static_cast<uint8_t>((key >> (2 * (8 + c))) & 3u);
      }
      std::array<int32_t, 4> sec;  // -1 = full layer
      int full_at = -1;
      for (int i = 0; i < 4; ++i) {
        std::array<uint8_t, 8> f;
        bool zero = true;
        for (int c = 0; c < 8; ++c) {
          uint8_t x = i == 0   ? row0[c]
                      : i == 1 ? row1[c]
                      : i == 2 ? static_cast<uint8_t>((row0[c] + row1[c]) % 3)
                               : static_cast<uint8_t>((row0[c] + 2 * row1[c]) % 3);
          f[c] = x;
          zero &= x == 0;
        }
        if (zero) {
          sec[i] = -1;
          if (full_at >= 0) throw std::logic_error("classify_k4_keys: two zero layer forms");
          full_at = i;
          continue;
        }
        uint8_t scale = 1;
        for (int c = 0; c < 8; ++c)
          if (f[c]) {
            scale = f[c];  // self-inverse
            break;
          }
        uint32_t idx = 0, p = 1;
        for (int c = 0; c < 8; ++c) {
          idx += (f[c] * scale % 3) * p;
          p *= 3;
        }
        sec[i] = by_dual[idx];
        if (sec[i] < 0) throw std::logic_error("classify_k4_keys: layer form is not a hyperplane");
      }

      AccKey base{};
      base.projective = 1;
      std::array<uint64_t, 4> wm;
      uint64_t core = ~uint64_t(0);
      for (int i = 0; i < 4; ++i) {
        wm[i] = sec[i] < 0 ? kFullS3 : l3.hyps.word_masks()[sec[i]];
        core &= wm[i];
      }
      if (full_at >= 0) {
        uint32_t h = static_cast<uint32_t>(sec[full_at == 0 ? 1 : 0]);
        uint16_t hp = l3.hyps.pts(h);
        base.tag = static_cast<uint16_t>(kTrivialTag | l3.hyp_type[h]);
        base.pts = static_cast<uint16_t>(64 + 3 * hp);
        base.lns = static_cast<uint16_t>(hp + 48 + 3 * l3.hyps.lns(h));
        for (uint8_t o = 0; o < 4; ++o)
          base.hist[o + 1] +=
              static_cast<uint16_t>(3 * __builtin_popcountll(ctx.order_words[h][o]));
        base.hist[3] += static_cast<uint16_t>(64 - hp);
        base.hist[4] += hp;
        base.census[0] = 1;
        base.census[1 + l3.hyp_type[h]] += 3;
      } else {
        std::array<uint32_t, 4> ids = {uint32_t(sec[0]), uint32_t(sec[1]), uint32_t(sec[2]),
                                       uint32_t(sec[3])};
        std::array<uint32_t, 4> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        int64_t line = ctx.line_map.get(LineStore::pack_key(sorted));
        if (line < 0) throw std::logic_error("classify_k4_keys: sections do not form a line");
        base.tag = l3.line_type[line];
        base.sub = l3.line_sublabel.empty() ? 0 : l3.line_sublabel[line];
        uint32_t pts = 0, lns = static_cast<uint32_t>(__builtin_popcountll(core));
        for (int i = 0; i < 4; ++i) {
          pts += l3.hyps.pts(ids[i]);
          lns += l3.hyps.lns(ids[i]);
          ++base.census[1 + l3.hyp_type[ids[i]]];
          for (uint8_t o = 0; o < 4; ++o) {
            uint64_t om = ctx.order_words[ids[i]][o];
            base.hist[o + 1] += static_cast<uint16_t>(__builtin_popcountll(om & core));
            base.hist[o] += static_cast<uint16_t>(__builtin_popcountll(om & ~core));
          }
        }
        base.pts = static_cast<uint16_t>(pts);
        base.lns = static_cast<uint16_t>(lns);
      }

      std::array<uint16_t, 4> vl;
      vl[0] = base.tag;
      for (uint8_t J = 0; J < 3; ++J) {
        std::array<uint64_t, 4> sections;
        for (uint8_t a = 0; a < 4; ++a) {
          uint64_t w = 0;
          for (int i = 0; i < 4; ++i) {
            uint16_t s16 =
                wm[i] == kFullS3 ? uint16_t(0xFFFF) : ctx.extract16(wm[i], J, a);
            w |= static_cast<uint64_t>(s16) << (16 * i);
          }
          sections[a] = w;
        }
        vl[J + 1] = direction_tag(ctx, sections);
        for (uint8_t a = 0; a < 4; ++a) {
          if (sections[a] == kFullS3) ++base.census[0];
          else ++base.census[1 + l3.hyp_type[ctx.section_map.get(sections[a])]];
        }
      }
      std::sort(vl.begin(), vl.end());
      int n = 0;
      for (int i = 0; i < 4; ++i)
        if (i == 0 || vl[i] != vl[i - 1]) base.vl[n++] = vl[i];
      for (; n < 4; ++n) base.vl[n] = 0xFFFF;
      acc[base].offer(false, static_cast<uint32_t>(ki), 0, key);
    }
  }, t);

  K4Census census;
  census.projective_run = true;
  census.total = keys.size();
  std::map<TypeSignature, K4Class> classes;
  const std::size_t lower_types = l3.hyp_classes.size();
  for (AccMap& local : locals) {
    for (auto& [key, acc] : local) {
      TypeSignature sig;
      sig.pts = key.pts;
      sig.lns = key.lns;
      sig.order_hist.assign(key.hist.begin(), key.hist.end());
      sig.section_census.assign(1 + lower_types, 0);
      for (std::size_t i = 0; i < 1 + lower_types; ++i) sig.section_census[i] = key.census[i];
      for (int i = 0; i < 4; ++i)
        if (key.vl[i] != 0xFFFF) sig.vl_set.push_back(key.vl[i]);
      sig.projective = true;
      K4Class& cls = classes[sig];
      cls.sig = sig;
      cls.count += acc.count;
      cls.provenance[K4Provenance{key.tag, key.sub}] += acc.count;
    }
    local.clear();
  }
  for (auto& [sig, cls] : classes) census.classes.push_back(std::move(cls));
  return census;
}

K4Census enumerate_k4_projective(const Tower& tower, const K4Options& opts) {
  const Level& l3 = tower.level(3);
  std::vector<uint32_t> lines = l3.projective_line_ids();
  std::vector<uint32_t> hyps = l3.hyps.projective_ids();
  return run_stream(tower, lines, hyps, true, opts);
}

K4Census enumerate_k4_nonprojective(const Tower& tower, const K4Options& opts) {
  const Level& l3 = tower.level(3);
  std::vector<uint32_t> lines = l3.starred_line_ids(l3.hyps);
  std::vector<uint32_t> hyps;
  for (std::size_t i = 0; i < l3.hyps.size(); ++i)
    if (!l3.hyps.is_projective(i)) hyps.push_back(static_cast<uint32_t>(i));
  return run_stream(tower, lines, hyps, false, opts);
}

}  // namespace segre
