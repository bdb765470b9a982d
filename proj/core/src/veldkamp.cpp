#include "segre/veldkamp.hpp"

#include <functional>
#include <map>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "segre/parallel.hpp"

namespace segre {

namespace {

std::array<uint32_t, 4> sorted_members(std::array<uint32_t, 4> m) {
  std::sort(m.begin(), m.end());
  return m;
}

void run_pool(unsigned t, const std::function<void(unsigned)>& worker) {
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < t; ++i)
    pool.emplace_back([&, i] {
      try {
        worker(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// All members projective with collinear dual vectors.
bool line_projective(const HyperplaneStore& store, const std::array<uint32_t, 4>& m,
                     uint8_t member_count) {
  const uint8_t q = store.variety().q();
  for (uint8_t i = 0; i < member_count; ++i)
    if (!store.is_projective(m[i])) return false;
  DenseMatrix mat(q, store.dual(m[0]).size());
  for (uint8_t i = 0; i < member_count; ++i) mat.append_row(store.dual(m[i]));
  return mat.rank() == 2;
}

LineStore assemble(const SegreVariety& v, const HyperplaneStore& store,
                   std::vector<std::vector<uint64_t>>& per_thread, unsigned threads) {
  std::size_t total = 0;
  for (auto& t : per_thread) total += t.size();
  std::vector<uint64_t> keys;
  keys.reserve(total);
  for (auto& t : per_thread) {
    keys.insert(keys.end(), t.begin(), t.end());
    t.clear();
    t.shrink_to_fit();
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  LineStore out;
  out.member_count = static_cast<uint8_t>(v.labels());
  out.members.resize(keys.size());
  out.projective.assign(keys.size(), 0);
  parallel_for(keys.size(), [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      uint64_t k = keys[i];
      std::array<uint32_t, 4> m = {uint32_t(k >> 48) & 0xFFFFu, uint32_t(k >> 32) & 0xFFFFu,
                                   uint32_t(k >> 16) & 0xFFFFu, uint32_t(k) & 0xFFFFu};
      if (out.member_count < 4) m[3] = kNoMember;
      out.members[i] = m;
      out.projective[i] = line_projective(store, m, out.member_count) ? 1 : 0;
    }
  }, threads);
  return out;
}

}  // namespace

int64_t LineStore::find(const std::array<uint32_t, 4>& key) const {
  auto it = std::lower_bound(members.begin(), members.end(), key);
  if (it == members.end() || *it != key) return -1;
  return it - members.begin();
}

PointSet LineStore::core(const HyperplaneStore& store, std::size_t i) const {
  PointSet c = store.mask(members[i][0]);
  for (uint8_t j = 1; j < member_count; ++j) c = c & store.mask(members[i][j]);
  return c;
}

LineStore find_lines(const SegreVariety& v, const HyperplaneStore& store,
                     const std::vector<uint32_t>& scope, unsigned threads,
                     EmptyPairReport* diag) {
  if (v.point_count() > 64)
    throw std::invalid_argument("find_lines: pair scan supports at most 64 points (k <= 3)");
  const std::size_t n = scope.size();
  std::vector<uint64_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = store.mask(scope[i]).word0();
  const bool quad = v.labels() == 4;  // q = 3: lines have 4 members

  unsigned t = threads ? threads : default_threads();
  std::vector<std::vector<uint64_t>> per_thread(t);
  std::vector<std::vector<std::array<uint32_t, 2>>> empties(t);
  std::atomic<std::size_t> next{0};

  auto scan = [&](unsigned tid) {
    std::vector<uint32_t> cand;
    auto& out = per_thread[tid];
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      const uint64_t mi = m[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const uint64_t mj = m[j];
        const uint64_t core = mi & mj;
        cand.clear();
        for (std::size_t h = 0; h < n; ++h) {
          if ((m[h] & mi) == core && (m[h] & mj) == core && h != i && h != j)
            cand.push_back(static_cast<uint32_t>(h));
        }
        if (diag && cand.empty()) empties[tid].push_back({scope[i], scope[j]});
        if (quad) {
          for (std::size_t a = 0; a < cand.size(); ++a)
            for (std::size_t b = a + 1; b < cand.size(); ++b) {
              if ((m[cand[a]] & m[cand[b]]) != core) continue;
              std::array<uint32_t, 4> mem = sorted_members(
                  {scope[i], scope[j], scope[cand[a]], scope[cand[b]]});
              out.push_back(LineStore::pack_key(mem));
            }
        } else {
          for (uint32_t a : cand) {
            std::array<uint32_t, 4> mem =
                sorted_members({scope[i], scope[j], scope[a], kNoMember});
            out.push_back(LineStore::pack_key({mem[0], mem[1], mem[2], 0xFFFFu}));
          }
        }
      }
    }
  };
  run_pool(t, scan);

  if (diag) {
    for (auto& e : empties) diag->pairs.insert(diag->pairs.end(), e.begin(), e.end());
    std::sort(diag->pairs.begin(), diag->pairs.end());
  }
  return assemble(v, store, per_thread, threads);
}

LineStore projective_lines_fast(const SegreVariety& v, const HyperplaneStore& store,
                                const std::vector<uint32_t>& scope, unsigned threads) {
  const uint8_t q = v.q();
  const unsigned dim = 1u << v.k();
  for (uint32_t id : scope)
    if (!store.is_projective(id))
      throw std::invalid_argument("projective_lines_fast: member dual vector absent");

  // Dense dual -> id lookup via base-q digits (dim <= 8 for k <= 3).
  std::size_t span = 1;
  for (unsigned i = 0; i < dim; ++i) span *= q;
  std::vector<uint32_t> lookup(span, kNoMember);
  auto dual_index = [&](const GfVec& d) {
    std::size_t idx = 0;
    for (unsigned i = dim; i-- > 0;) idx = idx * q + d[i];
    return idx;
  };
  for (uint32_t id : scope) lookup[dual_index(store.dual(id))] = id;

  const std::size_t n = scope.size();
  std::vector<std::vector<uint64_t>> per_thread(threads ? threads : default_threads());
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned tid) {
    auto& out = per_thread[tid];
    GfVec combo(dim);
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      const GfVec& di = store.dual(scope[i]);
      for (std::size_t j = i + 1; j < n; ++j) {
        const GfVec& dj = store.dual(scope[j]);
        std::array<uint32_t, 4> mem = {scope[i], scope[j], kNoMember, kNoMember};
        uint8_t cnt = 2;
        for (uint8_t lambda = 1; lambda < q; ++lambda) {
          for (unsigned c = 0; c < dim; ++c) combo[c] = gf_add(q, di[c], gf_mul(q, lambda, dj[c]));
          GfVec norm = normalize_form(combo, q);
          uint32_t id = lookup[dual_index(norm)];
          if (id == kNoMember)
            throw std::logic_error("projective_lines_fast: combination missing from scope");
          mem[cnt++] = id;
        }
        std::array<uint32_t, 4> smem = sorted_members(mem);
        if (v.labels() < 4)
          out.push_back(LineStore::pack_key({smem[0], smem[1], smem[2], 0xFFFFu}));
        else
          out.push_back(LineStore::pack_key(smem));
      }
    }
  };
  run_pool(static_cast<unsigned>(per_thread.size()), worker);
  return assemble(v, store, per_thread, threads);
}

std::vector<VeldkampLine> trivial_lines(const HyperplaneStore& store) {
  std::vector<VeldkampLine> out(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    VeldkampLine& l = out[i];
    l.kind = VeldkampLine::Trivial;
    l.members = {uint32_t(i), uint32_t(i), uint32_t(i), uint32_t(i)};
    l.projective = store.is_projective(i);
  }
  return out;
}

LineTiebreak core_features(const SegreVariety& v, const HyperplaneStore& store,
                           const std::vector<uint16_t>& hyp_type,
                           const std::array<uint32_t, 4>& members, uint8_t member_count,
                           const PointSet& core) {
  LineTiebreak tb;

  // Core lines and their concurrency.
  std::vector<uint32_t> core_lines;
  for (uint32_t li = 0; li < v.lines().size(); ++li)
    if (v.line(li).mask.is_subset_of(core)) core_lines.push_back(li);
  for (std::size_t a = 0; a < core_lines.size(); ++a)
    for (std::size_t b = a + 1; b < core_lines.size(); ++b)
      if (!(v.line(core_lines[a]).mask & v.line(core_lines[b]).mask).none())
        ++tb.core_line_concurrency;

  // Order-0 points of the members lying in the core, totalled per member type.
  {
    std::map<uint16_t, uint16_t> per_type;
    for (uint8_t i = 0; i < member_count; ++i) {
      uint32_t h = members[i];
      per_type[hyp_type[h]] += static_cast<uint16_t>((store.zero_mask(h) & core).count());
    }
    for (auto& [t, z] : per_type) tb.zero_in_core.push_back({t, z});
  }

  // Members with exactly one deep (order k) point.
  std::vector<uint16_t> deeps;
  for (uint8_t i = 0; i < member_count; ++i) {
    uint32_t h = members[i];
    if (store.single_deep(h)) {
      deeps.push_back(store.deep_point(h));
      if (core.test(store.deep_point(h))) ++tb.deep_in_core;
    }
  }
  for (std::size_t a = 0; a < deeps.size(); ++a)
    for (std::size_t b = a + 1; b < deeps.size(); ++b)
      tb.deep_distances.push_back(static_cast<uint8_t>(v.distance(deeps[a], deeps[b])));
  std::sort(tb.deep_distances.begin(), tb.deep_distances.end());

  // Distances between core points that coincide with order-two points of a
  // member. Only computed for the composition shape the distinction applies
  // to: exactly two members whose maximal order is two, the rest ovoid-like
  // (maximal order zero); one per-member distance multiset, concatenated.
  {
    std::vector<uint32_t> m2;
    int m0 = 0;
    for (uint8_t i = 0; i < member_count; ++i) {
      uint8_t mo = store.max_order(members[i]);
      if (mo == 2) m2.push_back(members[i]);
      else if (mo == 0) ++m0;
    }
    if (m2.size() == 2 && m2.size() + m0 == member_count) {
      for (uint32_t m : m2) {
        std::vector<uint16_t> pts = (core & store.order_mask(m, 2)).members();
        for (std::size_t a = 0; a < pts.size(); ++a)
          for (std::size_t b = a + 1; b < pts.size(); ++b)
            tb.order2_core_distances.push_back(static_cast<uint8_t>(v.distance(pts[a], pts[b])));
      }
      std::sort(tb.order2_core_distances.begin(), tb.order2_core_distances.end());
    }
  }
  return tb;
}

LineSignature line_signature(const SegreVariety& v, const HyperplaneStore& store,
                             const std::vector<uint16_t>& hyp_type, const LineStore& lines,
                             std::size_t i) {
  LineSignature sig;
  PointSet core = lines.core(store, i);
  sig.core_pts = static_cast<uint16_t>(core.count());
  uint16_t cl = 0;
  for (const VarietyLine& line : v.lines())
    if (line.mask.is_subset_of(core)) ++cl;
  sig.core_lns = cl;
  for (uint8_t j = 0; j < lines.member_count; ++j)
    sig.member_types.push_back(hyp_type[lines.members[i][j]]);
  std::sort(sig.member_types.begin(), sig.member_types.end());
  sig.projective = lines.projective[i] != 0;
  sig.tiebreak = core_features(v, store, hyp_type, lines.members[i], lines.member_count, core);
  return sig;
}

}  // namespace segre
