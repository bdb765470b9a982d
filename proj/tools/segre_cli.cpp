// Command line front end: enumeration, Veldkamp line generation,
// classification, orbits, blow-ups, selections and the verification harness.
//
// Exit codes: 0 success, 1 verification failures, 2 usage/IO errors.

#include <CLI11.hpp>
#include <cstdio>
#include <set>

#include "segre/io.hpp"
#include "segre/parallel.hpp"
#include "segre/verify.hpp"

using namespace segre;

namespace {

std::string vl_label(uint16_t tag) {
  static const char* roman[] = {"I", "II", "III", "IV", "V", "V*"};
  if (tag & kTrivialTag) {
    unsigned t = tag & 0x7FFFu;
    return t < 6 ? roman[t] : "T" + std::to_string(t + 1);
  }
  return std::to_string(tag + 1);
}

std::string join_hist(const std::vector<uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

// Tower deep enough to classify level-k hyperplanes/lines.
Tower build_tower(uint8_t q, uint8_t k, bool lines_at_level_k, unsigned threads) {
  TowerOptions opts;
  opts.q = q;
  opts.max_k = std::min<uint8_t>(k, 3);
  opts.lines_at_top = lines_at_level_k || k > opts.max_k;
  opts.orbits_at_top = opts.lines_at_top;
  opts.threads = threads;
  return Tower::build(opts);
}

// Maps file records to canonical store ids (file order = record order).
std::vector<uint32_t> file_ids(const HyperplaneStore& store, const SvhFile& f) {
  std::vector<uint32_t> ids;
  ids.reserve(f.masks.size());
  for (const PointSet& m : f.masks) {
    int64_t id = store.find(m);
    if (id < 0) throw std::runtime_error("hyperplane file record is not a geometric hyperplane");
    ids.push_back(static_cast<uint32_t>(id));
  }
  return ids;
}

void print_results(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    std::printf("%s %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
}

int cmd_enumerate(uint8_t q, uint8_t k, bool projective_only, const std::string& out_path,
                  unsigned threads, uint64_t max_mem) {
  if (k == 4) {
    if (q != 3 || !projective_only) {
      std::fprintf(stderr,
                   "enumerate: k = 4 output uses the dual-key encoding and therefore "
                   "requires --q 3 --projective-only (the non-projective census is "
                   "available through `verify --suite table12`)\n");
      return 2;
    }
    Tower tower = build_tower(3, 4, true, threads);
    K4Options opts;
    opts.threads = threads;
    opts.keep_keys = true;
    opts.max_mem_bytes = max_mem;
    K4Census cen = enumerate_k4_projective(tower, opts);
    if (!cen.all_distinct) {
      std::fprintf(stderr, "enumerate: dual-key collision detected\n");
      return 1;
    }
    if (cen.keys.empty()) {
      std::fprintf(stderr,
                   "enumerate: keys were deduplicated externally (low --max-mem); "
                   "use `blowup` to materialize a file\n");
      return 1;
    }
    write_svh_duals(out_path, 3, 4, cen.keys);
    std::printf("wrote %llu dual-key records to %s\n",
                static_cast<unsigned long long>(cen.keys.size()), out_path.c_str());
    return 0;
  }
  Tower tower = build_tower(q, k, false, threads);
  const Level& lvl = tower.level(k);
  std::vector<PointSet> masks;
  for (std::size_t i = 0; i < lvl.hyps.size(); ++i)
    if (!projective_only || lvl.hyps.is_projective(i)) masks.push_back(lvl.hyps.mask(i));
  write_svh_masks(out_path, q, k, projective_only, masks);
  std::printf("wrote %zu hyperplane records to %s\n", masks.size(), out_path.c_str());
  return 0;
}

int cmd_lines(const std::string& hyps_path, const std::string& out_path, bool fast,
              bool include_np, const std::string& empty_report, unsigned threads) {
  SvhFile f = read_svh(hyps_path);
  if (f.flags & kSvhDualKeys) {
    std::fprintf(stderr, "lines: dual-key inputs not supported (line generation is k <= 3)\n");
    return 2;
  }
  SegreVariety v = SegreVariety::build(f.q, f.k);
  HyperplaneStore store = HyperplaneStore::build(v, f.masks, threads);
  if (store.size() != f.masks.size()) {
    std::fprintf(stderr, "lines: duplicate records in %s\n", hyps_path.c_str());
    return 2;
  }
  std::vector<uint32_t> scope;
  for (std::size_t i = 0; i < store.size(); ++i)
    if (include_np || store.is_projective(i)) scope.push_back(static_cast<uint32_t>(i));
  LineStore lines;
  EmptyPairReport diag;
  if (fast) {
    lines = projective_lines_fast(v, store, scope, threads);
  } else {
    lines = find_lines(v, store, scope, threads, empty_report.empty() ? nullptr : &diag);
  }
  write_svl(out_path, f.q, f.k, lines);
  std::printf("wrote %zu line records to %s\n", lines.size(), out_path.c_str());
  if (!empty_report.empty()) {
    TsvWriter tsv(empty_report);
    tsv.row({"hyperplane_a", "hyperplane_b", "core_points"});
    for (const auto& pr : diag.pairs) {
      PointSet core = store.mask(pr[0]) & store.mask(pr[1]);
      tsv.row({std::to_string(pr[0]), std::to_string(pr[1]), std::to_string(core.count())});
    }
    std::printf("wrote %zu candidate-free pairs to %s\n", diag.pairs.size(), empty_report.c_str());
  }
  return 0;
}

void write_k4_report(const K4Census& cen, const std::string& path) {
  TsvWriter tsv(path);
  tsv.row({"type", "points", "lines", "order_histogram", "section_census", "vl_types",
           "cardinality", "projective"});
  for (std::size_t c = 0; c < cen.classes.size(); ++c) {
    const K4Class& cls = cen.classes[c];
    std::string vl;
    for (std::size_t i = 0; i < cls.sig.vl_set.size(); ++i) {
      if (i) vl += ",";
      vl += vl_label(cls.sig.vl_set[i]);
    }
    tsv.row({std::to_string(c + 1), std::to_string(cls.sig.pts), std::to_string(cls.sig.lns),
             join_hist(cls.sig.order_hist), join_hist(cls.sig.section_census), vl,
             std::to_string(cls.count), cls.sig.projective ? "1" : "0"});
  }
}

int cmd_classify_hyperplanes(const std::string& hyps_path, const std::string& report,
                             unsigned threads) {
  SvhFile f = read_svh(hyps_path);
  if (f.flags & kSvhDualKeys) {
    if (f.k != 4) {
      std::fprintf(stderr, "classify-hyperplanes: dual keys only supported at k = 4\n");
      return 2;
    }
    Tower tower = build_tower(3, 4, true, threads);
    K4Census cen = classify_k4_keys(tower, f.keys, threads);
    write_k4_report(cen, report);
    std::printf("classified %llu hyperplanes into %zu types -> %s\n",
                static_cast<unsigned long long>(cen.total), cen.classes.size(), report.c_str());
    return 0;
  }
  Tower tower = build_tower(f.q, f.k, false, threads);
  const Level& lvl = tower.level(f.k);
  std::vector<uint32_t> ids = file_ids(lvl.hyps, f);
  std::vector<uint64_t> counts(lvl.hyp_classes.size(), 0);
  for (uint32_t id : ids) ++counts[lvl.hyp_type[id]];
  TsvWriter tsv(report);
  tsv.row({"type", "points", "lines", "order_histogram", "section_census", "vl_types",
           "cardinality", "projective"});
  for (std::size_t t = 0; t < lvl.hyp_classes.size(); ++t) {
    if (!counts[t]) continue;
    const TypeSignature& sig = lvl.hyp_classes[t].sig;
    std::string vl;
    for (std::size_t i = 0; i < sig.vl_set.size(); ++i) {
      if (i) vl += ",";
      vl += vl_label(sig.vl_set[i]);
    }
    tsv.row({std::to_string(t + 1), std::to_string(sig.pts), std::to_string(sig.lns),
             join_hist(sig.order_hist), join_hist(sig.section_census), vl,
             std::to_string(counts[t]), sig.projective ? "1" : "0"});
  }
  std::printf("classified %zu hyperplanes -> %s\n", ids.size(), report.c_str());
  return 0;
}

int cmd_classify_lines(const std::string& lines_path, const std::string& hyps_path,
                       const std::string& report, unsigned threads) {
  SvhFile hf = read_svh(hyps_path);
  SvlFile lf = read_svl(lines_path);
  if (hf.q != lf.q || hf.k != lf.k) {
    std::fprintf(stderr, "classify-lines: q/k mismatch between inputs\n");
    return 2;
  }
  Tower tower = build_tower(hf.q, hf.k, true, threads);
  const Level& lvl = tower.level(hf.k);
  std::vector<uint32_t> ids = file_ids(lvl.hyps, hf);
  std::vector<uint64_t> counts(lvl.line_classes.size(), 0);
  for (std::size_t i = 0; i < lf.lines.size(); ++i) {
    std::array<uint32_t, 4> mem = {kNoMember, kNoMember, kNoMember, kNoMember};
    for (uint8_t j = 0; j < lf.lines.member_count; ++j) mem[j] = ids.at(lf.lines.members[i][j]);
    std::sort(mem.begin(), mem.begin() + lf.lines.member_count);
    int64_t li = lvl.lines.find(mem);
    if (li < 0) {
      std::fprintf(stderr, "classify-lines: record %zu is not a Veldkamp line\n", i);
      return 2;
    }
    ++counts[lvl.line_type[li]];
  }
  TsvWriter tsv(report);
  tsv.row({"type", "core_points", "core_lines", "composition", "projective", "cardinality"});
  for (std::size_t t = 0; t < lvl.line_classes.size(); ++t) {
    if (!counts[t]) continue;
    const LineSignature& sig = lvl.line_classes[t].sig;
    std::string comp;
    for (std::size_t i = 0; i < sig.member_types.size(); ++i) {
      if (i) comp += "+";
      comp += "H" + std::to_string(sig.member_types[i] + 1);
    }
    tsv.row({std::to_string(t + 1), std::to_string(sig.core_pts), std::to_string(sig.core_lns),
             comp, sig.projective ? "1" : "0", std::to_string(counts[t])});
  }
  std::printf("classified %zu lines -> %s\n", lf.lines.size(), report.c_str());
  return 0;
}

int cmd_orbits(const std::string& lines_path, const std::string& hyps_path,
               const std::string& report, unsigned threads) {
  SvhFile hf = read_svh(hyps_path);
  Tower tower = build_tower(hf.q, hf.k, !lines_path.empty(), threads);
  const Level& lvl = tower.level(hf.k);
  TsvWriter tsv(report);
  if (lines_path.empty()) {
    tsv.row({"orbit", "size", "type", "signature_crosscheck"});
    std::vector<uint16_t> orbit_type(lvl.hyp_orbits.count(), kNoType);
    std::vector<bool> pure(lvl.hyp_orbits.count(), true);
    for (std::size_t i = 0; i < lvl.hyps.size(); ++i) {
      uint32_t o = lvl.hyp_orbits.orbit_id[i];
      if (orbit_type[o] == kNoType) orbit_type[o] = lvl.hyp_type[i];
      else if (orbit_type[o] != lvl.hyp_type[i]) pure[o] = false;
    }
    for (uint32_t o = 0; o < lvl.hyp_orbits.count(); ++o)
      tsv.row({std::to_string(o + 1), std::to_string(lvl.hyp_orbits.orbit_sizes[o]),
               std::to_string(orbit_type[o] + 1), pure[o] ? "ok" : "MIXED"});
    std::printf("%u hyperplane orbits -> %s\n", lvl.hyp_orbits.count(), report.c_str());
  } else {
    tsv.row({"orbit", "size", "line_type", "sublabel", "signature_crosscheck"});
    std::vector<uint16_t> orbit_type(lvl.line_orbits.count(), kNoType);
    std::vector<uint8_t> orbit_sub(lvl.line_orbits.count(), 0);
    std::vector<bool> pure(lvl.line_orbits.count(), true);
    for (std::size_t i = 0; i < lvl.lines.size(); ++i) {
      uint32_t o = lvl.line_orbits.orbit_id[i];
      if (orbit_type[o] == kNoType) {
        orbit_type[o] = lvl.line_type[i];
        orbit_sub[o] = lvl.line_sublabel[i];
      } else if (orbit_type[o] != lvl.line_type[i]) {
        pure[o] = false;
      }
    }
    for (uint32_t o = 0; o < lvl.line_orbits.count(); ++o)
      tsv.row({std::to_string(o + 1), std::to_string(lvl.line_orbits.orbit_sizes[o]),
               std::to_string(orbit_type[o] + 1), std::string(1, char('a' + orbit_sub[o])),
               pure[o] ? "ok" : "MIXED"});
    std::printf("%u line orbits -> %s\n", lvl.line_orbits.count(), report.c_str());
  }
  return 0;
}

int cmd_blowup(const std::string& lines_path, const std::string& hyps_path,
               const std::string& out_path, const std::string& prov_path, bool projective_only,
               unsigned threads, uint64_t max_mem) {
  SvhFile hf = read_svh(hyps_path);
  SvlFile lf = read_svl(lines_path);
  if (hf.q != lf.q || hf.k != lf.k) {
    std::fprintf(stderr, "blowup: q/k mismatch between inputs\n");
    return 2;
  }
  if (hf.flags & kSvhDualKeys) {
    std::fprintf(stderr, "blowup: bitset-encoded hyperplane input required\n");
    return 2;
  }
  SegreVariety v = SegreVariety::build(hf.q, hf.k);
  HyperplaneStore store = HyperplaneStore::build(v, hf.masks, threads);
  std::vector<uint32_t> line_ids, hyp_ids;
  for (std::size_t i = 0; i < lf.lines.size(); ++i)
    if (!projective_only || lf.lines.projective[i]) line_ids.push_back(static_cast<uint32_t>(i));
  for (std::size_t i = 0; i < store.size(); ++i)
    if (!projective_only || store.is_projective(i)) hyp_ids.push_back(static_cast<uint32_t>(i));

  if (hf.k == 3) {
    if (hf.q != 3 || !projective_only) {
      std::fprintf(stderr,
                   "blowup: k = 3 -> 4 writes dual-key records and requires --projective-only\n");
      return 2;
    }
    (void)max_mem;
    bool distinct = false;
    auto keyed = k4_keys_with_provenance(store, lf.lines, line_ids, hyp_ids, threads, &distinct);
    std::vector<DualKey> keys;
    keys.reserve(keyed.size());
    std::vector<BlowupRecord> prov;
    prov.reserve(keyed.size());
    for (auto& [key, rec] : keyed) {
      keys.push_back(key);
      prov.push_back(rec);
    }
    write_svh_duals(out_path, 3, 4, keys);
    if (!prov_path.empty()) write_provenance(prov_path, 3, 4, prov);
    std::printf("wrote %zu dual-key records to %s (all distinct: %s)\n", keys.size(),
                out_path.c_str(), distinct ? "yes" : "NO");
    return distinct ? 0 : 1;
  }

  SegreVariety target = SegreVariety::build(hf.q, static_cast<uint8_t>(hf.k + 1));
  auto perms = layer_permutations(static_cast<uint8_t>(target.labels()));
  std::vector<std::pair<PointSet, BlowupRecord>> outputs;
  for (uint32_t li : line_ids)
    for (std::size_t pi = 0; pi < perms.size(); ++pi)
      outputs.push_back({blow_up_ordinary(target, store, lf.lines.members[li],
                                          lf.lines.member_count, perms[pi]),
                         BlowupRecord{li, static_cast<uint8_t>(pi), false}});
  for (uint32_t h : hyp_ids)
    for (uint8_t pos = 0; pos < target.labels(); ++pos)
      outputs.push_back({blow_up_trivial(target, store, h, pos), BlowupRecord{h, pos, true}});
  std::sort(outputs.begin(), outputs.end(),
            [](const auto& a, const auto& b) { return byte_less(a.first, b.first); });
  std::vector<PointSet> masks;
  std::vector<BlowupRecord> prov;
  for (auto& [m, r] : outputs) {
    if (!masks.empty() && masks.back() == m) continue;
    masks.push_back(m);
    prov.push_back(r);
  }
  write_svh_masks(out_path, hf.q, static_cast<uint8_t>(hf.k + 1), projective_only, masks);
  if (!prov_path.empty()) write_provenance(prov_path, hf.q, static_cast<uint8_t>(hf.k + 1), prov);
  std::printf("wrote %zu hyperplane records to %s\n", masks.size(), out_path.c_str());
  return 0;
}

int cmd_quadric(const std::string& report, unsigned threads) {
  Tower tower = build_tower(3, 4, true, threads);
  K4Options opts;
  opts.threads = threads;
  opts.keep_keys = false;
  K4Census cen = enumerate_k4_projective(tower, opts);
  const Level& l3 = tower.level(3);
  std::vector<std::size_t> quadric = quadric_classes(cen, l3);
  std::vector<std::size_t> sympl = symplectic_generator_classes(cen, l3, quadric);
  TsvWriter tsv(report);
  tsv.row({"type", "points", "lines", "cardinality", "on_quadric", "symplectic_generator"});
  uint64_t qt = 0, st = 0;
  for (std::size_t c = 0; c < cen.classes.size(); ++c) {
    bool on_q = std::find(quadric.begin(), quadric.end(), c) != quadric.end();
    bool on_s = std::find(sympl.begin(), sympl.end(), c) != sympl.end();
    if (on_q) qt += cen.classes[c].count;
    if (on_s) st += cen.classes[c].count;
    tsv.row({std::to_string(c + 1), std::to_string(cen.classes[c].sig.pts),
             std::to_string(cen.classes[c].sig.lns), std::to_string(cen.classes[c].count),
             on_q ? "1" : "0", on_s ? "1" : "0"});
  }
  std::printf("quadric: %zu types, %llu members; symplectic: %zu types, %llu members -> %s\n",
              quadric.size(), static_cast<unsigned long long>(qt), sympl.size(),
              static_cast<unsigned long long>(st), report.c_str());
  return 0;
}

int cmd_weights(uint8_t k, const std::string& report, unsigned threads) {
  TsvWriter tsv(report);
  if (k <= 3) {
    Tower tower = build_tower(3, k, true, threads);
    const Level& lvl = tower.level(k);
    std::vector<uint8_t> w = hyperplane_weights(lvl);
    std::vector<int> per_type(lvl.hyp_classes.size(), -2);
    for (std::size_t i = 0; i < lvl.hyps.size(); ++i) {
      int x = w[i];
      if (per_type[lvl.hyp_type[i]] == -2) per_type[lvl.hyp_type[i]] = x;
      else if (per_type[lvl.hyp_type[i]] != x) per_type[lvl.hyp_type[i]] = -1;
    }
    tsv.row({"type", "points", "cardinality", "weight"});
    for (std::size_t t = 0; t < lvl.hyp_classes.size(); ++t)
      tsv.row({std::to_string(t + 1), std::to_string(lvl.hyp_classes[t].sig.pts),
               std::to_string(lvl.hyp_classes[t].count),
               per_type[t] == 0 ? "undefined" : std::to_string(per_type[t])});
    std::printf("weights at k = %u -> %s\n", k, report.c_str());
    return 0;
  }
  Tower tower = build_tower(3, 4, true, threads);
  K4Options opts;
  opts.threads = threads;
  opts.keep_keys = false;
  K4Census cen = enumerate_k4_projective(tower, opts);
  K4Weights kw = k4_weights(threads);
  tsv.row({"type", "points", "cardinality", "weights_of_representatives"});
  for (std::size_t c = 0; c < cen.classes.size(); ++c) {
    std::set<unsigned> ws;
    for (const auto& [prov, rep] : cen.classes[c].reps) {
      DualKey key = std::get<3>(rep);
      uint8_t w = kw.weight_of(key);
      if (w == 0 && k4_weight5_witness(kw, key)) w = 5;
      ws.insert(w);
    }
    std::string s;
    for (unsigned w : ws) {
      if (!s.empty()) s += ",";
      s += std::to_string(w);
    }
    tsv.row({std::to_string(c + 1), std::to_string(cen.classes[c].sig.pts),
             std::to_string(cen.classes[c].count), s});
  }
  std::printf("weights at k = 4 (levels %llu/%llu/%llu/%llu, >=5: %llu) -> %s\n",
              static_cast<unsigned long long>(kw.level_counts[1]),
              static_cast<unsigned long long>(kw.level_counts[2]),
              static_cast<unsigned long long>(kw.level_counts[3]),
              static_cast<unsigned long long>(kw.level_counts[4]),
              static_cast<unsigned long long>(kw.level_counts[5]), report.c_str());
  return 0;
}

int cmd_graphs(const std::string& report, unsigned threads) {
  VerifyContext ctx;
  ctx.threads = threads;
  std::vector<CheckResult> results = run_suite(ctx, "graphs");
  TsvWriter tsv(report);
  tsv.row({"check", "result", "detail"});
  int failures = 0;
  for (const CheckResult& r : results) {
    tsv.row({r.name, r.pass ? "PASS" : "FAIL", r.detail});
    failures += !r.pass;
  }
  print_results(results);
  return failures ? 1 : 0;
}

int cmd_binary_embed(const std::string& report, unsigned threads) {
  VerifyContext ctx;
  ctx.threads = threads;
  const Tower& bt = ctx.binary();
  const Level& l3 = ctx.ternary().level(3);
  const Level& b3 = bt.level(3);
  std::vector<BinaryCopy> copies = binary_copies(l3.v);
  CopyExtensionCensus census = copy_extension_census(l3, b3, copies[0], threads);
  TsvWriter tsv(report);
  tsv.row({"binary_line_type", "binary_core_points", "binary_core_lines", "ternary_line_type",
           "ternary_core_points", "ternary_core_lines", "ternary_projective", "extensions"});
  for (std::size_t b = 0; b < census.line_ext.size(); ++b) {
    if (census.line_ext[b].empty()) continue;
    const LineSignature& bs = b3.line_classes[b].sig;
    for (const auto& [tt, count] : census.line_ext[b]) {
      const LineSignature& ts = l3.line_classes[tt].sig;
      tsv.row({std::to_string(b + 1), std::to_string(bs.core_pts), std::to_string(bs.core_lns),
               std::to_string(tt + 1), std::to_string(ts.core_pts), std::to_string(ts.core_lns),
               ts.projective ? "1" : "0", std::to_string(count)});
    }
  }
  std::printf("binary embedding census -> %s\n", report.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Veldkamp spaces of low-dimensional ternary Segre varieties"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: available parallelism)");

  uint8_t q = 3, k = 2, wk = 3;
  bool projective_only = false, fast = false, include_np = false;
  std::string out_path, hyps_path, lines_path, report_path, prov_path, empty_report;
  std::string suite = "all";
  uint64_t max_mem = 0;

  auto* enumerate = app.add_subcommand("enumerate", "enumerate geometric hyperplanes of S_k(q)");
  enumerate->add_option("--q", q, "field order (2 or 3)")->required();
  enumerate->add_option("--k", k, "number of factors (2..4)")->required();
  enumerate->add_flag("--projective-only", projective_only);
  enumerate->add_option("--out", out_path)->required();
  enumerate->add_option("--max-mem", max_mem, "memory ceiling in bytes for the k = 4 dedup");

  auto* lines = app.add_subcommand("lines", "generate ordinary Veldkamp lines");
  lines->add_option("--hyps", hyps_path)->required();
  lines->add_option("--out", out_path)->required();
  lines->add_flag("--projective-fast", fast, "dual-space shortcut (projective inputs)");
  lines->add_flag("--include-nonprojective-members", include_np,
                  "scan over non-projective hyperplanes too");
  lines->add_option("--empty-pairs-report", empty_report,
                    "TSV of pairs with an empty candidate list (size-two line diagnostic)");

  auto* ch = app.add_subcommand("classify-hyperplanes", "type census of a hyperplane file");
  ch->add_option("--hyps", hyps_path)->required();
  ch->add_option("--report", report_path)->required();

  auto* cl = app.add_subcommand("classify-lines", "type census of a line file");
  cl->add_option("--lines", lines_path)->required();
  cl->add_option("--hyps", hyps_path)->required();
  cl->add_option("--report", report_path)->required();

  auto* orbits = app.add_subcommand("orbits", "group-orbit partition and signature cross-check");
  orbits->add_option("--lines", lines_path);
  orbits->add_option("--hyps", hyps_path)->required();
  orbits->add_option("--report", report_path)->required();

  auto* blowup = app.add_subcommand("blowup", "blow the Veldkamp lines up one dimension");
  blowup->add_option("--lines", lines_path)->required();
  blowup->add_option("--hyps", hyps_path)->required();
  blowup->add_option("--out", out_path)->required();
  blowup->add_option("--provenance", prov_path, "provenance sidecar");
  blowup->add_flag("--projective-only", projective_only);
  blowup->add_option("--max-mem", max_mem);

  auto* quadric = app.add_subcommand("quadric", "hyperbolic-quadric and symplectic selections");
  quadric->add_option("--report", report_path)->required();

  auto* weights = app.add_subcommand("weights", "inductive hyperplane weights");
  weights->add_option("--k", wk, "level (2..4)");
  weights->add_option("--report", report_path)->required();

  auto* graphs = app.add_subcommand("graphs", "ovoid graph checks (Dyck / four cubes / Nauru)");
  graphs->add_option("--report", report_path)->required();

  auto* be = app.add_subcommand("binary-embed", "binary Veldkamp lines inside the ternary space");
  be->add_option("--report", report_path)->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite,
                     "one of table1..table12, counts, graphs, weights, invariants, all");

  CLI11_PARSE(app, argc, argv);
  set_default_threads(threads);

  try {
    if (enumerate->parsed())
      return cmd_enumerate(q, k, projective_only, out_path, threads, max_mem);
    if (lines->parsed())
      return cmd_lines(hyps_path, out_path, fast, include_np, empty_report, threads);
    if (ch->parsed()) return cmd_classify_hyperplanes(hyps_path, report_path, threads);
    if (cl->parsed()) return cmd_classify_lines(lines_path, hyps_path, report_path, threads);
    if (orbits->parsed()) return cmd_orbits(lines_path, hyps_path, report_path, threads);
    if (blowup->parsed())
      return cmd_blowup(lines_path, hyps_path, out_path, prov_path, projective_only, threads,
                        max_mem);
    if (quadric->parsed()) return cmd_quadric(report_path, threads);
    if (weights->parsed()) return cmd_weights(wk, report_path, threads);
    if (graphs->parsed()) return cmd_graphs(report_path, threads);
    if (be->parsed()) return cmd_binary_embed(report_path, threads);
    if (verify->parsed()) {
      VerifyContext ctx;
      ctx.threads = threads;
      std::vector<CheckResult> results = run_suite(ctx, suite);
      print_results(results);
      int failures = 0;
      for (const CheckResult& r : results) failures += !r.pass;
      std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                  results.size());
      return failures;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
