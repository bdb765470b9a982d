// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line per criterion (sub-check details on failure). Exit code = number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "segre/verify.hpp"

using namespace segre;

namespace {

double now() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Criterion {
  std::string label;
  std::vector<std::string> checks;  // exact check names from the verify suites
};

}  // namespace

int main() {
  VerifyContext ctx;
  ctx.threads = 0;

  const char* suites[] = {"table1", "table2",  "table3",  "table4",  "table5",     "table6",
                          "table7", "table8",  "table9",  "table10", "table11",    "table12",
                          "counts", "graphs",  "weights", "invariants"};
  std::map<std::string, CheckResult> results;
  double t0 = now();
  for (const char* s : suites) {
    double t1 = now();
    for (CheckResult& r : run_suite(ctx, s)) results.emplace(r.name, std::move(r));
    std::fprintf(stderr, "[suite %-10s %6.1fs]\n", s, now() - t1);
  }

  const std::vector<Criterion> criteria = {
      {"criterion 1: S2(3) census — 40 hyperplanes (16 singular, 24 ovoids); the ovoid set "
       "partitions into the 6 non-projective quadruples",
       {"table1: 40 hyperplanes of S2(3)", "table1: 16 singular + 24 ovoids",
        "table1: ovoid set partitions into the 6 non-projective quadruples",
        "table3: 24 ovoidal lines",
        "table3: the 6 non-projective ovoidal lines form a partition of the ovoids",
        "table3: ovoidal lines split into four partitions of the ovoid set"}},
      {"criterion 2: V(S2(3)) — 136 ordinary lines = 130 projective (8/72/32/18) + 6 "
       "non-projective; dual route set-equal to Algorithm 1",
       {"table2: 136 ordinary lines = 130 projective + 6 non-projective",
        "table2: class sizes 8/72/32/18 + 6*",
        "table2: projective-fast output equals Algorithm 1's projective subset"}},
      {"criterion 3: S3(3) census — 3424 hyperplanes in 6 types with the full Table 4 data",
       {"table4: 3424 hyperplanes of S3(3) in 6 types",
        "table4: points/lines/orders/section census per type",
        "table4: VL column (spread projections to V(S2(3)) types)",
        "table4: 6 hyperplane orbits matching the 6 types"}},
      {"criterion 4: V(S3(3)) — 896260 projective lines in 62 classes, 2268 starred in 4, "
       "5400 ovoid-bearing in 5 (Tables 5 and 6)",
       {"table5: 896260 projective lines in 62 geometric classes",
        "table5: 2268 non-projective lines with projective members in 4 classes",
        "table5: all 66 class descriptors and cardinalities",
        "table6: 5400 lines containing non-projective ovoids in 5 classes",
        "table6: class descriptors and cardinalities (1296/2304/576/864/360)"}},
      {"criterion 5: orbit refinement at k = 3 — 69 projective orbits; exactly the seven "
       "Table 7 splits with their suborbit sizes",
       {"table7: projective lines fall into 69 orbits",
        "table7: exactly 7 split types with Table 7 suborbit sizes",
        "table7: every orbit size divides |G| = 82944"}},
      {"criterion 6: S4(3) blow-up — 21523360 distinct projective hyperplanes (zero dual-key "
       "collisions) in 43 types with Table 9 data; counting identity holds",
       {"table9: 21523360 projective hyperplanes of S4(3)",
        "table9: counting identity 896260*24 + 3280*4", "table9: zero dual-key collisions",
        "table9: 43 geometric types", "table9: every row's points/lines/orders/census/cardinality",
        "table9: provenance identity (24x per line type, 4x per trivial type)"}},
      {"criterion 7: BS refinement — the five split types yield 48 classes; type-43 worked "
       "example 2592/15552 (doubled: 5184/31104)",
       {"table9: exactly five types split under the BS refinement",
        "table9: refinement yields 48 classes",
        "table9: type-43 worked example (24*108 = 2592, 24*648 = 15552)",
        "table9: doubled subtype cardinalities give the BS orbit sizes 5184 and 31104",
        "table9: direct orbit closure on the 18144 ovoids confirms the 2592/15552 split"}},
      {"criterion 8: quadric and symplectic selections — 22 types with 7176640 members "
       "(Table 10); 7 types with 91840 (Table 11)",
       {"table10: 22 types on the hyperbolic quadric",
        "table10: 7176640 members = (3^7+1)(3^8-1)/2",
        "table10: the selected types match Table 10",
        "table11: 7 types correspond to the W(7,3) generators",
        "table11: 91840 members = (3+1)(3^2+1)(3^3+1)(3^4+1)",
        "table11: the selected types match Table 11"}},
      {"criterion 9: non-projective S4(3) hyperplanes from starred lines — 4 types "
       "(2304/31104/13824/7776), total 55008 = 2268*24 + 144*4",
       {"table12: 55008 = 2268*24 + 144*4 non-projective hyperplanes from starred lines",
        "table12: 4 types", "table12: all point sets pairwise distinct",
        "table12: cardinalities 2304/31104/13824/7776 with Table 12 row data",
        "table12: points, lines and order counts are multiples of four"}},
      {"criterion 10: weights — k = 3 types weigh (1,2,2,3,3) exhaustively; k = 4 "
       "representatives match the Table 9 W column including the type-43 (4,5) split",
       {"weights: k = 2 types weigh (1, 2)",
        "weights: k = 3 types weigh (1,2,2,3,3) with H5* undefined",
        "weights: k = 4 weight distribution matches the Table 9 W column sums",
        "weights: every representative matches the Table 9 W column "
        "(including the type-43 (4,5) split)"}},
      {"criterion 11: graph properties — disjoint projective-ovoid pairs give Dyck or 4xQ3; "
       "no non-projective pair is Dyck; the Nauru construction yields GP(12,5)",
       {"graphs: Dyck reference has 32 vertices, 48 edges, cubic, girth 6, diameter 5, bipartite",
        "graphs: Nauru reference GP(12,5) has 24 vertices and 36 edges",
        "graphs: 432 projective and 144 non-projective ovoids",
        "graphs: every disjoint projective-ovoid pair gives Dyck or 4xQ3",
        "graphs: both stated outcomes occur (Dyck and 4xQ3)",
        "graphs: no disjoint non-projective pair is ever Dyck",
        "graphs: the Nauru construction always yields GP(12,5)"}},
      {"criterion 12: binary suites — 15/255 hyperplanes, 35/10795 lines, all projective, "
       "5 hyperplane and 41 line types at k = 3; 15 extendable line types with the "
       "type-28 -> 44* non-projective extension (Table 8)",
       {"table8: S2(2) has 15 hyperplanes and 35 Veldkamp lines",
        "table8: S3(2) has 255 hyperplanes in 5 types",
        "table8: V(S3(2)) has 10795 lines in 41 types",
        "table8: the binary Veldkamp spaces are fully projective",
        "table8: 64 copies of S3(2) inside S3(3)",
        "table8: binary H1-H3 extend in type, H5 -> ternary H4, H4 not extendible",
        "table8: exactly 15 extendable binary line types",
        "table8: each extension lands in the Table 8 ternary type "
        "(type 28 -> the non-projective 44* only)",
        "table8: extension census independent of the chosen copy"}},
      {"criterion 13: property suites — hyperplane axiom (all k = 3, 10^5 random k = 4), rank "
       "dichotomy, dual round trips, signature group-invariance, determinism across worker "
       "counts, counting identities",
       {"counts: PG(3,3) has (3^4-1)/2 = 40 points and 130 lines",
        "counts: projective line count identity (N^2-N)/12 at k = 2",
        "counts: projective line count identity (N^2-N)/12 at k = 3",
        "counts: 3280 projective hyperplanes of S3(3) = (3^8-1)/2",
        "counts: blow-up identity 130*24 + 40*4 = 3280",
        "counts: group orders 24^2*2 and 24^3*6", "counts: hyperplane orbit sizes divide |G|",
        "counts: S4(3) blow-up identity 896260*24 + 3280*4 = (3^16-1)/2",
        "invariants: hyperplane axiom holds on all 3424 blow-up outputs at k = 3",
        "invariants: hyperplane axiom holds on 100000 random k = 4 blow-ups",
        "invariants: rank dichotomy {2^k-1, 2^k} on sampled k = 4 outputs",
        "invariants: dual round trip (zero locus = point set) on sampled k = 4 outputs",
        "invariants: dual via line combination equals dual via kernel (two routes)",
        "invariants: dual round trip on all projective hyperplanes of S3(3)",
        "invariants: hyperplane type invariant under all generators",
        "invariants: line type invariant under all generators (sampled)",
        "invariants: generators preserve the line set",
        "invariants: projective-fast equals Algorithm 1's projective subset at k = 3",
        "invariants: blow-up provenance round trip (layer sections = source members)",
        "invariants: line stores identical across worker counts",
        "invariants: k = 4 dual keys identical across worker counts",
        "invariants: external-merge dedup agrees (21523360 distinct keys)",
        "invariants: the binary Veldkamp line sets are fully projective"}},
  };

  int failed_criteria = 0;
  for (const Criterion& c : criteria) {
    bool pass = true;
    std::vector<const CheckResult*> failures;
    for (const std::string& name : c.checks) {
      auto it = results.find(name);
      if (it == results.end()) {
        pass = false;
        continue;
      }
      if (!it->second.pass) {
        pass = false;
        failures.push_back(&it->second);
      }
    }
    std::printf("%s %s\n", pass ? "PASS" : "FAIL", c.label.c_str());
    for (const CheckResult* f : failures)
      std::printf("       failed: %s%s%s\n", f->name.c_str(), f->detail.empty() ? "" : " -- ",
                  f->detail.c_str());
    failed_criteria += !pass;
  }
  std::printf("%zu/%zu criteria passed (%.1fs)\n", criteria.size() - failed_criteria,
              criteria.size(), now() - t0);
  return failed_criteria;
}
