#pragma once

#include <memory>
#include <string>
#include <vector>

#include "segre/binary.hpp"
#include "segre/graphs.hpp"
#include "segre/quadric.hpp"

namespace segre {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Shared lazily-built artifacts for the verification suites.
struct VerifyContext {
  unsigned threads = 0;

  const Tower& ternary();           // levels 2..3 with lines and orbits
  const Tower& binary();            // q = 2, levels 2..3
  const K4Census& k4();             // projective census with keys and ovoids
  const K4Census& k4_nonprojective();
  const K4Weights& weights4();

  std::unique_ptr<Tower> ternary_;
  std::unique_ptr<Tower> binary_;
  std::unique_ptr<K4Census> k4_;
  std::unique_ptr<K4Census> k4np_;
  std::unique_ptr<K4Weights> weights4_;
};

// A verification suite: runs its checks, appending results.
using Suite = void (*)(VerifyContext&, std::vector<CheckResult>&);

// Suite names: table1..table12, counts, invariants, graphs, weights, all.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(VerifyContext& ctx, const std::string& name);

}  // namespace segre
