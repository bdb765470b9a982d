#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "segre/blowup.hpp"
#include "segre/veldkamp.hpp"

namespace segre {

// Hyperplane file (.svh): magic "SVHY", version, q, k, flags byte (bit 0:
// projective-only, bit 1: dual-key encoding), count as u64 LE, then records.
// Bitset records are ceil((q+1)^k/8) bytes, LSB = point 0; dual-key records
// are 2^k coordinates x 2 bits (coordinate i at bit 2i of the record), padded
// to whole bytes, normalized. Records are sorted ascending as byte strings.
constexpr uint8_t kSvhProjectiveOnly = 1;
constexpr uint8_t kSvhDualKeys = 2;

struct SvhFile {
  uint8_t q = 0, k = 0, flags = 0;
  std::vector<PointSet> masks;   // bitset encoding
  std::vector<DualKey> keys;     // dual-key encoding
  std::size_t count() const { return (flags & kSvhDualKeys) ? keys.size() : masks.size(); }
};

void write_svh_masks(const std::string& path, uint8_t q, uint8_t k, bool projective_only,
                     const std::vector<PointSet>& sorted_masks);
void write_svh_duals(const std::string& path, uint8_t q, uint8_t k,
                     const std::vector<DualKey>& sorted_keys);
SvhFile read_svh(const std::string& path);

// Line file (.svl): magic "SVLN", version, q, k, kind flags, count, then per
// record q+1 member indices as u64 LE (ascending) followed by one
// projectivity byte. Records sorted lexicographically.
constexpr uint8_t kSvlOrdinary = 1;

struct SvlFile {
  uint8_t q = 0, k = 0, kind_flags = kSvlOrdinary;
  LineStore lines;
};

void write_svl(const std::string& path, uint8_t q, uint8_t k, const LineStore& lines);
SvlFile read_svl(const std::string& path);

// Provenance sidecar (.prov): magic "SVPV", version, q, k, count, then per
// companion record {kind byte (0 ordinary / 1 trivial), perm-or-position
// byte, source index u32 LE}.
void write_provenance(const std::string& path, uint8_t q, uint8_t k,
                      const std::vector<BlowupRecord>& records);
std::vector<BlowupRecord> read_provenance(const std::string& path, uint8_t expect_q,
                                          uint8_t expect_k);

// Tab-separated report with a header row.
class TsvWriter {
 public:
  explicit TsvWriter(const std::string& path);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

}  // namespace segre
