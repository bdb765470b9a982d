#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "segre/blowup.hpp"
#include "segre/io.hpp"

using namespace segre;

namespace {

std::filesystem::path tmp(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::vector<char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::vector<char>((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("hyperplane file round trip is bit exact") {
  SegreVariety v = SegreVariety::build(3, 2);
  HyperplaneStore store = HyperplaneStore::build(v, enumerate_masks(v, nullptr, true, 0));
  std::vector<PointSet> masks;
  for (std::size_t i = 0; i < store.size(); ++i) masks.push_back(store.mask(i));
  auto path = tmp("segre-test.svh");
  write_svh_masks(path.string(), 3, 2, false, masks);
  SvhFile f = read_svh(path.string());
  CHECK(f.q == 3);
  CHECK(f.k == 2);
  CHECK(f.masks.size() == 40);
  for (std::size_t i = 0; i < masks.size(); ++i) CHECK(f.masks[i] == masks[i]);

  // Re-writing yields byte-identical files.
  auto path2 = tmp("segre-test2.svh");
  write_svh_masks(path2.string(), 3, 2, false, f.masks);
  CHECK(slurp(path) == slurp(path2));
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("dual-key file round trip") {
  std::vector<DualKey> keys = {0x00000001u, 0x00000042u, 0x00012345u};
  auto path = tmp("segre-test-duals.svh");
  write_svh_duals(path.string(), 3, 4, keys);
  SvhFile f = read_svh(path.string());
  CHECK((f.flags & kSvhDualKeys) != 0);
  CHECK((f.flags & kSvhProjectiveOnly) != 0);
  CHECK(f.keys == keys);
  std::filesystem::remove(path);
}

TEST_CASE("line file round trip") {
  SegreVariety v = SegreVariety::build(3, 2);
  HyperplaneStore store = HyperplaneStore::build(v, enumerate_masks(v, nullptr, true, 0));
  LineStore lines = find_lines(v, store, store.all_ids());
  auto path = tmp("segre-test.svl");
  write_svl(path.string(), 3, 2, lines);
  SvlFile f = read_svl(path.string());
  CHECK(f.q == 3);
  CHECK(f.lines.member_count == 4);
  CHECK(f.lines.members == lines.members);
  CHECK(f.lines.projective == lines.projective);
  std::filesystem::remove(path);
}

TEST_CASE("provenance sidecar round trip and q/k mismatch") {
  std::vector<BlowupRecord> recs = {{7, 3, false}, {40, 1, true}};
  auto path = tmp("segre-test.prov");
  write_provenance(path.string(), 3, 3, recs);
  std::vector<BlowupRecord> back = read_provenance(path.string(), 3, 3);
  REQUIRE(back.size() == 2);
  CHECK(back[0].source == 7);
  CHECK(back[0].perm == 3);
  CHECK_FALSE(back[0].trivial);
  CHECK(back[1].trivial);
  CHECK_THROWS_AS(read_provenance(path.string(), 3, 4), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("malformed magic and missing files raise errors") {
  auto path = tmp("segre-bad.svh");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE data data data";
  }
  CHECK_THROWS_AS(read_svh(path.string()), std::runtime_error);
  CHECK_THROWS_AS(read_svl(path.string()), std::runtime_error);
  CHECK_THROWS_AS(read_svh((path.string() + ".does-not-exist")), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("records are sorted ascending as byte strings") {
  SegreVariety v = SegreVariety::build(3, 2);
  HyperplaneStore store = HyperplaneStore::build(v, enumerate_masks(v, nullptr, true, 0));
  for (std::size_t i = 1; i < store.size(); ++i) {
    CHECK(store.mask(i - 1).bytes() < store.mask(i).bytes());
    CHECK(byte_less(store.mask(i - 1), store.mask(i)));
  }
}
