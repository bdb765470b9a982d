#include "segre/io.hpp"

#include <cstring>
#include <stdexcept>

namespace segre {

namespace {

constexpr uint8_t kVersion = 1;

void put_u64(std::ofstream& out, uint64_t v) {
  uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

uint64_t get_u64(std::ifstream& in) {
  uint8_t b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

void check_stream(const std::ios& s, const std::string& path) {
  if (!s.good()) throw std::runtime_error("io: failed reading/writing " + path);
}

void write_header(std::ofstream& out, const char magic[4], uint8_t q, uint8_t k, uint8_t flags,
                  uint64_t count) {
  out.write(magic, 4);
  uint8_t head[4] = {kVersion, q, k, flags};
  out.write(reinterpret_cast<const char*>(head), 4);
  put_u64(out, count);
}

struct Header {
  uint8_t version, q, k, flags;
  uint64_t count;
};

Header read_header(std::ifstream& in, const char magic[4], const std::string& path) {
  char m[4];
  in.read(m, 4);
  check_stream(in, path);
  if (std::memcmp(m, magic, 4) != 0)
    throw std::runtime_error("io: bad magic in " + path);
  uint8_t head[4];
  in.read(reinterpret_cast<char*>(head), 4);
  check_stream(in, path);
  if (head[0] != kVersion) throw std::runtime_error("io: unsupported version in " + path);
  Header h{head[0], head[1], head[2], head[3], get_u64(in)};
  check_stream(in, path);
  return h;
}

uint32_t pow_u32(uint32_t b, uint32_t e) {
  uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

void write_svh_masks(const std::string& path, uint8_t q, uint8_t k, bool projective_only,
                     const std::vector<PointSet>& sorted_masks) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, "SVHY", q, k, projective_only ? kSvhProjectiveOnly : 0, sorted_masks.size());
  for (const PointSet& m : sorted_masks) {
    auto bytes = m.bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  check_stream(out, path);
}

void write_svh_duals(const std::string& path, uint8_t q, uint8_t k,
                     const std::vector<DualKey>& sorted_keys) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, "SVHY", q, k,
               static_cast<uint8_t>(kSvhProjectiveOnly | kSvhDualKeys), sorted_keys.size());
  const unsigned bytes = ((1u << k) * 2 + 7) / 8;
  for (DualKey key : sorted_keys) {
    uint8_t b[4];
    for (unsigned i = 0; i < bytes; ++i) b[i] = static_cast<uint8_t>(key >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), bytes);
  }
  check_stream(out, path);
}

SvhFile read_svh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check_stream(in, path);
  Header h = read_header(in, "SVHY", path);
  SvhFile f;
  f.q = h.q;
  f.k = h.k;
  f.flags = h.flags;
  if (h.flags & kSvhDualKeys) {
    const unsigned bytes = ((1u << h.k) * 2 + 7) / 8;
    f.keys.resize(h.count);
    for (uint64_t i = 0; i < h.count; ++i) {
      uint8_t b[4] = {0, 0, 0, 0};
      in.read(reinterpret_cast<char*>(b), bytes);
      DualKey key = 0;
      for (unsigned j = 0; j < bytes; ++j) key |= static_cast<DualKey>(b[j]) << (8 * j);
      f.keys[i] = key;
    }
  } else {
    const uint16_t points = static_cast<uint16_t>(pow_u32(h.q + 1u, h.k));
    const unsigned bytes = (points + 7) / 8;
    std::vector<uint8_t> buf(bytes);
    f.masks.resize(h.count);
    for (uint64_t i = 0; i < h.count; ++i) {
      in.read(reinterpret_cast<char*>(buf.data()), bytes);
      f.masks[i] = PointSet::from_bytes(buf, points);
    }
  }
  check_stream(in, path);
  return f;
}

void write_svl(const std::string& path, uint8_t q, uint8_t k, const LineStore& lines) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, "SVLN", q, k, kSvlOrdinary, lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (uint8_t j = 0; j < lines.member_count; ++j) put_u64(out, lines.members[i][j]);
    char p = static_cast<char>(lines.projective[i]);
    out.write(&p, 1);
  }
  check_stream(out, path);
}

SvlFile read_svl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check_stream(in, path);
  Header h = read_header(in, "SVLN", path);
  SvlFile f;
  f.q = h.q;
  f.k = h.k;
  f.kind_flags = h.flags;
  f.lines.member_count = static_cast<uint8_t>(h.q + 1);
  f.lines.members.resize(h.count);
  f.lines.projective.resize(h.count);
  for (uint64_t i = 0; i < h.count; ++i) {
    std::array<uint32_t, 4> mem = {kNoMember, kNoMember, kNoMember, kNoMember};
    for (uint8_t j = 0; j < f.lines.member_count; ++j)
      mem[j] = static_cast<uint32_t>(get_u64(in));
    f.lines.members[i] = mem;
    char p;
    in.read(&p, 1);
    f.lines.projective[i] = static_cast<uint8_t>(p);
  }
  check_stream(in, path);
  return f;
}

void write_provenance(const std::string& path, uint8_t q, uint8_t k,
                      const std::vector<BlowupRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  check_stream(out, path);
  write_header(out, "SVPV", q, k, 0, records.size());
  for (const BlowupRecord& r : records) {
    uint8_t b[6];
    b[0] = r.trivial ? 1 : 0;
    b[1] = r.perm;
    for (int i = 0; i < 4; ++i) b[2 + i] = static_cast<uint8_t>(r.source >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 6);
  }
  check_stream(out, path);
}

std::vector<BlowupRecord> read_provenance(const std::string& path, uint8_t expect_q,
                                          uint8_t expect_k) {
  std::ifstream in(path, std::ios::binary);
  check_stream(in, path);
  Header h = read_header(in, "SVPV", path);
  if (h.q != expect_q || h.k != expect_k)
    throw std::runtime_error("io: q/k mismatch between inputs for " + path);
  std::vector<BlowupRecord> out(h.count);
  for (uint64_t i = 0; i < h.count; ++i) {
    uint8_t b[6];
    in.read(reinterpret_cast<char*>(b), 6);
    out[i].trivial = b[0] != 0;
    out[i].perm = b[1];
    uint32_t src = 0;
    for (int j = 0; j < 4; ++j) src |= static_cast<uint32_t>(b[2 + j]) << (8 * j);
    out[i].source = src;
  }
  check_stream(in, path);
  return out;
}

TsvWriter::TsvWriter(const std::string& path) : out_(path) {
  if (!out_.good()) throw std::runtime_error("io: cannot open report " + path);
}

void TsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << '\t';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace segre
