#include "segre/gf.hpp"

#include <stdexcept>

namespace segre {

namespace {

// Byte-wise tables for GF(3) arithmetic on rows packed two bits per entry
// (four entries per byte).
struct Gf3Tables {
  std::array<std::array<uint8_t, 256>, 256> add;
  std::array<std::array<uint8_t, 256>, 3> mul;
  Gf3Tables() {
    auto lanes = [](uint8_t b, std::array<uint8_t, 4>& out) {
      for (int i = 0; i < 4; ++i) out[i] = static_cast<uint8_t>((b >> (2 * i)) & 3u);
    };
    auto pack = [](const std::array<uint8_t, 4>& in) {
      uint8_t b = 0;
      for (int i = 0; i < 4; ++i) b = static_cast<uint8_t>(b | (in[i] << (2 * i)));
      return b;
    };
    for (int a = 0; a < 256; ++a) {
      std::array<uint8_t, 4> la{}, lb{}, lc{};
      lanes(static_cast<uint8_t>(a), la);
      for (int b = 0; b < 256; ++b) {
        lanes(static_cast<uint8_t>(b), lb);
        for (int i = 0; i < 4; ++i) lc[i] = static_cast<uint8_t>((la[i] + lb[i]) % 3);
        add[a][b] = pack(lc);
      }
      for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < 4; ++i) lc[i] = static_cast<uint8_t>((la[i] * s) % 3);
        mul[s][a] = pack(lc);
      }
    }
  }
};

const Gf3Tables& gf3_tables() {
  static const Gf3Tables t;
  return t;
}

}  // namespace

namespace detail {
const std::array<std::array<uint8_t, 256>, 256>& gf3_byte_add() { return gf3_tables().add; }
const std::array<std::array<uint8_t, 256>, 3>& gf3_byte_mul() { return gf3_tables().mul; }
}  // namespace detail

namespace {

uint64_t row_add_scaled(uint8_t q, uint64_t dst, uint64_t src, uint8_t coef) {
  if (coef == 0) return dst;
  if (q == 2) return dst ^ src;
  const Gf3Tables& t = gf3_tables();
  uint64_t out = 0;
  for (int i = 0; i < 8; ++i) {
    uint8_t a = static_cast<uint8_t>(dst >> (8 * i));
    uint8_t b = static_cast<uint8_t>(src >> (8 * i));
    out |= static_cast<uint64_t>(t.add[a][t.mul[coef][b]]) << (8 * i);
  }
  return out;
}

uint64_t row_scale(uint8_t q, uint64_t row, uint8_t coef) {
  if (q == 2 || coef == 1) return row;
  if (coef == 0) return 0;
  const Gf3Tables& t = gf3_tables();
  uint64_t out = 0;
  for (int i = 0; i < 8; ++i) {
    uint8_t a = static_cast<uint8_t>(row >> (8 * i));
    out |= static_cast<uint64_t>(t.mul[coef][a]) << (8 * i);
  }
  return out;
}

}  // namespace

GfVec tensor_product(const std::vector<Vec2>& vectors, uint8_t q) {
  for (const Vec2& v : vectors) {
    if (v[0] == 0 && v[1] == 0) throw std::invalid_argument("tensor_product: zero input vector");
  }
  std::size_t k = vectors.size();
  GfVec out(std::size_t(1) << k);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    uint8_t prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
      unsigned bit = (idx >> (k - 1 - i)) & 1u;  // first factor most significant
      prod = gf_mul(q, prod, vectors[i][bit]);
    }
    out[idx] = prod;
  }
  return out;
}

DenseMatrix::DenseMatrix(uint8_t q, std::size_t cols) : q_(q), cols_(cols) {
  if (q != 2 && q != 3) throw std::invalid_argument("DenseMatrix: q must be 2 or 3");
  if (cols > 32) throw std::invalid_argument("DenseMatrix: at most 32 columns");
}

DenseMatrix DenseMatrix::from_rows(uint8_t q, const std::vector<GfVec>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(q, cols);
  for (const GfVec& r : rows) m.append_row(r);
  return m;
}

void DenseMatrix::append_row(const GfVec& row) {
  if (row.size() != cols_) throw std::invalid_argument("DenseMatrix: row length mismatch");
  uint64_t packed = 0;
  for (std::size_t c = 0; c < cols_; ++c) packed |= static_cast<uint64_t>(row[c] % q_) << (2 * c);
  rows_.push_back(packed);
}

GfVec DenseMatrix::row(std::size_t r) const {
  GfVec out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
  return out;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix m(q_, rows());
  for (std::size_t c = 0; c < cols_; ++c) {
    uint64_t packed = 0;
    for (std::size_t r = 0; r < rows(); ++r) packed |= static_cast<uint64_t>(at(r, c)) << (2 * r);
    m.append_packed_row(packed);
  }
  return m;
}

std::size_t DenseMatrix::rank() const {
  std::vector<uint64_t> m = rows_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && ((m[p] >> (2 * c)) & 3u) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    uint8_t pivot = static_cast<uint8_t>((m[r] >> (2 * c)) & 3u);
    if (pivot != 1) m[r] = row_scale(q_, m[r], gf_inv(q_, pivot));
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      uint8_t coef = static_cast<uint8_t>((m[i] >> (2 * c)) & 3u);
      if (coef) m[i] = row_add_scaled(q_, m[i], m[r], gf_neg(q_, coef));
    }
    ++r;
  }
  return r;
}

GfVec DenseMatrix::kernel_vector() const {
  // Reduced row echelon form, tracking pivot columns.
  std::vector<uint64_t> m = rows_;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && ((m[p] >> (2 * c)) & 3u) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    uint8_t pivot = static_cast<uint8_t>((m[r] >> (2 * c)) & 3u);
    if (pivot != 1) m[r] = row_scale(q_, m[r], gf_inv(q_, pivot));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      uint8_t coef = static_cast<uint8_t>((m[i] >> (2 * c)) & 3u);
      if (coef) m[i] = row_add_scaled(q_, m[i], m[r], gf_neg(q_, coef));
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r + 1 != cols_) throw std::domain_error("kernel not one-dimensional");

  std::size_t free_col = 0;
  {
    std::size_t i = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (i < pivot_col.size() && pivot_col[i] == c) {
        ++i;
      } else {
        free_col = c;
        break;
      }
    }
  }
  GfVec kernel(cols_, 0);
  kernel[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) {
    uint8_t coef = static_cast<uint8_t>((m[i] >> (2 * free_col)) & 3u);
    kernel[pivot_col[i]] = gf_neg(q_, coef);
  }
  return normalize_form(std::move(kernel), q_);
}

GfVec normalize_form(GfVec v, uint8_t q) {
  for (uint8_t x : v) {
    if (x != 0) {
      if (x != 1) {
        uint8_t s = gf_inv(q, x);
        for (uint8_t& y : v) y = gf_mul(q, y, s);
      }
      break;
    }
  }
  return v;
}

uint8_t gf_dot(const GfVec& a, const GfVec& b, uint8_t q) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<unsigned>(a[i]) * b[i];
  return static_cast<uint8_t>(acc % q);
}

}  // namespace segre
