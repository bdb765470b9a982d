#pragma once

// Exact scalar arithmetic and small dense linear algebra over GF(2) and GF(3).

#include <array>
#include <cstdint>
#include <vector>

namespace segre {

using Vec2 = std::array<uint8_t, 2>;  // vector of GF(q)^2, projective representative
using GfVec = std::vector<uint8_t>;   // coordinates, values in 0..q-1

constexpr uint8_t gf_add(uint8_t q, uint8_t a, uint8_t b) {
  uint8_t s = static_cast<uint8_t>(a + b);
  return s >= q ? static_cast<uint8_t>(s - q) : s;
}
constexpr uint8_t gf_neg(uint8_t q, uint8_t a) { return a ? static_cast<uint8_t>(q - a) : 0; }
constexpr uint8_t gf_sub(uint8_t q, uint8_t a, uint8_t b) { return gf_add(q, a, gf_neg(q, b)); }
constexpr uint8_t gf_mul(uint8_t q, uint8_t a, uint8_t b) { return static_cast<uint8_t>((a * b) % q); }
// q <= 3 only: every nonzero element is its own inverse.
constexpr uint8_t gf_inv(uint8_t /*q*/, uint8_t a) { return a; }

// Kronecker product of k vectors of GF(q)^2. The coordinate at multi-index
// (b_1,...,b_k) is prod_i vectors[i][b_i]; index = sum b_i 2^(k-i), so the
// first factor is the most significant bit. Throws std::invalid_argument on a
// zero input vector (not a projective point).
GfVec tensor_product(const std::vector<Vec2>& vectors, uint8_t q);

// Dense row-major matrix over GF(q). Rows are packed two bits per entry
// inside one 64-bit word (cols <= 32), which keeps row operations on the
// 16-column matrices of the k = 4 pipeline cheap.
class DenseMatrix {
 public:
  DenseMatrix(uint8_t q, std::size_t cols);
  static DenseMatrix from_rows(uint8_t q, const std::vector<GfVec>& rows);

  uint8_t q() const { return q_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  void append_row(const GfVec& row);
  void append_packed_row(uint64_t row) { rows_.push_back(row); }
  uint8_t at(std::size_t r, std::size_t c) const {
    return static_cast<uint8_t>((rows_[r] >> (2 * c)) & 3u);
  }
  GfVec row(std::size_t r) const;

  DenseMatrix transposed() const;

  // Row-space dimension by Gaussian elimination with first-nonzero pivoting
  // and no column pivoting; deterministic. Empty matrix -> 0.
  std::size_t rank() const;

  // The unique (up to scale) nonzero vector c with M c = 0, normalized so its
  // first nonzero coordinate is 1. Throws std::domain_error
  // ("kernel not one-dimensional") unless rank == cols - 1.
  GfVec kernel_vector() const;

 private:
  uint8_t q_;
  std::size_t cols_;
  std::vector<uint64_t> rows_;
};

// Scales a coordinate vector so its first nonzero coordinate is 1.
GfVec normalize_form(GfVec v, uint8_t q);

// GF(q) dot product.
uint8_t gf_dot(const GfVec& a, const GfVec& b, uint8_t q);

namespace detail {
// Byte-wise GF(3) arithmetic on four 2-bit lanes per byte.
const std::array<std::array<uint8_t, 256>, 256>& gf3_byte_add();
const std::array<std::array<uint8_t, 256>, 3>& gf3_byte_mul();
}  // namespace detail

}  // namespace segre
