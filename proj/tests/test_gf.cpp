#include <doctest.h>

#include <random>
#include <stdexcept>

#include "segre/gf.hpp"

using namespace segre;

TEST_CASE("tensor product basis cases") {
  CHECK(tensor_product({{1, 0}, {1, 0}}, 3) == GfVec{1, 0, 0, 0});
  CHECK(tensor_product({{0, 1}, {0, 1}}, 3) == GfVec{0, 0, 0, 1});
  // Hand-multiplied coordinates mod 3: (1,1) ox (1,2).
  CHECK(tensor_product({{1, 1}, {1, 2}}, 3) == GfVec{1, 2, 1, 2});
  CHECK_THROWS_AS(tensor_product({{0, 0}, {1, 0}}, 3), std::invalid_argument);
}

TEST_CASE("tensor product is multilinear") {
  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    std::vector<Vec2> vecs(3);
    for (auto& v : vecs) {
      do {
        v = {static_cast<uint8_t>(rng() % 3), static_cast<uint8_t>(rng() % 3)};
      } while (v[0] == 0 && v[1] == 0);
    }
    uint8_t lambda = static_cast<uint8_t>(1 + rng() % 2);
    GfVec base = tensor_product(vecs, 3);
    std::vector<Vec2> scaled = vecs;
    scaled[1] = {gf_mul(3, lambda, vecs[1][0]), gf_mul(3, lambda, vecs[1][1])};
    GfVec out = tensor_product(scaled, 3);
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(out[i] == gf_mul(3, lambda, base[i]));
  }
}

namespace {

// Independent textbook elimination on byte entries, for cross-checking the
// packed-row implementation.
std::size_t naive_rank(uint8_t q, std::vector<GfVec> rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    uint8_t inv = gf_inv(q, rows[r][c]);
    for (auto& x : rows[r]) x = gf_mul(q, x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      uint8_t coef = gf_neg(q, rows[i][c]);
      for (std::size_t cc = 0; cc < cols; ++cc)
        rows[i][cc] = gf_add(q, rows[i][cc], gf_mul(q, coef, rows[r][cc]));
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rank basics") {
  std::vector<GfVec> id4;
  for (int i = 0; i < 4; ++i) {
    GfVec row(4, 0);
    row[i] = 1;
    id4.push_back(row);
  }
  CHECK(DenseMatrix::from_rows(3, id4).rank() == 4);

  DenseMatrix two_equal(3, 5);
  two_equal.append_row({1, 2, 0, 1, 2});
  two_equal.append_row({1, 2, 0, 1, 2});
  CHECK(two_equal.rank() == 1);

  CHECK(DenseMatrix(3, 0).rank() == 0);
}

TEST_CASE("rank equals rank of the transpose and matches naive elimination") {
  std::mt19937 rng(11);
  for (uint8_t q : {uint8_t(2), uint8_t(3)}) {
    for (int it = 0; it < 200; ++it) {
      std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 9;
      std::vector<GfVec> mat(rows, GfVec(cols));
      for (auto& row : mat)
        for (auto& x : row) x = static_cast<uint8_t>(rng() % q);
      DenseMatrix m = DenseMatrix::from_rows(q, mat);
      std::size_t r = m.rank();
      CHECK(r == naive_rank(q, mat));
      CHECK(r == m.transposed().rank());
    }
  }
}

TEST_CASE("kernel vector") {
  DenseMatrix m(3, 2);
  m.append_row({1, 0});
  CHECK(m.kernel_vector() == GfVec{0, 1});

  DenseMatrix id2(3, 2);
  id2.append_row({1, 0});
  id2.append_row({0, 1});
  CHECK_THROWS_AS(id2.kernel_vector(), std::domain_error);

  // Round trip: M c = 0 exactly; normalization idempotent.
  std::mt19937 rng(23);
  int done = 0;
  while (done < 50) {
    std::size_t cols = 3 + rng() % 6;
    std::vector<GfVec> rows(cols + 2, GfVec(cols));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<uint8_t>(rng() % 3);
    DenseMatrix m2 = DenseMatrix::from_rows(3, rows);
    if (m2.rank() != cols - 1) continue;
    GfVec c = m2.kernel_vector();
    for (std::size_t r = 0; r < m2.rows(); ++r) CHECK(gf_dot(m2.row(r), c, 3) == 0);
    CHECK(normalize_form(c, 3) == c);
    ++done;
  }
}
