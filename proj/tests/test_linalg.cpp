#include <doctest.h>

#include <random>
#include <set>

#include "cgt/common.hpp"
#include "cgt/linalg.hpp"

using namespace cgt;

namespace {

MatrixFp random_matrix(std::mt19937_64& rng, size_t r, size_t c, uint32_t p) {
  MatrixFp m(r, c, p);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<uint32_t>(rng() % p);
  }
  return m;
}

std::vector<std::vector<uint32_t>> all_vectors(size_t dim, uint32_t p) {
  std::vector<std::vector<uint32_t>> out{{}};
  for (size_t i = 0; i < dim; ++i) {
    std::vector<std::vector<uint32_t>> next;
    for (const auto& v : out) {
      for (uint32_t a = 0; a < p; ++a) {
        auto w = v;
        w.push_back(a);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Row space by enumerating all combinations.
std::set<std::vector<uint32_t>> row_space(const MatrixFp& m) {
  std::set<std::vector<uint32_t>> out;
  for (const auto& coeffs : all_vectors(m.rows(), m.prime())) {
    out.insert(m.rows() ? vec_mul(coeffs, m) : std::vector<uint32_t>(m.cols(), 0));
  }
  return out;
}

}  // namespace

TEST_CASE("left nullspace and rank agree with enumeration") {
  std::mt19937_64 rng(11);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      const MatrixFp m = random_matrix(rng, r, c, p);
      size_t kernel = 0;
      for (const auto& v : all_vectors(r, p)) {
        const auto image = vec_mul(v, m);
        if (std::all_of(image.begin(), image.end(), [](uint32_t e) { return e == 0; })) ++kernel;
      }
      const MatrixFp null = m.left_nullspace();
      size_t expected_size = 1;
      for (size_t i = 0; i < null.rows(); ++i) expected_size *= p;
      CHECK(kernel == expected_size);
      CHECK(null.rows() + m.rank() == r);
      for (size_t i = 0; i < null.rows(); ++i) {
        const auto image = vec_mul(null.row(i), m);
        CHECK(std::all_of(image.begin(), image.end(), [](uint32_t e) { return e == 0; }));
      }
    }
  }
}

TEST_CASE("inverse and invertibility") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t p = trial % 2 ? 3 : 7;
    const size_t n = 1 + rng() % 4;
    const MatrixFp m = random_matrix(rng, n, n, p);
    if (m.invertible()) {
      CHECK(m * m.inverse() == MatrixFp::identity(n, p));
      CHECK(m.inverse() * m == MatrixFp::identity(n, p));
    } else {
      CHECK_THROWS_AS(m.inverse(), ContractError);
      CHECK(m.rank() < n);
    }
  }
  CHECK(MatrixFp(0, 0, 2).inverse().rows() == 0);
  CHECK_THROWS_AS(MatrixFp(2, 3, 2).inverse(), ContractError);
  CHECK(inverse_mod(3, 7) == 5);
}

TEST_CASE("span membership and intersection") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t p = 3;
    const size_t dim = 3;
    const MatrixFp a = random_matrix(rng, 1 + rng() % 2, dim, p);
    const MatrixFp b = random_matrix(rng, 1 + rng() % 2, dim, p);
    const auto sa = row_space(a), sb = row_space(b);
    std::set<std::vector<uint32_t>> both;
    for (const auto& v : sa) {
      if (sb.count(v)) both.insert(v);
    }
    CHECK(row_space(intersect_spaces(a, b)) == both);
    for (const auto& v : all_vectors(dim, p)) CHECK(in_span(a, v) == (sa.count(v) == 1));
  }
}
