#include "cgt/linalg.hpp"

#include <utility>

#include "cgt/common.hpp"

namespace cgt {

uint32_t inverse_mod(uint32_t a, uint32_t p) {
  // Fermat: a^(p-2).
  uint64_t result = 1, base = a % p;
  for (uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<uint32_t>(result);
}

MatrixFp::MatrixFp(size_t rows, size_t cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  if (p < 2) throw ContractError("field order must be a prime");
}

MatrixFp MatrixFp::identity(size_t n, uint32_t p) {
  MatrixFp m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<uint32_t> MatrixFp::row(size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

MatrixFp MatrixFp::operator*(const MatrixFp& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw ContractError("matrix shape mismatch");
  MatrixFp out(rows_, rhs.cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const uint64_t a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) = static_cast<uint32_t>((out.at(i, j) + a * rhs.at(k, j)) % p_);
      }
    }
  }
  return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ContractError("matrix shape mismatch");
  MatrixFp out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + p_ - rhs.data_[i]) % p_;
  return out;
}

MatrixFp MatrixFp::transpose() const {
  MatrixFp out(cols_, rows_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<size_t> eliminate(MatrixFp& m) {
  const uint32_t p = m.prime();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    const uint64_t inv = inverse_mod(m.at(r, c), p);
    for (size_t j = 0; j < m.cols(); ++j) m.at(r, j) = static_cast<uint32_t>(m.at(r, j) * inv % p);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const uint64_t f = m.at(i, c);
      for (size_t j = 0; j < m.cols(); ++j) {
        m.at(i, j) = static_cast<uint32_t>((m.at(i, j) + (p - f) * m.at(r, j)) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

size_t MatrixFp::rank() const {
  MatrixFp m = *this;
  return eliminate(m).size();
}

MatrixFp MatrixFp::row_reduced() const {
  MatrixFp m = *this;
  const size_t r = eliminate(m).size();
  MatrixFp out(r, cols_, p_);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < cols_; ++j) out.at(i, j) = m.at(i, j);
  }
  return out;
}

MatrixFp MatrixFp::left_nullspace() const {
  // v M = 0  <=>  M^T v^T = 0: right nullspace of the transpose.
  MatrixFp t = transpose();
  const auto pivots = eliminate(t);
  const size_t n = t.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<uint32_t> v(n, 0);
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p_ - t.at(i, free)) % p_;
    basis.push_back(std::move(v));
  }
  return span(basis, n, p_);
}

MatrixFp MatrixFp::inverse() const {
  if (rows_ != cols_) throw ContractError("inverse of a non-square matrix");
  if (rows_ == 0) return *this;
  MatrixFp aug(rows_, 2 * cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  const auto pivots = eliminate(aug);
  if (pivots.size() < rows_ || pivots[rows_ - 1] >= cols_) throw ContractError("singular matrix");
  MatrixFp out(rows_, cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) out.at(i, j) = aug.at(i, cols_ + j);
  }
  return out;
}

std::vector<uint32_t> vec_mul(const std::vector<uint32_t>& v, const MatrixFp& m) {
  if (v.size() != m.rows()) throw ContractError("vector length mismatch");
  std::vector<uint32_t> out(m.cols(), 0);
  const uint32_t p = m.prime();
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < out.size(); ++j) {
      out[j] = static_cast<uint32_t>((out[j] + uint64_t(v[i]) * m.at(i, j)) % p);
    }
  }
  return out;
}

MatrixFp span(const std::vector<std::vector<uint32_t>>& vectors, size_t dim, uint32_t p) {
  MatrixFp m(vectors.size(), dim, p);
  for (size_t i = 0; i < vectors.size(); ++i) {
    for (size_t j = 0; j < dim; ++j) m.at(i, j) = vectors[i][j] % p;
  }
  return m.row_reduced();
}

bool in_span(const MatrixFp& basis, const std::vector<uint32_t>& v) {
  std::vector<std::vector<uint32_t>> rows;
  for (size_t i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i));
  const size_t before = span(rows, v.size(), basis.prime()).rows();
  rows.push_back(v);
  return span(rows, v.size(), basis.prime()).rows() == before;
}

MatrixFp intersect_spaces(const MatrixFp& a, const MatrixFp& b) {
  // Solve x A = y B, i.e. [x y] [A; -B] = 0; the intersection is { x A }.
  const uint32_t p = a.prime();
  const size_t n = a.cols();
  MatrixFp stacked(a.rows() + b.rows(), n, p);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) stacked.at(i, j) = a.at(i, j);
  }
  for (size_t i = 0; i < b.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) stacked.at(a.rows() + i, j) = (p - b.at(i, j)) % p;
  }
  const MatrixFp kernel = stacked.left_nullspace();
  std::vector<std::vector<uint32_t>> out;
  for (size_t k = 0; k < kernel.rows(); ++k) {
    std::vector<uint32_t> x = kernel.row(k);
    x.resize(a.rows());
    out.push_back(a.rows() ? vec_mul(x, a) : std::vector<uint32_t>(n, 0));
  }
  return span(out, n, p);
}

}  // namespace cgt
