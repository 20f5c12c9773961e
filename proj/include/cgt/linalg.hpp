#pragma once

#include <cstdint>
#include <vector>

namespace cgt {

// Dense matrices over the prime field F_p. Vectors are rows and matrices act
// on the right, v -> v M.
class MatrixFp {
 public:
  MatrixFp() = default;
  MatrixFp(size_t rows, size_t cols, uint32_t p);
  static MatrixFp identity(size_t n, uint32_t p);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t prime() const { return p_; }
  uint32_t& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  uint32_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  std::vector<uint32_t> row(size_t r) const;

  MatrixFp operator*(const MatrixFp& rhs) const;
  MatrixFp operator-(const MatrixFp& rhs) const;
  MatrixFp transpose() const;
  friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

  size_t rank() const;
  // Basis (rows, reduced echelon) of { v : v M = 0 }.
  MatrixFp left_nullspace() const;
  // Reduced row echelon form with zero rows dropped.
  MatrixFp row_reduced() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }
  MatrixFp inverse() const;  // throws ContractError when singular

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  uint32_t p_ = 2;
  std::vector<uint32_t> data_;
};

uint32_t inverse_mod(uint32_t a, uint32_t p);
std::vector<uint32_t> vec_mul(const std::vector<uint32_t>& v, const MatrixFp& m);

// Row space of a stacked basis, in reduced echelon form.
MatrixFp span(const std::vector<std::vector<uint32_t>>& vectors, size_t dim, uint32_t p);
// Whether v lies in the row space of basis (basis need not be reduced).
bool in_span(const MatrixFp& basis, const std::vector<uint32_t>& v);
// Intersection of two row spaces.
MatrixFp intersect_spaces(const MatrixFp& a, const MatrixFp& b);

}  // namespace cgt
