#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/common.hpp"
#include "cgt/words.hpp"

namespace cgt::thompson {

// Element x_{p1} ... x_{pk} (x_{n1} ... x_{nl})^-1 of
//   F = < x0, x1, ... | x_i^-1 x_j x_i = x_{j+1}  (i < j) >
// with p and n nondecreasing. In normal form, whenever an index i occurs in
// both parts, i+1 occurs in at least one of them; normal forms are unique.
struct FNormalForm {
  std::vector<uint32_t> positive;
  std::vector<uint32_t> negative;

  bool is_identity() const { return positive.empty() && negative.empty(); }
  Word to_word() const;
  std::string to_string() const { return format_word(to_word()); }
  friend bool operator==(const FNormalForm&, const FNormalForm&) = default;
};

// Incremental normal-form builder: letters are pushed through the negative
// part and sorted into the positive part; normalize() applies the final
// cancellation moves.
class FElement {
 public:
  void append(Letter l);
  void append(const Word& w) {
    for (Letter l : w) append(l);
  }
  FNormalForm normal_form() const;

 private:
  void append_positive(uint32_t k);
  void append_negative(uint32_t k);

  std::vector<uint32_t> positive_;
  std::vector<uint32_t> negative_;
};

FNormalForm f_normal_form(const Word& w);
bool is_trivial(const Word& w);
bool equal(const Word& a, const Word& b);

// x_{2n+1} x_{2n}^-1, the n-th free generator of A.
Word a_generator(uint32_t n);

// x_{2m}^-1 a_n x_{2m} = x_{2n+2} x_{2n+1}^-1  and the same with x_{2m+1}.
bool verify_conjugation_identity(uint32_t m, uint32_t n);

struct ShiftReport {
  int64_t j = 0;                     // exponent sum of g
  std::optional<uint32_t> threshold;  // least T with g^-1 x_n g = x_{n+j} on [T, n_max]
  std::vector<bool> holds;           // per n in [0, n_max]
  bool all_pass() const { return threshold.has_value(); }
};

// Shift property g^-1 x_n g = x_{n+j} over n in [0, n_max]. threshold is
// empty when the identity fails at n_max (range exhausted).
ShiftReport verify_shift(const Word& g, uint32_t n_max);

// Is w = prod_n a_n^{c_n} with all n <= index_bound? Unknown only when the
// peeling does not finish within index_bound.
Tri a_membership(const Word& w, uint32_t index_bound);
// Same for A_m = < a_n : n >= m >.
Tri am_membership(const Word& w, uint32_t m, uint32_t index_bound);

struct ConjugateCertificate {
  Word g;
  int64_t exponent_sum = 0;
  uint32_t shift_threshold = 0;   // threshold of the shift property for g^-1
  uint32_t generator_from = 0;    // g a_n g^-1 = a_{n - j/2} for n >= this
  uint32_t least_m = 0;           // least m with g A_m g^-1 in A on the checked range
};

struct IntersectionReport {
  std::optional<uint32_t> m;  // empty when m_bound is exhausted
  std::vector<ConjugateCertificate> certificates;
};

// Least m <= m_bound with A_m contained in every A^g, g in gs. Generators a_n
// with n up to index_bound are checked directly; beyond the shift threshold
// each conjugate is itself a generator of A.
// Throws ContractError if some g has odd exponent sum (g outside F_0).
IntersectionReport am_in_conjugate_intersection(const std::vector<Word>& gs, uint32_t m_bound,
                                                uint32_t index_bound = 24,
                                                uint32_t shift_range = 40);

}  // namespace cgt::thompson
