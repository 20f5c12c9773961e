#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/words.hpp"

namespace cgt::bs {

// BS(m,n) = < x, y | y^-1 x^m y = x^n >, with x = generator 0, y = generator 1.
struct Params {
  int64_t m = 2;
  int64_t n = 3;
  friend bool operator==(const Params&, const Params&) = default;
};

inline constexpr uint32_t kX = 0;
inline constexpr uint32_t kY = 1;

// Reduced alternating form x^{a0} y^{e1} x^{a1} ... y^{ek} x^{ak}.
//
// Besides being pinch-free, every exponent in front of a stable letter is a
// fixed transversal representative: a_{i-1} in [0, m) before y, in [0, n)
// before y^-1. The last exponent is unrestricted. With both conditions the
// form is unique, so element equality is form equality.
class BrittonForm {
 public:
  explicit BrittonForm(Params p = {}) : params_(p), x_{0} {}

  const Params& params() const { return params_; }
  // x-exponents, one more than the number of stable letters.
  const std::vector<int64_t>& x_exponents() const { return x_; }
  const std::vector<int8_t>& stable_letters() const { return y_; }
  size_t stable_length() const { return y_.size(); }

  bool is_identity() const { return y_.empty() && x_[0] == 0; }
  // Some x^k, with k returned.
  std::optional<int64_t> as_x_power() const {
    if (!y_.empty()) return std::nullopt;
    return x_[0];
  }

  void append(Letter l);
  void append(const Word& w) {
    for (Letter l : w) append(l);
  }

  Word to_word() const;
  std::string to_string() const;

  friend bool operator==(const BrittonForm&, const BrittonForm&) = default;

 private:
  Params params_;
  std::vector<int64_t> x_;
  std::vector<int8_t> y_;
};

BrittonForm britton_reduce(const Word& w, Params p = {});
bool is_trivial(const Word& w, Params p = {});

// Least a in [1, a_bound] with g^-1 x^a g = x^b; returns (a, b).
std::optional<std::pair<int64_t, int64_t>> power_conjugate(const Word& g, int64_t a_bound,
                                                           Params p = {});

// Key of the left coset g<x^k>: the form of g with its last exponent taken mod k.
std::vector<int64_t> left_coset_key(const Word& g, int64_t k, Params p = {});

// Side of the Bass-Serre edge e0 = [v0, y v0] (v0 fixed by <x>, e0 fixed by
// <x^m>) on which the edge g e0 lies. True for e0 itself and for edges
// separated from v0 by e0. Constant on left cosets of <x^m>.
bool on_far_side(const Word& g, Params p = {});

struct FamilyMember {
  int64_t power = 1;   // <x^power>
  Word conjugator;     // conjugated by this word: w^-1 <x^power> w
};

struct FamilyReport {
  std::vector<FamilyMember> members;
  size_t closure_checks = 0;
  size_t directed_checks = 0;
  // Human-readable descriptions of checks that could not be certified.
  std::vector<std::string> failures;
  // Sample certificates, e.g. "<x>^y ∩ <x> ⊇ <x^3>".
  std::vector<std::string> certificates;
  bool conjugation_closed = false;
  bool downward_directed = false;
  bool pass() const { return conjugation_closed && downward_directed; }
};

// Least b > 0 with x^b in w^-1 <x^a> w, or nullopt past the search bound.
std::optional<int64_t> positive_power_in(int64_t a, const Word& w, int64_t search_bound,
                                         Params p = {});

// Checks the family axioms for the truncation {<x^a>^w : 1 <= a <= a_bound,
// w in {1} + conjugators} of the family of subgroups containing a positive
// power of x.
FamilyReport family_axiom_check(const std::vector<Word>& conjugators, int64_t a_bound,
                                Params p = {});

}  // namespace cgt::bs
