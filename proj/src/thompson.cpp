#include "cgt/thompson.hpp"

#include <algorithm>

namespace cgt::thompson {

Word FNormalForm::to_word() const {
  Word w;
  for (uint32_t p : positive) w.push_back(pos(p));
  for (auto it = negative.rbegin(); it != negative.rend(); ++it) w.push_back(neg(*it));
  return w;
}

void FElement::append(Letter l) {
  if (l.sign > 0) {
    append_positive(l.gen);
  } else {
    append_negative(l.gen);
  }
}

void FElement::append_positive(uint32_t k) {
  // Move x_k leftwards through N^-1 = x_{nl}^-1 ... x_{n1}^-1, meeting x_{n1}^-1 first:
  //   x_j^-1 x_c = x_{c+1} x_j^-1    (j < c)
  //   x_j^-1 x_c = x_c x_{j+1}^-1    (j > c)
  uint32_t c = k;
  for (size_t i = 0; i < negative_.size(); ++i) {
    const uint32_t j = negative_[i];
    if (j == c) {
      negative_.erase(negative_.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
    if (j < c) {
      ++c;
    } else {
      ++negative_[i];
    }
  }
  // P x_c: x_p x_c = x_c x_{p+1} for p > c.
  auto it = std::upper_bound(positive_.begin(), positive_.end(), c);
  for (auto jt = it; jt != positive_.end(); ++jt) ++*jt;
  positive_.insert(it, c);
}

void FElement::append_negative(uint32_t k) {
  // P N^-1 x_k^-1 = P (x_k N)^-1, and x_c x_p = x_p x_{c+1} for p < c.
  uint32_t c = k;
  size_t i = 0;
  while (i < negative_.size() && negative_[i] < c) {
    ++c;
    ++i;
  }
  negative_.insert(negative_.begin() + static_cast<std::ptrdiff_t>(i), c);
}

namespace {

bool contains(const std::vector<uint32_t>& v, uint32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Removes the last occurrence of x and decrements every larger entry.
void remove_and_shift(std::vector<uint32_t>& v, uint32_t x) {
  auto it = std::upper_bound(v.begin(), v.end(), x);
  --it;
  for (auto jt = it + 1; jt != v.end(); ++jt) --*jt;
  v.erase(it);
}

}  // namespace

FNormalForm FElement::normal_form() const {
  FNormalForm f{positive_, negative_};
  // If x_i occurs in both parts and x_{i+1} in neither, then
  //   A x_i B (C x_i D)^-1 = A B' (C D')^-1
  // where B', D' are B, D with every index lowered by one.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = f.positive.rbegin(); it != f.positive.rend(); ++it) {
      const uint32_t i = *it;
      if (contains(f.negative, i) && !contains(f.positive, i + 1) &&
          !contains(f.negative, i + 1)) {
        remove_and_shift(f.positive, i);
        remove_and_shift(f.negative, i);
        changed = true;
        break;
      }
    }
  }
  return f;
}

FNormalForm f_normal_form(const Word& w) {
  FElement e;
  e.append(w);
  return e.normal_form();
}

bool is_trivial(const Word& w) { return f_normal_form(w).is_identity(); }

bool equal(const Word& a, const Word& b) { return f_normal_form(a) == f_normal_form(b); }

Word a_generator(uint32_t n) { return Word{pos(2 * n + 1), neg(2 * n)}; }

bool verify_conjugation_identity(uint32_t m, uint32_t n) {
  if (m >= n) throw ContractError("verify_conjugation_identity needs m < n");
  const Word target{pos(2 * n + 2), neg(2 * n + 1)};
  const Word a = a_generator(n);
  return equal(conjugate_word(a, Word{pos(2 * m)}), target) &&
         equal(conjugate_word(a, Word{pos(2 * m + 1)}), target);
}

ShiftReport verify_shift(const Word& g, uint32_t n_max) {
  ShiftReport r;
  r.j = exponent_sum(g);
  r.holds.resize(n_max + 1);
  for (uint32_t n = 0; n <= n_max; ++n) {
    const int64_t target = static_cast<int64_t>(n) + r.j;
    r.holds[n] = target >= 0 &&
                 equal(conjugate_word(Word{pos(n)}, g), Word{pos(static_cast<uint32_t>(target))});
  }
  if (r.holds[n_max]) {
    uint32_t t = n_max;
    while (t > 0 && r.holds[t - 1]) --t;
    r.threshold = t;
  }
  return r;
}

namespace {

FNormalForm shifted_down(const FNormalForm& f, uint32_t by) {
  FNormalForm g = f;
  for (auto& p : g.positive) p -= by;
  for (auto& n : g.negative) n -= by;
  return g;
}

uint32_t min_index(const FNormalForm& f) {
  uint32_t m = UINT32_MAX;
  if (!f.positive.empty()) m = std::min(m, f.positive.front());
  if (!f.negative.empty()) m = std::min(m, f.negative.front());
  return m;
}

int64_t count(const std::vector<uint32_t>& v, uint32_t x) {
  return std::count(v.begin(), v.end(), x);
}

}  // namespace

Tri a_membership(const Word& w, uint32_t index_bound) {
  // Peel off a_0^{c_0} using the x_0 exponent sum (a homomorphism, and
  // a_0 is the only generator of A touching x_0). What remains must lie in
  // A_1, a subgroup of F_2 = <x2, x3, ...>; lowering indices by 2 maps F_2
  // isomorphically onto F and A_1 onto A.
  FNormalForm f = f_normal_form(w);
  for (uint32_t round = 0; round <= index_bound; ++round) {
    if (f.is_identity()) return Tri::True;
    const Word fw = f.to_word();
    if (exponent_sum(fw) != 0) return Tri::False;
    const int64_t c0 = count(f.negative, 0) - count(f.positive, 0);
    const FNormalForm rest = f_normal_form(a_generator(0).pow(-c0) * fw);
    if (rest.is_identity()) return Tri::True;
    if (min_index(rest) < 2) return Tri::False;
    f = shifted_down(rest, 2);
  }
  return Tri::Unknown;
}

Tri am_membership(const Word& w, uint32_t m, uint32_t index_bound) {
  const FNormalForm f = f_normal_form(w);
  if (f.is_identity()) return Tri::True;
  if (min_index(f) < 2 * m) return Tri::False;
  if (m > index_bound) return Tri::Unknown;
  return a_membership(shifted_down(f, 2 * m).to_word(), index_bound - m);
}

IntersectionReport am_in_conjugate_intersection(const std::vector<Word>& gs, uint32_t m_bound,
                                                uint32_t index_bound, uint32_t shift_range) {
  IntersectionReport report;
  uint32_t m_all = 0;
  bool exhausted = false;
  for (const Word& g : gs) {
    ConjugateCertificate cert;
    cert.g = g;
    cert.exponent_sum = exponent_sum(g);
    if (cert.exponent_sum % 2 != 0) {
      throw ContractError("am_in_conjugate_intersection: " + format_word(g) +
                          " has odd exponent sum");
    }
    // g a_n g^-1 = h^-1 a_n h with h = g^-1, exponent sum -j.
    const ShiftReport shift = verify_shift(g.inverse(), shift_range);
    if (!shift.threshold) {
      exhausted = true;
      report.certificates.push_back(cert);
      continue;
    }
    cert.shift_threshold = *shift.threshold;
    const int64_t half = cert.exponent_sum / 2;
    const int64_t from = std::max<int64_t>({(cert.shift_threshold + 1) / 2, half, 0});
    cert.generator_from = static_cast<uint32_t>(from);

    // Largest n in [0, index_bound] whose conjugate fails; everything above passes.
    int64_t last_fail = -1;
    for (uint32_t n = 0; n <= index_bound; ++n) {
      const Word conj = g * a_generator(n) * g.inverse();
      Tri in_a = Tri::Unknown;
      if (n >= from) {
        // Beyond the threshold the conjugate must literally be a_{n - j/2}.
        in_a = to_tri(equal(conj, a_generator(static_cast<uint32_t>(n - half))));
      }
      if (in_a != Tri::True) in_a = a_membership(conj, index_bound + 2 * shift_range);
      if (in_a != Tri::True) last_fail = n;
    }
    if (last_fail >= static_cast<int64_t>(from)) {
      // A failure past the certified threshold means the range was too small.
      exhausted = true;
    }
    cert.least_m = static_cast<uint32_t>(last_fail + 1);
    m_all = std::max(m_all, cert.least_m);
    report.certificates.push_back(cert);
  }
  if (!exhausted && m_all <= m_bound) report.m = m_all;
  return report;
}

}  // namespace cgt::thompson
