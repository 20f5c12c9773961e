#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/families.hpp"

namespace cgt {

// f(H) for every node H, as a coset id of H's table (coset 0 is H).
struct CompletionElement {
  std::vector<uint32_t> cosets;
  friend auto operator<=>(const CompletionElement&, const CompletionElement&) = default;
};

// No node K with K ≤ H ∩ H^f and K normal in H^f: the truncation is too
// small, which says nothing about invertibility in the full completion.
class MissingNode : public ContractError {
 public:
  using ContractError::ContractError;
};

// Compatible assignments on a finite, conjugation-closed truncation whose
// nodes all have finite index.
class TruncatedCompletion {
 public:
  explicit TruncatedCompletion(FamilyTruncation fam);

  const FamilyTruncation& family() const { return fam_; }
  size_t node_count() const { return fam_.size(); }
  const CosetTable& table(size_t node) const { return tables_[node]; }

  CompletionElement identity() const;
  CompletionElement embed(const Word& g) const;
  // f(K) projects onto f(H) whenever K ≤ H.
  bool compatible(const CompletionElement& f) const;
  // H^f = H^x for any x in f(H).
  size_t conj_node(size_t h, const CompletionElement& f) const;
  // (f f')(H) = f(H) f'(H^f). Throws ContractError if the result is not
  // compatible.
  CompletionElement multiply(const CompletionElement& f, const CompletionElement& g) const;
  // Inverse on a stable truncation; throws MissingNode when no qualifying
  // node exists.
  CompletionElement invert_stable(const CompletionElement& f) const;
  // All compatible assignments in lexicographic order. Throws ContractError
  // past `ceiling` elements.
  std::vector<CompletionElement> enumerate(size_t ceiling = 1'000'000) const;

  // m·f = m·x for a node H fixing m and x in f(H). Throws ContractError when
  // no node fixes m.
  std::vector<uint32_t> act(const std::vector<uint32_t>& m, const CompletionElement& f,
                            const FiniteModule& module) const;
  // Nodes whose generators fix m.
  std::vector<size_t> fixing_nodes(const std::vector<uint32_t>& m, const FiniteModule& module) const;

  std::string describe(const CompletionElement& f) const;

 private:
  FamilyTruncation fam_;
  std::vector<CosetTable> tables_;
  std::vector<size_t> index_order_;
};

struct InvertibilityReport {
  size_t total = 0;
  size_t invertible = 0;
  std::vector<CompletionElement> non_invertible;
};

// Two-sided inverses by exhaustive multiplication.
InvertibilityReport invertibility_scan(const TruncatedCompletion& tc);

struct ProfiniteComparison {
  bool all_normal = false;
  size_t completion_size = 0;
  size_t limit_size = 0;
  bool bijective = false;
  bool homomorphism = false;
  bool isomorphic() const { return all_normal && bijective && homomorphism; }
};

// Compares the completion with the inverse limit of the quotients G/H,
// built from quotient multiplication tables.
ProfiniteComparison profinite_compare(const TruncatedCompletion& tc);

struct LawFailure {
  std::string law;
  std::string witness;
};

struct LawReport {
  size_t element_count = 0;
  size_t checks = 0;
  bool stable = false;
  std::vector<std::pair<std::string, size_t>> counts;  // law -> checks made
  std::vector<LawFailure> failures;
};

// Associativity, identity, conjugation cocycle, embedding homomorphism over
// `group_elements`, and (on stable truncations) inverse laws.
LawReport verify_laws(const TruncatedCompletion& tc, const std::vector<Word>& group_elements);

}  // namespace cgt
