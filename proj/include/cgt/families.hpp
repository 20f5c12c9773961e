#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/common.hpp"
#include "cgt/groups.hpp"
#include "cgt/linalg.hpp"
#include "cgt/subgroups.hpp"

namespace cgt {

// Finite set of subgroups standing in for a conjugation-closed family.
// Relations between nodes are certified once, at construction, and stored
// as three-valued matrices indexed by node position.
class FamilyTruncation {
 public:
  FamilyTruncation(ContextPtr ctx, std::vector<SubgroupHandle> nodes);

  const ContextPtr& context() const { return ctx_; }
  const GroupContext& group() const { return *ctx_; }
  size_t size() const { return nodes_.size(); }
  const SubgroupHandle& node(size_t i) const { return nodes_[i]; }
  const std::vector<SubgroupHandle>& nodes() const { return nodes_; }

  // Node i ≤ node j: every generator of i lies in j.
  Tri le(size_t i, size_t j) const { return le_[i][j]; }
  // Node i is normal in node j (and contained in it).
  Tri normal_in(size_t i, size_t j) const { return normal_[i][j]; }
  // Node equal to node(i)^x for the ambient letter in column c
  // (2*gen for x, 2*gen+1 for x^-1); nullopt when no node matches.
  std::optional<size_t> conj(size_t i, size_t column) const { return conj_[i][column]; }
  // node(i)^w, letter by letter.
  std::optional<size_t> conj_by_word(size_t i, const Word& w) const;
  size_t letter_columns() const { return 2 * search_generator_count(*ctx_); }

  std::optional<size_t> find(const SubgroupHandle& h) const;
  // Nodes with no strictly smaller node.
  std::vector<size_t> minimal_nodes() const;
  // Nodes sorted by index in G (finite indices first), stable in position.
  std::vector<size_t> by_increasing_index() const;

 private:
  ContextPtr ctx_;
  std::vector<SubgroupHandle> nodes_;
  std::vector<std::vector<Tri>> le_;
  std::vector<std::vector<Tri>> normal_;
  std::vector<std::vector<std::optional<size_t>>> conj_;
};

// Nodes text: ';'-separated nodes, each a ','-separated generator list.
// `G` stands for the whole group and `1` (or an empty node) for the
// trivial subgroup.
std::vector<SubgroupHandle> parse_nodes(const ContextPtr& ctx, std::string_view text);

// Named fixtures: sym3-normal3, sym3-all, sym3-involutions,
// sym3-involutions-trivial, cyclic4-half, klein4-all, klein4-half, whole.
FamilyTruncation family_fixture(std::string_view name);
std::vector<std::string> family_fixture_names();

// Closes seeds under conjugation by ambient letters and pairwise
// intersection, for `depth` rounds. Nodes are deduplicated by same_as.
FamilyTruncation grow_truncation(const ContextPtr& ctx, std::vector<SubgroupHandle> seeds,
                                 size_t depth, size_t max_nodes = 64);

struct AdmissibilityReport {
  bool conjugation_closed = true;
  bool downward_directed = true;
  std::vector<std::string> violations;
  bool admissible() const { return conjugation_closed && downward_directed; }
};

AdmissibilityReport check_admissible(const FamilyTruncation& fam);

struct StabilityReport {
  bool stable = true;
  // (K, H, L): for each certified K ≤ H, the chosen L ≤ K normal in H.
  std::vector<std::array<size_t, 3>> witnesses;
  std::optional<std::pair<size_t, size_t>> failing;  // (K, H)
};

StabilityReport check_stable(const FamilyTruncation& fam);

// Right action of G on F_p^dim by one invertible matrix per generator.
struct FiniteModule {
  size_t dim = 0;
  uint32_t p = 2;
  std::vector<MatrixFp> matrices;

  // Matrix of a word: M(uv) = M(u) M(v).
  MatrixFp matrix_of(const Word& w) const;
  // Throws ContractError unless the matrices are invertible, match the
  // generator count, and satisfy every relator.
  void validate(const GroupContext& ctx) const;
};

FiniteModule trivial_module(uint32_t generators, size_t dim, uint32_t p);
// Basis vector e_c goes to e_{c·g}.
FiniteModule permutation_module(const CosetTable& table, uint32_t p);

// Text format:
//   field 2
//   dim 2
//   <dim rows of dim integers>       one block per generator,
//   <blank line>                     blocks separated by blank lines
FiniteModule parse_module(std::string_view text);
std::string serialize_module(const FiniteModule& m);

// Submodule spanned by the rows of `basis` (which must be G-invariant),
// written in the coordinates of the reduced basis.
FiniteModule restrict_module(const FiniteModule& m, const MatrixFp& basis);

// Simultaneous fixed vectors of the given words' matrices.
MatrixFp fixed_space(const FiniteModule& m, const std::vector<Word>& words);

struct H0Result {
  MatrixFp basis;                 // reduced echelon rows
  std::vector<size_t> minimal_nodes;
  bool union_consistent = true;   // every node's fixed space lies in basis
  bool invariant = true;          // closed under every generator matrix
};

H0Result h0_S(const FiniteModule& m, const FamilyTruncation& fam);
// Fixed space of G. Throws ContractError when h0_S(m) is not all of m.
MatrixFp h0_G_mod_S(const FiniteModule& m, const FamilyTruncation& fam);

// Derivations d(gh) = d(g)h + d(h); a tuple holds d(x_i) for each generator,
// concatenated into one row of length generators*dim.
struct DerivationSpace {
  MatrixFp basis;
  MatrixFp inner;
  size_t dim_der = 0;
  size_t dim_inner = 0;
  size_t dim_h1 = 0;
};

DerivationSpace h1_derivations(const GroupContext& ctx, const FiniteModule& m);
// d(w) for a tuple, by expanding w letter by letter.
std::vector<uint32_t> evaluate_derivation(const FiniteModule& m, const std::vector<uint32_t>& tuple,
                                          const Word& w);

}  // namespace cgt
