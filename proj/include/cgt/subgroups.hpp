#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cgt/common.hpp"
#include "cgt/groups.hpp"

namespace cgt {

enum class SubgroupKind {
  Whole,         // the ambient group
  Table,         // finite index, with a coset table
  Cyclic,        // w^-1 <c> w in a torsion-free context (c may be trivial)
  ThompsonA,     // w^-1 A_m w in Thompson's F
  Intersection,  // conjunction of two handles' membership tests
  Generated,     // generators only; membership known for the generators alone
};

std::string_view to_string(SubgroupKind k);

// Immutable subgroup description. Membership is three-valued; Unknown means
// an oracle bound was exhausted.
class SubgroupHandle {
 public:
  static SubgroupHandle whole(ContextPtr ctx);
  static SubgroupHandle trivial(ContextPtr ctx);
  static SubgroupHandle from_table(ContextPtr ctx, CosetTable table);
  static SubgroupHandle cyclic(ContextPtr ctx, Word c, Word conjugator = {});
  static SubgroupHandle thompson_a(ContextPtr ctx, uint32_t m, Word conjugator = {});
  // Coset enumeration first (finite presentations, up to `limit` cosets);
  // a single generator in a torsion-free context becomes a cyclic handle.
  static SubgroupHandle generated(ContextPtr ctx, std::vector<Word> gens, size_t limit = 2000);

  SubgroupKind kind() const { return kind_; }
  const ContextPtr& context() const { return ctx_; }
  const GroupContext& group() const { return *ctx_; }
  // Listed generators. For A_m this is a finite sample a_m .. a_{m+3}.
  const std::vector<Word>& generators() const { return gens_; }
  bool finitely_listed() const { return kind_ != SubgroupKind::ThompsonA; }
  const CosetTable* table() const { return table_.get(); }
  const Word& cyclic_root() const { return root_; }
  const Word& conjugator() const { return conj_; }
  uint32_t thompson_m() const { return m_; }

  Tri contains(const Word& t) const;
  // Every listed generator of this lies in other. Unknown for A_m handles.
  Tri contained_in(const SubgroupHandle& other) const;
  Tri same_as(const SubgroupHandle& other) const;
  // Canonical key of the left coset gH, when the kind provides one.
  std::optional<std::vector<int64_t>> left_coset_key(const Word& g) const;

  std::string describe() const;

  // Conjunction handle: membership is the conjunction of both tests.
  static SubgroupHandle intersection_of(const SubgroupHandle& a, const SubgroupHandle& b);

 private:
  SubgroupHandle() = default;

  SubgroupKind kind_ = SubgroupKind::Whole;
  ContextPtr ctx_;
  std::vector<Word> gens_;
  std::shared_ptr<const CosetTable> table_;
  Word root_;
  Word conj_;
  uint32_t m_ = 0;
  std::shared_ptr<const SubgroupHandle> left_, right_;
};

// g^-1 H g.
SubgroupHandle conjugate(const SubgroupHandle& h, const Word& g);

struct IndexResult {
  std::optional<uint64_t> index;  // exact, when established within the bound
  bool infinite = false;          // certified infinite
  std::string certificate;
};

// Index of sub in ambient. Throws ContractError when a generator of sub is
// certified to lie outside ambient.
IndexResult index_bounded(const SubgroupHandle& sub, const SubgroupHandle& ambient, uint64_t bound);

// H ∩ K. Throws ContractError for handles over different contexts or
// handles without a membership oracle.
SubgroupHandle intersect(const SubgroupHandle& h, const SubgroupHandle& k, int64_t search_bound = 256);

struct CommensurabilityResult {
  Tri result = Tri::Unknown;
  std::optional<uint64_t> index_in_h;  // [H : H ∩ K]
  std::optional<uint64_t> index_in_k;  // [K : H ∩ K]
  std::string certificate;
};

CommensurabilityResult is_commensurable(const SubgroupHandle& h, const SubgroupHandle& k,
                                        uint64_t bound);
CommensurabilityResult in_commensurator(const SubgroupHandle& h, const Word& g, uint64_t bound);

struct NearNormalResult {
  Tri result = Tri::Unknown;
  std::vector<std::pair<Word, CommensurabilityResult>> checks;  // per generator and inverse
};

// Checks every listed generator and its inverse; sufficient because the
// commensurator is a subgroup.
NearNormalResult near_normal_on(const SubgroupHandle& h, const std::vector<Word>& gens,
                                uint64_t bound);

enum class CosetSide { Left, Right };

// Finite union of cosets t L (left) or L t (right) with pairwise distinct
// representatives.
class CosetSet {
 public:
  // Drops representatives certified equal to an earlier one; throws
  // ContractError when equality is undecided.
  CosetSet(SubgroupHandle base, CosetSide side, std::vector<Word> reps);

  const SubgroupHandle& base() const { return base_; }
  CosetSide side() const { return side_; }
  const std::vector<Word>& representatives() const { return reps_; }
  size_t size() const { return reps_.size(); }
  Tri contains(const Word& g) const;

 private:
  SubgroupHandle base_;
  CosetSide side_;
  std::vector<Word> reps_;
};

// Generators used for searches in the ambient group: the presentation's
// generators, or x0, x1 for Thompson's F.
uint32_t search_generator_count(const GroupContext& ctx);

// Xg ∩ X = ∅ for a union of right cosets X: no t_i g t_j^-1 lies in L.
Tri translate_disjoint(const CosetSet& x, const Word& g);

struct NeumannResult {
  std::optional<Word> g;  // shortlex-least translating word, if found
  size_t words_checked = 0;
  bool undecided = false;  // some candidate could not be decided
};

NeumannResult neumann_translate(const CosetSet& x, size_t search_radius);

// Left cosets of H making up H g H, by closing {gH} under left
// multiplication by the generators of H. Gives up past max_cosets.
std::optional<CosetSet> double_coset(const SubgroupHandle& h, const Word& g, size_t max_cosets);

}  // namespace cgt
