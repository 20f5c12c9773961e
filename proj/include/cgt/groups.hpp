#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgt/baumslag_solitar.hpp"
#include "cgt/common.hpp"
#include "cgt/words.hpp"

namespace cgt {

enum class Schema { None, Thompson };

// Finite presentation, or the Thompson relator schema
// x_i^-1 x_j x_i = x_{j+1} (i < j) on infinitely many generators.
struct Presentation {
  uint32_t generator_count = 0;  // 0 for schema groups
  Alphabet alphabet;
  std::vector<Word> relators;    // reduced and nonempty; empty for schema groups
  Schema schema = Schema::None;

  bool is_finite() const { return schema == Schema::None; }
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.generator_count == b.generator_count &&
           a.alphabet.names() == b.alphabet.names() && a.relators == b.relators &&
           a.schema == b.schema;
  }
};

// Right action of the generators on the right cosets Hg of a finite-index
// subgroup H. Coset 0 is H itself; cosets are numbered in breadth-first
// order so representatives are shortlex-least.
class CosetTable {
 public:
  CosetTable(uint32_t generator_count, std::vector<uint32_t> action, std::vector<Word> reps,
             std::vector<Word> subgroup_gens);

  size_t coset_count() const { return reps_.size(); }
  uint32_t generator_count() const { return gens_; }
  uint32_t act(uint32_t coset, Letter l) const {
    return action_[coset * 2 * gens_ + 2 * l.gen + (l.sign > 0 ? 0 : 1)];
  }
  uint32_t act(uint32_t coset, const Word& w) const;
  uint32_t coset_of(const Word& w) const { return act(0, w); }
  const Word& representative(uint32_t coset) const { return reps_[coset]; }
  const std::vector<Word>& subgroup_generators() const { return subgroup_gens_; }
  const std::vector<uint32_t>& action() const { return action_; }
  const std::vector<Word>& representatives() const { return reps_; }

  // Same subgroup: both tables are numbered canonically from the base coset.
  bool same_subgroup(const CosetTable& other) const {
    return gens_ == other.gens_ && action_ == other.action_;
  }

  friend bool operator==(const CosetTable&, const CosetTable&) = default;

 private:
  uint32_t gens_;
  std::vector<uint32_t> action_;
  std::vector<Word> reps_;
  std::vector<Word> subgroup_gens_;
};

// Table of the conjugate subgroup H^g from the table of H: the same
// permutation action re-based at the coset Hg and renumbered.
CosetTable rebase(const CosetTable& t, uint32_t new_base, std::vector<Word> subgroup_gens);

// Table of H ∩ K: the orbit of (base, base) in the product action.
CosetTable fiber_product(const CosetTable& h, const CosetTable& k);

// Schreier generators rep(c) x rep(cx)^-1 of the subgroup, deduplicated.
std::vector<Word> schreier_generators(const CosetTable& t);

struct Incomplete {
  size_t live_cosets = 0;
  size_t defined_cosets = 0;
};

using CosetEnumeration = std::variant<CosetTable, Incomplete>;

// HLT coset enumeration. Gives up with Incomplete once more than `limit`
// cosets are live at the same time.
CosetEnumeration todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens,
                              size_t limit);

// Element w = c^exponent, or a certified "no", or unknown at a search bound.
struct PowerLog {
  Tri found = Tri::Unknown;
  int64_t exponent = 0;
};

enum class OracleKind { CosetTable, Britton, ThompsonNormalForm, FreeAbelian, Free };

std::string_view to_string(OracleKind k);

// A presentation together with a word-problem strategy. Immutable and
// shared between subgroup handles.
class GroupContext {
 public:
  GroupContext(std::string name, Presentation p, OracleKind oracle, bs::Params bs = {},
               size_t table_limit = 100000);

  const std::string& name() const { return name_; }
  const Presentation& presentation() const { return presentation_; }
  const Alphabet& alphabet() const { return presentation_.alphabet; }
  OracleKind oracle() const { return oracle_; }
  const bs::Params& bs_params() const { return bs_; }
  // Generators usable in searches; schema groups report the indices seen so far.
  uint32_t generator_count() const { return presentation_.generator_count; }
  // Regular coset table (finite groups under the coset-table oracle).
  const CosetTable* regular_table() const { return regular_.get(); }
  std::optional<size_t> order() const;

  Tri is_trivial(const Word& w) const;
  Tri equal(const Word& a, const Word& b) const { return is_trivial(a * b.inverse()); }
  // Canonical word for the element of w, when the oracle provides one.
  std::optional<Word> normal_form(const Word& w) const;
  // Decides w = c^k. Exact for the free, free-abelian and finite cases and
  // for BS when c is a power of x; otherwise searches |k| <= bound.
  PowerLog power_log(const Word& w, const Word& c, int64_t bound = 256) const;

  Word parse(std::string_view text) const { return parse_word(text, alphabet()); }
  std::string format(const Word& w) const { return format_word(w, alphabet()); }

 private:
  std::vector<int64_t> exponent_vector(const Word& w) const;

  std::string name_;
  Presentation presentation_;
  OracleKind oracle_;
  bs::Params bs_;
  std::shared_ptr<const CosetTable> regular_;
};

using ContextPtr = std::shared_ptr<const GroupContext>;

Tri is_trivial(const GroupContext& ctx, const Word& w);
uint32_t coset_of(const CosetTable& table, const Word& w);
CosetEnumeration todd_coxeter(const GroupContext& ctx, const std::vector<Word>& subgroup_gens,
                              size_t limit);

// Invariant factors of the abelianization: free rank plus the torsion
// coefficients d_1 | d_2 | ... (all > 1), via Smith reduction of the
// relator exponent matrix.
struct AbelianInvariants {
  uint32_t free_rank = 0;
  std::vector<int64_t> torsion;
};
AbelianInvariants abelianization(const Presentation& p);

// Built-in groups: bs(m,n), thompson-f, zn(k), sym3, cyclic(n), klein4, free(k).
ContextPtr make_preset(std::string_view name);
std::vector<std::string> preset_names();

// Line-based presentation text:
//   gens: a b
//   rels: a^2 b^2 (a b)^3
//   oracle: coset-table
// Relators are the top-level atoms of the rels line, or comma-separated words
// when the line contains a comma. `schema: thompson` replaces gens/rels.
struct PresentationFile {
  Presentation presentation;
  OracleKind oracle = OracleKind::CosetTable;
  bs::Params bs;
};

PresentationFile parse_presentation(std::string_view text);
std::string serialize_presentation(const PresentationFile& file);
ContextPtr make_context(std::string name, const PresentationFile& file);
// Preset name, or a path to a presentation file.
ContextPtr load_group(std::string_view source);

}  // namespace cgt
