#include "cgt/subgroups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cgt/baumslag_solitar.hpp"
#include "cgt/thompson.hpp"

namespace cgt {

namespace {

constexpr uint32_t kThompsonIndexBound = 64;

bool torsion_free(const GroupContext& ctx) { return ctx.oracle() != OracleKind::CosetTable; }

// Groups known to be infinite: every torsion-free context with a generator.
bool known_infinite(const GroupContext& ctx) {
  if (ctx.oracle() == OracleKind::ThompsonNormalForm) return true;
  return torsion_free(ctx) && ctx.generator_count() > 0;
}

std::vector<Word> ambient_generators(const GroupContext& ctx) {
  std::vector<Word> out;
  for (uint32_t i = 0; i < search_generator_count(ctx); ++i) out.push_back(Word{pos(i)});
  return out;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<int64_t> exponents(const GroupContext& ctx, const Word& w) {
  std::vector<int64_t> v(ctx.generator_count(), 0);
  for (Letter l : w) v.at(l.gen) += l.sign;
  return v;
}

// Rank over Q by fraction-free elimination.
size_t rational_rank(std::vector<std::vector<int64_t>> rows) {
  size_t rank = 0;
  const size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t i = rank + 1; i < rows.size(); ++i) {
      const int64_t f = rows[i][c], g = rows[rank][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] * g - rows[rank][j] * f;
      int64_t d = 0;
      for (int64_t e : rows[i]) d = std::gcd(d, e);
      if (d > 1) {
        for (int64_t& e : rows[i]) e /= d;
      }
    }
    ++rank;
  }
  return rank;
}

Tri any_of_tri(const std::vector<Tri>& ts) {
  bool unknown = false;
  for (Tri t : ts) {
    if (t == Tri::True) return Tri::True;
    if (t == Tri::Unknown) unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::False;
}

void require_same_context(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.context() != b.context()) throw ContractError("subgroups live in different groups");
}

}  // namespace

std::string_view to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::Whole: return "whole";
    case SubgroupKind::Table: return "coset-table";
    case SubgroupKind::Cyclic: return "cyclic";
    case SubgroupKind::ThompsonA: return "thompson-A";
    case SubgroupKind::Intersection: return "intersection";
    case SubgroupKind::Generated: return "generated";
  }
  return "unknown";
}

uint32_t search_generator_count(const GroupContext& ctx) {
  return ctx.presentation().is_finite() ? ctx.generator_count() : 2;
}

SubgroupHandle SubgroupHandle::whole(ContextPtr ctx) {
  SubgroupHandle h;
  h.kind_ = SubgroupKind::Whole;
  h.gens_ = ambient_generators(*ctx);
  h.ctx_ = std::move(ctx);
  return h;
}

SubgroupHandle SubgroupHandle::trivial(ContextPtr ctx) {
  if (const CosetTable* regular = ctx->regular_table()) return from_table(ctx, *regular);
  return cyclic(std::move(ctx), Word{});
}

SubgroupHandle SubgroupHandle::from_table(ContextPtr ctx, CosetTable table) {
  SubgroupHandle h;
  h.kind_ = SubgroupKind::Table;
  h.gens_ = table.subgroup_generators();
  h.table_ = std::make_shared<const CosetTable>(std::move(table));
  h.ctx_ = std::move(ctx);
  return h;
}

SubgroupHandle SubgroupHandle::cyclic(ContextPtr ctx, Word c, Word conjugator) {
  SubgroupHandle h;
  h.kind_ = SubgroupKind::Cyclic;
  if (!c.empty()) h.gens_.push_back(conjugate_word(c, conjugator));
  h.root_ = std::move(c);
  h.conj_ = std::move(conjugator);
  h.ctx_ = std::move(ctx);
  return h;
}

SubgroupHandle SubgroupHandle::thompson_a(ContextPtr ctx, uint32_t m, Word conjugator) {
  if (ctx->oracle() != OracleKind::ThompsonNormalForm) {
    throw ContractError("A_m handles live in Thompson's F");
  }
  SubgroupHandle h;
  h.kind_ = SubgroupKind::ThompsonA;
  h.m_ = m;
  for (uint32_t n = m; n < m + 4; ++n) h.gens_.push_back(conjugate_word(thompson::a_generator(n), conjugator));
  h.conj_ = std::move(conjugator);
  h.ctx_ = std::move(ctx);
  return h;
}

SubgroupHandle SubgroupHandle::generated(ContextPtr ctx, std::vector<Word> gens, size_t limit) {
  if (ctx->presentation().is_finite()) {
    auto result = todd_coxeter(*ctx, gens, limit);
    if (auto* t = std::get_if<CosetTable>(&result)) return from_table(ctx, std::move(*t));
  }
  std::vector<Word> nontrivial;
  for (auto& g : gens) {
    if (ctx->is_trivial(g) != Tri::True) nontrivial.push_back(std::move(g));
  }
  if (nontrivial.empty()) return trivial(ctx);
  if (nontrivial.size() == 1 && torsion_free(*ctx)) return cyclic(ctx, nontrivial[0]);
  SubgroupHandle h;
  h.kind_ = SubgroupKind::Generated;
  h.gens_ = std::move(nontrivial);
  h.ctx_ = std::move(ctx);
  return h;
}

Tri SubgroupHandle::contains(const Word& t) const {
  switch (kind_) {
    case SubgroupKind::Whole:
      return Tri::True;
    case SubgroupKind::Table:
      return to_tri(table_->coset_of(t) == 0);
    case SubgroupKind::Cyclic: {
      const Word u = conj_ * t * conj_.inverse();
      if (root_.empty()) return ctx_->is_trivial(u);
      return ctx_->power_log(u, root_).found;
    }
    case SubgroupKind::ThompsonA:
      return thompson::am_membership(conj_ * t * conj_.inverse(), m_, kThompsonIndexBound);
    case SubgroupKind::Intersection:
      return tri_and(left_->contains(t), right_->contains(t));
    case SubgroupKind::Generated: {
      if (ctx_->is_trivial(t) == Tri::True) return Tri::True;
      for (const Word& g : gens_) {
        if (ctx_->equal(t, g) == Tri::True || ctx_->equal(t, g.inverse()) == Tri::True) return Tri::True;
      }
      return Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

Tri SubgroupHandle::contained_in(const SubgroupHandle& other) const {
  require_same_context(*this, other);
  if (other.kind_ == SubgroupKind::Whole) return Tri::True;
  if (kind_ == SubgroupKind::Intersection) return Tri::Unknown;
  if (kind_ == SubgroupKind::ThompsonA) {
    if (other.kind_ == SubgroupKind::ThompsonA &&
        ctx_->equal(conj_, other.conj_) == Tri::True) {
      return to_tri(m_ >= other.m_);
    }
    // A generator outside other refutes containment; the rest is unknown.
    for (const Word& g : gens_) {
      if (other.contains(g) == Tri::False) return Tri::False;
    }
    return Tri::Unknown;
  }
  Tri all = Tri::True;
  for (const Word& g : gens_) {
    all = tri_and(all, other.contains(g));
    if (all == Tri::False) break;
  }
  return all;
}

Tri SubgroupHandle::same_as(const SubgroupHandle& other) const {
  require_same_context(*this, other);
  if (table_ && other.table_) return to_tri(table_->same_subgroup(*other.table_));
  return tri_and(contained_in(other), other.contained_in(*this));
}

std::optional<std::vector<int64_t>> SubgroupHandle::left_coset_key(const Word& g) const {
  switch (kind_) {
    case SubgroupKind::Whole:
      return std::vector<int64_t>{};
    case SubgroupKind::Table:
      return std::vector<int64_t>{table_->coset_of(g.inverse())};
    case SubgroupKind::Cyclic: {
      // g w^-1 <c> w is determined by the coset g w^-1 <c>.
      const Word u = g * conj_.inverse();
      if (root_.empty()) {
        auto nf = ctx_->normal_form(u);
        if (!nf) return std::nullopt;
        std::vector<int64_t> key;
        for (Letter l : *nf) key.push_back(2 * static_cast<int64_t>(l.gen) + (l.sign > 0 ? 0 : 1));
        return key;
      }
      if (ctx_->oracle() == OracleKind::Britton) {
        auto k = bs::britton_reduce(root_, ctx_->bs_params()).as_x_power();
        if (!k || *k == 0) return std::nullopt;
        return bs::left_coset_key(u, std::llabs(*k), ctx_->bs_params());
      }
      if (ctx_->oracle() == OracleKind::FreeAbelian) {
        std::vector<int64_t> v = exponents(*ctx_, u);
        std::vector<int64_t> c = exponents(*ctx_, root_);
        size_t p = 0;
        while (p < c.size() && c[p] == 0) ++p;
        if (p == c.size()) return v;
        if (c[p] < 0) {
          for (auto& e : c) e = -e;
        }
        const int64_t q = floor_div(v[p], c[p]);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= q * c[i];
        return v;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::string SubgroupHandle::describe() const {
  std::ostringstream out;
  auto words = [&](const std::vector<Word>& ws) {
    std::string s;
    for (size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + ctx_->format(ws[i]);
    return s;
  };
  switch (kind_) {
    case SubgroupKind::Whole:
      out << "G";
      break;
    case SubgroupKind::Table:
      out << "<" << words(gens_) << "> (index " << table_->coset_count() << ")";
      break;
    case SubgroupKind::Cyclic:
      out << "<" << (root_.empty() ? std::string("1") : ctx_->format(root_)) << ">";
      if (!conj_.empty()) out << "^(" << ctx_->format(conj_) << ")";
      break;
    case SubgroupKind::ThompsonA:
      out << "A_" << m_;
      if (!conj_.empty()) out << "^(" << ctx_->format(conj_) << ")";
      break;
    case SubgroupKind::Intersection:
      out << "(" << left_->describe() << " ∩ " << right_->describe() << ")";
      break;
    case SubgroupKind::Generated:
      out << "<" << words(gens_) << ">";
      break;
  }
  return out.str();
}

SubgroupHandle conjugate(const SubgroupHandle& h, const Word& g) {
  const ContextPtr& ctx = h.context();
  std::vector<Word> gens;
  for (const Word& x : h.generators()) gens.push_back(conjugate_word(x, g));
  switch (h.kind()) {
    case SubgroupKind::Whole:
      return h;
    case SubgroupKind::Table:
      return SubgroupHandle::from_table(ctx, rebase(*h.table(), h.table()->coset_of(g), gens));
    case SubgroupKind::Cyclic:
      return SubgroupHandle::cyclic(ctx, h.cyclic_root(), h.conjugator() * g);
    case SubgroupKind::ThompsonA:
      return SubgroupHandle::thompson_a(ctx, h.thompson_m(), h.conjugator() * g);
    case SubgroupKind::Intersection:
    case SubgroupKind::Generated:
      break;
  }
  if (h.kind() == SubgroupKind::Generated) return SubgroupHandle::generated(ctx, gens, 0);
  throw ContractError("conjugation of an unresolved intersection");
}

IndexResult index_bounded(const SubgroupHandle& sub, const SubgroupHandle& ambient, uint64_t bound) {
  require_same_context(sub, ambient);
  const GroupContext& ctx = sub.group();
  IndexResult r;
  const Tri inside = sub.contained_in(ambient);
  if (inside == Tri::False) throw ContractError("subgroup is not contained in the ambient subgroup");
  if (inside == Tri::Unknown && sub.kind() != SubgroupKind::ThompsonA) {
    r.certificate = "containment undecided";
    return r;
  }
  auto exact = [&](uint64_t i, std::string why) {
    if (i <= bound) {
      r.index = i;
    } else {
      r.certificate = "index " + std::to_string(i) + " exceeds bound; ";
    }
    r.certificate += why;
    return r;
  };
  auto infinite = [&](std::string why) {
    r.infinite = true;
    r.certificate = std::move(why);
    return r;
  };
  // Through coset enumeration of sub inside G, when G has a finite presentation.
  auto enumerate = [&](uint64_t ambient_index) {
    if (!ctx.presentation().is_finite()) {
      r.certificate = "no coset enumeration for schema groups";
      return r;
    }
    const size_t limit = static_cast<size_t>(std::min<uint64_t>(bound * ambient_index, 1u << 22));
    auto e = todd_coxeter(ctx, sub.generators(), std::max<size_t>(limit, 1));
    if (auto* t = std::get_if<CosetTable>(&e)) {
      return exact(t->coset_count() / ambient_index, "coset enumeration");
    }
    r.certificate = "coset enumeration exceeded " + std::to_string(limit) + " cosets";
    return r;
  };

  if (ambient.kind() == SubgroupKind::Whole && sub.kind() == SubgroupKind::Whole) return exact(1, "equal");
  if (sub.kind() == SubgroupKind::Whole) return exact(1, "ambient contains G");
  if (sub.table() && ambient.kind() == SubgroupKind::Whole) {
    return exact(sub.table()->coset_count(), "coset table");
  }
  if (sub.table() && ambient.table()) {
    return exact(sub.table()->coset_count() / ambient.table()->coset_count(), "ratio of coset tables");
  }
  if (sub.kind() == SubgroupKind::ThompsonA) {
    if (ambient.kind() == SubgroupKind::ThompsonA && inside == Tri::True) {
      if (sub.thompson_m() == ambient.thompson_m()) return exact(1, "equal");
      return infinite("A_m/A_m' is free abelian of rank " +
                      std::to_string(sub.thompson_m() - ambient.thompson_m()));
    }
    if (ambient.kind() == SubgroupKind::Whole) {
      return infinite("A lies in the kernel of the exponent-sum map onto Z");
    }
    r.certificate = "unsupported pair";
    return r;
  }
  if (sub.kind() == SubgroupKind::Cyclic) {
    const bool sub_trivial = sub.cyclic_root().empty();
    if (ambient.kind() == SubgroupKind::Cyclic) {
      if (ambient.cyclic_root().empty()) return exact(1, "both trivial");
      if (sub_trivial) return infinite("trivial subgroup of an infinite cyclic group");
      const Word u = ambient.conjugator() * sub.generators()[0] * ambient.conjugator().inverse();
      const PowerLog pl = ctx.power_log(u, ambient.cyclic_root(), static_cast<int64_t>(bound));
      if (pl.found == Tri::True) {
        return exact(static_cast<uint64_t>(std::llabs(pl.exponent)),
                     "generator is the " + std::to_string(pl.exponent) + "-th power");
      }
      r.certificate = "power search exhausted";
      return r;
    }
    if (ambient.kind() == SubgroupKind::Whole && known_infinite(ctx)) {
      if (sub_trivial) return infinite("trivial subgroup of an infinite group");
      if (ctx.oracle() == OracleKind::FreeAbelian && ctx.generator_count() >= 2) {
        return infinite("exponent vectors span rank 1 < " + std::to_string(ctx.generator_count()));
      }
      if (ctx.oracle() == OracleKind::Free && ctx.generator_count() >= 2) {
        return infinite("cyclic subgroup of a free group of rank >= 2");
      }
    }
  }
  if (sub.kind() == SubgroupKind::Intersection) {
    r.certificate = "unresolved intersection";
    return r;
  }
  if (ambient.kind() == SubgroupKind::Whole) return enumerate(1);
  if (ambient.table()) return enumerate(ambient.table()->coset_count());
  r.certificate = "unsupported pair";
  return r;
}

SubgroupHandle intersect(const SubgroupHandle& h, const SubgroupHandle& k, int64_t search_bound) {
  require_same_context(h, k);
  const ContextPtr& ctx = h.context();
  if (h.kind() == SubgroupKind::Generated || k.kind() == SubgroupKind::Generated) {
    throw ContractError("unsupported oracle pair: generators-only handle");
  }
  if (h.kind() == SubgroupKind::Whole) return k;
  if (k.kind() == SubgroupKind::Whole) return h;
  if (h.table() && k.table()) return SubgroupHandle::from_table(ctx, fiber_product(*h.table(), *k.table()));

  auto cyclic_in_table = [&](const SubgroupHandle& c, const SubgroupHandle& t) {
    const Word g = c.generators().empty() ? Word{} : c.generators()[0];
    Word power = g;
    for (uint32_t a = 1; a <= t.table()->coset_count(); ++a, power *= g) {
      if (t.table()->coset_of(power) == 0) {
        return SubgroupHandle::cyclic(ctx, c.cyclic_root().pow(a), c.conjugator());
      }
    }
    throw ContractError("coset table orbit longer than the table");
  };
  if (h.kind() == SubgroupKind::Cyclic && k.table()) return cyclic_in_table(h, k);
  if (k.kind() == SubgroupKind::Cyclic && h.table()) return cyclic_in_table(k, h);

  if (h.kind() == SubgroupKind::Cyclic && k.kind() == SubgroupKind::Cyclic) {
    if (h.cyclic_root().empty()) return h;
    if (k.cyclic_root().empty()) return k;
    const Word g1 = h.generators()[0];
    const Word g2 = k.generators()[0];
    Word power = g1;
    for (int64_t a = 1; a <= search_bound; ++a, power *= g1) {
      if (k.contains(power) == Tri::True) {
        return SubgroupHandle::cyclic(ctx, h.cyclic_root().pow(a), h.conjugator());
      }
    }
    // Certificates that no power of g1 lies in <g2>.
    if (ctx->oracle() == OracleKind::FreeAbelian &&
        rational_rank({exponents(*ctx, g1), exponents(*ctx, g2)}) == 2) {
      return SubgroupHandle::cyclic(ctx, Word{});
    }
    if (ctx->oracle() == OracleKind::Free && g1 * g2 != g2 * g1) {
      return SubgroupHandle::cyclic(ctx, Word{});
    }
  }
  if (h.kind() == SubgroupKind::ThompsonA && k.kind() == SubgroupKind::ThompsonA &&
      ctx->equal(h.conjugator(), k.conjugator()) == Tri::True) {
    return SubgroupHandle::thompson_a(ctx, std::max(h.thompson_m(), k.thompson_m()), h.conjugator());
  }
  return SubgroupHandle::intersection_of(h, k);
}

SubgroupHandle SubgroupHandle::intersection_of(const SubgroupHandle& a, const SubgroupHandle& b) {
  require_same_context(a, b);
  SubgroupHandle h;
  h.kind_ = SubgroupKind::Intersection;
  h.ctx_ = a.ctx_;
  h.left_ = std::make_shared<const SubgroupHandle>(a);
  h.right_ = std::make_shared<const SubgroupHandle>(b);
  return h;
}

CommensurabilityResult is_commensurable(const SubgroupHandle& h, const SubgroupHandle& k,
                                        uint64_t bound) {
  CommensurabilityResult r;
  SubgroupHandle meet = SubgroupHandle::whole(h.context());
  try {
    meet = intersect(h, k, static_cast<int64_t>(std::max<uint64_t>(bound, 1)));
  } catch (const ContractError& e) {
    r.certificate = e.what();
    return r;
  }
  const IndexResult ih = index_bounded(meet, h, bound);
  const IndexResult ik = index_bounded(meet, k, bound);
  r.index_in_h = ih.index;
  r.index_in_k = ik.index;
  if (ih.infinite || ik.infinite) {
    r.result = Tri::False;
    r.certificate = "infinite index: " + (ih.infinite ? ih.certificate : ik.certificate);
  } else if (ih.index && ik.index) {
    r.result = Tri::True;
    r.certificate = "[H : H∩K] = " + std::to_string(*ih.index) + ", [K : H∩K] = " +
                    std::to_string(*ik.index);
  } else {
    r.certificate = "undecided within bound " + std::to_string(bound) + ": " +
                    (ih.index ? ik.certificate : ih.certificate);
  }
  return r;
}

CommensurabilityResult in_commensurator(const SubgroupHandle& h, const Word& g, uint64_t bound) {
  return is_commensurable(h, conjugate(h, g), bound);
}

NearNormalResult near_normal_on(const SubgroupHandle& h, const std::vector<Word>& gens,
                                uint64_t bound) {
  NearNormalResult out;
  out.result = Tri::True;
  for (const Word& g : gens) {
    for (const Word& s : {g, g.inverse()}) {
      auto c = in_commensurator(h, s, bound);
      out.result = tri_and(out.result, c.result);
      out.checks.emplace_back(s, std::move(c));
      if (out.result == Tri::False) return out;
    }
  }
  return out;
}

namespace {

// Whether the cosets of a and b (same side) coincide.
Tri same_coset(const SubgroupHandle& base, CosetSide side, const Word& a, const Word& b) {
  return base.contains(side == CosetSide::Left ? a.inverse() * b : a * b.inverse());
}

}  // namespace

CosetSet::CosetSet(SubgroupHandle base, CosetSide side, std::vector<Word> reps)
    : base_(std::move(base)), side_(side) {
  for (Word& w : reps) {
    bool duplicate = false;
    for (const Word& kept : reps_) {
      const Tri same = same_coset(base_, side_, kept, w);
      if (same == Tri::Unknown) throw ContractError("coset equality undecided");
      if (same == Tri::True) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) reps_.push_back(std::move(w));
  }
}

Tri CosetSet::contains(const Word& g) const {
  std::vector<Tri> hits;
  for (const Word& t : reps_) hits.push_back(same_coset(base_, side_, t, g));
  return any_of_tri(hits);
}

Tri translate_disjoint(const CosetSet& x, const Word& g) {
  if (x.side() != CosetSide::Right) throw ContractError("translation acts on unions of right cosets");
  std::vector<Tri> meets;
  for (const Word& ti : x.representatives()) {
    for (const Word& tj : x.representatives()) {
      meets.push_back(x.base().contains(ti * g * tj.inverse()));
    }
  }
  const Tri meet = any_of_tri(meets);
  if (meet == Tri::Unknown) return Tri::Unknown;
  return to_tri(meet == Tri::False);
}

NeumannResult neumann_translate(const CosetSet& x, size_t search_radius) {
  NeumannResult r;
  for_each_word(search_generator_count(x.base().group()), search_radius, [&](const Word& g) {
    ++r.words_checked;
    const Tri d = translate_disjoint(x, g);
    if (d == Tri::True) {
      r.g = g;
      return false;
    }
    if (d == Tri::Unknown) r.undecided = true;
    return true;
  });
  return r;
}

std::optional<CosetSet> double_coset(const SubgroupHandle& h, const Word& g, size_t max_cosets) {
  if (!h.finitely_listed()) throw ContractError("double cosets need a finitely generated handle");
  std::vector<Word> reps{g};
  for (size_t i = 0; i < reps.size(); ++i) {
    for (const Word& s : h.generators()) {
      for (const Word& x : {s, s.inverse()}) {
        const Word cand = x * reps[i];
        std::vector<Tri> seen;
        for (const Word& t : reps) seen.push_back(same_coset(h, CosetSide::Left, t, cand));
        const Tri known = any_of_tri(seen);
        if (known == Tri::Unknown) return std::nullopt;
        if (known == Tri::False) {
          if (reps.size() == max_cosets) return std::nullopt;
          reps.push_back(cand);
        }
      }
    }
  }
  return CosetSet(h, CosetSide::Left, std::move(reps));
}

}  // namespace cgt
