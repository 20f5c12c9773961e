#include "cgt/completion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cgt {

namespace {

CosetTable single_coset_table(uint32_t gens) {
  std::vector<Word> sub;
  for (uint32_t g = 0; g < gens; ++g) sub.push_back(Word{pos(g)});
  return CosetTable(gens, std::vector<uint32_t>(2 * gens, 0), {Word{}}, std::move(sub));
}

}  // namespace

TruncatedCompletion::TruncatedCompletion(FamilyTruncation fam) : fam_(std::move(fam)) {
  const GroupContext& ctx = fam_.group();
  if (!ctx.presentation().is_finite()) throw ContractError("completion needs a finite presentation");
  for (size_t i = 0; i < fam_.size(); ++i) {
    const SubgroupHandle& h = fam_.node(i);
    if (h.kind() == SubgroupKind::Whole) {
      tables_.push_back(single_coset_table(ctx.generator_count()));
    } else if (h.table()) {
      tables_.push_back(*h.table());
    } else {
      throw ContractError("node " + std::to_string(i) + " has no coset table (infinite index?)");
    }
    for (size_t c = 0; c < fam_.letter_columns(); ++c) {
      if (!fam_.conj(i, c)) throw ContractError("truncation is not closed under conjugation");
    }
  }
  index_order_.resize(fam_.size());
  for (size_t i = 0; i < fam_.size(); ++i) index_order_[i] = i;
  std::stable_sort(index_order_.begin(), index_order_.end(),
                   [&](size_t a, size_t b) { return tables_[a].coset_count() < tables_[b].coset_count(); });
}

CompletionElement TruncatedCompletion::identity() const {
  return {std::vector<uint32_t>(fam_.size(), 0)};
}

CompletionElement TruncatedCompletion::embed(const Word& g) const {
  CompletionElement f;
  for (const auto& t : tables_) f.cosets.push_back(t.coset_of(g));
  return f;
}

bool TruncatedCompletion::compatible(const CompletionElement& f) const {
  if (f.cosets.size() != fam_.size()) return false;
  for (size_t k = 0; k < fam_.size(); ++k) {
    if (f.cosets[k] >= tables_[k].coset_count()) return false;
    for (size_t h = 0; h < fam_.size(); ++h) {
      if (fam_.le(k, h) != Tri::True) continue;
      if (tables_[h].coset_of(tables_[k].representative(f.cosets[k])) != f.cosets[h]) return false;
    }
  }
  return true;
}

size_t TruncatedCompletion::conj_node(size_t h, const CompletionElement& f) const {
  const auto n = fam_.conj_by_word(h, tables_[h].representative(f.cosets[h]));
  if (!n) throw ContractError("conjugate node missing from the truncation");
  return *n;
}

CompletionElement TruncatedCompletion::multiply(const CompletionElement& f, const CompletionElement& g) const {
  CompletionElement out;
  out.cosets.resize(fam_.size());
  for (size_t h = 0; h < fam_.size(); ++h) {
    const size_t hf = conj_node(h, f);
    // H x x' with x' a representative of f'(H^f).
    out.cosets[h] = tables_[h].act(f.cosets[h], tables_[hf].representative(g.cosets[hf]));
  }
  if (!compatible(out)) throw ContractError("product is not a compatible assignment");
  return out;
}

CompletionElement TruncatedCompletion::invert_stable(const CompletionElement& f) const {
  CompletionElement out;
  out.cosets.resize(fam_.size());
  for (size_t h = 0; h < fam_.size(); ++h) {
    const Word& x = tables_[h].representative(f.cosets[h]);
    const size_t hf = conj_node(h, f);
    std::optional<size_t> k;
    for (size_t cand : index_order_) {
      if (fam_.le(cand, h) == Tri::True && fam_.le(cand, hf) == Tri::True &&
          fam_.normal_in(cand, hf) == Tri::True) {
        k = cand;
        break;
      }
    }
    if (!k) {
      throw MissingNode("no node K <= H ∩ H^f normal in H^f for node " + std::to_string(h));
    }
    const auto kx = fam_.conj_by_word(*k, x.inverse());
    if (!kx) throw MissingNode("conjugate K^(x^-1) is not a node");
    const Word& t = tables_[*kx].representative(f.cosets[*kx]);
    out.cosets[h] = tables_[h].coset_of(t.inverse());
  }
  if (!compatible(out)) throw ContractError("inverse is not a compatible assignment");
  return out;
}

std::vector<CompletionElement> TruncatedCompletion::enumerate(size_t ceiling) const {
  const size_t n = fam_.size();
  std::vector<CompletionElement> out;
  std::vector<uint32_t> cur(n, 0);
  auto consistent = [&](size_t i) {
    for (size_t j = 0; j < i; ++j) {
      if (fam_.le(i, j) == Tri::True &&
          tables_[j].coset_of(tables_[i].representative(cur[i])) != cur[j]) {
        return false;
      }
      if (fam_.le(j, i) == Tri::True &&
          tables_[i].coset_of(tables_[j].representative(cur[j])) != cur[i]) {
        return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) {
      if (out.size() >= ceiling) {
        throw ContractError("completion exceeds the element ceiling of " + std::to_string(ceiling));
      }
      out.push_back({cur});
      return;
    }
    for (uint32_t c = 0; c < tables_[i].coset_count(); ++c) {
      cur[i] = c;
      if (consistent(i)) self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<size_t> TruncatedCompletion::fixing_nodes(const std::vector<uint32_t>& m,
                                                      const FiniteModule& module) const {
  std::vector<size_t> out;
  for (size_t h = 0; h < fam_.size(); ++h) {
    bool fixes = true;
    for (const Word& g : fam_.node(h).generators()) {
      fixes = fixes && vec_mul(m, module.matrix_of(g)) == m;
    }
    if (fixes) out.push_back(h);
  }
  return out;
}

std::vector<uint32_t> TruncatedCompletion::act(const std::vector<uint32_t>& m, const CompletionElement& f,
                                               const FiniteModule& module) const {
  const auto nodes = fixing_nodes(m, module);
  if (nodes.empty()) throw ContractError("no node fixes the vector (it lies outside h0_S)");
  const size_t h = nodes.front();
  return vec_mul(m, module.matrix_of(tables_[h].representative(f.cosets[h])));
}

std::string TruncatedCompletion::describe(const CompletionElement& f) const {
  std::ostringstream out;
  out << "{";
  for (size_t h = 0; h < fam_.size(); ++h) {
    out << (h ? ", " : "") << h << ": H"
        << (f.cosets[h] == 0 ? std::string() : "·" + fam_.group().format(tables_[h].representative(f.cosets[h])));
  }
  out << "}";
  return out.str();
}

InvertibilityReport invertibility_scan(const TruncatedCompletion& tc) {
  InvertibilityReport r;
  const auto elements = tc.enumerate();
  const auto e = tc.identity();
  r.total = elements.size();
  for (const auto& f : elements) {
    bool found = false;
    for (const auto& g : elements) {
      if (tc.multiply(f, g) == e && tc.multiply(g, f) == e) {
        found = true;
        break;
      }
    }
    if (found) {
      ++r.invertible;
    } else {
      r.non_invertible.push_back(f);
    }
  }
  return r;
}

ProfiniteComparison profinite_compare(const TruncatedCompletion& tc) {
  ProfiniteComparison r;
  const auto& fam = tc.family();
  const size_t n = fam.size();
  r.all_normal = true;
  for (size_t h = 0; h < n; ++h) {
    for (size_t c = 0; c < fam.letter_columns(); ++c) r.all_normal = r.all_normal && fam.conj(h, c) == h;
  }
  if (!r.all_normal) return r;

  // Quotient G/H: (Hx)(Hy) = Hxy.
  std::vector<std::vector<std::vector<uint32_t>>> mult(n);
  for (size_t h = 0; h < n; ++h) {
    const auto& t = tc.table(h);
    const size_t q = t.coset_count();
    mult[h].assign(q, std::vector<uint32_t>(q));
    for (uint32_t a = 0; a < q; ++a) {
      for (uint32_t b = 0; b < q; ++b) mult[h][a][b] = t.coset_of(t.representative(a) * t.representative(b));
    }
  }
  // Inverse limit: tuples compatible with the quotient maps G/K -> G/H.
  std::set<std::vector<uint32_t>> limit;
  std::vector<uint32_t> cur(n, 0);
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == n) {
      bool ok = true;
      for (size_t k = 0; k < n && ok; ++k) {
        for (size_t h = 0; h < n && ok; ++h) {
          if (fam.le(k, h) == Tri::True) {
            ok = tc.table(h).coset_of(tc.table(k).representative(cur[k])) == cur[h];
          }
        }
      }
      if (ok) limit.insert(cur);
      return;
    }
    for (uint32_t c = 0; c < tc.table(i).coset_count(); ++c) {
      cur[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);

  const auto elements = tc.enumerate();
  r.completion_size = elements.size();
  r.limit_size = limit.size();
  std::set<std::vector<uint32_t>> image;
  for (const auto& f : elements) image.insert(f.cosets);
  r.bijective = image == limit && image.size() == elements.size();
  r.homomorphism = true;
  for (const auto& f : elements) {
    for (const auto& g : elements) {
      const auto fg = tc.multiply(f, g);
      for (size_t h = 0; h < n; ++h) {
        r.homomorphism = r.homomorphism && fg.cosets[h] == mult[h][f.cosets[h]][g.cosets[h]];
      }
    }
  }
  return r;
}

LawReport verify_laws(const TruncatedCompletion& tc, const std::vector<Word>& group_elements) {
  LawReport r;
  const auto elements = tc.enumerate();
  r.element_count = elements.size();
  r.stable = check_stable(tc.family()).stable;
  const auto e = tc.identity();
  std::map<std::string, size_t> counts;
  auto check = [&](const char* law, bool ok, const std::string& witness) {
    ++counts[law];
    ++r.checks;
    if (!ok) r.failures.push_back({law, witness});
  };
  auto d = [&](const CompletionElement& f) { return tc.describe(f); };

  for (const auto& f : elements) {
    check("compatible", tc.compatible(f), d(f));
    check("identity", tc.multiply(e, f) == f && tc.multiply(f, e) == f, d(f));
  }
  for (const auto& f : elements) {
    for (const auto& g : elements) {
      const auto fg = tc.multiply(f, g);
      for (size_t h = 0; h < tc.node_count(); ++h) {
        check("conjugation-cocycle", tc.conj_node(h, fg) == tc.conj_node(tc.conj_node(h, f), g),
              "node " + std::to_string(h) + ", " + d(f) + ", " + d(g));
      }
      for (const auto& k : elements) {
        check("associativity", tc.multiply(fg, k) == tc.multiply(f, tc.multiply(g, k)),
              d(f) + ", " + d(g) + ", " + d(k));
      }
    }
  }
  for (const Word& g : group_elements) {
    for (const Word& g2 : group_elements) {
      check("embed-homomorphism", tc.multiply(tc.embed(g), tc.embed(g2)) == tc.embed(g * g2),
            tc.family().group().format(g) + ", " + tc.family().group().format(g2));
    }
  }
  if (r.stable) {
    std::map<CompletionElement, CompletionElement> inv;
    for (const auto& f : elements) {
      try {
        inv[f] = tc.invert_stable(f);
      } catch (const MissingNode& ex) {
        check("inverse", false, d(f) + ": " + ex.what());
        continue;
      }
      const auto& fi = inv[f];
      check("inverse", tc.multiply(fi, f) == e && tc.multiply(f, fi) == e, d(f));
      for (size_t h = 0; h < tc.node_count(); ++h) {
        const size_t hf = tc.conj_node(h, f);
        const Word& x = tc.table(h).representative(f.cosets[h]);
        check("inverse-at-conjugate", fi.cosets[hf] == tc.table(hf).coset_of(x.inverse()),
              "node " + std::to_string(h) + ", " + d(f));
      }
    }
    for (const Word& g : group_elements) {
      check("inverse-of-embed", tc.invert_stable(tc.embed(g)) == tc.embed(g.inverse()),
            tc.family().group().format(g));
    }
    for (const auto& f : elements) {
      for (const auto& g : elements) {
        if (!inv.count(f) || !inv.count(g)) continue;
        check("inverse-antihomomorphism", tc.invert_stable(tc.multiply(f, g)) == tc.multiply(inv[g], inv[f]),
              d(f) + ", " + d(g));
      }
    }
  }
  r.counts.assign(counts.begin(), counts.end());
  return r;
}

}  // namespace cgt
