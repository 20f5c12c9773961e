#include <algorithm>
#include <deque>
#include <numeric>

#include "cgt/groups.hpp"

namespace cgt {

CosetTable::CosetTable(uint32_t generator_count, std::vector<uint32_t> action,
                       std::vector<Word> reps, std::vector<Word> subgroup_gens)
    : gens_(generator_count),
      action_(std::move(action)),
      reps_(std::move(reps)),
      subgroup_gens_(std::move(subgroup_gens)) {}

uint32_t CosetTable::act(uint32_t coset, const Word& w) const {
  for (Letter l : w) coset = act(coset, l);
  return coset;
}

uint32_t coset_of(const CosetTable& table, const Word& w) { return table.coset_of(w); }

namespace {

constexpr uint32_t kUnset = UINT32_MAX;

Letter column_letter(uint32_t col) { return Letter{col / 2, static_cast<int8_t>(col % 2 == 0 ? 1 : -1)}; }

// Breadth-first renumbering of the orbit of `base` under a column action.
template <typename Act>
CosetTable canonical_table(uint32_t gens, size_t universe, uint32_t base, Act act,
                           std::vector<Word> subgroup_gens) {
  const uint32_t cols = 2 * gens;
  std::vector<uint32_t> order{base};
  std::vector<uint32_t> renum(universe, kUnset);
  std::vector<Word> reps(1);
  renum[base] = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    for (uint32_t col = 0; col < cols; ++col) {
      const uint32_t d = act(order[k], col);
      if (renum[d] != kUnset) continue;
      renum[d] = static_cast<uint32_t>(order.size());
      order.push_back(d);
      Word r = reps[k];
      r.push_back(column_letter(col));
      reps.push_back(std::move(r));
    }
  }
  std::vector<uint32_t> action(order.size() * cols);
  for (size_t k = 0; k < order.size(); ++k) {
    for (uint32_t col = 0; col < cols; ++col) action[k * cols + col] = renum[act(order[k], col)];
  }
  return CosetTable(gens, std::move(action), std::move(reps), std::move(subgroup_gens));
}

}  // namespace

CosetTable rebase(const CosetTable& t, uint32_t new_base, std::vector<Word> subgroup_gens) {
  return canonical_table(
      t.generator_count(), t.coset_count(), new_base,
      [&](uint32_t c, uint32_t col) { return t.act(c, column_letter(col)); },
      std::move(subgroup_gens));
}

CosetTable fiber_product(const CosetTable& h, const CosetTable& k) {
  if (h.generator_count() != k.generator_count()) throw ContractError("tables over different groups");
  const size_t n = k.coset_count();
  auto act = [&](uint32_t pair, uint32_t col) {
    const Letter l = column_letter(col);
    return static_cast<uint32_t>(h.act(static_cast<uint32_t>(pair / n), l) * n +
                                 k.act(static_cast<uint32_t>(pair % n), l));
  };
  CosetTable product = canonical_table(h.generator_count(), h.coset_count() * n, 0, act, {});
  return CosetTable(product.generator_count(), product.action(), product.representatives(),
                    schreier_generators(product));
}

std::vector<Word> schreier_generators(const CosetTable& t) {
  std::vector<Word> out;
  for (uint32_t c = 0; c < t.coset_count(); ++c) {
    for (uint32_t g = 0; g < t.generator_count(); ++g) {
      const Word s = t.representative(c) * Word{pos(g)} * t.representative(t.act(c, pos(g))).inverse();
      if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr uint32_t kUndefined = UINT32_MAX;

class Enumerator {
 public:
  Enumerator(uint32_t gens, size_t limit) : cols_(2 * gens), limit_(limit) { new_coset(); }

  bool overflowed() const { return overflow_; }
  size_t live() const { return live_; }
  size_t defined() const { return parent_.size(); }

  static uint32_t column(Letter l) { return 2 * l.gen + (l.sign > 0 ? 0 : 1); }
  static uint32_t inverse_column(uint32_t c) { return c ^ 1u; }

  bool is_live(uint32_t c) const { return parent_[c] == c; }

  uint32_t& entry(uint32_t c, uint32_t col) { return table_[static_cast<size_t>(c) * cols_ + col]; }

  void define(uint32_t c, uint32_t col) {
    uint32_t d = new_coset();
    if (overflow_) return;
    entry(c, col) = d;
    entry(d, inverse_column(col)) = c;
  }

  // Scans w from coset alpha in both directions, defining new cosets as needed.
  void scan_and_fill(uint32_t alpha, const std::vector<uint32_t>& w) {
    if (w.empty()) return;
    uint32_t f = alpha;
    uint32_t b = alpha;
    size_t i = 0;
    size_t j = w.size();  // one past the last unscanned letter
    for (;;) {
      while (i < j && entry(f, w[i]) != kUndefined) f = entry(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && entry(b, inverse_column(w[j - 1])) != kUndefined) {
        b = entry(b, inverse_column(w[--j]));
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        entry(f, w[i]) = b;
        entry(b, inverse_column(w[i])) = f;
        return;
      }
      define(f, w[i]);
      if (overflow_) return;
    }
  }

  void fill_row(uint32_t c) {
    for (uint32_t col = 0; col < cols_ && is_live(c) && !overflow_; ++col) {
      if (entry(c, col) == kUndefined) define(c, col);
    }
  }

  uint32_t find(uint32_t c) {
    uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      uint32_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  CosetTable finish(uint32_t gens, std::vector<Word> subgroup_gens) {
    // Renumber live cosets breadth-first from the base coset.
    std::vector<uint32_t> order;
    std::vector<uint32_t> renum(parent_.size(), kUndefined);
    std::vector<Word> reps;
    order.push_back(0);
    renum[0] = 0;
    reps.emplace_back();
    for (size_t k = 0; k < order.size(); ++k) {
      uint32_t c = order[k];
      for (uint32_t col = 0; col < cols_; ++col) {
        uint32_t d = find(entry(c, col));
        if (renum[d] == kUndefined) {
          renum[d] = static_cast<uint32_t>(order.size());
          order.push_back(d);
          Word r = reps[k];
          r.push_back(Letter{col / 2, static_cast<int8_t>(col % 2 == 0 ? 1 : -1)});
          reps.push_back(std::move(r));
        }
      }
    }
    std::vector<uint32_t> action(order.size() * cols_);
    for (size_t k = 0; k < order.size(); ++k) {
      for (uint32_t col = 0; col < cols_; ++col) action[k * cols_ + col] = renum[find(entry(order[k], col))];
    }
    return CosetTable(gens, std::move(action), std::move(reps), std::move(subgroup_gens));
  }

 private:
  uint32_t new_coset() {
    if (live_ >= limit_ || parent_.size() >= 8 * limit_ + 64) {
      overflow_ = true;
      return kUndefined;
    }
    uint32_t c = static_cast<uint32_t>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, kUndefined);
    ++live_;
    return c;
  }

  void merge(uint32_t a, uint32_t b, std::deque<uint32_t>& queue) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(uint32_t a, uint32_t b) {
    std::deque<uint32_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      uint32_t g = queue.front();
      queue.pop_front();
      for (uint32_t col = 0; col < cols_; ++col) {
        uint32_t d = entry(g, col);
        if (d == kUndefined) continue;
        uint32_t icol = inverse_column(col);
        if (entry(d, icol) == g) entry(d, icol) = kUndefined;
        uint32_t mu = find(g);
        uint32_t nu = find(d);
        if (entry(mu, col) != kUndefined) {
          merge(nu, entry(mu, col), queue);
        } else if (entry(nu, icol) != kUndefined) {
          merge(mu, entry(nu, icol), queue);
        } else {
          entry(mu, col) = nu;
          entry(nu, icol) = mu;
        }
      }
    }
  }

  uint32_t cols_;
  size_t limit_;
  size_t live_ = 0;
  bool overflow_ = false;
  std::vector<uint32_t> parent_;
  std::vector<uint32_t> table_;
};

std::vector<uint32_t> columns(const Word& w) {
  std::vector<uint32_t> out;
  out.reserve(w.length());
  for (Letter l : w) out.push_back(Enumerator::column(l));
  return out;
}

}  // namespace

CosetEnumeration todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup_gens,
                              size_t limit) {
  if (!p.is_finite()) throw ContractError("todd_coxeter needs finitely many generators");
  const uint32_t gens = p.generator_count;
  for (const Word& w : subgroup_gens) {
    if (!w.empty() && w.max_generator() >= gens) {
      throw ContractError("subgroup generator uses an unknown generator");
    }
  }
  Enumerator e(gens, limit);
  std::vector<std::vector<uint32_t>> rels;
  for (const Word& r : p.relators) rels.push_back(columns(r));
  for (const Word& w : subgroup_gens) {
    e.scan_and_fill(0, columns(w));
    if (e.overflowed()) return Incomplete{e.live(), e.defined()};
  }
  for (uint32_t c = 0; c < e.defined(); ++c) {
    for (const auto& r : rels) {
      if (!e.is_live(c)) break;
      e.scan_and_fill(c, r);
      if (e.overflowed()) return Incomplete{e.live(), e.defined()};
    }
    if (e.is_live(c)) e.fill_row(c);
    if (e.overflowed()) return Incomplete{e.live(), e.defined()};
  }
  return e.finish(gens, subgroup_gens);
}

CosetEnumeration todd_coxeter(const GroupContext& ctx, const std::vector<Word>& subgroup_gens,
                              size_t limit) {
  return todd_coxeter(ctx.presentation(), subgroup_gens, limit);
}

}  // namespace cgt
