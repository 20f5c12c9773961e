#include "cgt/families.hpp"

#include <algorithm>
#include <sstream>

namespace cgt {

namespace {

Letter column_letter(size_t c) {
  return {static_cast<uint32_t>(c / 2), static_cast<int8_t>(c % 2 ? -1 : 1)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// L normal in H: every conjugate of a listed generator of L by a listed
// generator of H (either sign) lies in L.
Tri normal_check(const SubgroupHandle& l, const SubgroupHandle& h) {
  if (l.table() && h.table()) {
    for (const Word& g : h.generators()) {
      if (!l.table()->same_subgroup(*conjugate(l, g).table())) return Tri::False;
      if (!l.table()->same_subgroup(*conjugate(l, g.inverse()).table())) return Tri::False;
    }
    return Tri::True;
  }
  Tri all = l.finitely_listed() && h.finitely_listed() ? Tri::True : Tri::Unknown;
  for (const Word& g : h.generators()) {
    for (const Word& s : {g, g.inverse()}) {
      for (const Word& x : l.generators()) {
        all = tri_and(all, l.contains(conjugate_word(x, s)));
        if (all == Tri::False) return all;
      }
    }
  }
  return all;
}

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<uint32_t> zero_row(size_t n) { return std::vector<uint32_t>(n, 0); }

}  // namespace

FamilyTruncation::FamilyTruncation(ContextPtr ctx, std::vector<SubgroupHandle> nodes)
    : ctx_(std::move(ctx)), nodes_(std::move(nodes)) {
  const size_t n = nodes_.size();
  for (const auto& h : nodes_) {
    if (h.context() != ctx_) throw ContractError("family node from a different group");
  }
  le_.assign(n, std::vector<Tri>(n, Tri::Unknown));
  normal_.assign(n, std::vector<Tri>(n, Tri::Unknown));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) le_[i][j] = i == j ? Tri::True : nodes_[i].contained_in(nodes_[j]);
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      normal_[i][j] = le_[i][j] == Tri::False ? Tri::False : tri_and(le_[i][j], normal_check(nodes_[i], nodes_[j]));
    }
  }
  const size_t cols = letter_columns();
  conj_.assign(n, std::vector<std::optional<size_t>>(cols));
  for (size_t i = 0; i < n; ++i) {
    for (size_t c = 0; c < cols; ++c) {
      try {
        conj_[i][c] = find(conjugate(nodes_[i], Word{column_letter(c)}));
      } catch (const ContractError&) {
        conj_[i][c] = std::nullopt;
      }
    }
  }
}

std::optional<size_t> FamilyTruncation::conj_by_word(size_t i, const Word& w) const {
  std::optional<size_t> cur = i;
  for (Letter l : w) {
    if (!cur) break;
    const size_t c = 2 * l.gen + (l.sign > 0 ? 0 : 1);
    if (c >= letter_columns()) return std::nullopt;
    cur = conj_[*cur][c];
  }
  return cur;
}

std::optional<size_t> FamilyTruncation::find(const SubgroupHandle& h) const {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].same_as(h) == Tri::True) return i;
  }
  return std::nullopt;
}

std::vector<size_t> FamilyTruncation::minimal_nodes() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    bool minimal = true;
    for (size_t j = 0; j < nodes_.size() && minimal; ++j) {
      if (j != i && le_[j][i] == Tri::True && le_[i][j] != Tri::True) minimal = false;
    }
    // Among equal nodes keep the first.
    for (size_t j = 0; j < i && minimal; ++j) {
      if (le_[j][i] == Tri::True && le_[i][j] == Tri::True) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<size_t> FamilyTruncation::by_increasing_index() const {
  const auto whole = SubgroupHandle::whole(ctx_);
  std::vector<std::pair<uint64_t, size_t>> keyed;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto r = index_bounded(nodes_[i], whole, 1u << 20);
    keyed.emplace_back(r.index.value_or(UINT64_MAX), i);
  }
  std::stable_sort(keyed.begin(), keyed.end());
  std::vector<size_t> out;
  for (const auto& [_, i] : keyed) out.push_back(i);
  return out;
}

std::vector<SubgroupHandle> parse_nodes(const ContextPtr& ctx, std::string_view text) {
  std::vector<SubgroupHandle> out;
  size_t start = 0;
  for (;;) {
    const size_t end = text.find(';', start);
    const std::string_view piece = trim(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (piece == "G") {
      out.push_back(SubgroupHandle::whole(ctx));
    } else if (piece.empty() || piece == "1") {
      out.push_back(SubgroupHandle::trivial(ctx));
    } else if (piece.size() > 1 && piece[0] == 'A' &&
               std::all_of(piece.begin() + 1, piece.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      out.push_back(SubgroupHandle::thompson_a(ctx, static_cast<uint32_t>(std::stoul(std::string(piece.substr(1))))));
    } else {
      out.push_back(SubgroupHandle::generated(ctx, parse_word_list(piece, ctx->alphabet())));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

namespace {

struct Fixture {
  const char* name;
  const char* group;
  const char* nodes;
};

constexpr Fixture kFixtures[] = {
    {"sym3-normal3", "sym3", "a b; G"},
    {"sym3-all", "sym3", "1; a; b; a b a; a b; G"},
    {"sym3-involutions", "sym3", "a; b; a b a; G"},
    {"sym3-involutions-trivial", "sym3", "1; a; b; a b a; G"},
    {"cyclic4-half", "cyclic(4)", "a^2; G"},
    {"klein4-all", "klein4", "1; a; b; a b; G"},
    {"klein4-half", "klein4", "a; G"},
    {"whole", "sym3", "G"},
};

}  // namespace

FamilyTruncation family_fixture(std::string_view name) {
  for (const auto& f : kFixtures) {
    if (name == f.name) {
      auto ctx = make_preset(f.group);
      return FamilyTruncation(ctx, parse_nodes(ctx, f.nodes));
    }
  }
  throw ContractError("unknown family fixture: " + std::string(name));
}

std::vector<std::string> family_fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : kFixtures) out.emplace_back(f.name);
  return out;
}

FamilyTruncation grow_truncation(const ContextPtr& ctx, std::vector<SubgroupHandle> seeds, size_t depth,
                                 size_t max_nodes) {
  std::vector<SubgroupHandle> nodes;
  auto offer = [&](const SubgroupHandle& h) {
    if (nodes.size() >= max_nodes) return;
    for (const auto& n : nodes) {
      if (n.same_as(h) == Tri::True) return;
    }
    nodes.push_back(h);
  };
  for (const auto& s : seeds) offer(s);
  const uint32_t gens = search_generator_count(*ctx);
  for (size_t round = 0; round < depth; ++round) {
    const size_t before = nodes.size();
    for (size_t i = 0; i < before; ++i) {
      for (uint32_t g = 0; g < gens; ++g) {
        for (Letter l : {pos(g), neg(g)}) {
          try {
            offer(conjugate(nodes[i], Word{l}));
          } catch (const ContractError&) {
          }
        }
      }
      for (size_t j = i + 1; j < before; ++j) {
        try {
          offer(intersect(nodes[i], nodes[j]));
        } catch (const ContractError&) {
        }
      }
    }
    if (nodes.size() == before) break;
  }
  return FamilyTruncation(ctx, std::move(nodes));
}

AdmissibilityReport check_admissible(const FamilyTruncation& fam) {
  AdmissibilityReport r;
  const GroupContext& ctx = fam.group();
  for (size_t i = 0; i < fam.size(); ++i) {
    for (size_t c = 0; c < fam.letter_columns(); ++c) {
      if (!fam.conj(i, c)) {
        r.conjugation_closed = false;
        r.violations.push_back("node " + std::to_string(i) + " conjugated by " +
                               ctx.format(Word{column_letter(c)}) + " is not a node");
      }
    }
  }
  for (size_t i = 0; i < fam.size(); ++i) {
    for (size_t j = i + 1; j < fam.size(); ++j) {
      bool found = false;
      for (size_t k = 0; k < fam.size() && !found; ++k) {
        found = fam.le(k, i) == Tri::True && fam.le(k, j) == Tri::True;
      }
      if (!found) {
        r.downward_directed = false;
        r.violations.push_back("nodes " + std::to_string(i) + " and " + std::to_string(j) +
                               " have no listed lower bound");
      }
    }
  }
  return r;
}

StabilityReport check_stable(const FamilyTruncation& fam) {
  StabilityReport r;
  for (size_t k = 0; k < fam.size(); ++k) {
    for (size_t h = 0; h < fam.size(); ++h) {
      if (fam.le(k, h) != Tri::True) continue;
      std::optional<size_t> chosen;
      for (size_t l = 0; l < fam.size() && !chosen; ++l) {
        if (fam.le(l, k) == Tri::True && fam.normal_in(l, h) == Tri::True) chosen = l;
      }
      if (!chosen) {
        r.stable = false;
        r.failing = {k, h};
        return r;
      }
      r.witnesses.push_back({k, h, *chosen});
    }
  }
  return r;
}

MatrixFp FiniteModule::matrix_of(const Word& w) const {
  MatrixFp out = MatrixFp::identity(dim, p);
  for (Letter l : w) {
    if (l.gen >= matrices.size()) throw ContractError("word uses a generator the module does not define");
    out = out * (l.sign > 0 ? matrices[l.gen] : matrices[l.gen].inverse());
  }
  return out;
}

void FiniteModule::validate(const GroupContext& ctx) const {
  if (!ctx.presentation().is_finite()) throw ContractError("modules need a finite presentation");
  if (matrices.size() != ctx.generator_count()) {
    throw ContractError("module has " + std::to_string(matrices.size()) + " matrices for " +
                        std::to_string(ctx.generator_count()) + " generators");
  }
  for (const auto& m : matrices) {
    if (m.rows() != dim || m.cols() != dim || m.prime() != p) throw ContractError("matrix shape or field mismatch");
    if (!m.invertible()) throw ContractError("generator matrix is singular");
  }
  for (const Word& r : ctx.presentation().relators) {
    if (!(matrix_of(r) == MatrixFp::identity(dim, p))) {
      throw ContractError("relator " + ctx.format(r) + " does not act trivially");
    }
  }
}

FiniteModule trivial_module(uint32_t generators, size_t dim, uint32_t p) {
  FiniteModule m{dim, p, {}};
  for (uint32_t g = 0; g < generators; ++g) m.matrices.push_back(MatrixFp::identity(dim, p));
  return m;
}

FiniteModule permutation_module(const CosetTable& table, uint32_t p) {
  FiniteModule m{table.coset_count(), p, {}};
  for (uint32_t g = 0; g < table.generator_count(); ++g) {
    MatrixFp a(m.dim, m.dim, p);
    for (uint32_t c = 0; c < m.dim; ++c) a.at(c, table.act(c, pos(g))) = 1;
    m.matrices.push_back(std::move(a));
  }
  return m;
}

FiniteModule parse_module(std::string_view text) {
  FiniteModule m;
  bool have_field = false, have_dim = false;
  std::vector<std::vector<uint32_t>> block;
  size_t line_no = 0;
  auto flush = [&](size_t line) {
    if (block.empty()) return;
    if (block.size() != m.dim) throw ParseError("matrix block has " + std::to_string(block.size()) + " rows", line, 1);
    MatrixFp a(m.dim, m.dim, m.p);
    for (size_t i = 0; i < m.dim; ++i) {
      for (size_t j = 0; j < m.dim; ++j) a.at(i, j) = block[i][j];
    }
    m.matrices.push_back(std::move(a));
    block.clear();
  };
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      flush(line_no);
      continue;
    }
    std::istringstream fields{std::string(line)};
    std::string head;
    fields >> head;
    if (head == "field" || head == "dim") {
      if (!block.empty() || !m.matrices.empty()) throw ParseError("header after matrix data", line_no, 1);
      long long v = -1;
      if (!(fields >> v) || v < 0) throw ParseError("expected a non-negative integer", line_no, head.size() + 2);
      if (head == "field") {
        if (!is_prime(static_cast<uint32_t>(v))) throw ParseError("field order must be prime", line_no, head.size() + 2);
        m.p = static_cast<uint32_t>(v);
        have_field = true;
      } else {
        m.dim = static_cast<size_t>(v);
        have_dim = true;
      }
      continue;
    }
    if (!have_dim) throw ParseError("matrix data before the dim header", line_no, 1);
    std::vector<uint32_t> row;
    size_t col = 0;
    while (col < line.size()) {
      while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col]))) ++col;
      if (col == line.size()) break;
      size_t start = col;
      if (line[col] == '-') ++col;
      while (col < line.size() && std::isdigit(static_cast<unsigned char>(line[col]))) ++col;
      const size_t column = static_cast<size_t>(line.data() - raw.data()) + start + 1;
      if (col == start || (col == start + 1 && line[start] == '-') ||
          (col < line.size() && !std::isspace(static_cast<unsigned char>(line[col])))) {
        throw ParseError("expected an integer", line_no, column);
      }
      const long long v = std::stoll(std::string(line.substr(start, col - start)));
      const long long p = static_cast<long long>(m.p);
      row.push_back(static_cast<uint32_t>(((v % p) + p) % p));
    }
    if (row.size() != m.dim) {
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(m.dim),
                       line_no, 1);
    }
    block.push_back(std::move(row));
  }
  flush(line_no + 1);
  if (!have_dim) throw ParseError("missing dim header", line_no + 1, 1);
  (void)have_field;
  return m;
}

std::string serialize_module(const FiniteModule& m) {
  std::ostringstream out;
  out << "field " << m.p << "\ndim " << m.dim << "\n";
  for (size_t g = 0; g < m.matrices.size(); ++g) {
    out << "\n";
    for (size_t i = 0; i < m.dim; ++i) {
      for (size_t j = 0; j < m.dim; ++j) out << (j ? " " : "") << m.matrices[g].at(i, j);
      out << "\n";
    }
  }
  return out.str();
}

FiniteModule restrict_module(const FiniteModule& m, const MatrixFp& basis) {
  const MatrixFp b = basis.row_reduced();
  std::vector<size_t> pivots;
  for (size_t i = 0; i < b.rows(); ++i) {
    size_t c = 0;
    while (b.at(i, c) == 0) ++c;
    pivots.push_back(c);
  }
  FiniteModule out{b.rows(), m.p, {}};
  for (const auto& a : m.matrices) {
    MatrixFp r(b.rows(), b.rows(), m.p);
    for (size_t i = 0; i < b.rows(); ++i) {
      const auto image = vec_mul(b.row(i), a);
      std::vector<uint32_t> coords(b.rows());
      for (size_t k = 0; k < b.rows(); ++k) coords[k] = image[pivots[k]];
      if (vec_mul(coords, b) != image) throw ContractError("basis does not span a submodule");
      for (size_t k = 0; k < b.rows(); ++k) r.at(i, k) = coords[k];
    }
    out.matrices.push_back(std::move(r));
  }
  return out;
}

MatrixFp fixed_space(const FiniteModule& m, const std::vector<Word>& words) {
  MatrixFp stacked(m.dim, m.dim * words.size(), m.p);
  const MatrixFp id = MatrixFp::identity(m.dim, m.p);
  for (size_t k = 0; k < words.size(); ++k) {
    const MatrixFp d = m.matrix_of(words[k]) - id;
    for (size_t i = 0; i < m.dim; ++i) {
      for (size_t j = 0; j < m.dim; ++j) stacked.at(i, k * m.dim + j) = d.at(i, j);
    }
  }
  return stacked.left_nullspace();
}

H0Result h0_S(const FiniteModule& m, const FamilyTruncation& fam) {
  H0Result r;
  r.minimal_nodes = fam.minimal_nodes();
  auto node_space = [&](size_t i) {
    if (!fam.node(i).finitely_listed()) throw ContractError("node has no finite generating set");
    return fixed_space(m, fam.node(i).generators());
  };
  std::vector<std::vector<uint32_t>> rows;
  for (size_t i : r.minimal_nodes) {
    const MatrixFp s = node_space(i);
    for (size_t k = 0; k < s.rows(); ++k) rows.push_back(s.row(k));
  }
  r.basis = span(rows, m.dim, m.p);
  for (size_t i = 0; i < fam.size(); ++i) {
    const MatrixFp s = node_space(i);
    for (size_t k = 0; k < s.rows(); ++k) r.union_consistent = r.union_consistent && in_span(r.basis, s.row(k));
  }
  for (const auto& a : m.matrices) {
    for (size_t k = 0; k < r.basis.rows(); ++k) r.invariant = r.invariant && in_span(r.basis, vec_mul(r.basis.row(k), a));
  }
  return r;
}

MatrixFp h0_G_mod_S(const FiniteModule& m, const FamilyTruncation& fam) {
  if (h0_S(m, fam).basis.rows() != m.dim) {
    throw ContractError("module is not fixed pointwise by a family member (h0_S(m) != m)");
  }
  std::vector<Word> gens;
  for (uint32_t g = 0; g < m.matrices.size(); ++g) gens.push_back(Word{pos(g)});
  return fixed_space(m, gens);
}

DerivationSpace h1_derivations(const GroupContext& ctx, const FiniteModule& m) {
  m.validate(ctx);
  const size_t n = ctx.generator_count(), d = m.dim;
  const auto& rels = ctx.presentation().relators;
  const uint32_t p = m.p;
  std::vector<MatrixFp> inverses;
  for (const auto& a : m.matrices) inverses.push_back(a.inverse());

  // System: sum_i d(x_i) C[r][i] = 0 for every relator r, with
  // d(l_1..l_L) = sum_k d(l_k) M(l_{k+1}..l_L) and d(x^-1) = -d(x) M(x)^-1.
  MatrixFp system(n * d, rels.size() * d, p);
  for (size_t ri = 0; ri < rels.size(); ++ri) {
    const Word& r = rels[ri];
    MatrixFp suffix = MatrixFp::identity(d, p);
    for (size_t k = r.length(); k-- > 0;) {
      const Letter l = r[k];
      const MatrixFp coeff = l.sign > 0 ? suffix : MatrixFp(d, d, p) - inverses[l.gen] * suffix;
      for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
          uint32_t& cell = system.at(l.gen * d + i, ri * d + j);
          cell = (cell + coeff.at(i, j)) % p;
        }
      }
      suffix = (l.sign > 0 ? m.matrices[l.gen] : inverses[l.gen]) * suffix;
    }
  }
  DerivationSpace out;
  out.basis = system.left_nullspace();
  out.dim_der = out.basis.rows();

  std::vector<std::vector<uint32_t>> inner;
  const MatrixFp id = MatrixFp::identity(d, p);
  for (size_t j = 0; j < d; ++j) {
    std::vector<uint32_t> tuple;
    for (size_t g = 0; g < n; ++g) {
      const auto part = (m.matrices[g] - id).row(j);
      tuple.insert(tuple.end(), part.begin(), part.end());
    }
    inner.push_back(std::move(tuple));
  }
  out.inner = span(inner, n * d, p);
  out.dim_inner = out.inner.rows();
  out.dim_h1 = out.dim_der - out.dim_inner;
  return out;
}

std::vector<uint32_t> evaluate_derivation(const FiniteModule& m, const std::vector<uint32_t>& tuple,
                                          const Word& w) {
  const size_t d = m.dim;
  const uint32_t p = m.p;
  std::vector<uint32_t> acc = zero_row(d);
  for (Letter l : w) {
    const std::vector<uint32_t> dx(tuple.begin() + static_cast<std::ptrdiff_t>(l.gen * d),
                                   tuple.begin() + static_cast<std::ptrdiff_t>((l.gen + 1) * d));
    if (l.sign > 0) {
      acc = vec_mul(acc, m.matrices[l.gen]);
      for (size_t i = 0; i < d; ++i) acc[i] = (acc[i] + dx[i]) % p;
    } else {
      const MatrixFp inv = m.matrices[l.gen].inverse();
      acc = vec_mul(acc, inv);
      const auto term = vec_mul(dx, inv);
      for (size_t i = 0; i < d; ++i) acc[i] = (acc[i] + p - term[i]) % p;
    }
  }
  return acc;
}

}  // namespace cgt
