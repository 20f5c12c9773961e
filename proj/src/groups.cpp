#include "cgt/groups.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cgt/thompson.hpp"

namespace cgt {

std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::CosetTable: return "coset-table";
    case OracleKind::Britton: return "britton";
    case OracleKind::ThompsonNormalForm: return "thompson-normal-form";
    case OracleKind::FreeAbelian: return "free-abelian";
    case OracleKind::Free: return "free";
  }
  return "unknown";
}

GroupContext::GroupContext(std::string name, Presentation p, OracleKind oracle, bs::Params bs,
                           size_t table_limit)
    : name_(std::move(name)), presentation_(std::move(p)), oracle_(oracle), bs_(bs) {
  if (oracle_ == OracleKind::ThompsonNormalForm && presentation_.schema != Schema::Thompson) {
    throw ContractError("thompson-normal-form oracle needs the Thompson schema");
  }
  if (oracle_ == OracleKind::Britton && presentation_.generator_count != 2) {
    throw ContractError("britton oracle needs generators x, y");
  }
  for (const Word& r : presentation_.relators) {
    if (r.empty()) throw ContractError("relators must be nonempty");
  }
  if (oracle_ == OracleKind::CosetTable) {
    auto result = todd_coxeter(presentation_, {}, table_limit);
    if (auto* table = std::get_if<CosetTable>(&result)) {
      regular_ = std::make_shared<const CosetTable>(std::move(*table));
    }
  }
}

std::optional<size_t> GroupContext::order() const {
  if (regular_) return regular_->coset_count();
  if (oracle_ == OracleKind::FreeAbelian && presentation_.generator_count == 0) return 1;
  return std::nullopt;
}

std::vector<int64_t> GroupContext::exponent_vector(const Word& w) const {
  std::vector<int64_t> v(presentation_.generator_count, 0);
  for (Letter l : w) v.at(l.gen) += l.sign;
  return v;
}

Tri GroupContext::is_trivial(const Word& w) const {
  switch (oracle_) {
    case OracleKind::CosetTable:
      if (!regular_) return Tri::Unknown;
      return to_tri(regular_->coset_of(w) == 0);
    case OracleKind::Britton:
      return to_tri(bs::is_trivial(w, bs_));
    case OracleKind::ThompsonNormalForm:
      return to_tri(thompson::is_trivial(w));
    case OracleKind::FreeAbelian: {
      auto v = exponent_vector(w);
      return to_tri(std::all_of(v.begin(), v.end(), [](int64_t e) { return e == 0; }));
    }
    case OracleKind::Free:
      return to_tri(w.empty());
  }
  return Tri::Unknown;
}

std::optional<Word> GroupContext::normal_form(const Word& w) const {
  switch (oracle_) {
    case OracleKind::CosetTable:
      if (!regular_) return std::nullopt;
      return regular_->representative(regular_->coset_of(w));
    case OracleKind::Britton:
      return bs::britton_reduce(w, bs_).to_word();
    case OracleKind::ThompsonNormalForm:
      return thompson::f_normal_form(w).to_word();
    case OracleKind::FreeAbelian: {
      auto v = exponent_vector(w);
      Word out;
      for (uint32_t i = 0; i < v.size(); ++i) out *= Word::power(i, v[i]);
      return out;
    }
    case OracleKind::Free:
      return w;
  }
  return std::nullopt;
}

PowerLog GroupContext::power_log(const Word& w, const Word& c, int64_t bound) const {
  if (is_trivial(w) == Tri::True) return {Tri::True, 0};
  switch (oracle_) {
    case OracleKind::FreeAbelian: {
      auto vw = exponent_vector(w);
      auto vc = exponent_vector(c);
      size_t p = 0;
      while (p < vc.size() && vc[p] == 0) ++p;
      if (p == vc.size()) return {Tri::False, 0};
      if (vw[p] % vc[p] != 0) return {Tri::False, 0};
      const int64_t k = vw[p] / vc[p];
      for (size_t i = 0; i < vc.size(); ++i) {
        if (vw[i] != k * vc[i]) return {Tri::False, 0};
      }
      return {Tri::True, k};
    }
    case OracleKind::Free: {
      // |c^k| >= |k| for c != 1, so |k| <= |w|.
      if (c.empty()) return {Tri::False, 0};
      Word up = c;
      Word down = c.inverse();
      const int64_t limit = static_cast<int64_t>(w.length());
      for (int64_t k = 1; k <= limit; ++k) {
        if (up == w) return {Tri::True, k};
        if (down == w) return {Tri::True, -k};
        up *= c;
        down *= c.inverse();
      }
      return {Tri::False, 0};
    }
    case OracleKind::Britton: {
      auto fc = bs::britton_reduce(c, bs_).as_x_power();
      if (fc && *fc != 0) {
        auto fw = bs::britton_reduce(w, bs_).as_x_power();
        if (!fw || *fw % *fc != 0) return {Tri::False, 0};
        return {Tri::True, *fw / *fc};
      }
      break;
    }
    case OracleKind::CosetTable:
      if (regular_) bound = static_cast<int64_t>(regular_->coset_count());
      break;
    case OracleKind::ThompsonNormalForm:
      break;
  }
  Word up = c;
  Word down = c.inverse();
  for (int64_t k = 1; k <= bound; ++k) {
    if (equal(up, w) == Tri::True) return {Tri::True, k};
    if (equal(down, w) == Tri::True) return {Tri::True, -k};
    up *= c;
    down *= c.inverse();
  }
  if (oracle_ == OracleKind::CosetTable && regular_) return {Tri::False, 0};
  return {Tri::Unknown, 0};
}

Tri is_trivial(const GroupContext& ctx, const Word& w) { return ctx.is_trivial(w); }

AbelianInvariants abelianization(const Presentation& p) {
  if (!p.is_finite()) throw ContractError("abelianization needs a finite presentation");
  const size_t rows = p.relators.size();
  const size_t cols = p.generator_count;
  std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(cols, 0));
  for (size_t r = 0; r < rows; ++r) {
    for (Letter l : p.relators[r]) a[r][l.gen] += l.sign;
  }
  // Smith reduction: repeatedly bring the smallest nonzero entry to the pivot
  // and clear its row and column.
  std::vector<int64_t> diagonal;
  size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      size_t pr = rows, pc = cols;
      for (size_t i = t; i < rows; ++i) {
        for (size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) break;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        const int64_t q = a[i][t] / a[t][t];
        for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        const int64_t q = a[t][j] / a[t][t];
        for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide the remaining block.
      bool divides = true;
      for (size_t i = t + 1; i < rows && divides; ++i) {
        for (size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] == 0) break;
    diagonal.push_back(std::llabs(a[t][t]));
  }
  AbelianInvariants inv;
  inv.free_rank = static_cast<uint32_t>(cols - diagonal.size());
  for (int64_t d : diagonal) {
    if (d > 1) inv.torsion.push_back(d);
  }
  return inv;
}

namespace {

Presentation finite_presentation(std::vector<std::string> names, std::vector<Word> rels) {
  Presentation p;
  p.generator_count = static_cast<uint32_t>(names.size());
  p.alphabet = Alphabet(std::move(names));
  p.relators = std::move(rels);
  return p;
}

std::vector<std::string> zn_names(uint32_t k) {
  if (k == 1) return {"t"};
  if (k == 2) return {"u", "v"};
  if (k == 3) return {"u", "v", "w"};
  std::vector<std::string> names;
  for (uint32_t i = 0; i < k; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// Parses "name(a)" or "name(a,b)".
std::optional<std::vector<int64_t>> call_args(std::string_view text, std::string_view name) {
  if (text.size() < name.size() + 2 || text.substr(0, name.size()) != name ||
      text[name.size()] != '(' || text.back() != ')') {
    return std::nullopt;
  }
  std::string_view body = text.substr(name.size() + 1, text.size() - name.size() - 2);
  std::vector<int64_t> args;
  size_t start = 0;
  for (;;) {
    size_t comma = body.find(',', start);
    std::string_view part = body.substr(start, comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) return std::nullopt;
    args.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return args;
}

}  // namespace

ContextPtr make_preset(std::string_view name) {
  if (auto args = call_args(name, "bs"); args && args->size() == 2) {
    const bs::Params params{(*args)[0], (*args)[1]};
    if (params.m <= 0 || params.n <= 0) throw ContractError("bs(m,n) needs m, n > 0");
    // y^-1 x^m y x^-n
    Word rel = Word{neg(1)} * Word::power(0, params.m) * Word{pos(1)} * Word::power(0, -params.n);
    return std::make_shared<const GroupContext>(std::string(name),
                                                finite_presentation({"x", "y"}, {rel}),
                                                OracleKind::Britton, params);
  }
  if (name == "thompson-f") {
    Presentation p;
    p.schema = Schema::Thompson;
    return std::make_shared<const GroupContext>("thompson-f", p, OracleKind::ThompsonNormalForm);
  }
  if (auto args = call_args(name, "zn"); args && args->size() == 1 && (*args)[0] >= 0) {
    const auto k = static_cast<uint32_t>((*args)[0]);
    std::vector<Word> rels;
    for (uint32_t i = 0; i < k; ++i) {
      for (uint32_t j = i + 1; j < k; ++j) rels.push_back(Word{neg(i), neg(j), pos(i), pos(j)});
    }
    return std::make_shared<const GroupContext>(std::string(name),
                                                finite_presentation(zn_names(k), rels),
                                                OracleKind::FreeAbelian);
  }
  if (auto args = call_args(name, "free"); args && args->size() == 1 && (*args)[0] >= 0) {
    const auto k = static_cast<uint32_t>((*args)[0]);
    std::vector<std::string> names;
    const char* small[] = {"a", "b", "c", "d"};
    for (uint32_t i = 0; i < k; ++i) names.push_back(k <= 4 ? small[i] : "x" + std::to_string(i));
    return std::make_shared<const GroupContext>(std::string(name),
                                                finite_presentation(names, {}), OracleKind::Free);
  }
  if (auto args = call_args(name, "cyclic"); args && args->size() == 1 && (*args)[0] > 0) {
    return std::make_shared<const GroupContext>(
        std::string(name), finite_presentation({"a"}, {Word::power(0, (*args)[0])}),
        OracleKind::CosetTable);
  }
  if (name == "sym3") {
    const Word a{pos(0)}, b{pos(1)};
    return std::make_shared<const GroupContext>(
        "sym3", finite_presentation({"a", "b"}, {a.pow(2), b.pow(2), (a * b).pow(3)}),
        OracleKind::CosetTable);
  }
  if (name == "klein4") {
    const Word a{pos(0)}, b{pos(1)};
    return std::make_shared<const GroupContext>(
        "klein4", finite_presentation({"a", "b"}, {a.pow(2), b.pow(2), (a * b).pow(2)}),
        OracleKind::CosetTable);
  }
  throw ContractError("unknown group preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"bs(m,n)", "thompson-f", "zn(k)", "sym3", "cyclic(n)", "klein4", "free(k)"};
}

namespace {

std::string_view trim(std::string_view s, size_t* offset = nullptr) {
  size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (offset) *offset += b;
  return s.substr(b, e - b);
}

// Splits a rels value into top-level atoms, returning (offset, text) pairs.
std::vector<std::pair<size_t, std::string_view>> top_level_atoms(std::string_view s, size_t line,
                                                                 size_t base) {
  std::vector<std::pair<size_t, std::string_view>> out;
  if (s.find(',') != std::string_view::npos) {
    size_t start = 0;
    for (;;) {
      size_t comma = s.find(',', start);
      size_t off = start;
      std::string_view part = trim(s.substr(start, comma - start), &off);
      if (part.empty()) throw ParseError("empty relator", line, base + off + 1);
      out.emplace_back(off, part);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    size_t start = i;
    if (s[i] == '(') {
      int depth = 0;
      for (; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth == 0) break;
      }
      if (i == s.size()) throw ParseError("missing ')'", line, base + start + 1);
      ++i;
    } else {
      while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '(' && s[i] != '^') ++i;
    }
    if (i < s.size() && s[i] == '^') {
      ++i;
      while (i < s.size() && (s[i] == '-' || s[i] == '+' || std::isdigit(static_cast<unsigned char>(s[i])))) ++i;
    }
    out.emplace_back(start, s.substr(start, i - start));
  }
  return out;
}

OracleKind parse_oracle(std::string_view v, bs::Params& params, size_t line, size_t col) {
  if (v == "coset-table") return OracleKind::CosetTable;
  if (v == "thompson-normal-form") return OracleKind::ThompsonNormalForm;
  if (v == "free-abelian") return OracleKind::FreeAbelian;
  if (v == "free") return OracleKind::Free;
  if (v == "britton") return OracleKind::Britton;
  if (auto args = call_args(v, "britton"); args && args->size() == 2) {
    params = {(*args)[0], (*args)[1]};
    return OracleKind::Britton;
  }
  throw ParseError("unknown oracle '" + std::string(v) + "'", line, col);
}

}  // namespace

PresentationFile parse_presentation(std::string_view text) {
  PresentationFile file;
  bool have_gens = false, have_rels = false;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    size_t lead = 0;
    std::string_view body = trim(line, &lead);
    if (body.empty() || body.front() == '#') continue;
    size_t colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'key: value'", line_no, lead + 1);
    std::string_view key = trim(body.substr(0, colon));
    size_t voff = lead + colon + 1;
    std::string_view value = trim(body.substr(colon + 1), &voff);
    if (key == "gens") {
      if (have_gens) throw ParseError("duplicate gens line", line_no, lead + 1);
      std::vector<std::string> names;
      std::istringstream in{std::string(value)};
      for (std::string n; in >> n;) {
        if (!std::isalpha(static_cast<unsigned char>(n[0]))) {
          throw ParseError("generator names must start with a letter", line_no,
                           voff + value.find(n) + 1);
        }
        if (std::find(names.begin(), names.end(), n) != names.end()) {
          throw ParseError("duplicate generator '" + n + "'", line_no, voff + 1);
        }
        names.push_back(n);
      }
      file.presentation.generator_count = static_cast<uint32_t>(names.size());
      file.presentation.alphabet = Alphabet(std::move(names));
      have_gens = true;
    } else if (key == "rels") {
      if (!have_gens) throw ParseError("'rels' before 'gens'", line_no, lead + 1);
      if (have_rels) throw ParseError("duplicate rels line", line_no, lead + 1);
      for (auto [off, atom] : top_level_atoms(value, line_no, voff)) {
        Word r = parse_word(atom, file.presentation.alphabet, line_no, voff + off);
        if (!r.empty() && r.max_generator() >= file.presentation.generator_count) {
          throw ParseError("relator uses an undeclared generator", line_no, voff + off + 1);
        }
        if (r.empty()) throw ParseError("relator reduces to the empty word", line_no, voff + off + 1);
        file.presentation.relators.push_back(std::move(r));
      }
      have_rels = true;
    } else if (key == "oracle") {
      file.oracle = parse_oracle(value, file.bs, line_no, voff + 1);
    } else if (key == "schema") {
      if (value != "thompson") throw ParseError("unknown schema", line_no, voff + 1);
      if (have_gens) throw ParseError("schema groups take no gens line", line_no, lead + 1);
      file.presentation.schema = Schema::Thompson;
      file.oracle = OracleKind::ThompsonNormalForm;
      have_gens = true;
      have_rels = true;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, lead + 1);
    }
  }
  if (!have_gens) throw ParseError("missing 'gens' line", line_no, 1);
  return file;
}

namespace {

std::string format_relator(const Word& r, const Alphabet& alphabet) {
  // Single-letter runs print bare; other relators print as a parenthesized
  // primitive root with an outer exponent.
  const auto letters = r.letters();
  if (std::all_of(letters.begin(), letters.end(), [&](Letter l) { return l == letters[0]; })) {
    return format_word(r, alphabet);
  }
  const size_t n = letters.size();
  for (size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    bool ok = true;
    for (size_t i = period; i < n && ok; ++i) ok = letters[i] == letters[i - period];
    if (ok) {
      Word root(letters.subspan(0, period));
      return "(" + format_word(root, alphabet) + ")^" + std::to_string(n / period);
    }
  }
  return "(" + format_word(r, alphabet) + ")";
}

}  // namespace

std::string serialize_presentation(const PresentationFile& file) {
  std::ostringstream out;
  const Presentation& p = file.presentation;
  if (p.schema == Schema::Thompson) {
    out << "schema: thompson\n";
    return out.str();
  }
  out << "gens:";
  for (uint32_t i = 0; i < p.generator_count; ++i) out << ' ' << p.alphabet.name(i);
  out << "\nrels:";
  for (const Word& r : p.relators) out << ' ' << format_relator(r, p.alphabet);
  out << "\noracle: " << to_string(file.oracle);
  if (file.oracle == OracleKind::Britton) out << '(' << file.bs.m << ',' << file.bs.n << ')';
  out << '\n';
  return out.str();
}

ContextPtr make_context(std::string name, const PresentationFile& file) {
  return std::make_shared<const GroupContext>(std::move(name), file.presentation, file.oracle,
                                              file.bs);
}

ContextPtr load_group(std::string_view source) {
  std::ifstream in{std::string(source)};
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    return make_context(std::string(source), parse_presentation(buf.str()));
  }
  return make_preset(source);
}

}  // namespace cgt
