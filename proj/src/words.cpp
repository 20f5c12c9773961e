#include "cgt/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "cgt/common.hpp"

namespace cgt {

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (Letter l : raw) push_back(l);
}

Word::Word(std::initializer_list<Letter> raw)
    : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

Word Word::power(uint32_t gen, int64_t exponent) {
  Word w;
  Letter l = exponent >= 0 ? pos(gen) : neg(gen);
  w.letters_.assign(static_cast<size_t>(std::llabs(exponent)), l);
  return w;
}

void Word::push_back(Letter l) {
  if (l.sign != 1 && l.sign != -1) throw ContractError("letter sign must be +1 or -1");
  if (!letters_.empty() && letters_.back().cancels(l)) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  return w;
}

Word Word::pow(int64_t e) const {
  Word base = e >= 0 ? *this : inverse();
  Word out;
  for (int64_t i = 0; i < std::llabs(e); ++i) out *= base;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  for (Letter l : rhs.letters_) push_back(l);
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end());
}

uint32_t Word::max_generator() const {
  uint32_t m = 0;
  for (Letter l : letters_) m = std::max(m, l.gen);
  return m;
}

Word free_reduce(std::span<const Letter> raw) { return Word(raw); }

Word invert(const Word& w) { return w.inverse(); }

Word conjugate_word(const Word& w, const Word& g) { return g.inverse() * w * g; }

int64_t exponent_sum(const Word& w) {
  int64_t s = 0;
  for (Letter l : w) s += l.sign;
  return s;
}

int64_t exponent_sum(const Word& w, uint32_t gen) {
  int64_t s = 0;
  for (Letter l : w) {
    if (l.gen == gen) s += l.sign;
  }
  return s;
}

size_t WordHash::operator()(const Word& w) const noexcept {
  size_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= (static_cast<size_t>(l.gen) << 1) | (l.sign > 0 ? 1u : 0u);
    h *= 1099511628211ull;
  }
  return h;
}

int64_t Alphabet::lookup(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int64_t>(i);
  }
  return -1;
}

std::string Alphabet::name(uint32_t gen) const {
  if (gen < names_.size()) return names_[gen];
  return "x" + std::to_string(gen);
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const Alphabet& alphabet, size_t line, size_t column_offset)
      : text_(text), alphabet_(alphabet), line_(line), column_offset_(column_offset) {}

  Word parse() {
    Word w = sequence();
    skip_space();
    if (pos_ < text_.size()) fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, column_offset_ + pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Word sequence() {
    Word w;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return w;
      w *= atom();
    }
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Word atom() {
    Word base;
    if (text_[pos_] == '(') {
      ++pos_;
      base = sequence();
      if (pos_ >= text_.size()) fail("missing ')'");
      ++pos_;
    } else if (text_[pos_] == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string_view ident = text_.substr(start, pos_ - start);
      int64_t idx = alphabet_.lookup(ident);
      if (idx < 0) idx = index_form(ident);
      if (idx < 0) {
        pos_ = start;
        fail("unknown generator '" + std::string(ident) + "'");
      }
      base = Word{pos(static_cast<uint32_t>(idx))};
    } else {
      fail("unexpected character");
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return base.pow(exponent());
    }
    return base;
  }

  static int64_t index_form(std::string_view ident) {
    if (ident.size() < 2 || ident[0] != 'x') return -1;
    int64_t k = 0;
    auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), k);
    if (ec != std::errc() || ptr != ident.data() + ident.size() || k < 0) return -1;
    return k;
  }

  int64_t exponent() {
    size_t start = pos_;
    if (pos_ >= text_.size()) fail("missing exponent");
    if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int64_t e = 0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, e);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed exponent");
    }
    if (e == 0) {
      pos_ = start;
      fail("exponent must be nonzero");
    }
    return e;
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  size_t line_;
  size_t column_offset_;
  size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet, size_t line,
                size_t column_offset) {
  return WordParser(text, alphabet, line, column_offset).parse();
}

std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  size_t start = 0;
  for (;;) {
    size_t comma = text.find(',', start);
    out.push_back(parse_word(text.substr(start, comma - start), alphabet, 1, start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  auto letters = w.letters();
  for (size_t i = 0; i < letters.size();) {
    size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    int64_t e = static_cast<int64_t>(j - i) * letters[i].sign;
    if (!out.empty()) out += ' ';
    out += alphabet.name(letters[i].gen);
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

namespace {

void extend(uint32_t gens, size_t remaining, std::vector<Letter>& prefix,
            const std::function<bool(const Word&)>& visit, bool& stop) {
  if (stop) return;
  if (remaining == 0) {
    if (!visit(Word(prefix))) stop = true;
    return;
  }
  for (uint32_t g = 0; g < gens && !stop; ++g) {
    for (int8_t s : {int8_t{1}, int8_t{-1}}) {
      Letter l{g, s};
      if (!prefix.empty() && prefix.back().cancels(l)) continue;
      prefix.push_back(l);
      extend(gens, remaining - 1, prefix, visit, stop);
      prefix.pop_back();
      if (stop) return;
    }
  }
}

}  // namespace

void for_each_word(uint32_t gens, size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
  bool stop = false;
  std::vector<Letter> prefix;
  for (size_t n = 0; n <= max_len && !stop; ++n) extend(gens, n, prefix, visit, stop);
}

std::vector<Word> words_of_length(uint32_t gens, size_t n) {
  std::vector<Word> out;
  bool stop = false;
  std::vector<Letter> prefix;
  extend(gens, n, prefix, [&](const Word& w) { out.push_back(w); return true; }, stop);
  return out;
}

}  // namespace cgt
