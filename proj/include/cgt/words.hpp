#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cgt {

// A signed generator letter x_i^{+1} or x_i^{-1}.
struct Letter {
  uint32_t gen = 0;
  int8_t sign = 1;

  constexpr Letter inverse() const { return {gen, static_cast<int8_t>(-sign)}; }
  constexpr bool cancels(Letter other) const {
    return gen == other.gen && sign == -other.sign;
  }

  friend constexpr bool operator==(Letter, Letter) = default;
  // Letter order used by shortlex: index first, positive before negative.
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return b.sign <=> a.sign;
  }
};

constexpr Letter pos(uint32_t g) { return {g, 1}; }
constexpr Letter neg(uint32_t g) { return {g, -1}; }

// Freely reduced word. Every constructor reduces, so two words are equal in
// the free group iff their letter sequences are equal.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw);

  // x_gen^exponent
  static Word power(uint32_t gen, int64_t exponent);

  std::span<const Letter> letters() const { return letters_; }
  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  Word pow(int64_t e) const;
  // Appends one letter with reduction.
  void push_back(Letter l);

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

  uint32_t max_generator() const;

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> raw);
Word invert(const Word& w);
// Free reduction of g^-1 w g.
Word conjugate_word(const Word& w, const Word& g);
int64_t exponent_sum(const Word& w);
// Exponent sum of the letters of one generator.
int64_t exponent_sum(const Word& w, uint32_t gen);

struct WordHash {
  size_t operator()(const Word& w) const noexcept;
};

// Generator names for parsing and printing. Index form `x<k>` is always
// accepted; an alias listed here takes precedence.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}

  const std::vector<std::string>& names() const { return names_; }
  // Returns the index of `name`, or -1.
  int64_t lookup(std::string_view name) const;
  std::string name(uint32_t gen) const;

 private:
  std::vector<std::string> names_;
};

// Parses whitespace-separated atoms `a`, `a^e`, `x3^-1`, `(a b)^3`.
// Throws ParseError with the column of the first offending character.
Word parse_word(std::string_view text, const Alphabet& alphabet = {},
                size_t line = 1, size_t column_offset = 0);
// Comma-separated list of words; an empty string gives an empty list.
std::vector<Word> parse_word_list(std::string_view text,
                                  const Alphabet& alphabet = {});

// Inverse of parse_word: runs of a letter print as `a^e`.
std::string format_word(const Word& w, const Alphabet& alphabet = {});

// All freely reduced words of length exactly n over generators [0, gens),
// in shortlex order.
std::vector<Word> words_of_length(uint32_t gens, size_t n);
// Visits reduced words of length <= max_len in shortlex order; stops early
// when the visitor returns false.
void for_each_word(uint32_t gens, size_t max_len,
                   const std::function<bool(const Word&)>& visit);

}  // namespace cgt
