#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cgt {

// Three-valued answer for every question whose decision rests on a bounded
// enumeration. Unknown means a bound was exhausted, never "probably false".
enum class Tri { False, True, Unknown };

constexpr Tri to_tri(bool b) { return b ? Tri::True : Tri::False; }

constexpr Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

constexpr std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

// Malformed textual input (words, presentations, matrices, node lists).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t line, size_t column)
      : std::runtime_error(msg + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  size_t line() const noexcept { return line_; }
  size_t column() const noexcept { return column_; }

 private:
  size_t line_;
  size_t column_;
};

// A precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cgt
