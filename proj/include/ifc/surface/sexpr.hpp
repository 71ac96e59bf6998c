#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ifc::surface {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::string expected)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": expected " + expected),
        line_(line), col_(col), expected_(std::move(expected)) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_, col_;
  std::string expected_;
};

struct Sexp {
  bool list = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 1, col = 1;

  bool is_atom(std::string_view s) const { return !list && atom == s; }
  bool head_is(std::string_view s) const { return list && !items.empty() && items[0].is_atom(s); }
  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(line, col, expected); }
};

// Atoms are maximal runs of non-space, non-paren characters; `{...}` is read as one atom so powerset
// labels keep their commas. `;` starts a comment.
std::vector<Sexp> read_all(std::string_view text);
Sexp read_one(std::string_view text);

}  // namespace ifc::surface
