#include "ifc/surface/sexpr.hpp"

#include <cctype>

namespace ifc::surface {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view t) : t_(t) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    skip();
    while (i_ < t_.size()) {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  Sexp one() {
    skip();
    Sexp s;
    s.line = line_;
    s.col = col_;
    if (i_ >= t_.size()) throw ParseError(line_, col_, "an expression");
    char c = t_[i_];
    if (c == ')') throw ParseError(line_, col_, "an expression, not ')'");
    if (c == '(') {
      advance();
      s.list = true;
      for (;;) {
        skip();
        if (i_ >= t_.size()) throw ParseError(line_, col_, "')'");
        if (t_[i_] == ')') {
          advance();
          return s;
        }
        s.items.push_back(one());
      }
    }
    int depth = 0;
    while (i_ < t_.size()) {
      char d = t_[i_];
      if (d == '{') ++depth;
      if (d == '}') --depth;
      if (depth <= 0 && (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';')) break;
      s.atom += d;
      advance();
    }
    if (depth > 0) throw ParseError(line_, col_, "'}'");
    return s;
  }

  void skip() {
    while (i_ < t_.size()) {
      char c = t_[i_];
      if (c == ';') {
        while (i_ < t_.size() && t_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (t_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  std::string_view t_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

std::vector<Sexp> read_all(std::string_view text) { return Reader(text).all(); }

Sexp read_one(std::string_view text) {
  auto all = read_all(text);
  if (all.empty()) throw ParseError(1, 1, "an expression");
  if (all.size() > 1) all[1].fail("end of input");
  return all[0];
}

}  // namespace ifc::surface
