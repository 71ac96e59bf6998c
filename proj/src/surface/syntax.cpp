#include "ifc/surface/syntax.hpp"

#include <algorithm>
#include <type_traits>

namespace ifc::surface {

using K = Type::Kind;

Type parse_type(const Sexp& s) {
  if (!s.list) {
    if (s.atom == "unit") return Type::unit();
    if (s.atom == "label") return Type::label();
    if (s.atom == "bool") return Type::boolean();
    s.fail("a type");
  }
  if (s.items.empty() || s.items[0].list) s.fail("a type constructor");
  const std::string& h = s.items[0].atom;
  auto arity = [&](std::size_t n) {
    if (s.items.size() != n + 1) s.fail(h + " with " + std::to_string(n) + " argument(s)");
  };
  if (h == "->" || h == "+" || h == "*") {
    arity(2);
    Type a = parse_type(s.items[1]), b = parse_type(s.items[2]);
    if (h == "->") return Type::fun(a, b);
    if (h == "+") return Type::sum(a, b);
    return Type::prod(a, b);
  }
  if (h == "ref") {
    arity(2);
    const Sexp& m = s.items[1];
    if (m.is_atom("I")) return Type::ref(RefMode::Insensitive, parse_type(s.items[2]));
    if (m.is_atom("S")) return Type::ref(RefMode::Sensitive, parse_type(s.items[2]));
    m.fail("reference kind I or S");
  }
  if (h == "lio") {
    arity(1);
    return Type::lio(parse_type(s.items[1]));
  }
  if (h == "labeled") {
    arity(1);
    return Type::labeled(parse_type(s.items[1]));
  }
  s.items[0].fail("a type constructor");
}

Type parse_type(std::string_view text) { return parse_type(read_one(text)); }

namespace {

template <class Op>
struct Calc;

template <>
struct Calc<fg::Op> {
  static constexpr bool coarse = false;
  static int binds(fg::Op op, std::size_t i) { return fg::binds(op, i); }
};

template <>
struct Calc<cg::Op> {
  static constexpr bool coarse = true;
  static int binds(cg::Op op, std::size_t i) { return cg::binds(op, i); }
};

template <class Op>
class Parser {
  using Expr = Term<Op>;
  using Node = typename Expr::Node;

 public:
  Parser(const Lattice& lat, Scope scope) : lat_(lat), scope_(std::move(scope)) {}

  Expr expr(const Sexp& s) {
    if (!s.list) return atom(s);
    if (s.items.empty()) s.fail("a non-empty form");
    const Sexp& head = s.items[0];
    if (head.list) head.fail("a form keyword");
    const std::string& h = head.atom;
    auto need = [&](std::size_t n) {
      if (s.items.size() != n + 1) s.fail("(" + h + ") with " + std::to_string(n) + " operand(s)");
    };
    auto sub = [&](std::size_t i) { return expr(s.items[i]); };

    if (h == "lam") {
      // (lam x : T e) | (lam x e)
      std::optional<Type> annot;
      std::size_t body = 2;
      if (s.items.size() == 5 && s.items[2].is_atom(":")) {
        annot = parse_type(s.items[3]);
        body = 4;
      } else {
        need(2);
      }
      auto e = under(binder(s.items[1]), s.items[body]);
      return lam(std::move(annot), std::move(e));
    }
    if (h == "app") {
      if (s.items.size() < 3) s.fail("(app f a ...)");
      Expr f = sub(1);
      for (std::size_t i = 2; i < s.items.size(); ++i) f = mk(Op::App, {f, sub(i)});
      return f;
    }
    if (h == "let") {
      if constexpr (Calc<Op>::coarse) head.fail("a coarse-grained form (use bind)");
      need(3);
      Expr bound = sub(2);
      return mk(Op::App, {lam(std::nullopt, under(binder(s.items[1]), s.items[3])), bound});
    }
    if (h == "seq") {
      if (s.items.size() < 3) s.fail("(seq e1 e2 ...)");
      return seq_from(s, 1);
    }
    if (h == "do") {
      if constexpr (!Calc<Op>::coarse) head.fail("a fine-grained form (use let)");
      if (s.items.size() < 2) s.fail("(do ... e)");
      return do_from(s, 1);
    }
    if (h == "pair") {
      need(2);
      return mk(Op::Pair, {sub(1), sub(2)});
    }
    if (h == "fst" || h == "snd") {
      need(1);
      return mk(h == "fst" ? Op::Fst : Op::Snd, {sub(1)});
    }
    if (h == "inl" || h == "inr") {
      Node n;
      n.op = h == "inl" ? Op::Inl : Op::Inr;
      if (s.items.size() == 4 && s.items[2].is_atom(":")) {
        n.annot = parse_type(s.items[3]);
      } else {
        need(1);
      }
      n.kids = {sub(1)};
      return Expr(std::move(n));
    }
    if (h == "case") {
      need(5);
      Expr scrut = sub(1);
      Expr l = under(binder(s.items[2]), s.items[3]);
      Expr r = under(binder(s.items[4]), s.items[5]);
      return mk(Op::Case, {scrut, l, r});
    }
    if (h == "if") {
      need(3);
      Expr c = sub(1);
      return mk(Op::Case, {c, drop0(sub(2)), drop0(sub(3))});
    }
    if (h == "get-label") {
      need(0);
      return mk(Op::GetLabel, {});
    }
    if (h == "label-of") {
      need(1);
      return mk(Op::LabelOf, {sub(1)});
    }
    if (h == "flows-to") {
      need(2);
      return mk(Op::FlowsTo, {sub(1), sub(2)});
    }
    if (h == "taint") {
      if constexpr (Calc<Op>::coarse) {
        need(1);
        return mk(Op::Taint, {sub(1)});
      } else {
        need(2);
        return mk(Op::Taint, {sub(1), sub(2)});
      }
    }
    if (h == "ref-I" || h == "ref-S") {
      need(1);
      Node n;
      n.op = Op::New;
      n.mode = h == "ref-I" ? RefMode::Insensitive : RefMode::Sensitive;
      n.kids = {sub(1)};
      return Expr(std::move(n));
    }
    if (h == "!") {
      need(1);
      return mk(Op::Read, {sub(1)});
    }
    if (h == ":=") {
      need(2);
      return mk(Op::Write, {sub(1), sub(2)});
    }
    if (h == "label-of-ref") {
      need(1);
      return mk(Op::LabelOfRef, {sub(1)});
    }
    if (h == "wken") {
      need(2);
      const Sexp& names = s.items[1];
      if (!names.list) names.fail("a list of names to drop");
      std::vector<std::uint32_t> drops;
      for (const auto& n : names.items) {
        auto i = lookup(n);
        if (!i) n.fail("a bound variable");
        drops.push_back(*i);
      }
      std::sort(drops.begin(), drops.end());
      drops.erase(std::unique(drops.begin(), drops.end()), drops.end());
      Scope saved = scope_;
      for (auto it = drops.rbegin(); it != drops.rend(); ++it)
        scope_.erase(scope_.end() - 1 - static_cast<std::ptrdiff_t>(*it));
      Expr body = sub(2);
      scope_ = std::move(saved);
      Node n;
      n.op = Op::Wken;
      n.drops = std::move(drops);
      n.kids = {body};
      return Expr(std::move(n));
    }
    if constexpr (Calc<Op>::coarse) {
      if (h == "return") {
        need(1);
        return mk(Op::Return, {sub(1)});
      }
      if (h == "bind") {
        need(3);
        Expr first = sub(1);
        return mk(Op::Bind, {first, under(binder(s.items[2]), s.items[3])});
      }
      if (h == "unlabel") {
        need(1);
        return mk(Op::Unlabel, {sub(1)});
      }
      if (h == "tolabeled") {
        need(1);
        return mk(Op::ToLabeled, {sub(1)});
      }
    }
    head.fail("a known form, got '" + h + "'");
  }

 private:
  Expr atom(const Sexp& s) {
    if (s.atom == "unit") return mk(Op::Unit, {});
    if (s.atom == "true" || s.atom == "false") {
      Node n;
      n.op = s.atom == "true" ? Op::Inl : Op::Inr;
      n.annot = Type::unit();
      n.kids = {mk(Op::Unit, {})};
      return Expr(std::move(n));
    }
    if (s.atom == "get-label") return mk(Op::GetLabel, {});
    if (auto i = lookup(s)) {
      Node n;
      n.op = Op::Var;
      n.index = *i;
      return Expr(std::move(n));
    }
    if (auto l = lat_.find(s.atom)) {
      Node n;
      n.op = Op::Lbl;
      n.label = *l;
      return Expr(std::move(n));
    }
    s.fail("a bound variable or lattice point, got '" + s.atom + "'");
  }

  std::optional<std::uint32_t> lookup(const Sexp& s) const {
    if (s.list) return std::nullopt;
    for (std::size_t i = 0; i < scope_.size(); ++i)
      if (scope_[scope_.size() - 1 - i] == s.atom) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  static const std::string& binder(const Sexp& s) {
    if (s.list || s.atom.empty()) s.fail("a binder name");
    return s.atom;
  }

  Expr under(const std::string& name, const Sexp& body) {
    scope_.push_back(name);
    Expr e = expr(body);
    scope_.pop_back();
    return e;
  }

  // A body parsed without the binder, then wrapped so the binder is dropped.
  Expr drop0(Expr e) {
    Node n;
    n.op = Op::Wken;
    n.drops = {0};
    n.kids = {std::move(e)};
    return Expr(std::move(n));
  }

  Expr seq_from(const Sexp& s, std::size_t i) {
    if (i + 1 == s.items.size()) return expr(s.items[i]);
    Expr first = expr(s.items[i]);
    Expr rest = drop0(seq_from(s, i + 1));
    if constexpr (Calc<Op>::coarse) return mk(Op::Bind, {first, rest});
    else return mk(Op::App, {lam(std::nullopt, rest), first});
  }

  // (do (<- x e) e ... e)
  Expr do_from(const Sexp& s, std::size_t i) {
    const Sexp& item = s.items[i];
    bool last = i + 1 == s.items.size();
    if (item.head_is("<-")) {
      if (last) item.fail("a final computation after the binding");
      if (item.items.size() != 3) item.fail("(<- x e)");
      Expr first = expr(item.items[2]);
      return bind_node(first, under_do(binder(item.items[1]), s, i + 1));
    }
    if (last) return expr(item);
    Expr first = expr(item);
    return bind_node(first, drop0(do_from(s, i + 1)));
  }

  static Expr bind_node(Expr first, Expr rest) {
    if constexpr (Calc<Op>::coarse) return mk(Op::Bind, {std::move(first), std::move(rest)});
    else return mk(Op::App, {lam(std::nullopt, std::move(rest)), std::move(first)});
  }

  Expr under_do(const std::string& name, const Sexp& s, std::size_t i) {
    scope_.push_back(name);
    Expr e = do_from(s, i);
    scope_.pop_back();
    return e;
  }

  static Expr mk(Op op, std::vector<Expr> kids) {
    Node n;
    n.op = op;
    n.kids = std::move(kids);
    return Expr(std::move(n));
  }

  static Expr lam(std::optional<Type> annot, Expr body) {
    Node n;
    n.op = Op::Lam;
    n.annot = std::move(annot);
    n.kids = {std::move(body)};
    return Expr(std::move(n));
  }

  const Lattice& lat_;
  Scope scope_;
};

template <class Op>
class Printer {
  using Expr = Term<Op>;

 public:
  Printer(const Lattice& lat, Scope scope) : lat_(lat), scope_(std::move(scope)) {}

  void expr(const Expr& e) {
    switch (e.op()) {
      case Op::Var: out_ += name_of(e.index()); return;
      case Op::Unit: out_ += "unit"; return;
      case Op::Lbl: out_ += lat_.name(e.label()); return;
      case Op::GetLabel: out_ += "(get-label)"; return;
      case Op::Lam:
        out_ += "(lam ";
        bind_then(e[0], [&](const std::string& x) {
          out_ += x;
          if (e.annot()) out_ += " : " + e.annot()->to_string();
          out_ += " ";
        });
        out_ += ")";
        return;
      case Op::App:
        if constexpr (!Calc<Op>::coarse) {
          const Expr& f = e[0];
          if (f.op() == Op::Lam && !f.annot()) {
            if (is_drop0(f[0])) {
              open("seq");
              arg(e[1]);
              arg(f[0][0]);
              out_ += ")";
              return;
            }
            out_ += "(let ";
            std::string x = fresh();
            out_ += x + " ";
            expr(e[1]);
            out_ += " ";
            scope_.push_back(x);
            expr(f[0]);
            scope_.pop_back();
            out_ += ")";
            return;
          }
        }
        form("app", e);
        return;
      case Op::Inl:
      case Op::Inr:
        if (e.annot() && *e.annot() == Type::unit() && e[0].op() == Op::Unit) {
          out_ += e.op() == Op::Inl ? "true" : "false";
          return;
        }
        open(e.op() == Op::Inl ? "inl" : "inr");
        arg(e[0]);
        if (e.annot()) out_ += " : " + e.annot()->to_string();
        out_ += ")";
        return;
      case Op::Case:
        if (is_drop0(e[1]) && is_drop0(e[2])) {
          open("if");
          arg(e[0]);
          arg(e[1][0]);
          arg(e[2][0]);
          out_ += ")";
          return;
        }
        open("case");
        arg(e[0]);
        for (int i = 1; i <= 2; ++i) {
          out_ += " ";
          bind_then(e[i], [&](const std::string& x) { out_ += x + " "; });
        }
        out_ += ")";
        return;
      case Op::New:
        form(e.mode() == RefMode::Insensitive ? "ref-I" : "ref-S", e);
        return;
      case Op::Wken: {
        out_ += "(wken (";
        for (std::size_t i = 0; i < e.drops().size(); ++i) {
          if (i) out_ += " ";
          out_ += name_of(e.drops()[i]);
        }
        out_ += ") ";
        Scope saved = scope_;
        for (auto it = e.drops().rbegin(); it != e.drops().rend(); ++it)
          scope_.erase(scope_.end() - 1 - static_cast<std::ptrdiff_t>(*it));
        expr(e[0]);
        scope_ = std::move(saved);
        out_ += ")";
        return;
      }
      default: break;
    }
    if constexpr (Calc<Op>::coarse) {
      if (e.op() == Op::Bind) {
        if (is_drop0(e[1])) {
          open("seq");
          arg(e[0]);
          arg(e[1][0]);
          out_ += ")";
          return;
        }
        open("bind");
        arg(e[0]);
        out_ += " ";
        bind_then(e[1], [&](const std::string& x) { out_ += x + " "; });
        out_ += ")";
        return;
      }
    }
    form(keyword(e.op()), e);
  }

  std::string take() { return std::move(out_); }

 private:
  static const char* keyword(Op op) {
    switch (op) {
      case Op::Pair: return "pair";
      case Op::Fst: return "fst";
      case Op::Snd: return "snd";
      case Op::FlowsTo: return "flows-to";
      case Op::LabelOf: return "label-of";
      case Op::Taint: return "taint";
      case Op::Read: return "!";
      case Op::Write: return ":=";
      case Op::LabelOfRef: return "label-of-ref";
      default: break;
    }
    if constexpr (Calc<Op>::coarse) {
      switch (op) {
        case Op::Return: return "return";
        case Op::Unlabel: return "unlabel";
        case Op::ToLabeled: return "tolabeled";
        default: break;
      }
    }
    return "?";
  }

  static bool is_drop0(const Expr& e) { return e.op() == Op::Wken && e.drops() == std::vector<std::uint32_t>{0}; }

  void open(const char* kw) {
    out_ += "(";
    out_ += kw;
  }
  void arg(const Expr& e) {
    out_ += " ";
    expr(e);
  }
  void form(const char* kw, const Expr& e) {
    open(kw);
    for (const auto& k : e.kids()) arg(k);
    out_ += ")";
  }

  template <class Head>
  void bind_then(const Expr& body, Head head) {
    std::string x = fresh();
    head(x);
    scope_.push_back(x);
    expr(body);
    scope_.pop_back();
  }

  // Dropped variables shrink the scope, so x<depth> alone could shadow a live name.
  std::string fresh() const {
    for (std::size_t d = scope_.size();; ++d) {
      std::string n = "x" + std::to_string(d);
      while (lat_.find(n)) n += "'";
      if (std::find(scope_.begin(), scope_.end(), n) == scope_.end()) return n;
    }
  }
  std::string name_of(std::uint32_t i) const {
    if (i >= scope_.size()) return "?" + std::to_string(i);
    return scope_[scope_.size() - 1 - i];
  }

  const Lattice& lat_;
  Scope scope_;
  std::string out_;
};

}  // namespace

Scope default_scope(std::size_t n, const Lattice& lat) {
  Scope s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string x = "x" + std::to_string(i);
    while (lat.find(x)) x += "'";
    s.push_back(x);
  }
  return s;
}

fg::Expr parse_fg(const Sexp& s, const Lattice& lat, const Scope& scope) { return Parser<fg::Op>(lat, scope).expr(s); }
fg::Expr parse_fg(std::string_view text, const Lattice& lat, const Scope& scope) {
  return parse_fg(read_one(text), lat, scope);
}
cg::Expr parse_cg(const Sexp& s, const Lattice& lat, const Scope& scope) { return Parser<cg::Op>(lat, scope).expr(s); }
cg::Expr parse_cg(std::string_view text, const Lattice& lat, const Scope& scope) {
  return parse_cg(read_one(text), lat, scope);
}

std::string print_fg(const fg::Expr& e, const Lattice& lat, std::size_t free) {
  Printer<fg::Op> p(lat, default_scope(free, lat));
  p.expr(e);
  return p.take();
}

std::string print_cg(const cg::Expr& e, const Lattice& lat, std::size_t free) {
  Printer<cg::Op> p(lat, default_scope(free, lat));
  p.expr(e);
  return p.take();
}

std::string print_fg(const fg::Expr& e, const Lattice& lat, const Scope& scope) {
  Printer<fg::Op> p(lat, scope);
  p.expr(e);
  return p.take();
}

std::string print_cg(const cg::Expr& e, const Lattice& lat, const Scope& scope) {
  Printer<cg::Op> p(lat, scope);
  p.expr(e);
  return p.take();
}

}  // namespace ifc::surface
