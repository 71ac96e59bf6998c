#include "ifc/harness/gen.hpp"

namespace ifc::harness {

using K = Type::Kind;

std::vector<Label> GenConfig::public_labels() const {
  std::vector<Label> out;
  for (Label l : lattice.points())
    if (lattice.leq(l, attacker)) out.push_back(l);
  return out;
}

std::vector<Label> GenConfig::secret_labels() const {
  std::vector<Label> out;
  for (Label l : lattice.points())
    if (!lattice.leq(l, attacker)) out.push_back(l);
  return out;
}

Label pick_label(Rng& rng, const GenConfig& cfg, bool secret) {
  auto pool = secret ? cfg.secret_labels() : cfg.public_labels();
  if (pool.empty()) pool = cfg.lattice.points();
  return rng.pick(pool);
}

Label pick_label(Rng& rng, const GenConfig& cfg) { return pick_label(rng, cfg, rng.chance(cfg.secret_bias)); }

namespace {

RefMode pick_mode(Rng& rng, const GenConfig& cfg) {
  return rng.chance(cfg.sensitive_refs) ? RefMode::Sensitive : RefMode::Insensitive;
}

std::vector<std::uint32_t> pick_drops(Rng& rng, std::size_t ctx_size) {
  std::vector<std::uint32_t> drops{static_cast<std::uint32_t>(rng.below(ctx_size))};
  if (ctx_size > 1 && rng.chance(0.3)) drops.push_back(static_cast<std::uint32_t>(rng.below(ctx_size)));
  return drops;  // wken() sorts and removes duplicates
}

// Contents of small references; booleans make overwrites visible.
Type cell_type(Rng& rng) {
  switch (rng.weighted({1, 2, 5})) {
    case 0: return Type::unit();
    case 1: return Type::label();
    default: return Type::boolean();
  }
}

// Reference types in scope, optionally restricted to a content type.
std::vector<Type> refs_in(const Context& ctx, const std::optional<Type>& content) {
  std::vector<Type> out;
  for (std::uint32_t i = 0; i < ctx.size(); ++i) {
    const Type& t = ctx.at(i);
    if (t.is(K::Ref) && (!content || t.arg(0) == *content)) out.push_back(t);
  }
  return out;
}

// Prefers a reference already in scope so writes and reads meet.
std::optional<Type> scoped_ref(Rng& rng, const Context& ctx, const std::optional<Type>& content) {
  auto refs = refs_in(ctx, content);
  if (refs.empty() || !rng.chance(0.7)) return std::nullopt;
  return rng.pick(refs);
}

std::vector<int> split_budget(Rng& rng, int budget, int parts) {
  std::vector<int> out(static_cast<std::size_t>(parts), 1);
  for (int left = budget - parts; left > 0; --left) out[rng.below(out.size())] += 1;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- fine-grained

std::vector<int> FgGen::split(int budget, int parts) { return split_budget(rng_, budget, parts); }

std::vector<std::uint32_t> FgGen::vars_of(const Context& ctx, const Type& t) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < ctx.size(); ++i)
    if (ctx.at(i) == t) out.push_back(i);
  return out;
}

Type FgGen::type(int depth) {
  if (depth <= 0) {
    switch (rng_.weighted({3, 2, 3})) {
      case 0: return Type::unit();
      case 1: return Type::label();
      default: return Type::boolean();
    }
  }
  switch (rng_.weighted({2, 2, 3, 2, 1, 2, 2})) {
    case 0: return Type::unit();
    case 1: return Type::label();
    case 2: return Type::boolean();
    case 3: return Type::fun(type(depth - 1), type(depth - 1));
    case 4: return Type::sum(type(depth - 1), type(depth - 1));
    case 5: return Type::prod(type(depth - 1), type(depth - 1));
    default: return Type::ref(pick_mode(rng_, cfg_), type(depth - 1));
  }
}

Type FgGen::input_type() {
  switch (rng_.weighted({4, 4, 1, 1, 2})) {
    case 0: return Type::boolean();
    case 1: return Type::ref(pick_mode(rng_, cfg_), cell_type(rng_));
    case 2: return Type::label();
    case 3: return Type::unit();
    default: return type(cfg_.type_depth);
  }
}

fg::Expr FgGen::canonical(const Type& t) {
  switch (t.kind()) {
    case K::Unit: return fg::unit();
    case K::Label: return fg::lbl(cfg_.lattice.point(0));
    case K::Fun: return fg::lam(t.arg(0), canonical(t.arg(1)));
    case K::Sum: return fg::inl(canonical(t.arg(0)), t.arg(1));
    case K::Prod: return fg::pair(canonical(t.arg(0)), canonical(t.arg(1)));
    case K::Ref: return fg::new_ref(t.mode(), canonical(t.arg(0)));
    default: break;
  }
  throw std::invalid_argument("not a fine-grained type: " + t.to_string());
}

fg::Expr FgGen::leaf(const Context& ctx, const Type& t) {
  auto vars = vars_of(ctx, t);
  if (!vars.empty() && rng_.chance(0.75)) return fg::var(rng_.pick(vars));
  if (t.is(K::Label)) return fg::lbl(pick_label(rng_, cfg_));
  if (t.is_bool()) return rng_.chance(0.5) ? fg::tt() : fg::ff();
  return canonical(t);
}

fg::Expr FgGen::label_expr(const Context& ctx, int budget) {
  auto vars = vars_of(ctx, Type::label());
  switch (rng_.weighted({5, 1, budget > 1 ? 2 : 0, vars.empty() ? 0 : 2})) {
    case 0: return fg::lbl(pick_label(rng_, cfg_));
    case 1: return fg::get_label();
    case 2: return fg::label_of(expr(ctx, type(1), budget - 1));
    default: return fg::var(rng_.pick(vars));
  }
}

fg::Expr FgGen::scrutinee(const Context& ctx, const Type& t, int budget) {
  auto vars = vars_of(ctx, t);
  if (!vars.empty() && rng_.chance(0.4)) return fg::var(rng_.pick(vars));
  auto secrets = cfg_.secret_labels();
  if (budget >= 3 && !secrets.empty() && rng_.chance(cfg_.secret_bias / 2))
    return fg::taint(fg::lbl(rng_.pick(secrets)), expr(ctx, t, budget - 2));
  return expr(ctx, t, budget);
}

fg::Expr FgGen::write_to_scope(const Context& ctx, int budget) {
  Type r = scoped_ref(rng_, ctx, std::nullopt).value_or(Type::ref(pick_mode(rng_, cfg_), rng_.chance(0.7) ? cell_type(rng_) : type(1)));
  auto b = split(std::max(budget - 1, 2), 2);
  return fg::write(expr(ctx, r, b[0]), expr(ctx, r.arg(0), b[1]));
}

fg::Expr FgGen::effect(const Context& ctx, int budget) {
  if (budget <= 2) return rng_.chance(0.5) ? fg::unit() : expr(ctx, Type::unit(), budget);
  switch (rng_.weighted({4, 3, 1, 2, 2})) {
    case 0: return write_to_scope(ctx, budget);
    case 4: {
      Type r = Type::ref(pick_mode(rng_, cfg_), cell_type(rng_));
      return fg::seq(fg::new_ref(r.mode(), expr(ctx, r.arg(0), budget - 2)), fg::unit());
    }
    case 1: {
      // Usually one branch does all the work.
      Context branch = ctx.push(Type::unit());
      if (rng_.chance(0.6)) {
        auto body = effect(branch, std::max(budget - 3, 4));
        auto skip = fg::unit();
        auto scr = scrutinee(ctx, Type::boolean(), 1);
        return rng_.chance(0.5) ? fg::case_of(scr, body, skip) : fg::case_of(scr, skip, body);
      }
      auto b = split(budget - 1, 3);
      return fg::case_of(scrutinee(ctx, Type::boolean(), b[0]), effect(branch, b[1]), effect(branch, b[2]));
    }
    case 2: {
      auto b = split(budget - 1, 2);
      return fg::taint(label_expr(ctx, b[0]), effect(ctx, b[1]));
    }
    default: return expr(ctx, Type::unit(), budget);
  }
}

fg::Expr FgGen::intro(const Context& ctx, const Type& t, int budget) {
  switch (t.kind()) {
    case K::Unit: {
      if (budget < 3 || rng_.chance(0.3)) return fg::unit();
      return write_to_scope(ctx, budget);
    }
    case K::Label:
      switch (rng_.weighted({3, 2, 2, 2})) {
        case 0: return label_expr(ctx, budget);
        case 1: return fg::get_label();
        case 2: return fg::label_of(expr(ctx, type(1), budget - 1));
        default: {
          Type r = scoped_ref(rng_, ctx, std::nullopt).value_or(Type::ref(pick_mode(rng_, cfg_), cell_type(rng_)));
          return fg::label_of_ref(expr(ctx, r, budget - 1));
        }
      }
    case K::Fun: return fg::lam(t.arg(0), expr(ctx.push(t.arg(0)), t.arg(1), budget - 1));
    case K::Sum: {
      if (t.is_bool() && budget >= 3 && rng_.chance(0.4)) {
        auto b = split(budget - 1, 2);
        return fg::flows_to(label_expr(ctx, b[0]), label_expr(ctx, b[1]));
      }
      if (rng_.chance(0.5)) return fg::inl(expr(ctx, t.arg(0), budget - 1), t.arg(1));
      return fg::inr(expr(ctx, t.arg(1), budget - 1), t.arg(0));
    }
    case K::Prod: {
      if (budget < 3) return canonical(t);
      auto b = split(budget - 1, 2);
      return fg::pair(expr(ctx, t.arg(0), b[0]), expr(ctx, t.arg(1), b[1]));
    }
    case K::Ref: return fg::new_ref(t.mode(), expr(ctx, t.arg(0), budget - 1));
    default: break;
  }
  throw std::invalid_argument("not a fine-grained type: " + t.to_string());
}

fg::Expr FgGen::expr(const Context& ctx, const Type& t, int budget) {
  if (budget <= 1) return leaf(ctx, t);
  enum { Leaf, Intro, App, Let, Case, Proj, Taint, Read, Seq, Wken, Var, Cell };
  auto vars = vars_of(ctx, t);
  std::vector<int> w{2, 5, budget >= 3 ? 2 : 0, budget >= 3 ? 2 : 0, budget >= 4 ? 3 : 0, budget >= 3 ? 1 : 0,
                     budget >= 3 ? 1 : 0, 2, budget >= 5 ? 2 : 0, ctx.empty() ? 0 : 1, vars.empty() ? 0 : 2,
                     budget >= 7 ? 3 : 0};
  switch (rng_.weighted(w)) {
    case Leaf: return leaf(ctx, t);
    case Var: return fg::var(rng_.pick(vars));
    case Cell: return cell(ctx, t, budget);
    case Intro: return intro(ctx, t, budget);
    case App: {
      Type a = type(1);
      auto b = split(budget - 1, 2);
      return fg::app(expr(ctx, Type::fun(a, t), b[0]), expr(ctx, a, b[1]));
    }
    case Let: {
      Type a = rng_.chance(0.5) ? Type::ref(pick_mode(rng_, cfg_), cell_type(rng_)) : type(1);
      auto b = split(budget - 1, 2);
      return fg::let_in(expr(ctx, a, b[0]), expr(ctx.push(a), t, b[1]));
    }
    case Case: {
      Type s = Type::boolean();
      std::vector<Type> sums;
      for (std::uint32_t i = 0; i < ctx.size(); ++i)
        if (ctx.at(i).is(K::Sum)) sums.push_back(ctx.at(i));
      if (!sums.empty() && rng_.chance(0.5)) s = rng_.pick(sums);
      else if (rng_.chance(0.3)) s = Type::sum(type(1), type(1));
      auto b = split(budget - 1, 3);
      return fg::case_of(scrutinee(ctx, s, b[0]), expr(ctx.push(s.arg(0)), t, b[1]),
                         expr(ctx.push(s.arg(1)), t, b[2]));
    }
    case Proj: {
      Type other = type(1);
      if (rng_.chance(0.5)) return fg::fst(expr(ctx, Type::prod(t, other), budget - 1));
      return fg::snd(expr(ctx, Type::prod(other, t), budget - 1));
    }
    case Taint: {
      auto b = split(budget - 1, 2);
      return fg::taint(label_expr(ctx, b[0]), expr(ctx, t, b[1]));
    }
    case Read: return fg::read(expr(ctx, scoped_ref(rng_, ctx, t).value_or(Type::ref(pick_mode(rng_, cfg_), t)), budget - 1));
    case Seq: {
      auto b = split(budget - 2, 2);
      return fg::seq(effect(ctx, b[0]), expr(ctx, t, b[1]));
    }
    default: {
      auto drops = pick_drops(rng_, ctx.size());
      auto e = fg::wken(drops, fg::unit());
      return fg::wken(e.drops(), expr(ctx.drop(e.drops()), t, budget - 1));
    }
  }
}

fg::Expr FgGen::cell(const Context& ctx, const Type& t, int budget) {
  // let r = new e0 in (effect; !r): a cell whose final content depends on the effect
  auto b = split(budget - 5, 2);
  Type r = Type::ref(pick_mode(rng_, cfg_), t);
  Context inner = ctx.push(r);
  auto bools = vars_of(inner, Type::boolean());
  fg::Expr body;
  if (!bools.empty() && rng_.chance(0.5)) {
    // overwrite the cell under a branch on a boolean in scope
    Context branch = inner.push(Type::unit());
    fg::Expr w = fg::write(fg::var(1), expr(branch, t, std::max(b[1] - 3, 1)));
    fg::Expr scr = fg::var(rng_.pick(bools));
    body = rng_.chance(0.5) ? fg::case_of(scr, w, fg::unit()) : fg::case_of(scr, fg::unit(), w);
  } else {
    body = effect(inner, b[1]);
  }
  return fg::let_in(fg::new_ref(r.mode(), expr(ctx, t, b[0])), fg::seq(body, fg::read(fg::var(0))));
}

fg::Expr FgGen::program(const Context& ctx, const Type& t, int max_size) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    // Half the programs open with a side effect so state is exercised.
    fg::Expr e;
    if (max_size >= 10 && rng_.chance(0.25)) {
      e = cell(ctx, t, max_size);
    } else if (max_size >= 8 && rng_.chance(0.5)) {
      auto b = split(max_size - 2, 2);
      e = fg::seq(effect(ctx, b[0]), expr(ctx, t, b[1]));
    } else {
      e = expr(ctx, t, max_size);
    }
    if (static_cast<int>(e.size()) <= max_size) return e;
  }
  return canonical(t);
}

// ---------------------------------------------------------------- coarse-grained

std::vector<int> CgGen::split(int budget, int parts) { return split_budget(rng_, budget, parts); }

std::vector<std::uint32_t> CgGen::vars_of(const Context& ctx, const Type& t) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < ctx.size(); ++i)
    if (ctx.at(i) == t) out.push_back(i);
  return out;
}

bool CgGen::pure_inhabited(const Type& t) {
  switch (t.kind()) {
    case K::Unit:
    case K::Label:
    case K::Lio: return true;
    case K::Fun: return pure_inhabited(t.arg(1));
    case K::Sum: return pure_inhabited(t.arg(0)) || pure_inhabited(t.arg(1));
    case K::Prod: return pure_inhabited(t.arg(0)) && pure_inhabited(t.arg(1));
    default: return false;
  }
}

Type CgGen::type(int depth) {
  if (depth <= 0) {
    switch (rng_.weighted({3, 2, 3})) {
      case 0: return Type::unit();
      case 1: return Type::label();
      default: return Type::boolean();
    }
  }
  switch (rng_.weighted({2, 2, 3, 2, 1, 2, 2, 2, 3})) {
    case 0: return Type::unit();
    case 1: return Type::label();
    case 2: return Type::boolean();
    case 3: {
      Type a = type(depth - 1);
      Type r = type(depth - 1);
      return Type::fun(a, pure_inhabited(r) && rng_.chance(0.3) ? r : Type::lio(r));
    }
    case 4: return Type::sum(type(depth - 1), type(depth - 1));
    case 5: return Type::prod(type(depth - 1), type(depth - 1));
    case 6: return Type::ref(pick_mode(rng_, cfg_), type(depth - 1));
    case 7: return Type::lio(type(depth - 1));
    default: return Type::labeled(type(depth - 1));
  }
}

Type CgGen::input_type() {
  switch (rng_.weighted({5, 4, 1, 1, 1, 2})) {
    case 0: return Type::labeled(rng_.chance(0.8) ? Type::boolean() : type(1));
    case 1: return Type::ref(pick_mode(rng_, cfg_), cell_type(rng_));
    case 2: return Type::boolean();
    case 3: return Type::label();
    case 4: return Type::lio(type(1));
    default: return type(cfg_.type_depth);
  }
}

std::optional<cg::Expr> CgGen::canonical_pure(const Type& t) {
  switch (t.kind()) {
    case K::Unit: return cg::unit();
    case K::Label: return cg::lbl(cfg_.lattice.point(0));
    case K::Lio: return canonical_lio(t.arg(0));
    case K::Fun: {
      auto body = canonical_pure(t.arg(1));
      if (!body) return std::nullopt;
      return cg::lam(t.arg(0), *body);
    }
    case K::Sum:
      if (auto a = canonical_pure(t.arg(0))) return cg::inl(*a, t.arg(1));
      if (auto b = canonical_pure(t.arg(1))) return cg::inr(*b, t.arg(0));
      return std::nullopt;
    case K::Prod: {
      auto a = canonical_pure(t.arg(0));
      auto b = canonical_pure(t.arg(1));
      if (!a || !b) return std::nullopt;
      return cg::pair(*a, *b);
    }
    default: return std::nullopt;
  }
}

cg::Expr CgGen::canonical_lio(const Type& t) {
  if (auto p = canonical_pure(t)) return cg::ret(*p);
  switch (t.kind()) {
    case K::Labeled: return cg::to_labeled(canonical_lio(t.arg(0)));
    case K::Ref:
      return cg::bind(cg::to_labeled(canonical_lio(t.arg(0))), cg::new_ref(t.mode(), cg::var(0)));
    case K::Sum: return cg::bind(canonical_lio(t.arg(0)), cg::ret(cg::inl(cg::var(0), t.arg(1))));
    case K::Prod:
      return cg::bind(canonical_lio(t.arg(0)),
                      cg::bind(canonical_lio(t.arg(1)), cg::ret(cg::pair(cg::var(1), cg::var(0)))));
    default: break;
  }
  throw std::invalid_argument("type without a canonical inhabitant: " + t.to_string());
}

cg::Expr CgGen::lift(const Operand& later, cg::Expr e) {
  return later.producer ? cg::wken({0}, std::move(e)) : std::move(e);
}

cg::Expr CgGen::close(const Operand& op, cg::Expr body) {
  return op.producer ? cg::bind(*op.producer, std::move(body)) : std::move(body);
}

CgGen::Operand CgGen::operand(Context& ctx, const Type& t, int budget) {
  if (auto e = pure(ctx, t, budget)) return Operand{std::nullopt, *e};
  Operand op{lio(ctx, t, budget), cg::var(0)};
  ctx = ctx.push(t);
  return op;
}

cg::Expr CgGen::label_operand(const Context& ctx, int budget) {
  auto vars = vars_of(ctx, Type::label());
  if (!vars.empty() && rng_.chance(0.3)) return cg::var(rng_.pick(vars));
  if (budget >= 2 && rng_.chance(0.2)) {
    auto e = pure(ctx, Type::label(), budget);
    if (e) return *e;
  }
  return cg::lbl(pick_label(rng_, cfg_));
}

std::optional<cg::Expr> CgGen::pure(const Context& ctx, const Type& t, int budget) {
  auto vars = vars_of(ctx, t);
  if (budget <= 1 || (!vars.empty() && rng_.chance(0.3))) {
    if (!vars.empty() && rng_.chance(0.75)) return cg::var(rng_.pick(vars));
    if (t.is(K::Label)) return cg::lbl(pick_label(rng_, cfg_));
    if (t.is_bool()) return rng_.chance(0.5) ? cg::tt() : cg::ff();
    if (auto c = canonical_pure(t)) return c;
    if (!vars.empty()) return cg::var(rng_.pick(vars));
    if (budget <= 1) return std::nullopt;
  }
  for (int attempt = 0; attempt < 3; ++attempt)
    if (auto e = pure_step(ctx, t, budget)) return e;
  if (!vars.empty()) return cg::var(rng_.pick(vars));
  return canonical_pure(t);
}

std::optional<cg::Expr> CgGen::pure_step(const Context& ctx, const Type& t, int budget) {
  enum { Intro, App, Case, Proj, Wken };
  std::vector<int> w{5, budget >= 3 ? 2 : 0, budget >= 4 ? 2 : 0, budget >= 3 ? 1 : 0, ctx.empty() ? 0 : 1};
  switch (rng_.weighted(w)) {
    case Intro:
      switch (t.kind()) {
        case K::Unit: return cg::unit();
        case K::Label: return cg::lbl(pick_label(rng_, cfg_));
        case K::Lio: return lio(ctx, t.arg(0), budget);
        case K::Fun: {
          auto body = pure(ctx.push(t.arg(0)), t.arg(1), budget - 1);
          if (!body) return std::nullopt;
          return cg::lam(t.arg(0), *body);
        }
        case K::Sum: {
          if (t.is_bool() && budget >= 3 && rng_.chance(0.4)) {
            auto b = split(budget - 1, 2);
            return cg::flows_to(label_operand(ctx, b[0]), label_operand(ctx, b[1]));
          }
          if (rng_.chance(0.5)) {
            if (auto a = pure(ctx, t.arg(0), budget - 1)) return cg::inl(*a, t.arg(1));
          }
          if (auto b = pure(ctx, t.arg(1), budget - 1)) return cg::inr(*b, t.arg(0));
          return std::nullopt;
        }
        case K::Prod: {
          if (budget < 3) return canonical_pure(t);
          auto b = split(budget - 1, 2);
          auto x = pure(ctx, t.arg(0), b[0]);
          auto y = pure(ctx, t.arg(1), b[1]);
          if (!x || !y) return std::nullopt;
          return cg::pair(*x, *y);
        }
        default: return std::nullopt;
      }
    case App: {
      Type a = type(1);
      auto b = split(budget - 1, 2);
      auto f = pure(ctx, Type::fun(a, t), b[0]);
      auto x = pure(ctx, a, b[1]);
      if (!f || !x) return std::nullopt;
      return cg::app(*f, *x);
    }
    case Case: {
      Type s = rng_.chance(0.7) ? Type::boolean() : Type::sum(type(1), type(1));
      auto b = split(budget - 1, 3);
      auto scr = pure(ctx, s, b[0]);
      if (!scr) return std::nullopt;
      auto l = pure(ctx.push(s.arg(0)), t, b[1]);
      auto r = pure(ctx.push(s.arg(1)), t, b[2]);
      if (!l || !r) return std::nullopt;
      return cg::case_of(*scr, *l, *r);
    }
    case Proj: {
      Type other = type(1);
      bool first = rng_.chance(0.5);
      auto p = pure(ctx, first ? Type::prod(t, other) : Type::prod(other, t), budget - 1);
      if (!p) return std::nullopt;
      return first ? cg::fst(*p) : cg::snd(*p);
    }
    default: {
      auto drops = cg::wken(pick_drops(rng_, ctx.size()), cg::unit()).drops();
      auto e = pure(ctx.drop(drops), t, budget - 1);
      if (!e) return std::nullopt;
      return cg::wken(drops, *e);
    }
  }
}

cg::Expr CgGen::write_to_scope(const Context& ctx, int budget) {
  Type rt = scoped_ref(rng_, ctx, std::nullopt).value_or(Type::ref(pick_mode(rng_, cfg_), rng_.chance(0.7) ? cell_type(rng_) : type(1)));
  auto b = split(std::max(budget - 1, 2), 2);
  Context inner = ctx;
  auto r = operand(inner, rt, b[0]);
  // Values that already exist keep their label, which may sit below a raised pc.
  auto held = vars_of(inner, Type::labeled(rt.arg(0)));
  if (!held.empty() && rng_.chance(0.6)) return close(r, cg::write(r.value, cg::var(rng_.pick(held))));
  auto v = operand(inner, Type::labeled(rt.arg(0)), b[1]);
  return close(r, close(v, cg::write(lift(v, r.value), v.value)));
}

std::optional<cg::Expr> CgGen::secret_branch(const Context& ctx, int budget) {
  std::vector<std::uint32_t> secrets;
  for (std::uint32_t i = 0; i < ctx.size(); ++i)
    if (ctx.at(i) == Type::labeled(Type::boolean())) secrets.push_back(i);
  if (secrets.empty()) return std::nullopt;
  Context branch = ctx.push(Type::boolean()).push(Type::unit());
  std::uint32_t secret = rng_.pick(secrets);
  std::vector<std::uint32_t> others;
  for (std::uint32_t i = 0; i < branch.size(); ++i)
    if (branch.at(i).is(K::Labeled) && i != secret + 2) others.push_back(i);
  cg::Expr l, r;
  if (!others.empty() && rng_.chance(0.3)) {
    // allocate a value labeled independently of the branch
    l = cg::seq(cg::new_ref(pick_mode(rng_, cfg_), cg::var(rng_.pick(others))), cg::ret(cg::unit()));
    r = cg::ret(cg::unit());
    if (rng_.chance(0.5)) std::swap(l, r);
  } else if (rng_.chance(0.6)) {
    l = effect(branch, std::max(budget - 3, 4));
    r = cg::ret(cg::unit());
    if (rng_.chance(0.5)) std::swap(l, r);
  } else {
    auto b = split(std::max(budget - 2, 2), 2);
    l = effect(branch, b[0]);
    r = effect(branch, b[1]);
  }
  cg::Expr e = cg::bind(cg::unlabel(cg::var(secret)), cg::case_of(cg::var(0), l, r));
  // tolabeled restores the pc afterwards, so later public effects stay observable
  if (rng_.chance(0.5)) e = cg::seq(cg::to_labeled(e), cg::ret(cg::unit()));
  return e;
}

cg::Expr CgGen::effect(const Context& ctx, int budget) {
  if (budget <= 2) return lio(ctx, Type::unit(), budget);
  std::vector<std::uint32_t> secrets, bools = vars_of(ctx, Type::boolean());
  for (std::uint32_t i = 0; i < ctx.size(); ++i)
    if (ctx.at(i) == Type::labeled(Type::boolean())) secrets.push_back(i);
  switch (rng_.weighted({4, secrets.empty() ? 0 : 5, bools.empty() ? 0 : 2, 1, 2, 3})) {
    case 0: return write_to_scope(ctx, budget);
    case 5: {
      std::vector<std::uint32_t> labeled;
      for (std::uint32_t i = 0; i < ctx.size(); ++i)
        if (ctx.at(i).is(K::Labeled)) labeled.push_back(i);
      if (!labeled.empty() && rng_.chance(0.6)) {
        // Allocating an existing labeled value keeps its label even under a raised pc.
        std::uint32_t i = rng_.pick(labeled);
        return cg::seq(cg::new_ref(pick_mode(rng_, cfg_), cg::var(i)), cg::ret(cg::unit()));
      }
      Type r = Type::ref(pick_mode(rng_, cfg_), cell_type(rng_));
      Context inner = ctx;
      auto x = operand(inner, Type::labeled(r.arg(0)), budget - 2);
      return cg::seq(close(x, cg::new_ref(r.mode(), x.value)), cg::ret(cg::unit()));
    }
    case 1: {
      // A labeled value made before branching keeps the label of the pc it was made at.
      if (budget >= 8 && rng_.chance(0.5)) {
        Type c = cell_type(rng_);
        auto v = pure(ctx, c, 1);
        if (!v) v = canonical_pure(c);
        if (auto inner = secret_branch(ctx.push(Type::labeled(c)), budget - 3))
          return cg::bind(cg::to_labeled(cg::ret(*v)), *inner);
      }
      return *secret_branch(ctx, budget);
    }
    case 2: {
      auto b = split(budget - 1, 2);
      Context branch = ctx.push(Type::unit());
      return cg::case_of(cg::var(rng_.pick(bools)), effect(branch, b[0]), effect(branch, b[1]));
    }
    case 3: return cg::seq(cg::taint(label_operand(ctx, 1)), effect(ctx, budget - 2));
    default: return lio(ctx, Type::unit(), budget);
  }
}

cg::Expr CgGen::lio(const Context& ctx, const Type& t, int budget) {
  auto vars = vars_of(ctx, Type::lio(t));
  if (budget <= 1) {
    if (!vars.empty() && rng_.chance(0.5)) return cg::var(rng_.pick(vars));
    return canonical_lio(t);
  }
  return lio_step(ctx, t, budget);
}

cg::Expr CgGen::lio_step(const Context& ctx, const Type& t, int budget) {
  enum { Return, Bind, Seq, Special, Unlabel, Read, App, Case, Var, Wken, Cell };
  bool has_var = !vars_of(ctx, Type::lio(t)).empty();
  std::vector<int> w{3, budget >= 3 ? 2 : 0, budget >= 3 ? 4 : 0, 5, 3, 2, budget >= 3 ? 1 : 0,
                     budget >= 4 ? 3 : 0, has_var ? 1 : 0, ctx.empty() ? 0 : 1, budget >= 8 ? 4 : 0};
  switch (rng_.weighted(w)) {
    case Cell: return cell(ctx, t, budget);
    case Return: {
      if (auto e = pure(ctx, t, budget - 1)) return cg::ret(*e);
      return canonical_lio(t);
    }
    case Bind: {
      std::vector<std::uint32_t> labeled;
      for (std::uint32_t i = 0; i < ctx.size(); ++i)
        if (ctx.at(i).is(K::Labeled)) labeled.push_back(i);
      if (!labeled.empty() && rng_.chance(0.4)) {
        std::uint32_t i = rng_.pick(labeled);
        Type a = ctx.at(i).arg(0);
        return cg::bind(cg::unlabel(cg::var(i)), lio(ctx.push(a), t, budget - 2));
      }
      Type a = rng_.chance(0.4) ? Type::labeled(type(0)) : type(1);
      auto b = split(budget - 1, 2);
      return cg::bind(lio(ctx, a, b[0]), lio(ctx.push(a), t, b[1]));
    }
    case Seq: {
      auto b = split(budget - 2, 2);
      return cg::seq(effect(ctx, b[0]), lio(ctx, t, b[1]));
    }
    case Special:
      switch (t.kind()) {
        case K::Unit: {
          if (rng_.chance(0.35)) return cg::taint(label_operand(ctx, budget - 1));
          return write_to_scope(ctx, budget);
        }
        case K::Label: {
          switch (rng_.weighted({2, 3, 2})) {
            case 0: return cg::get_label();
            case 1: {
              Context inner = ctx;
              auto x = operand(inner, Type::labeled(type(1)), budget - 1);
              return close(x, cg::label_of(x.value));
            }
            default: {
              Context inner = ctx;
              auto r = operand(inner, scoped_ref(rng_, ctx, std::nullopt).value_or(Type::ref(pick_mode(rng_, cfg_), cell_type(rng_))),
                               budget - 1);
              return close(r, cg::label_of_ref(r.value));
            }
          }
        }
        case K::Labeled: return cg::to_labeled(lio(ctx, t.arg(0), budget - 1));
        case K::Ref: {
          Context inner = ctx;
          auto x = operand(inner, Type::labeled(t.arg(0)), budget - 1);
          return close(x, cg::new_ref(t.mode(), x.value));
        }
        default: {
          if (auto e = pure(ctx, t, budget - 1)) return cg::ret(*e);
          return canonical_lio(t);
        }
      }
    case Unlabel: {
      Context inner = ctx;
      auto x = operand(inner, Type::labeled(t), budget - 1);
      return close(x, cg::unlabel(x.value));
    }
    case Read: {
      Context inner = ctx;
      auto x = operand(inner, scoped_ref(rng_, ctx, t).value_or(Type::ref(pick_mode(rng_, cfg_), t)), budget - 1);
      return close(x, cg::read(x.value));
    }
    case App: {
      Type a = type(1);
      auto b = split(budget - 1, 2);
      Context inner = ctx;
      auto x = operand(inner, a, b[1]);
      auto f = pure(ctx, Type::fun(a, Type::lio(t)), b[0]);
      return close(x, cg::app(lift(x, *f), x.value));
    }
    case Case: {
      Type s = Type::boolean();
      std::vector<Type> sums;
      for (std::uint32_t i = 0; i < ctx.size(); ++i)
        if (ctx.at(i).is(K::Sum)) sums.push_back(ctx.at(i));
      if (!sums.empty() && rng_.chance(0.5)) s = rng_.pick(sums);
      auto b = split(budget - 1, 3);
      Context inner = ctx;
      auto svars = vars_of(ctx, s);
      auto scr = !svars.empty() && rng_.chance(0.4) ? Operand{std::nullopt, cg::var(rng_.pick(svars))}
                                                     : operand(inner, s, b[0]);
      // Branch bodies are generated in ctx; a bound scrutinee is dropped before them.
      auto branch = [&](const Type& bound, int bb) {
        auto body = lio(ctx.push(bound), t, bb);
        if (!scr.producer) return body;
        return cg::wken({1}, body);
      };
      return close(scr, cg::case_of(scr.value, branch(s.arg(0), b[1]), branch(s.arg(1), b[2])));
    }
    case Var: return cg::var(rng_.pick(vars_of(ctx, Type::lio(t))));
    default: {
      auto drops = cg::wken(pick_drops(rng_, ctx.size()), cg::unit()).drops();
      return cg::wken(drops, lio(ctx.drop(drops), t, budget - 1));
    }
  }
}

cg::Expr CgGen::cell(const Context& ctx, const Type& t, int budget) {
  // new r; effect; read r
  auto b = split(budget - 5, 2);
  Type r = Type::ref(pick_mode(rng_, cfg_), t);
  Context body = ctx.push(r);
  std::vector<std::uint32_t> secrets;
  for (std::uint32_t i = 0; i < body.size(); ++i)
    if (body.at(i) == Type::labeled(Type::boolean())) secrets.push_back(i);
  bool guarded = !secrets.empty() && rng_.chance(0.7);
  std::uint32_t secret = guarded ? rng_.pick(secrets) : 0;
  // a guarded overwrite starts from another labeled value in scope, or content labeled at the current pc
  std::vector<std::uint32_t> seeds;
  for (std::uint32_t i = 0; i < ctx.size(); ++i)
    if (ctx.at(i) == Type::labeled(t) && i + 1 != secret) seeds.push_back(i);
  std::optional<cg::Expr> content;
  if (guarded && seeds.empty()) content = pure(ctx, t, 1);
  if (!content && seeds.empty()) guarded = false;
  Context inner = ctx;
  Operand init = !guarded        ? operand(inner, Type::labeled(t), b[0])
                 : seeds.empty() ? Operand{cg::to_labeled(cg::ret(*content)), cg::var(0)}
                                 : Operand{std::nullopt, cg::var(rng_.pick(seeds))};
  cg::Expr eff;
  if (guarded) {
    // unlabel a secret and overwrite the cell in one branch
    Context branch = body.push(Type::boolean()).push(Type::unit());
    Context vctx = branch;
    auto v = operand(vctx, Type::labeled(t), 1);
    cg::Expr w = close(v, cg::write(lift(v, cg::var(2)), v.value));
    cg::Expr skip = cg::ret(cg::unit());
    eff = cg::bind(cg::unlabel(cg::var(secret)),
                   rng_.chance(0.5) ? cg::case_of(cg::var(0), w, skip) : cg::case_of(cg::var(0), skip, w));
    if (rng_.chance(0.75)) eff = cg::to_labeled(eff);
  } else {
    eff = effect(body, b[1]);
  }
  return cg::bind(close(init, cg::new_ref(r.mode(), init.value)), cg::seq(eff, cg::read(cg::var(0))));
}

cg::Expr CgGen::program(const Context& ctx, const Type& t, int max_size) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    cg::Expr e;
    if (max_size >= 10 && rng_.chance(0.25)) {
      e = cell(ctx, t, max_size);
    } else if (max_size >= 14 && rng_.chance(0.1)) {
      e = cg::seq(cell(ctx, Type::boolean(), max_size - 4), lio(ctx, t, 2));
    } else if (max_size >= 8 && rng_.chance(0.5)) {
      auto b = split(max_size - 2, 2);
      std::optional<cg::Expr> first;
      if (rng_.chance(0.5)) first = secret_branch(ctx, b[0]);
      e = cg::seq(first ? *first : effect(ctx, b[0]), lio(ctx, t, b[1]));
    } else {
      e = lio(ctx, t, max_size);
    }
    if (static_cast<int>(e.size()) <= max_size) return e;
  }
  return canonical_lio(t);
}

}  // namespace ifc::harness
