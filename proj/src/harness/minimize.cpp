#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/typecheck.hpp"
#include "internal.hpp"

namespace ifc::harness::detail {

namespace {

constexpr int kMaxRounds = 200;

template <class Expr>
Expr replace_at(const Expr& e, const std::vector<std::size_t>& path, std::size_t depth, const Expr& with) {
  if (depth == path.size()) return with;
  auto kids = e.kids();
  kids[path[depth]] = replace_at(kids[path[depth]], path, depth + 1, with);
  return e.with_kids(std::move(kids));
}

template <class Expr>
const Expr& at_path(const Expr& e, const std::vector<std::size_t>& path) {
  const Expr* cur = &e;
  for (auto i : path) cur = &(*cur)[i];
  return *cur;
}

struct Site {
  std::vector<std::size_t> path;
  Context ctx;
};

// Pre-order, so larger subterms are tried first.
void fg_sites(const fg::Expr& e, const Context& ctx, std::vector<std::size_t>& path, std::vector<Site>& out,
              std::optional<Type> binder = std::nullopt) {
  using Op = fg::Op;
  out.push_back({path, ctx});
  auto visit = [&](std::size_t i, const Context& c, std::optional<Type> b = std::nullopt) {
    path.push_back(i);
    fg_sites(e[i], c, path, out, std::move(b));
    path.pop_back();
  };
  try {
    switch (e.op()) {
      case Op::Lam: {
        auto t = e.annot() ? e.annot() : binder;
        if (t) visit(0, ctx.push(*t));
        return;
      }
      case Op::App:
        if (e[0].op() == Op::Lam && !e[0].annot()) {
          visit(1, ctx);
          visit(0, ctx, fg::typecheck(ctx, e[1]));
          return;
        }
        break;
      case Op::Case: {
        visit(0, ctx);
        Type s = fg::typecheck(ctx, e[0]);
        visit(1, ctx.push(s.arg(0)));
        visit(2, ctx.push(s.arg(1)));
        return;
      }
      case Op::Wken: visit(0, ctx.drop(e.drops())); return;
      default: break;
    }
  } catch (const TypeError&) {
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) visit(i, ctx);
}

void cg_sites(const cg::Expr& e, const Context& ctx, std::vector<std::size_t>& path, std::vector<Site>& out) {
  using Op = cg::Op;
  out.push_back({path, ctx});
  auto visit = [&](std::size_t i, const Context& c) {
    path.push_back(i);
    cg_sites(e[i], c, path, out);
    path.pop_back();
  };
  try {
    switch (e.op()) {
      case Op::Lam:
        if (e.annot()) visit(0, ctx.push(*e.annot()));
        return;
      case Op::Case: {
        visit(0, ctx);
        Type s = cg::typecheck(ctx, e[0]);
        visit(1, ctx.push(s.arg(0)));
        visit(2, ctx.push(s.arg(1)));
        return;
      }
      case Op::Bind: {
        visit(0, ctx);
        Type t = cg::typecheck(ctx, e[0]);
        visit(1, ctx.push(t.arg(0)));
        return;
      }
      case Op::Wken: visit(0, ctx.drop(e.drops())); return;
      default: break;
    }
  } catch (const TypeError&) {
    return;
  }
  for (std::size_t i = 0; i < e.arity(); ++i) visit(i, ctx);
}

template <class Expr, class Sites, class Canon, class Check>
Expr shrink(const Context& ctx, Expr e, Sites sites_of, Canon canon, Check well_typed,
            const std::function<bool(const Expr&)>& fails) {
  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<Site> sites;
    std::vector<std::size_t> path;
    sites_of(e, ctx, path, sites);
    bool improved = false;
    for (const auto& s : sites) {
      const Expr& sub = at_path(e, s.path);
      auto c = canon(s.ctx, sub);
      if (!c || c->size() >= sub.size()) continue;
      Expr candidate = replace_at(e, s.path, 0, *c);
      if (!well_typed(candidate) || !fails(candidate)) continue;
      e = candidate;
      improved = true;
      break;
    }
    if (!improved) break;
  }
  return e;
}

}  // namespace

fg::Expr minimize_fg(const GenConfig& gen, const Context& ctx, const Type& t, fg::Expr e,
                     const std::function<bool(const fg::Expr&)>& fails) {
  Rng rng(0);
  FgGen g(rng, gen);
  auto canon = [&](const Context& c, const fg::Expr& sub) -> std::optional<fg::Expr> {
    try {
      return g.canonical(fg::typecheck(c, sub));
    } catch (const TypeError&) {
      return std::nullopt;
    }
  };
  auto typed = [&](const fg::Expr& x) {
    try {
      fg::check(ctx, x, t);
      return true;
    } catch (const TypeError&) {
      return false;
    }
  };
  auto sites = [](const fg::Expr& x, const Context& c, std::vector<std::size_t>& p, std::vector<Site>& out) {
    fg_sites(x, c, p, out);
  };
  return shrink(ctx, std::move(e), sites, canon, typed, fails);
}

cg::Expr minimize_cg(const GenConfig& gen, const Context& ctx, const Type& t, cg::Expr e,
                     const std::function<bool(const cg::Expr&)>& fails) {
  Rng rng(0);
  CgGen g(rng, gen);
  auto canon = [&](const Context& c, const cg::Expr& sub) -> std::optional<cg::Expr> {
    try {
      Type ty = cg::typecheck(c, sub);
      if (ty.is(Type::Kind::Lio)) return g.canonical_lio(ty.arg(0));
      return g.canonical_pure(ty);
    } catch (const TypeError&) {
      return std::nullopt;
    }
  };
  auto typed = [&](const cg::Expr& x) {
    try {
      cg::check(ctx, x, Type::lio(t));
      return true;
    } catch (const TypeError&) {
      return false;
    }
  };
  auto sites = [](const cg::Expr& x, const Context& c, std::vector<std::size_t>& p, std::vector<Site>& out) {
    cg_sites(x, c, p, out);
  };
  return shrink(ctx, std::move(e), sites, canon, typed, fails);
}

}  // namespace ifc::harness::detail
