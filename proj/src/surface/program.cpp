#include "ifc/surface/program.hpp"

#include <chrono>

#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/typecheck.hpp"
#include "ifc/translate/cg2fg.hpp"
#include "ifc/translate/fg2cg.hpp"

namespace ifc::surface {

const char* calculus_name(Calculus c) { return c == Calculus::Fg ? "fg" : "cg"; }

std::optional<Calculus> calculus_from_path(std::string_view path) {
  auto ends = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext;
  };
  if (ends(".fg")) return Calculus::Fg;
  if (ends(".cg")) return Calculus::Cg;
  return std::nullopt;
}

std::vector<std::string> SourceProgram::input_names() const {
  std::vector<std::string> out;
  if (calculus == Calculus::Fg)
    for (const auto& i : fg_inputs) out.push_back(i.name);
  else
    for (const auto& i : cg_inputs) out.push_back(i.name);
  return out;
}

Context SourceProgram::context() const {
  Context ctx;
  if (calculus == Calculus::Fg)
    for (const auto& i : fg_inputs) ctx = ctx.push(i.type);
  else
    for (const auto& i : cg_inputs) ctx = ctx.push(i.type);
  return ctx;
}

namespace {

const Sexp& atom_arg(const Sexp& form, std::size_t n) {
  if (form.items.size() != n + 1) form.fail("(" + form.items[0].atom + " ...) with " + std::to_string(n) + " operand(s)");
  return form.items[1];
}

Label label_at(const Lattice& lat, const Sexp& s) {
  if (s.list) s.fail("a lattice point");
  auto l = lat.find(s.atom);
  if (!l) s.fail("a point of the lattice, got '" + s.atom + "'");
  return *l;
}

}  // namespace

SourceProgram parse_program(std::string_view text, const ProgramOptions& opts) {
  auto forms = read_all(text);
  SourceProgram p;
  std::size_t i = 0;
  auto is = [&](const char* kw) { return i < forms.size() && forms[i].head_is(kw); };

  std::optional<Calculus> declared_calc;
  if (is("calculus")) {
    const Sexp& c = atom_arg(forms[i], 1);
    if (c.is_atom("fg")) declared_calc = Calculus::Fg;
    else if (c.is_atom("cg")) declared_calc = Calculus::Cg;
    else c.fail("fg or cg");
    ++i;
  }
  if (declared_calc && opts.calculus && *declared_calc != *opts.calculus)
    forms[i - 1].fail(std::string("calculus ") + calculus_name(*opts.calculus) + " to match the file name");
  p.calculus = declared_calc ? *declared_calc : opts.calculus.value_or(Calculus::Fg);

  if (is("lattice")) {
    const Sexp& l = atom_arg(forms[i], 1);
    if (l.list) l.fail("a lattice name or path");
    p.lattice_spec = l.atom;
    ++i;
  }
  if (opts.lattice) p.lattice_spec = *opts.lattice;
  p.lattice = Lattice::load(p.lattice_spec);

  auto bottom = p.lattice.bottom();
  p.pc = bottom ? *bottom : p.lattice.point(0);
  if (is("pc")) {
    p.pc = label_at(p.lattice, atom_arg(forms[i], 1));
    ++i;
  }
  if (opts.pc) {
    auto l = p.lattice.find(*opts.pc);
    if (!l) throw ParseError(0, 0, "--pc to name a lattice point, got '" + *opts.pc + "'");
    p.pc = *l;
  }

  Scope scope;
  while (is("input")) {
    const Sexp& f = forms[i];
    if (f.items.size() != 4 && f.items.size() != 5) f.fail("(input NAME TYPE EXPR LABEL?)");
    const Sexp& name = f.items[1];
    if (name.list) name.fail("an input name");
    Type t = parse_type(f.items[2]);
    std::optional<Label> at;
    if (f.items.size() == 5) at = label_at(p.lattice, f.items[4]);
    if (p.calculus == Calculus::Fg)
      p.fg_inputs.push_back({name.atom, t, parse_fg(f.items[3], p.lattice, scope), at});
    else
      p.cg_inputs.push_back({name.atom, t, parse_cg(f.items[3], p.lattice, scope), at});
    scope.push_back(name.atom);
    ++i;
  }

  if (!is("main")) {
    if (i < forms.size()) forms[i].fail("(main EXPR) or a header form in order");
    throw ParseError(0, 0, "a (main EXPR) form");
  }
  const Sexp& m = forms[i];
  if (m.items.size() == 4 && m.items[2].is_atom(":")) {
    p.declared = parse_type(m.items[3]);
  } else if (m.items.size() != 2) {
    m.fail("(main EXPR) or (main EXPR : TYPE)");
  }
  if (p.calculus == Calculus::Fg) p.fg_main = parse_fg(m.items[1], p.lattice, scope);
  else p.cg_main = parse_cg(m.items[1], p.lattice, scope);
  if (++i < forms.size()) forms[i].fail("end of program after (main ...)");
  return p;
}

namespace {

// true when the literal is a computation to run rather than a pure value
bool check_cg_literal(const Context& ctx, const InputDecl<cg::Expr>& in) {
  try {
    cg::check(ctx, in.literal, in.type);
    return false;
  } catch (const TypeError&) {
    cg::check(ctx, in.literal, Type::lio(in.type));
    return true;
  }
}

}  // namespace

Type check_program(const SourceProgram& p) {
  Context ctx;
  if (p.calculus == Calculus::Fg) {
    for (const auto& in : p.fg_inputs) {
      fg::check(ctx, in.literal, in.type);
      ctx = ctx.push(in.type);
    }
    if (p.declared) {
      fg::check(ctx, p.fg_main, *p.declared);
      return *p.declared;
    }
    return fg::typecheck(ctx, p.fg_main);
  }
  for (const auto& in : p.cg_inputs) {
    check_cg_literal(ctx, in);
    ctx = ctx.push(in.type);
  }
  if (p.declared) {
    cg::check(ctx, p.cg_main, Type::lio(*p.declared));
    return Type::lio(*p.declared);
  }
  return cg::typecheck(ctx, p.cg_main);
}

std::string print_program(const SourceProgram& p) {
  const Lattice& lat = p.lattice;
  std::string out = std::string("(calculus ") + calculus_name(p.calculus) + ")\n";
  out += "(lattice " + p.lattice_spec + ")\n";
  out += "(pc " + lat.name(p.pc) + ")\n";
  Scope scope;
  auto input = [&](const std::string& name, const Type& t, const std::string& lit, const std::optional<Label>& at) {
    out += "(input " + name + " " + t.to_string() + " " + lit;
    if (at) out += " " + lat.name(*at);
    out += ")\n";
  };
  if (p.calculus == Calculus::Fg)
    for (const auto& in : p.fg_inputs) {
      input(in.name, in.type, print_fg(in.literal, lat, scope), in.at);
      scope.push_back(in.name);
    }
  else
    for (const auto& in : p.cg_inputs) {
      input(in.name, in.type, print_cg(in.literal, lat, scope), in.at);
      scope.push_back(in.name);
    }
  out += "(main " + (p.calculus == Calculus::Fg ? print_fg(p.fg_main, lat, scope) : print_cg(p.cg_main, lat, scope));
  if (p.declared) out += " : " + p.declared->to_string();
  return out + ")\n";
}

FgSetup build_fg_inputs(const SourceProgram& p, std::uint64_t fuel) {
  FgSetup s;
  for (const auto& in : p.fg_inputs) {
    auto o = fg::eval(p.lattice, s.store, s.heap, in.literal, s.env, in.at.value_or(p.pc), fuel);
    const auto* c = o.final();
    if (!c) throw InputError("input '" + in.name + "' did not evaluate to a value");
    s.store = c->store;
    s.heap = c->heap;
    s.env = s.env.push(c->value);
  }
  return s;
}

CgSetup build_cg_inputs(const SourceProgram& p, std::uint64_t fuel) {
  CgSetup s;
  Context ctx;
  for (const auto& in : p.cg_inputs) {
    if (check_cg_literal(ctx, in)) {
      auto o = cg::eval_force(p.lattice, s.store, s.heap, in.at.value_or(p.pc), in.literal, s.env, fuel);
      const auto* c = o.final();
      if (!c) throw InputError("input '" + in.name + "' did not evaluate to a value");
      s.store = c->store;
      s.heap = c->heap;
      s.env = s.env.push(c->value);
    } else {
      auto o = cg::eval_pure(p.lattice, in.literal, s.env, fuel);
      if (!o.value()) throw InputError("input '" + in.name + "' did not evaluate to a value");
      s.env = s.env.push(*o.value());
    }
    ctx = ctx.push(in.type);
  }
  return s;
}

RunResult run_program(const SourceProgram& p, const RunOptions& opts) {
  RunResult r;
  r.calculus = p.calculus;
  r.pc = p.pc;
  auto start = std::chrono::steady_clock::now();
  if (p.calculus == Calculus::Fg) {
    auto s = build_fg_inputs(p, opts.fuel);
    r.outcome = fg::eval(p.lattice, s.store, s.heap, p.fg_main, s.env, p.pc, opts.fuel, opts.mutation);
  } else {
    auto s = build_cg_inputs(p, opts.fuel);
    r.outcome = cg::eval_force(p.lattice, s.store, s.heap, p.pc, p.cg_main, s.env, opts.fuel, opts.mutation);
  }
  r.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

template <class Outcome>
const char* outcome_kind(const Outcome& o) {
  if (o.final()) return "final";
  if (o.abort()) return "abort";
  if (o.timed_out()) return "timeout";
  return "stuck";
}

}  // namespace

bool RunResult::aborted() const {
  return std::visit([](const auto& o) { return o.abort() != nullptr; }, outcome);
}

Json RunResult::to_json(const Lattice& lat) const {
  Json j;
  j["calculus"] = calculus_name(calculus);
  j["lattice"] = lat.description();
  std::visit(
      [&](const auto& o) {
        j["outcome"] = outcome_kind(o);
        j["pc"] = lat.name(pc);
        j["value"] = nullptr;
        j["final_pc"] = nullptr;
        j["store"] = nullptr;
        j["heap"] = nullptr;
        j["final"] = nullptr;
        j["abort"] = nullptr;
        j["stuck"] = nullptr;
        if (const auto* c = o.final()) {
          j["value"] = show(c->value, lat);
          if constexpr (std::is_same_v<std::decay_t<decltype(o)>, cg::Outcome>) j["final_pc"] = lat.name(c->pc);
          j["store"] = show(c->store, lat);
          j["heap"] = show(c->heap, lat);
          j["final"] = surface::to_json(*c, lat);
        }
        if (const auto* a = o.abort()) j["abort"] = Json{{"rule", a->rule}, {"check", a->check}};
        if (const auto* s = o.stuck()) j["stuck"] = s->reason;
        j["fuel_used"] = o.fuel_used;
      },
      outcome);
  j["duration"] = duration;
  return j;
}

std::string RunResult::to_text(const Lattice& lat) const {
  std::string out;
  std::visit(
      [&](const auto& o) {
        out += std::string("outcome: ") + outcome_kind(o) + "\n";
        if (const auto* c = o.final()) {
          out += "value: " + show(c->value, lat) + "\n";
          if constexpr (std::is_same_v<std::decay_t<decltype(o)>, cg::Outcome>) out += "pc: " + lat.name(c->pc) + "\n";
          out += "store: " + show(c->store, lat) + "\n";
          out += "heap: " + show(c->heap, lat) + "\n";
        }
        if (const auto* a = o.abort()) out += "abort: " + a->rule + " (" + a->check + ")\n";
        if (const auto* s = o.stuck()) out += "stuck: " + s->reason + "\n";
        out += "fuel used: " + std::to_string(o.fuel_used) + "\n";
      },
      outcome);
  return out;
}

SourceProgram translate_program(const SourceProgram& p) {
  SourceProgram q;
  q.lattice_spec = p.lattice_spec;
  q.lattice = p.lattice;
  q.pc = p.pc;
  if (p.calculus == Calculus::Fg) {
    q.calculus = Calculus::Cg;
    for (const auto& in : p.fg_inputs)
      q.cg_inputs.push_back({in.name, translate::fg2cg_type(in.type), translate::fg2cg_expr(in.literal), in.at});
    q.cg_main = translate::fg2cg_expr(p.fg_main);
    if (p.declared) q.declared = translate::fg2cg_type(*p.declared);
    return q;
  }
  q.calculus = Calculus::Fg;
  Context ctx;
  for (const auto& in : p.cg_inputs) {
    fg::Expr lit = translate::cg2fg_expr(in.literal);
    if (check_cg_literal(ctx, in)) lit = fg::app(lit, fg::unit());
    q.fg_inputs.push_back({in.name, translate::cg2fg_type(in.type), lit, in.at});
    ctx = ctx.push(in.type);
  }
  q.fg_main = fg::app(translate::cg2fg_expr(p.cg_main), fg::unit());
  if (p.declared) q.declared = translate::cg2fg_type(*p.declared);
  return q;
}

}  // namespace ifc::surface
