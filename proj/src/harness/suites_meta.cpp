#include <algorithm>
#include <functional>

#include "ifc/security/cg_equiv.hpp"
#include "ifc/security/cross.hpp"
#include "ifc/security/fg_equiv.hpp"
#include "ifc/surface/values.hpp"
#include "ifc/translate/cg2fg.hpp"
#include "ifc/translate/fg2cg.hpp"
#include "internal.hpp"

namespace ifc::harness::detail {

namespace {

using Addr = Bijection::Addr;
using Pairs = std::vector<std::pair<Addr, Addr>>;

constexpr Addr kExhaustiveIdentity = 8;
constexpr Addr kExhaustiveSpan = 4;
constexpr Addr kAssocSpan = 3;
constexpr Addr kRandomSpan = 16;
constexpr std::size_t kBruteHeap = 6;
constexpr int kRegenerate = 30;

TrialOutcome failed(std::string reason, std::vector<std::string> inputs = {}) {
  TrialOutcome o;
  o.verdict = Verdict::Fail;
  o.witness = Witness{};
  o.witness->reason = std::move(reason);
  o.witness->inputs = std::move(inputs);
  return o;
}

std::string show_pairs(const Bijection& b) {
  std::string s = "{";
  for (auto [x, y] : b.pairs()) s += (s.size() > 1 ? ", " : "") + std::to_string(x) + "->" + std::to_string(y);
  return s + "}";
}

// Every partial bijection within n1 x n2 that extends base.
void each_bijection(std::size_t n1, std::size_t n2, const Bijection& base, const std::function<void(const Bijection&)>& f) {
  std::vector<bool> used(n2, false);
  for (auto [a, c] : base.pairs())
    if (c < n2) used[c] = true;
  Bijection cur = base;
  std::function<void(Addr)> go = [&](Addr a) {
    if (a == n1) return f(cur);
    if (base.forward(a)) return go(a + 1);
    go(a + 1);
    for (Addr c = 0; c < n2; ++c) {
      if (used[c]) continue;
      used[c] = true;
      Bijection saved = cur;
      cur.insert(a, c);
      go(a + 1);
      cur = saved;
      used[c] = false;
    }
  };
  go(0);
}

std::vector<Bijection> all_within(Addr n) {
  std::vector<Bijection> out;
  each_bijection(n, n, {}, [&](const Bijection& b) { out.push_back(b); });
  return out;
}

Bijection random_bijection(Rng& rng, Addr span) {
  std::vector<Addr> dom(span), rng_(span);
  for (Addr i = 0; i < span; ++i) dom[i] = rng_[i] = i;
  for (Addr i = span; i > 1; --i) {
    std::swap(dom[i - 1], dom[rng.below(i)]);
    std::swap(rng_[i - 1], rng_[rng.below(i)]);
  }
  Pairs p;
  for (std::size_t i = 0, n = rng.below(span + 1); i < n; ++i) p.emplace_back(dom[i], rng_[i]);
  return Bijection::from_pairs(p);
}

Bijection restrict(const Bijection& b, const std::function<bool(Addr, Addr)>& keep) {
  Pairs p;
  for (auto pr : b.pairs())
    if (keep(pr.first, pr.second)) p.push_back(pr);
  return Bijection::from_pairs(p);
}

std::optional<std::string> identity_laws(const Bijection& b, Addr n) {
  Bijection id = Bijection::identity(n);
  if (!(compose(b, id) == restrict(b, [n](Addr a, Addr) { return a < n; }))) return "b . id does not restrict the domain";
  if (!(compose(id, b) == restrict(b, [n](Addr, Addr c) { return c < n; }))) return "id . b does not restrict the range";
  if (b.within(n, n) && !(compose(b, id) == b && compose(id, b) == b)) return "identity does not absorb";
  if (!(b.inverse().inverse() == b)) return "inverse is not an involution";
  Bijection dom_id, rng_id;
  for (auto [a, c] : b.pairs()) {
    dom_id.insert(a, a);
    rng_id.insert(c, c);
  }
  if (!(compose(b.inverse(), b) == dom_id)) return "b^-1 . b is not the identity on the domain";
  if (!(compose(b, b.inverse()) == rng_id)) return "b . b^-1 is not the identity on the range";
  if (!(Bijection::from_pairs(b.pairs()) == b)) return "pairs do not round-trip";
  return std::nullopt;
}

std::optional<std::string> assoc_laws(const Bijection& a, const Bijection& b, const Bijection& c) {
  if (!(compose(a, compose(b, c)) == compose(compose(a, b), c))) return "composition is not associative";
  if (!(compose(a, b).inverse() == compose(b.inverse(), a.inverse()))) return "inverse does not reverse composition";
  return std::nullopt;
}

TrialOutcome bijection_trial(Rng& rng, std::uint64_t index) {
  if (index == 0) {
    for (Addr n = 0; n <= kExhaustiveIdentity; ++n) {
      Bijection id = Bijection::identity(n);
      if (!(id.inverse() == id) || !(compose(id, id) == id) || id.size() != n || !id.within(n, n))
        return failed("identity of size " + std::to_string(n) + " is not an involutive idempotent");
      for (Addr m = 0; m <= kExhaustiveIdentity; ++m)
        if (id.extends(Bijection::identity(m)) != (m <= n)) return failed("identity ordering is wrong");
      for (const auto& b : all_within(kExhaustiveSpan))
        if (auto why = identity_laws(b, n)) return failed(*why, {show_pairs(b), "n = " + std::to_string(n)});
    }
    auto small = all_within(kAssocSpan);
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& c : small)
          if (auto why = assoc_laws(a, b, c)) return failed(*why, {show_pairs(a), show_pairs(b), show_pairs(c)});
    return TrialOutcome::pass();
  }
  Bijection a = random_bijection(rng, kRandomSpan), b = random_bijection(rng, kRandomSpan),
            c = random_bijection(rng, kRandomSpan);
  Addr n = static_cast<Addr>(rng.below(kRandomSpan + 1));
  if (auto why = identity_laws(a, n)) return failed(*why, {show_pairs(a), "n = " + std::to_string(n)});
  if (auto why = assoc_laws(a, b, c)) return failed(*why, {show_pairs(a), show_pairs(b), show_pairs(c)});
  if (!a.empty()) {
    auto p = a.pairs();
    auto [x, y] = p[rng.below(p.size())];
    Addr other = static_cast<Addr>(rng.below(kRandomSpan));
    bool clash = other != y;
    try {
      p.emplace_back(x, other);
      Bijection::from_pairs(p);
      if (clash) return failed("conflicting pair accepted", {show_pairs(a)});
    } catch (const NotInjective&) {
      if (!clash) return failed("duplicate pair rejected", {show_pairs(a)});
    }
  }
  return TrialOutcome::pass();
}

// ----- shared input helpers -----

std::vector<Type> fg_types(Rng& rng, const SuiteConfig& cfg) {
  FgGen g(rng, cfg.gen);
  std::vector<Type> ts;
  for (int n = rng.range(1, std::max(1, cfg.gen.input_count_max)); n > 0; --n) ts.push_back(g.input_type());
  return ts;
}

std::vector<Type> cg_types(Rng& rng, const SuiteConfig& cfg) {
  CgGen g(rng, cfg.gen);
  std::vector<Type> ts;
  for (int n = rng.range(1, std::max(1, cfg.gen.input_count_max)); n > 0; --n) ts.push_back(g.input_type());
  return ts;
}

Label bottom(const Lattice& lat) { return lat.bottom().value_or(lat.points().front()); }

fg::Final as_final(const FgWorld& w, const Lattice& lat) {
  return {w.store, w.heap, w.env.empty() ? fg::unit_value(bottom(lat)) : w.env.at(0)};
}

cg::Final as_final(const CgWorld& w, Label pc) {
  return {w.store, w.heap, pc, w.env.empty() ? cg::unit_value() : w.env.at(0)};
}

// Extends b with pairs beyond both heaps.
Bijection widen(const Bijection& b, std::size_t n1, std::size_t n2, int extra) {
  Bijection w = b;
  for (int j = 0; j < extra; ++j) w.insert(static_cast<Addr>(n1 + j), static_cast<Addr>(n2 + j));
  return w;
}

template <class World>
std::string describe_pair(const World& a, const World& b, const Bijection& beta, const Lattice& lat) {
  return describe(a, lat) + " ~ " + describe(b, lat) + " under " + show_pairs(beta);
}

// ----- leq laws -----

template <class World, class Final, class Eq>
std::optional<std::string> leq_laws(const Observer& o, const Inputs<World>& in, const std::vector<Final>& fin, Eq eq,
                                    int extra) {
  const auto& s = in.sides;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Bijection id = Bijection::identity(static_cast<Addr>(s[i].heap.size()));
    if (!eq(o, id, s[i].env, s[i].env) || !eq(o, id, s[i].store, s[i].store) || !eq(o, id, s[i].heap, s[i].heap) ||
        !eq(o, id, fin[i], fin[i]))
      return "reflexivity fails on side " + std::to_string(i);
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Bijection& b = in.links[i];
    Bijection inv = b.inverse();
    if (!eq(o, b, s[i].env, s[i + 1].env) || !eq(o, b, s[i].store, s[i + 1].store) ||
        !eq(o, b, s[i].heap, s[i + 1].heap) || !eq(o, b, fin[i], fin[i + 1]))
      return "generated link does not relate its sides";
    if (!eq(o, inv, s[i + 1].env, s[i].env) || !eq(o, inv, s[i + 1].store, s[i].store) ||
        !eq(o, inv, s[i + 1].heap, s[i].heap) || !eq(o, inv, fin[i + 1], fin[i]))
      return "symmetry fails under the inverse bijection";
    Bijection w = widen(b, s[i].heap.size(), s[i + 1].heap.size(), extra);
    if (!eq(o, w, s[i].env, s[i + 1].env) || !eq(o, w, s[i].store, s[i + 1].store))
      return "weakening the bijection breaks environment or store equivalence";
  }
  if (s.size() >= 3) {
    Bijection b = compose(in.links[1], in.links[0]);
    if (!eq(o, b, s[0].env, s[2].env) || !eq(o, b, s[0].store, s[2].store) || !eq(o, b, s[0].heap, s[2].heap) ||
        !eq(o, b, fin[0], fin[2]))
      return "transitivity fails under the composed bijection";
  }
  return std::nullopt;
}

struct FgEq {
  template <class T>
  bool operator()(const Observer& o, const Bijection& b, const T& x, const T& y) const {
    return fg::low_equiv(o, b, x, y);
  }
};
struct CgEq {
  template <class T>
  bool operator()(const Observer& o, const Bijection& b, const T& x, const T& y) const {
    return cg::low_equiv(o, b, x, y);
  }
};

TrialOutcome leq_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  Observer o = observer(cfg);
  int extra = rng.range(1, 3);
  {
    auto in = gen_fg_inputs(rng, cfg.gen, fg_types(rng, cfg), 3);
    std::vector<fg::Final> fin;
    for (const auto& w : in.sides) fin.push_back(as_final(w, lat));
    if (auto why = leq_laws(o, in, fin, FgEq{}, extra))
      return failed("fine-grained " + *why, {describe_pair(in.sides[0], in.sides[1], in.links[0], lat),
                                             describe_pair(in.sides[1], in.sides[2], in.links[1], lat)});
  }
  {
    auto in = gen_cg_inputs(rng, cfg.gen, cg_types(rng, cfg), 3);
    Label pc = pick_label(rng, cfg.gen);
    std::vector<cg::Final> fin;
    for (const auto& w : in.sides) fin.push_back(as_final(w, pc));
    if (auto why = leq_laws(o, in, fin, CgEq{}, extra))
      return failed("coarse-grained " + *why, {describe_pair(in.sides[0], in.sides[1], in.links[0], lat),
                                               describe_pair(in.sides[1], in.sides[2], in.links[1], lat)});
  }
  return TrialOutcome::pass();
}

// ----- find_bijection against brute force -----

template <class World>
World perturb(Rng& rng, World w, const World& donor) {
  auto mine = w.env.to_vector();
  auto theirs = donor.env.to_vector();
  if (!mine.empty() && mine.size() == theirs.size() && donor.heap.size() <= w.heap.size() && rng.chance(0.5)) {
    std::size_t i = rng.below(mine.size());
    mine[i] = theirs[i];
    std::reverse(mine.begin(), mine.end());
    decltype(w.env) env;
    for (auto& v : mine) env = env.push(v);
    w.env = env;
  } else if (w.heap.size() >= 2) {
    std::swap(w.heap[0], w.heap[w.heap.size() - 1]);
  }
  return w;
}

template <class Final, class Eq, class Find>
std::optional<std::string> agree(const Observer& o, const Bijection& base, const Final& a, const Final& b, Eq eq,
                                 Find find) {
  std::vector<Bijection> sols;
  each_bijection(a.heap.size(), b.heap.size(), base, [&](const Bijection& beta) {
    if (eq(o, beta, a, b)) sols.push_back(beta);
  });
  auto found = find(o, base, a, b);
  if (!found) return sols.empty() ? std::nullopt : std::optional<std::string>("missed " + show_pairs(sols.front()));
  if (sols.empty()) return "returned " + show_pairs(*found) + " but no bijection relates the configurations";
  if (!found->extends(base)) return "result does not extend the base bijection";
  if (std::find(sols.begin(), sols.end(), *found) == sols.end()) return "result " + show_pairs(*found) + " is not valid";
  for (const auto& s : sols)
    if (!s.extends(*found)) return "result " + show_pairs(*found) + " is not below " + show_pairs(s);
  return std::nullopt;
}

template <class World, class GenIn, class MakeFinal, class Eq, class Find>
TrialOutcome find_case(const SuiteConfig& cfg, Rng& rng, GenIn gen_in, MakeFinal make, Eq eq, Find find,
                       const std::string& tag) {
  const Lattice& lat = cfg.gen.lattice;
  for (int attempt = 0; attempt < kRegenerate; ++attempt) {
    auto in = gen_in();
    if (in.sides[0].heap.size() > kBruteHeap || in.sides[1].heap.size() > kBruteHeap) continue;
    World a = in.sides[0], b = in.sides[1];
    Bijection base = in.links[0];
    switch (rng.below(3)) {
      case 0: break;
      case 1:
        b = perturb(rng, b, in.sides[0]);
        break;
      default:
        base = restrict(base, [&](Addr, Addr) { return rng.chance(0.5); });
    }
    if (rng.chance(0.3)) base = {};
    auto fa = make(a), fb = make(b);
    if (auto why = agree(observer(cfg), base, fa, fb, eq, find))
      return failed(tag + " search disagrees with brute force: " + *why, {describe_pair(a, b, base, lat)});
    return TrialOutcome::pass();
  }
  return TrialOutcome::vacuous(Verdict::InconclusiveFuel);
}

TrialOutcome find_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  auto fg_find = [](const Observer& o, const Bijection& b, const fg::Final& x, const fg::Final& y) {
    return fg::find_bijection(o, b, x, y);
  };
  auto cg_find = [](const Observer& o, const Bijection& b, const cg::Final& x, const cg::Final& y) {
    return cg::find_bijection(o, b, x, y);
  };
  auto ft = fg_types(rng, cfg);
  auto r = find_case<FgWorld>(
      cfg, rng, [&] { return gen_fg_inputs(rng, cfg.gen, ft, 2); },
      [&](const FgWorld& w) { return as_final(w, lat); }, FgEq{}, fg_find, "fine-grained");
  if (r.verdict != Verdict::Pass) return r;
  auto ct = cg_types(rng, cfg);
  Label pc = pick_label(rng, cfg.gen);
  return find_case<CgWorld>(
      cfg, rng, [&] { return gen_cg_inputs(rng, cfg.gen, ct, 2); }, [&](const CgWorld& w) { return as_final(w, pc); },
      CgEq{}, cg_find, "coarse-grained");
}

// ----- ceq laws -----

TrialOutcome ceq_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  auto in = gen_cg_inputs(rng, cfg.gen, cg_types(rng, cfg), 1);
  const CgWorld& w = in.sides[0];
  Label pc = pick_label(rng, cfg.gen);
  Label higher = lat.join(pc, pick_label(rng, cfg.gen));
  auto vals = w.env.to_vector();
  for (const auto& v : vals) {
    fg::Value t = translate::cg2fg_value(v, pc);
    if (t.label != pc) return failed("translated value is not labeled with its context", {surface::show(v, lat)});
    if (!cross::ceq(lat, pc, t, v))
      return failed("value is not related to its own translation", {surface::show(v, lat), surface::show(t, lat)});
    if (!cross::ceq(lat, higher, t, v))
      return failed("relation does not weaken to " + lat.name(higher), {surface::show(v, lat), surface::show(t, lat)});
  }
  if (!cross::ceq(lat, pc, translate::cg2fg_env(w.env, pc), w.env))
    return failed("environment is not related to its translation", {describe(w, lat)});
  if (!cross::state_rel(lat, translate::cg2fg_store(w.store), w.store))
    return failed("store is not related to its translation", {describe(w, lat)});
  if (!cross::state_rel(lat, translate::cg2fg_heap(w.heap), w.heap))
    return failed("heap is not related to its translation", {describe(w, lat)});
  return TrialOutcome::pass();
}

// ----- lifting and recovery of L-equivalence across the translations -----

std::vector<Bijection> candidates(Rng& rng, const Bijection& link, const std::optional<Bijection>& found,
                                  std::size_t n1, std::size_t n2) {
  std::vector<Bijection> out{link};
  if (found) out.push_back(*found);
  Bijection r = restrict(random_bijection(rng, static_cast<Addr>(std::max(n1, n2))),
                         [&](Addr a, Addr c) { return a < n1 && c < n2; });
  out.push_back(r);
  return out;
}

TrialOutcome lift_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  Observer o = observer(cfg);

  // Fine-grained pairs and their coarse-grained images agree on equivalence.
  {
    FgCase c = gen_fg_case(rng, cfg, 2, std::nullopt);
    FgWorld a = c.sides[0], b = c.sides[1];
    if (rng.chance(0.3)) b = perturb(rng, b, a);
    for (const auto& beta : candidates(rng, c.beta, std::nullopt, a.heap.size(), b.heap.size())) {
      bool src = fg::low_equiv(o, beta, a.env, b.env) && fg::low_equiv(o, beta, a.store, b.store) &&
                 fg::low_equiv(o, beta, a.heap, b.heap);
      bool tgt = cg::low_equiv(o, beta, translate::fg2cg_env(a.env), translate::fg2cg_env(b.env)) &&
                 cg::low_equiv(o, beta, translate::fg2cg_store(a.store), translate::fg2cg_store(b.store)) &&
                 cg::low_equiv(o, beta, translate::fg2cg_heap(a.heap), translate::fg2cg_heap(b.heap));
      if (src != tgt)
        return failed(src ? "fg2cg does not lift input equivalence" : "fg2cg relates inequivalent inputs",
                      {describe_pair(a, b, beta, lat)});
    }
    auto runs = std::vector<fg::Outcome>{};
    for (const auto& w : c.sides) runs.push_back(fg::eval(lat, w.store, w.heap, c.e, w.env, c.pc, cfg.fuel));
    if (runs[0].final() && runs[1].final()) {
      const auto &x = *runs[0].final(), &y = *runs[1].final();
      auto found = fg::find_bijection(o, c.beta, x, y);
      for (const auto& beta : candidates(rng, c.beta, found, x.heap.size(), y.heap.size())) {
        bool src = fg::low_equiv(o, beta, x, y);
        bool tgt = cg::low_equiv(o, beta, translate::fg2cg_final(x, c.pc), translate::fg2cg_final(y, c.pc));
        if (src != tgt)
          return failed(src ? "fg2cg does not lift result equivalence" : "fg2cg result equivalence is not recovered",
                        {describe(runs[0], lat), describe(runs[1], lat), show_pairs(beta)});
      }
    }
  }

  // Coarse-grained pairs: equivalence carries over to the fine-grained images.
  {
    CgCase c = gen_cg_case(rng, cfg, 2, std::nullopt);
    const CgWorld &a = c.sides[0], &b = c.sides[1];
    for (const auto& beta : candidates(rng, c.beta, std::nullopt, a.heap.size(), b.heap.size())) {
      bool src = cg::low_equiv(o, beta, a.env, b.env) && cg::low_equiv(o, beta, a.store, b.store) &&
                 cg::low_equiv(o, beta, a.heap, b.heap);
      bool tgt = fg::low_equiv(o, beta, translate::cg2fg_env(a.env, c.pc), translate::cg2fg_env(b.env, c.pc)) &&
                 fg::low_equiv(o, beta, translate::cg2fg_store(a.store), translate::cg2fg_store(b.store)) &&
                 fg::low_equiv(o, beta, translate::cg2fg_heap(a.heap), translate::cg2fg_heap(b.heap));
      if (src && !tgt) return failed("cg2fg does not lift input equivalence", {describe_pair(a, b, beta, lat)});
    }
    std::vector<cg::Outcome> runs;
    for (const auto& w : c.sides) runs.push_back(cg::eval_force(lat, w.store, w.heap, c.pc, c.e, w.env, cfg.fuel));
    if (runs[0].final() && runs[1].final()) {
      const auto &x = *runs[0].final(), &y = *runs[1].final();
      auto found = cg::find_bijection(o, c.beta, x, y);
      fg::Final tx{translate::cg2fg_store(x.store), translate::cg2fg_heap(x.heap), translate::cg2fg_value(x.value, x.pc)};
      fg::Final ty{translate::cg2fg_store(y.store), translate::cg2fg_heap(y.heap), translate::cg2fg_value(y.value, y.pc)};
      for (const auto& beta : candidates(rng, c.beta, found, x.heap.size(), y.heap.size()))
        if (cg::low_equiv(o, beta, x, y) && !fg::low_equiv(o, beta, tx, ty))
          return failed("cg2fg does not lift result equivalence",
                        {describe(runs[0], lat), describe(runs[1], lat), show_pairs(beta)});
    }
  }
  return TrialOutcome::pass();
}

}  // namespace

TrialFn meta_suite(const SuiteConfig& cfg, const std::string& name) {
  if (name == "bijection-laws") return [](Rng& rng, std::uint64_t i) { return bijection_trial(rng, i); };
  if (name == "leq-laws") return [&cfg](Rng& rng, std::uint64_t) { return leq_trial(cfg, rng); };
  if (name == "find-bijection") return [&cfg](Rng& rng, std::uint64_t) { return find_trial(cfg, rng); };
  if (name == "ceq-laws") return [&cfg](Rng& rng, std::uint64_t) { return ceq_trial(cfg, rng); };
  if (name == "lift-recovery") return [&cfg](Rng& rng, std::uint64_t) { return lift_trial(cfg, rng); };
  throw std::invalid_argument("not a metatheory suite: " + name);
}

}  // namespace ifc::harness::detail
