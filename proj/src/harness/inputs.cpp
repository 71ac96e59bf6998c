#include "ifc/harness/inputs.hpp"

#include "ifc/security/cg_equiv.hpp"
#include "ifc/security/fg_equiv.hpp"

namespace ifc::harness {

using K = Type::Kind;

namespace {

constexpr int kClosureBudget = 5;

class FgBuilder {
 public:
  FgBuilder(Rng& rng, const GenConfig& cfg, int k) : rng_(rng), cfg_(cfg), gen_(rng, cfg), k_(k) {
    out_.sides.resize(static_cast<std::size_t>(k));
    out_.links.resize(static_cast<std::size_t>(k - 1));
  }

  FgInputs build(const std::vector<Type>& types) {
    std::vector<std::vector<fg::Value>> envs(out_.sides.size());
    for (const auto& t : types) {
      auto vs = related(t);
      for (std::size_t i = 0; i < vs.size(); ++i) envs[i].push_back(vs[i]);
    }
    for (std::size_t i = 0; i < envs.size(); ++i) out_.sides[i].env = fg::Env::from_vector(envs[i]);
    return std::move(out_);
  }

 private:
  bool secret_available() const { return !cfg_.secret_labels().empty(); }

  std::vector<fg::Value> related(const Type& t) {
    std::vector<fg::Value> out;
    if (secret_available() && rng_.chance(cfg_.secret_bias)) {
      for (int i = 0; i < k_; ++i) out.push_back(single(i, t, pick_label(rng_, cfg_, true)));
      return out;
    }
    Label l = pick_label(rng_, cfg_, false);
    for (auto& r : related_raw(t)) out.push_back(fg::labeled(r, l));
    return out;
  }

  std::vector<fg::RawPtr> same(fg::RawPtr r) { return std::vector<fg::RawPtr>(static_cast<std::size_t>(k_), r); }

  fg::RawPtr closure(const Type& t) {
    return fg::make_raw(fg::Closure{fg::lam(t.arg(0), gen_.expr(Context{}.push(t.arg(0)), t.arg(1), kClosureBudget)),
                                    fg::Env{}});
  }

  std::vector<fg::RawPtr> related_raw(const Type& t) {
    std::vector<fg::RawPtr> out;
    switch (t.kind()) {
      case K::Unit: return same(fg::make_raw(fg::UnitV{}));
      case K::Label: return same(fg::make_raw(fg::LabelV{pick_label(rng_, cfg_)}));
      case K::Fun: return same(closure(t));
      case K::Sum: {
        bool left = rng_.chance(0.5);
        for (auto& v : related(t.arg(left ? 0 : 1)))
          out.push_back(left ? fg::make_raw(fg::InlV{v}) : fg::make_raw(fg::InrV{v}));
        return out;
      }
      case K::Prod: {
        auto a = related(t.arg(0));
        auto b = related(t.arg(1));
        for (int i = 0; i < k_; ++i) out.push_back(fg::make_raw(fg::PairV{a[i], b[i]}));
        return out;
      }
      case K::Ref:
        if (t.mode() == RefMode::Insensitive) {
          Label m = pick_label(rng_, cfg_);
          if (cfg_.lattice.leq(m, cfg_.attacker)) {
            auto cells = related_raw(t.arg(0));
            for (int i = 0; i < k_; ++i) {
              auto n = out_.sides[i].store.append(m, cells[i]);
              out.push_back(fg::make_raw(fg::FiRef{static_cast<std::uint32_t>(n), m}));
            }
          } else {
            for (int i = 0; i < k_; ++i) {
              auto n = out_.sides[i].store.append(m, single_raw(i, t.arg(0)));
              out.push_back(fg::make_raw(fg::FiRef{static_cast<std::uint32_t>(n), m}));
            }
          }
          return out;
        } else {
          pad();
          auto cells = related(t.arg(0));
          std::vector<std::uint32_t> addr;
          for (int i = 0; i < k_; ++i) {
            auto& heap = out_.sides[i].heap;
            addr.push_back(static_cast<std::uint32_t>(heap.size()));
            heap.push_back(cells[i]);
            out.push_back(fg::make_raw(fg::FsRef{addr.back()}));
          }
          for (int i = 0; i + 1 < k_; ++i) out_.links[i].insert(addr[i], addr[i + 1]);
          return out;
        }
      default: break;
    }
    throw std::invalid_argument("not a fine-grained type: " + t.to_string());
  }

  fg::Value single(int side, const Type& t, Label top) { return fg::labeled(single_raw(side, t), top); }

  fg::RawPtr single_raw(int side, const Type& t) {
    auto any = [&](const Type& c) { return single(side, c, pick_label(rng_, cfg_)); };
    switch (t.kind()) {
      case K::Unit: return fg::make_raw(fg::UnitV{});
      case K::Label: return fg::make_raw(fg::LabelV{pick_label(rng_, cfg_)});
      case K::Fun: return closure(t);
      case K::Sum:
        if (rng_.chance(0.5)) return fg::make_raw(fg::InlV{any(t.arg(0))});
        return fg::make_raw(fg::InrV{any(t.arg(1))});
      case K::Prod: return fg::make_raw(fg::PairV{any(t.arg(0)), any(t.arg(1))});
      case K::Ref: {
        auto& w = out_.sides[side];
        if (t.mode() == RefMode::Insensitive) {
          // Only secret memories may differ in length between sides.
          Label m = pick_label(rng_, cfg_, true);
          auto n = w.store.append(m, single_raw(side, t.arg(0)));
          return fg::make_raw(fg::FiRef{static_cast<std::uint32_t>(n), m});
        }
        auto cell = any(t.arg(0));
        w.heap.push_back(cell);
        return fg::make_raw(fg::FsRef{static_cast<std::uint32_t>(w.heap.size() - 1)});
      }
      default: break;
    }
    throw std::invalid_argument("not a fine-grained type: " + t.to_string());
  }

  void pad() {
    if (!secret_available() || !rng_.chance(0.3)) return;
    auto& w = out_.sides[rng_.below(out_.sides.size())];
    for (int n = rng_.range(1, 2); n > 0; --n) w.heap.push_back(fg::unit_value(pick_label(rng_, cfg_, true)));
  }

  Rng& rng_;
  const GenConfig& cfg_;
  FgGen gen_;
  int k_;
  FgInputs out_;
};

class CgBuilder {
 public:
  CgBuilder(Rng& rng, const GenConfig& cfg, int k) : rng_(rng), cfg_(cfg), gen_(rng, cfg), k_(k) {
    out_.sides.resize(static_cast<std::size_t>(k));
    out_.links.resize(static_cast<std::size_t>(k - 1));
  }

  CgInputs build(const std::vector<Type>& types) {
    std::vector<std::vector<cg::Value>> envs(out_.sides.size());
    for (const auto& t : types) {
      auto vs = related(t);
      for (std::size_t i = 0; i < vs.size(); ++i) envs[i].push_back(vs[i]);
    }
    for (std::size_t i = 0; i < envs.size(); ++i) out_.sides[i].env = cg::Env::from_vector(envs[i]);
    return std::move(out_);
  }

 private:
  bool secret_now() {
    return !cfg_.secret_labels().empty() && rng_.chance(cfg_.secret_bias);
  }

  std::vector<cg::Value> same(cg::Value v) { return std::vector<cg::Value>(static_cast<std::size_t>(k_), v); }

  cg::Value code(const Type& t) {
    if (t.is(K::Lio)) {
      // A suspended computation must be a thunk node; other LIO-typed terms are bound first.
      cg::Expr e = gen_.lio(Context{}, t.arg(0), kClosureBudget);
      if (!cg::is_thunk(e.op())) e = cg::bind(std::move(e), cg::ret(cg::var(0)));
      return cg::make(cg::ThunkClosure{std::move(e), cg::Env{}});
    }
    auto body = gen_.pure(Context{}.push(t.arg(0)), t.arg(1), kClosureBudget);
    if (!body) body = gen_.canonical_pure(t.arg(1));
    if (!body) throw std::invalid_argument("function type without inhabitant: " + t.to_string());
    return cg::make(cg::FunClosure{cg::lam(t.arg(0), *body), cg::Env{}});
  }

  std::vector<cg::Value> related(const Type& t) {
    std::vector<cg::Value> out;
    switch (t.kind()) {
      case K::Unit: return same(cg::unit_value());
      case K::Label: return same(cg::make(cg::LabelV{pick_label(rng_, cfg_)}));
      case K::Fun:
      case K::Lio: return same(code(t));
      case K::Sum: {
        bool left = rng_.chance(0.5);
        for (auto& v : related(t.arg(left ? 0 : 1)))
          out.push_back(left ? cg::make(cg::InlV{v}) : cg::make(cg::InrV{v}));
        return out;
      }
      case K::Prod: {
        auto a = related(t.arg(0));
        auto b = related(t.arg(1));
        for (int i = 0; i < k_; ++i) out.push_back(cg::make(cg::PairV{a[i], b[i]}));
        return out;
      }
      case K::Labeled:
        if (secret_now()) {
          for (int i = 0; i < k_; ++i) out.push_back(cg::labeled(pick_label(rng_, cfg_, true), single(i, t.arg(0))));
        } else {
          Label l = pick_label(rng_, cfg_, false);
          for (auto& v : related(t.arg(0))) out.push_back(cg::labeled(l, v));
        }
        return out;
      case K::Ref:
        if (t.mode() == RefMode::Insensitive) {
          Label m = pick_label(rng_, cfg_);
          bool pub = cfg_.lattice.leq(m, cfg_.attacker);
          auto cells = pub ? related(t.arg(0)) : std::vector<cg::Value>{};
          for (int i = 0; i < k_; ++i) {
            auto n = out_.sides[i].store.append(m, pub ? cells[i] : single(i, t.arg(0)));
            out.push_back(cg::make(cg::FiRef{static_cast<std::uint32_t>(n), m}));
          }
          return out;
        } else {
          pad();
          std::vector<cg::HeapCell> cells;
          if (secret_now()) {
            for (int i = 0; i < k_; ++i) cells.push_back({pick_label(rng_, cfg_, true), single(i, t.arg(0))});
          } else {
            Label l = pick_label(rng_, cfg_, false);
            for (auto& v : related(t.arg(0))) cells.push_back({l, v});
          }
          std::vector<std::uint32_t> addr;
          for (int i = 0; i < k_; ++i) {
            auto& heap = out_.sides[i].heap;
            addr.push_back(static_cast<std::uint32_t>(heap.size()));
            heap.push_back(cells[i]);
            out.push_back(cg::make(cg::FsRef{addr.back()}));
          }
          for (int i = 0; i + 1 < k_; ++i) out_.links[i].insert(addr[i], addr[i + 1]);
          return out;
        }
    }
    throw std::invalid_argument("unknown type");
  }

  cg::Value single(int side, const Type& t) {
    switch (t.kind()) {
      case K::Unit: return cg::unit_value();
      case K::Label: return cg::make(cg::LabelV{pick_label(rng_, cfg_)});
      case K::Fun:
      case K::Lio: return code(t);
      case K::Sum:
        if (rng_.chance(0.5)) return cg::make(cg::InlV{single(side, t.arg(0))});
        return cg::make(cg::InrV{single(side, t.arg(1))});
      case K::Prod: return cg::make(cg::PairV{single(side, t.arg(0)), single(side, t.arg(1))});
      case K::Labeled: return cg::labeled(pick_label(rng_, cfg_), single(side, t.arg(0)));
      case K::Ref: {
        auto& w = out_.sides[side];
        if (t.mode() == RefMode::Insensitive) {
          Label m = pick_label(rng_, cfg_, true);
          auto n = w.store.append(m, single(side, t.arg(0)));
          return cg::make(cg::FiRef{static_cast<std::uint32_t>(n), m});
        }
        cg::HeapCell cell{pick_label(rng_, cfg_), single(side, t.arg(0))};
        w.heap.push_back(cell);
        return cg::make(cg::FsRef{static_cast<std::uint32_t>(w.heap.size() - 1)});
      }
    }
    throw std::invalid_argument("unknown type");
  }

  void pad() {
    if (cfg_.secret_labels().empty() || !rng_.chance(0.3)) return;
    auto& w = out_.sides[rng_.below(out_.sides.size())];
    for (int n = rng_.range(1, 2); n > 0; --n) w.heap.push_back({pick_label(rng_, cfg_, true), cg::unit_value()});
  }

  Rng& rng_;
  const GenConfig& cfg_;
  CgGen gen_;
  int k_;
  CgInputs out_;
};

}  // namespace

FgInputs gen_fg_inputs(Rng& rng, const GenConfig& cfg, const std::vector<Type>& types, int k) {
  auto in = FgBuilder(rng, cfg, k).build(types);
  Observer obs{cfg.lattice, cfg.attacker};
  for (std::size_t i = 0; i < in.sides.size(); ++i) {
    const auto& a = in.sides[i];
    if (!fg::valid_inputs(a.store, a.heap, a.env)) throw std::logic_error("generated inputs are not valid");
    if (i + 1 < in.sides.size()) {
      const auto& b = in.sides[i + 1];
      const auto& beta = in.links[i];
      if (!fg::low_equiv(obs, beta, a.env, b.env) || !fg::low_equiv(obs, beta, a.store, b.store) ||
          !fg::low_equiv(obs, beta, a.heap, b.heap))
        throw std::logic_error("generated inputs are not low-equivalent");
    }
  }
  return in;
}

CgInputs gen_cg_inputs(Rng& rng, const GenConfig& cfg, const std::vector<Type>& types, int k) {
  auto in = CgBuilder(rng, cfg, k).build(types);
  Observer obs{cfg.lattice, cfg.attacker};
  for (std::size_t i = 0; i < in.sides.size(); ++i) {
    const auto& a = in.sides[i];
    if (!cg::valid_inputs(a.store, a.heap, a.env)) throw std::logic_error("generated inputs are not valid");
    if (i + 1 < in.sides.size()) {
      const auto& b = in.sides[i + 1];
      const auto& beta = in.links[i];
      if (!cg::low_equiv(obs, beta, a.env, b.env) || !cg::low_equiv(obs, beta, a.store, b.store) ||
          !cg::low_equiv(obs, beta, a.heap, b.heap))
        throw std::logic_error("generated inputs are not low-equivalent");
    }
  }
  return in;
}

}  // namespace ifc::harness
