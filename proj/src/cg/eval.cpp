#include "ifc/cg/eval.hpp"

#include "ifc/deep_stack.hpp"

namespace ifc::cg {

namespace {

using detail::AbortSignal;
using detail::Fuel;
using detail::StuckSignal;

class Pure {
 public:
  Pure(const Lattice& lat, Fuel& fuel) : lat_(lat), fuel_(fuel) {}

  Value run(const Expr& e, const Env& env) {
    fuel_.tick();
    if (is_thunk(e.op())) return make(ThunkClosure{e, env});
    switch (e.op()) {
      case Op::Var:
        if (e.index() >= env.size()) throw StuckSignal{"unbound variable"};
        return env.at(e.index());
      case Op::Lam: return make(FunClosure{e, env});
      case Op::App: {
        Value f = run(e[0], env);
        const auto* cl = f.get<FunClosure>();
        if (!cl) throw StuckSignal{"application of a non-function"};
        Value a = run(e[1], env);
        return run(cl->fn[0], cl->env.push(a));
      }
      case Op::Unit: return unit_value();
      case Op::Lbl: return make(LabelV{e.label()});
      case Op::Pair: {
        Value a = run(e[0], env);
        Value b = run(e[1], env);
        return make(PairV{a, b});
      }
      case Op::Fst:
      case Op::Snd: {
        Value p = run(e[0], env);
        const auto* pv = p.get<PairV>();
        if (!pv) throw StuckSignal{"projection from a non-pair"};
        return e.op() == Op::Fst ? pv->first : pv->second;
      }
      case Op::Inl: return make(InlV{run(e[0], env)});
      case Op::Inr: return make(InrV{run(e[0], env)});
      case Op::Case: {
        Value s = run(e[0], env);
        if (const auto* l = s.get<InlV>()) return run(e[1], env.push(l->v));
        if (const auto* r = s.get<InrV>()) return run(e[2], env.push(r->v));
        throw StuckSignal{"case on a non-sum"};
      }
      case Op::FlowsTo: {
        Label a = label(run(e[0], env));
        Label b = label(run(e[1], env));
        return bool_value(lat_.leq(a, b));
      }
      case Op::Wken:
        for (auto d : e.drops())
          if (d >= env.size()) throw StuckSignal{"wken drops an unbound variable"};
        return run(e[0], env.drop(e.drops()));
      default: break;
    }
    throw StuckSignal{"unknown operator"};
  }

  static Label label(const Value& v) {
    const auto* l = v.get<LabelV>();
    if (!l) throw StuckSignal{"expected a label"};
    return l->label;
  }

 private:
  const Lattice& lat_;
  Fuel& fuel_;
};

class Monadic {
 public:
  Monadic(const Lattice& lat, Store store, Heap heap, Label pc, std::uint64_t fuel, Mutation m)
      : lat_(lat), store_(std::move(store)), heap_(std::move(heap)), pc_(pc), fuel_(fuel), pure_(lat, fuel_),
        mutation_(m) {}

  Value force(const Expr& e, const Env& env) {
    fuel_.tick();
    Value v = pure_.run(e, env);
    const auto* tc = v.get<ThunkClosure>();
    if (!tc) throw StuckSignal{"forcing a non-thunk"};
    return thunk(tc->thunk, tc->env);
  }

  Value thunk(const Expr& t, const Env& env) {
    fuel_.tick();
    switch (t.op()) {
      case Op::Return: return pure_.run(t[0], env);
      case Op::Bind: {
        Value v = force(t[0], env);
        return force(t[1], env.push(v));
      }
      case Op::Unlabel: {
        const LabeledV lv = labeled_arg(pure_.run(t[0], env));
        pc_ = lat_.join(pc_, lv.label);
        return lv.v;
      }
      case Op::ToLabeled: {
        Label saved = pc_;
        Value v = force(t[0], env);
        Value out = labeled(pc_, v);
        pc_ = saved;
        return out;
      }
      case Op::LabelOf: {
        const LabeledV lv = labeled_arg(pure_.run(t[0], env));
        pc_ = lat_.join(pc_, lv.label);
        return make(LabelV{lv.label});
      }
      case Op::GetLabel: return make(LabelV{pc_});
      case Op::Taint:
        pc_ = lat_.join(pc_, Pure::label(pure_.run(t[0], env)));
        return unit_value();
      case Op::New: {
        const LabeledV lv = labeled_arg(pure_.run(t[0], env));
        if (t.mode() == RefMode::Insensitive) {
          if (mutation_ != Mutation::DropNewPc && !lat_.leq(pc_, lv.label))
            throw AbortSignal{{"New", "pc ⋢ value label"}};
          auto n = store_.append(lv.label, lv.v);
          return make(FiRef{static_cast<std::uint32_t>(n), lv.label});
        }
        if (!lat_.leq(pc_, lv.label)) throw AbortSignal{{"New-FS", "pc ⋢ value label"}};
        heap_.push_back(HeapCell{lv.label, lv.v});
        return make(FsRef{static_cast<std::uint32_t>(heap_.size() - 1)});
      }
      case Op::Read: {
        Value r = pure_.run(t[0], env);
        if (const auto* fi = r.get<FiRef>()) {
          if (!store_.contains(fi->memory, fi->index)) throw StuckSignal{"dangling flow-insensitive reference"};
          pc_ = lat_.join(pc_, fi->memory);
          return store_.at(fi->memory, fi->index);
        }
        const HeapCell& cell = heap_cell(r);
        pc_ = lat_.join(pc_, cell.label);
        return cell.v;
      }
      case Op::Write: {
        Value r = pure_.run(t[0], env);
        const LabeledV lv = labeled_arg(pure_.run(t[1], env));
        if (const auto* fi = r.get<FiRef>()) {
          if (!lat_.leq(lv.label, fi->memory)) throw AbortSignal{{"Write", "value label ⋢ memory label"}};
          if (mutation_ != Mutation::DropWritePc && !lat_.leq(pc_, fi->memory))
            throw AbortSignal{{"Write", "pc ⋢ memory label"}};
          if (!store_.contains(fi->memory, fi->index)) throw StuckSignal{"dangling flow-insensitive reference"};
          store_.set(fi->memory, fi->index, lv.v);
          return unit_value();
        }
        const HeapCell& cell = heap_cell(r);
        if (mutation_ != Mutation::DropWriteFsNsu && !lat_.leq(pc_, cell.label))
          throw AbortSignal{{"Write-FS", "no-sensitive-upgrade: pc ⋢ cell label"}};
        heap_[r.get<FsRef>()->address] = HeapCell{lat_.join(pc_, lv.label), lv.v};
        return unit_value();
      }
      case Op::LabelOfRef: {
        Value r = pure_.run(t[0], env);
        Label l = r.get<FiRef>() ? r.get<FiRef>()->memory : heap_cell(r).label;
        pc_ = lat_.join(pc_, l);
        return make(LabelV{l});
      }
      default: break;
    }
    throw StuckSignal{"not a thunk"};
  }

  Store& store() { return store_; }
  Heap& heap() { return heap_; }
  Label pc() const { return pc_; }
  std::uint64_t used() const { return fuel_.used(); }

 private:
  static LabeledV labeled_arg(const Value& v) {
    const auto* lv = v.get<LabeledV>();
    if (!lv) throw StuckSignal{"expected a labeled value"};
    return *lv;
  }

  const HeapCell& heap_cell(const Value& r) const {
    const auto* fs = r.get<FsRef>();
    if (!fs) throw StuckSignal{"expected a reference"};
    if (fs->address >= heap_.size()) throw StuckSignal{"dangling flow-sensitive reference"};
    return heap_[fs->address];
  }

  const Lattice& lat_;
  Store store_;
  Heap heap_;
  Label pc_;
  Fuel fuel_;
  Pure pure_;
  Mutation mutation_;
};

template <class Body>
Outcome run_monadic(const Lattice& lat, Store store, Heap heap, Label pc, std::uint64_t fuel, Mutation m,
                    Body body) {
  Outcome out;
  with_deep_stack([&] {
    Monadic mm(lat, std::move(store), std::move(heap), pc, fuel, m);
    try {
      Value v = body(mm);
      out.result = Final{std::move(mm.store()), std::move(mm.heap()), mm.pc(), std::move(v)};
    } catch (const detail::AbortSignal& a) {
      out.result = a.abort;
    } catch (const detail::TimeoutSignal&) {
      out.result = Timeout{};
    } catch (const detail::StuckSignal& s) {
      out.result = Stuck{s.reason};
    }
    out.fuel_used = mm.used();
  });
  return out;
}

}  // namespace

PureOutcome eval_pure(const Lattice& lat, const Expr& e, const Env& env, std::uint64_t fuel) {
  PureOutcome out;
  with_deep_stack([&] {
    Fuel f(fuel);
    Pure p(lat, f);
    try {
      out.result = p.run(e, env);
    } catch (const detail::TimeoutSignal&) {
      out.result = Timeout{};
    } catch (const detail::StuckSignal& s) {
      out.result = Stuck{s.reason};
    }
    out.fuel_used = f.used();
  });
  return out;
}

Outcome eval_force(const Lattice& lat, Store store, Heap heap, Label pc, const Expr& e, const Env& env,
                   std::uint64_t fuel, Mutation mutation) {
  return run_monadic(lat, std::move(store), std::move(heap), pc, fuel, mutation,
                     [&](Monadic& m) { return m.force(e, env); });
}

Outcome eval_thunk(const Lattice& lat, Store store, Heap heap, Label pc, const Expr& t, const Env& env,
                   std::uint64_t fuel, Mutation mutation) {
  return run_monadic(lat, std::move(store), std::move(heap), pc, fuel, mutation,
                     [&](Monadic& m) { return m.thunk(t, env); });
}

}  // namespace ifc::cg
