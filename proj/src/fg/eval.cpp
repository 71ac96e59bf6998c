#include "ifc/fg/eval.hpp"

#include <cassert>

#include "ifc/deep_stack.hpp"

namespace ifc::fg {

namespace {

using detail::AbortSignal;
using detail::StuckSignal;

class Machine {
 public:
  Machine(const Lattice& lat, Store store, Heap heap, std::uint64_t fuel, Mutation m)
      : lat_(lat), store_(std::move(store)), heap_(std::move(heap)), fuel_(fuel), mutation_(m) {}

  Value run(const Expr& e, const Env& env, Label pc) {
    fuel_.tick();
    switch (e.op()) {
      case Op::Var: {
        if (e.index() >= env.size()) throw StuckSignal{"unbound variable"};
        const Value& v = env.at(e.index());
        return labeled(v.raw, join(v.label, pc));
      }
      case Op::Lam: return labeled(make_raw(Closure{e, env}), pc);
      case Op::App: {
        Value f = run(e[0], env, pc);
        const auto* cl = f.raw->get<Closure>();
        if (!cl) throw StuckSignal{"application of a non-function"};
        Value a = run(e[1], env, pc);
        return run(cl->fn[0], cl->env.push(a), join(pc, f.label));
      }
      case Op::Unit: return unit_value(pc);
      case Op::Lbl: return labeled(make_raw(LabelV{e.label()}), pc);
      case Op::Pair: {
        Value a = run(e[0], env, pc);
        Value b = run(e[1], env, pc);
        return labeled(make_raw(PairV{a, b}), pc);
      }
      case Op::Fst:
      case Op::Snd: {
        Value p = run(e[0], env, pc);
        const auto* pv = p.raw->get<PairV>();
        if (!pv) throw StuckSignal{"projection from a non-pair"};
        const Value& c = e.op() == Op::Fst ? pv->first : pv->second;
        return labeled(c.raw, join(c.label, p.label));
      }
      case Op::Inl: return labeled(make_raw(InlV{run(e[0], env, pc)}), pc);
      case Op::Inr: return labeled(make_raw(InrV{run(e[0], env, pc)}), pc);
      case Op::Case: {
        Value s = run(e[0], env, pc);
        Label pc2 = join(pc, s.label);
        if (const auto* l = s.raw->get<InlV>()) return run(e[1], env.push(l->v), pc2);
        if (const auto* r = s.raw->get<InrV>()) return run(e[2], env.push(r->v), pc2);
        throw StuckSignal{"case on a non-sum"};
      }
      case Op::GetLabel: return labeled(make_raw(LabelV{pc}), pc);
      case Op::LabelOf: {
        Value v = run(e[0], env, pc);
        return labeled(make_raw(LabelV{v.label}), v.label);
      }
      case Op::FlowsTo: {
        Value a = run(e[0], env, pc);
        Value b = run(e[1], env, pc);
        Label la = label_of(a), lb = label_of(b);
        Value u = unit_value(pc);
        RawPtr r = lat_.leq(la, lb) ? make_raw(InlV{u}) : make_raw(InrV{u});
        return labeled(r, join(a.label, b.label));
      }
      case Op::Taint: {
        Value t = run(e[0], env, pc);
        Label target = join(pc, label_of(t));
        if (mutation_ != Mutation::DropTaintGuard && !lat_.leq(t.label, target))
          throw AbortSignal{{"Taint", "label of label ⋢ pc ⊔ label"}};
        return run(e[1], env, target);
      }
      case Op::New: {
        Value v = run(e[0], env, pc);
        if (e.mode() == RefMode::Insensitive) {
          assert(lat_.leq(pc, v.label));
          auto n = store_.append(v.label, v.raw);
          return labeled(make_raw(FiRef{static_cast<std::uint32_t>(n), v.label}), pc);
        }
        heap_.push_back(v);
        return labeled(make_raw(FsRef{static_cast<std::uint32_t>(heap_.size() - 1)}), pc);
      }
      case Op::Read: {
        Value r = run(e[0], env, pc);
        if (const auto* fi = r.raw->get<FiRef>()) {
          if (!store_.contains(fi->memory, fi->index)) throw StuckSignal{"dangling flow-insensitive reference"};
          return labeled(store_.at(fi->memory, fi->index), join(fi->memory, r.label));
        }
        const Value& cell = heap_cell(r);
        return labeled(cell.raw, join(r.label, cell.label));
      }
      case Op::Write: {
        Value r = run(e[0], env, pc);
        if (const auto* fi = r.raw->get<FiRef>()) {
          if (!lat_.leq(r.label, fi->memory)) throw AbortSignal{{"Write", "reference label ⋢ memory label"}};
          Value v = run(e[1], env, pc);
          if (mutation_ != Mutation::DropWriteExplicit && !lat_.leq(v.label, fi->memory))
            throw AbortSignal{{"Write", "value label ⋢ memory label"}};
          if (!store_.contains(fi->memory, fi->index)) throw StuckSignal{"dangling flow-insensitive reference"};
          store_.set(fi->memory, fi->index, v.raw);
          return unit_value(pc);
        }
        heap_cell(r);
        Value v = run(e[1], env, pc);
        const Value& old = heap_cell(r);
        if (mutation_ != Mutation::DropNsu && !lat_.leq(r.label, old.label))
          throw AbortSignal{{"Write-FS", "no-sensitive-upgrade: reference label ⋢ cell label"}};
        heap_[r.raw->get<FsRef>()->address] = labeled(v.raw, join(v.label, r.label));
        return unit_value(pc);
      }
      case Op::LabelOfRef: {
        Value r = run(e[0], env, pc);
        if (const auto* fi = r.raw->get<FiRef>())
          return labeled(make_raw(LabelV{fi->memory}), join(fi->memory, r.label));
        const Value& cell = heap_cell(r);
        return labeled(make_raw(LabelV{cell.label}), join(r.label, cell.label));
      }
      case Op::Wken: {
        for (auto d : e.drops())
          if (d >= env.size()) throw StuckSignal{"wken drops an unbound variable"};
        return run(e[0], env.drop(e.drops()), pc);
      }
    }
    throw StuckSignal{"unknown operator"};
  }

  Store& store() { return store_; }
  Heap& heap() { return heap_; }
  std::uint64_t used() const { return fuel_.used(); }

 private:
  Label join(Label a, Label b) const { return lat_.join(a, b); }

  static Label label_of(const Value& v) {
    const auto* l = v.raw->get<LabelV>();
    if (!l) throw StuckSignal{"expected a label"};
    return l->label;
  }

  const Value& heap_cell(const Value& r) const {
    const auto* fs = r.raw->get<FsRef>();
    if (!fs) throw StuckSignal{"expected a reference"};
    if (fs->address >= heap_.size()) throw StuckSignal{"dangling flow-sensitive reference"};
    return heap_[fs->address];
  }

  const Lattice& lat_;
  Store store_;
  Heap heap_;
  detail::Fuel fuel_;
  Mutation mutation_;
};

}  // namespace

Outcome eval(const Lattice& lat, Store store, Heap heap, const Expr& e, const Env& env, Label pc,
             std::uint64_t fuel, Mutation mutation) {
  Outcome out;
  with_deep_stack([&] {
    Machine m(lat, std::move(store), std::move(heap), fuel, mutation);
    try {
      Value v = m.run(e, env, pc);
      out.result = Final{std::move(m.store()), std::move(m.heap()), std::move(v)};
    } catch (const detail::AbortSignal& a) {
      out.result = a.abort;
    } catch (const detail::TimeoutSignal&) {
      out.result = Timeout{};
    } catch (const detail::StuckSignal& s) {
      out.result = Stuck{s.reason};
    }
    out.fuel_used = m.used();
  });
  return out;
}

}  // namespace ifc::fg
