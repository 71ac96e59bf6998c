#include "ifc/surface/values.hpp"

#include <stdexcept>

#include "ifc/surface/syntax.hpp"

namespace ifc::surface {

namespace {

bool compound(const fg::RawPtr& r) { return r->is<fg::PairV>() || r->is<fg::InlV>() || r->is<fg::InrV>(); }

template <class Env, class Show>
std::string show_env(const Env& env, const Lattice& lat, Show show_value) {
  if (env.empty()) return "";
  auto names = default_scope(env.size(), lat);
  auto vs = env.to_vector();
  std::string out = " [";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += names[names.size() - 1 - i] + " = " + show_value(vs[i]);
  }
  return out + "]";
}

std::string sub_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out + "]";
}

Label label_from(const Json& j, const Lattice& lat) { return lat.at(j.get<std::string>()); }

[[noreturn]] void bad(const Json& j) { throw std::invalid_argument("malformed value: " + j.dump()); }

}  // namespace

std::string show(const fg::RawPtr& r, const Lattice& lat) {
  if (r->is<fg::UnitV>()) return "()";
  if (const auto* l = r->get<fg::LabelV>()) return lat.name(l->label);
  if (const auto* p = r->get<fg::PairV>()) return "(" + show(p->first, lat) + ", " + show(p->second, lat) + ")";
  if (const auto* x = r->get<fg::InlV>()) return "inl " + show(x->v, lat);
  if (const auto* x = r->get<fg::InrV>()) return "inr " + show(x->v, lat);
  if (const auto* f = r->get<fg::FiRef>()) return std::to_string(f->index) + "_" + lat.name(f->memory);
  if (const auto* f = r->get<fg::FsRef>()) return std::to_string(f->address);
  const auto& c = *r->get<fg::Closure>();
  return "<fn " + print_fg(c.fn, lat, c.env.size()) +
         show_env(c.env, lat, [&](const fg::Value& v) { return show(v, lat); }) + ">";
}

std::string show(const fg::Value& v, const Lattice& lat) {
  const std::string& l = lat.name(v.label);
  const fg::Value* inner = nullptr;
  if (const auto* x = v.raw->get<fg::InlV>()) inner = &x->v;
  if (const auto* x = v.raw->get<fg::InrV>()) inner = &x->v;
  if (inner && inner->raw->is<fg::UnitV>() && inner->label == v.label)
    return (v.raw->is<fg::InlV>() ? "true^" : "false^") + l;
  if (compound(v.raw)) return "(" + show(v.raw, lat) + ")^" + l;
  return show(v.raw, lat) + "^" + l;
}

namespace {

// Juxtaposed operands (under inl/inr/Labeled) get parentheses; pair components do not.
std::string show_cg(const cg::Value& v, const Lattice& lat, bool operand) {
  auto wrap = [&](std::string s) { return operand ? "(" + s + ")" : s; };
  if (v.is<cg::UnitV>()) return "()";
  if (const auto* l = v.get<cg::LabelV>()) return lat.name(l->label);
  if (const auto* p = v.get<cg::PairV>())
    return "(" + show_cg(p->first, lat, false) + ", " + show_cg(p->second, lat, false) + ")";
  if (const auto* x = v.get<cg::InlV>()) return x->v.is<cg::UnitV>() ? "true" : wrap("inl " + show_cg(x->v, lat, true));
  if (const auto* x = v.get<cg::InrV>()) return x->v.is<cg::UnitV>() ? "false" : wrap("inr " + show_cg(x->v, lat, true));
  if (const auto* x = v.get<cg::LabeledV>()) return wrap("Labeled " + lat.name(x->label) + " " + show_cg(x->v, lat, true));
  if (const auto* f = v.get<cg::FiRef>()) return std::to_string(f->index) + "_" + lat.name(f->memory);
  if (const auto* f = v.get<cg::FsRef>()) return std::to_string(f->address);
  auto env_text = [&](const cg::Env& env) {
    return show_env(env, lat, [&](const cg::Value& x) { return show_cg(x, lat, false); });
  };
  if (const auto* c = v.get<cg::FunClosure>()) return "<fn " + print_cg(c->fn, lat, c->env.size()) + env_text(c->env) + ">";
  const auto& t = *v.get<cg::ThunkClosure>();
  return "<thunk " + print_cg(t.thunk, lat, t.env.size()) + env_text(t.env) + ">";
}

}  // namespace

std::string show(const cg::Value& v, const Lattice& lat) { return show_cg(v, lat, false); }

std::string show(const fg::Store& s, const Lattice& lat) {
  std::vector<std::string> cells;
  for (Label l : s.labels()) {
    const auto& m = s.memory(l);
    for (std::size_t i = 0; i < m.size(); ++i) {
      fg::Value as_value{m[i], l};
      cells.push_back(std::to_string(i) + "_" + lat.name(l) + " -> " + show(as_value, lat));
    }
  }
  return sub_list(cells);
}

std::string show(const fg::Heap& h, const Lattice& lat) {
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < h.size(); ++i) cells.push_back(std::to_string(i) + " -> " + show(h[i], lat));
  return sub_list(cells);
}

std::string show(const cg::Store& s, const Lattice& lat) {
  std::vector<std::string> cells;
  for (Label l : s.labels()) {
    const auto& m = s.memory(l);
    for (std::size_t i = 0; i < m.size(); ++i)
      cells.push_back(std::to_string(i) + "_" + lat.name(l) + " -> " + show(m[i], lat) + " @" + lat.name(l));
  }
  return sub_list(cells);
}

std::string show(const cg::Heap& h, const Lattice& lat) {
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < h.size(); ++i)
    cells.push_back(std::to_string(i) + " -> " + show(h[i].v, lat) + " @" + lat.name(h[i].label));
  return sub_list(cells);
}

std::string show(const Bijection& b) {
  std::vector<std::string> ps;
  for (auto [x, y] : b.pairs()) ps.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
  std::string out = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i];
  return out + "}";
}

Json to_json(const fg::RawPtr& r, const Lattice& lat) {
  if (r->is<fg::UnitV>()) return "unit";
  if (const auto* l = r->get<fg::LabelV>()) return Json{{"label", lat.name(l->label)}};
  if (const auto* p = r->get<fg::PairV>()) return Json{{"pair", {to_json(p->first, lat), to_json(p->second, lat)}}};
  if (const auto* x = r->get<fg::InlV>()) return Json{{"inl", to_json(x->v, lat)}};
  if (const auto* x = r->get<fg::InrV>()) return Json{{"inr", to_json(x->v, lat)}};
  if (const auto* f = r->get<fg::FiRef>()) return Json{{"fi", {{"index", f->index}, {"memory", lat.name(f->memory)}}}};
  if (const auto* f = r->get<fg::FsRef>()) return Json{{"fs", f->address}};
  const auto& c = *r->get<fg::Closure>();
  Json env = Json::array();
  c.env.for_each([&](const fg::Value& v) { env.push_back(to_json(v, lat)); });
  return Json{{"closure", {{"code", print_fg(c.fn, lat, c.env.size())}, {"env", env}}}};
}

Json to_json(const fg::Value& v, const Lattice& lat) {
  return Json{{"label", lat.name(v.label)}, {"raw", to_json(v.raw, lat)}};
}

Json to_json(const cg::Value& v, const Lattice& lat) {
  if (v.is<cg::UnitV>()) return "unit";
  if (const auto* l = v.get<cg::LabelV>()) return Json{{"label", lat.name(l->label)}};
  if (const auto* p = v.get<cg::PairV>()) return Json{{"pair", {to_json(p->first, lat), to_json(p->second, lat)}}};
  if (const auto* x = v.get<cg::InlV>()) return Json{{"inl", to_json(x->v, lat)}};
  if (const auto* x = v.get<cg::InrV>()) return Json{{"inr", to_json(x->v, lat)}};
  if (const auto* x = v.get<cg::LabeledV>())
    return Json{{"labeled", {{"label", lat.name(x->label)}, {"value", to_json(x->v, lat)}}}};
  if (const auto* f = v.get<cg::FiRef>()) return Json{{"fi", {{"index", f->index}, {"memory", lat.name(f->memory)}}}};
  if (const auto* f = v.get<cg::FsRef>()) return Json{{"fs", f->address}};
  auto env_json = [&](const cg::Env& env) {
    Json out = Json::array();
    env.for_each([&](const cg::Value& x) { out.push_back(to_json(x, lat)); });
    return out;
  };
  if (const auto* c = v.get<cg::FunClosure>())
    return Json{{"closure", {{"code", print_cg(c->fn, lat, c->env.size())}, {"env", env_json(c->env)}}}};
  const auto& t = *v.get<cg::ThunkClosure>();
  return Json{{"thunk", {{"code", print_cg(t.thunk, lat, t.env.size())}, {"env", env_json(t.env)}}}};
}

Json to_json(const fg::Store& s, const Lattice& lat) {
  Json out = Json::object();
  for (Label l : s.labels()) {
    Json cells = Json::array();
    for (const auto& r : s.memory(l)) cells.push_back(to_json(r, lat));
    out[lat.name(l)] = cells;
  }
  return out;
}

Json to_json(const fg::Heap& h, const Lattice& lat) {
  Json out = Json::array();
  for (const auto& v : h) out.push_back(to_json(v, lat));
  return out;
}

Json to_json(const cg::Store& s, const Lattice& lat) {
  Json out = Json::object();
  for (Label l : s.labels()) {
    Json cells = Json::array();
    for (const auto& v : s.memory(l)) cells.push_back(to_json(v, lat));
    out[lat.name(l)] = cells;
  }
  return out;
}

Json to_json(const cg::Heap& h, const Lattice& lat) {
  Json out = Json::array();
  for (const auto& c : h) out.push_back(Json{{"label", lat.name(c.label)}, {"value", to_json(c.v, lat)}});
  return out;
}

Json to_json(const fg::Final& c, const Lattice& lat) {
  return Json{{"store", to_json(c.store, lat)}, {"heap", to_json(c.heap, lat)}, {"value", to_json(c.value, lat)}};
}

Json to_json(const cg::Final& c, const Lattice& lat) {
  return Json{{"store", to_json(c.store, lat)},
              {"heap", to_json(c.heap, lat)},
              {"pc", lat.name(c.pc)},
              {"value", to_json(c.value, lat)}};
}

Json to_json(const Bijection& b) {
  Json out = Json::array();
  for (auto [x, y] : b.pairs()) out.push_back({x, y});
  return out;
}

fg::RawPtr fg_raw_from_json(const Json& j, const Lattice& lat) {
  if (j.is_string()) {
    if (j.get<std::string>() == "unit") return fg::make_raw(fg::UnitV{});
    bad(j);
  }
  if (!j.is_object() || j.size() != 1) bad(j);
  const auto& [key, body] = *j.items().begin();
  if (key == "label") return fg::make_raw(fg::LabelV{label_from(body, lat)});
  if (key == "pair") return fg::make_raw(fg::PairV{fg_value_from_json(body.at(0), lat), fg_value_from_json(body.at(1), lat)});
  if (key == "inl") return fg::make_raw(fg::InlV{fg_value_from_json(body, lat)});
  if (key == "inr") return fg::make_raw(fg::InrV{fg_value_from_json(body, lat)});
  if (key == "fi")
    return fg::make_raw(fg::FiRef{body.at("index").get<std::uint32_t>(), label_from(body.at("memory"), lat)});
  if (key == "fs") return fg::make_raw(fg::FsRef{body.get<std::uint32_t>()});
  if (key == "closure") {
    std::vector<fg::Value> env;
    for (const auto& x : body.at("env")) env.push_back(fg_value_from_json(x, lat));
    auto fn = parse_fg(body.at("code").get<std::string>(), lat, default_scope(env.size(), lat));
    if (fn.op() != fg::Op::Lam) bad(j);
    return fg::make_raw(fg::Closure{fn, fg::Env::from_vector(env)});
  }
  bad(j);
}

fg::Value fg_value_from_json(const Json& j, const Lattice& lat) {
  return fg::Value{fg_raw_from_json(j.at("raw"), lat), label_from(j.at("label"), lat)};
}

cg::Value cg_value_from_json(const Json& j, const Lattice& lat) {
  if (j.is_string()) {
    if (j.get<std::string>() == "unit") return cg::unit_value();
    bad(j);
  }
  if (!j.is_object() || j.size() != 1) bad(j);
  const auto& [key, body] = *j.items().begin();
  if (key == "label") return cg::make(cg::LabelV{label_from(body, lat)});
  if (key == "pair") return cg::make(cg::PairV{cg_value_from_json(body.at(0), lat), cg_value_from_json(body.at(1), lat)});
  if (key == "inl") return cg::make(cg::InlV{cg_value_from_json(body, lat)});
  if (key == "inr") return cg::make(cg::InrV{cg_value_from_json(body, lat)});
  if (key == "labeled") return cg::labeled(label_from(body.at("label"), lat), cg_value_from_json(body.at("value"), lat));
  if (key == "fi") return cg::make(cg::FiRef{body.at("index").get<std::uint32_t>(), label_from(body.at("memory"), lat)});
  if (key == "fs") return cg::make(cg::FsRef{body.get<std::uint32_t>()});
  if (key == "closure" || key == "thunk") {
    std::vector<cg::Value> env;
    for (const auto& x : body.at("env")) env.push_back(cg_value_from_json(x, lat));
    auto code = parse_cg(body.at("code").get<std::string>(), lat, default_scope(env.size(), lat));
    if (key == "closure") {
      if (code.op() != cg::Op::Lam) bad(j);
      return cg::make(cg::FunClosure{code, cg::Env::from_vector(env)});
    }
    return cg::make(cg::ThunkClosure{code, cg::Env::from_vector(env)});
  }
  bad(j);
}

fg::Final fg_final_from_json(const Json& j, const Lattice& lat) {
  fg::Final c;
  for (const auto& [l, cells] : j.at("store").items())
    for (const auto& r : cells) c.store.append(lat.at(l), fg_raw_from_json(r, lat));
  for (const auto& v : j.at("heap")) c.heap.push_back(fg_value_from_json(v, lat));
  c.value = fg_value_from_json(j.at("value"), lat);
  return c;
}

cg::Final cg_final_from_json(const Json& j, const Lattice& lat) {
  cg::Final c;
  for (const auto& [l, cells] : j.at("store").items())
    for (const auto& v : cells) c.store.append(lat.at(l), cg_value_from_json(v, lat));
  for (const auto& h : j.at("heap"))
    c.heap.push_back(cg::HeapCell{label_from(h.at("label"), lat), cg_value_from_json(h.at("value"), lat)});
  c.pc = label_from(j.at("pc"), lat);
  c.value = cg_value_from_json(j.at("value"), lat);
  return c;
}

}  // namespace ifc::surface
