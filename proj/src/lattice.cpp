#include "ifc/lattice.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace ifc {

struct Lattice::Impl {
  std::uint32_t id = 0;
  std::string description;
  std::vector<std::string> names;
  std::vector<std::uint8_t> order;  // order[a*n+b] == 1 iff a ⊑ b
  std::vector<std::uint16_t> joins;
  std::size_t n() const { return names.size(); }
};

namespace {

std::uint32_t next_lattice_id() {
  static std::atomic<std::uint32_t> counter{0};
  return ++counter;
}

}  // namespace

Lattice Lattice::from_order(const std::vector<std::string>& points,
                            const std::vector<std::pair<std::string, std::string>>& order) {
  const std::size_t n = points.size();
  if (n == 0) throw LatticeError(LatticeError::Kind::BadSpec, "lattice has no points");
  if (n > kMaxPoints) throw LatticeError(LatticeError::Kind::BadSpec, "lattice exceeds 64 points");
  auto impl = std::make_shared<Impl>();
  impl->names = points;
  auto index_of = [&](const std::string& s) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (points[i] == s) return i;
    throw LatticeError(LatticeError::Kind::UnknownPoint, "order mentions unknown point '" + s + "'");
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw LatticeError(LatticeError::Kind::DuplicatePoint, "duplicate point '" + points[i] + "'");

  auto& le = impl->order;
  le.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
  for (const auto& [a, b] : order) le[index_of(a) * n + index_of(b)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k * n + j]) le[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i * n + j] && le[j * n + i])
        throw LatticeError(LatticeError::Kind::NotAPartialOrder,
                           "order is not antisymmetric: '" + points[i] + "' and '" + points[j] + "'");

  impl->joins.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> lub;
      for (std::size_t c = 0; c < n; ++c) {
        if (!le[a * n + c] || !le[b * n + c]) continue;
        if (!lub || le[c * n + *lub]) lub = c;
      }
      bool least = lub.has_value();
      for (std::size_t c = 0; least && c < n; ++c)
        if (le[a * n + c] && le[b * n + c] && !le[*lub * n + c]) least = false;
      if (!least)
        throw LatticeError(LatticeError::Kind::NoJoinExists,
                           "no least upper bound for '" + points[a] + "' and '" + points[b] + "'");
      impl->joins[a * n + b] = static_cast<std::uint16_t>(*lub);
    }
  }
  impl->id = next_lattice_id();
  impl->description = "custom";
  return Lattice(std::move(impl));
}

// Builtins are shared instances so labels from separately loaded copies compare.
Lattice Lattice::two_point() {
  static const Lattice shared = [] {
    Lattice l = from_order({"L", "H"}, {{"L", "H"}});
    const_cast<Impl&>(*l.impl_).description = "two-point";
    return l;
  }();
  return shared;
}

Lattice Lattice::powerset(int k) {
  if (k < 0 || k > 6) throw LatticeError(LatticeError::Kind::BadSpec, "powerset:k needs 0 <= k <= 6");
  static const auto shared = [] {
    std::vector<Lattice> out;
    for (int i = 0; i <= 6; ++i) out.push_back(build_powerset(i));
    return out;
  }();
  return shared[static_cast<std::size_t>(k)];
}

Lattice Lattice::build_powerset(int k) {
  std::vector<std::string> pts;
  const unsigned n = 1u << k;
  for (unsigned m = 0; m < n; ++m) {
    std::string s = "{";
    bool first = true;
    for (int p = 0; p < k; ++p) {
      if (!(m & (1u << p))) continue;
      if (!first) s += ",";
      s += "p" + std::to_string(p);
      first = false;
    }
    pts.push_back(s + "}");
  }
  std::vector<std::pair<std::string, std::string>> ord;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if ((a & b) == a) ord.emplace_back(pts[a], pts[b]);
  Lattice l = from_order(pts, ord);
  const_cast<Impl&>(*l.impl_).description = "powerset:" + std::to_string(k);
  return l;
}

Lattice Lattice::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(LatticeError::Kind::BadSpec, std::string("lattice JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw LatticeError(LatticeError::Kind::BadSpec, "lattice JSON needs a \"points\" array");
  std::vector<std::string> pts;
  std::vector<std::pair<std::string, std::string>> ord;
  try {
    for (const auto& p : j["points"]) pts.push_back(p.get<std::string>());
    if (j.contains("order"))
      for (const auto& pr : j["order"]) {
        if (!pr.is_array() || pr.size() != 2)
          throw LatticeError(LatticeError::Kind::BadSpec, "order entries are [lower, upper] pairs");
        ord.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
      }
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(LatticeError::Kind::BadSpec, std::string("lattice JSON: ") + e.what());
  }
  return from_order(pts, ord);
}

Lattice Lattice::load(const std::string& spec) {
  if (spec == "two-point") return two_point();
  if (spec.rfind("powerset:", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(spec.substr(9), &used);
      if (used != spec.size() - 9) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw LatticeError(LatticeError::Kind::BadSpec, "bad powerset spec '" + spec + "'");
    }
    return powerset(k);
  }
  std::string text = spec;
  auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || spec[first] != '{') {
    std::ifstream in(spec);
    if (!in) throw LatticeError(LatticeError::Kind::BadSpec, "unknown lattice '" + spec + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  // Same spec and content give the same lattice, so labels from repeated loads compare.
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>, Lattice> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(spec, text);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Lattice l = from_json(text);
  const_cast<Impl&>(*l.impl_).description = spec;
  cache.emplace(key, l);
  return l;
}

void Lattice::check(Label l) const {
  if (l.lattice_ != impl_->id)
    throw LatticeError(LatticeError::Kind::CrossLattice, "label does not belong to this lattice");
}

bool Lattice::leq(Label a, Label b) const {
  check(a);
  check(b);
  return impl_->order[a.index_ * impl_->n() + b.index_] != 0;
}

Label Lattice::join(Label a, Label b) const {
  check(a);
  check(b);
  return Label(impl_->id, impl_->joins[a.index_ * impl_->n() + b.index_]);
}

std::size_t Lattice::size() const { return impl_->n(); }

Label Lattice::point(std::size_t i) const {
  if (i >= impl_->n()) throw LatticeError(LatticeError::Kind::UnknownPoint, "point index out of range");
  return Label(impl_->id, static_cast<std::uint32_t>(i));
}

std::vector<Label> Lattice::points() const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < impl_->n(); ++i) out.push_back(point(i));
  return out;
}

const std::string& Lattice::name(Label l) const {
  check(l);
  return impl_->names[l.index_];
}

std::optional<Label> Lattice::find(std::string_view s) const {
  for (std::size_t i = 0; i < impl_->n(); ++i)
    if (impl_->names[i] == s) return point(i);
  return std::nullopt;
}

Label Lattice::at(std::string_view s) const {
  if (auto l = find(s)) return *l;
  throw LatticeError(LatticeError::Kind::UnknownPoint, "unknown label '" + std::string(s) + "'");
}

std::optional<Label> Lattice::bottom() const {
  for (Label c : points()) {
    bool below_all = true;
    for (Label d : points()) below_all = below_all && leq(c, d);
    if (below_all) return c;
  }
  return std::nullopt;
}

std::optional<Label> Lattice::top() const {
  Label acc = point(0);
  for (Label c : points()) acc = join(acc, c);
  return acc;
}

bool Lattice::owns(Label l) const { return l.lattice_ == impl_->id; }

const std::string& Lattice::description() const { return impl_->description; }

}  // namespace ifc
