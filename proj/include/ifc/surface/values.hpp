#pragma once

#include <string>

#include "ifc/cg/value.hpp"
#include "ifc/fg/value.hpp"
#include "ifc/security/bijection.hpp"
#include "json.hpp"

namespace ifc::surface {

using Json = nlohmann::ordered_json;

// Pretty forms: `()^L`, `((()^L, ()^L))^L`, `(inl ()^L)^H`, and `true^H` when the unit inside carries
// the outer label.
std::string show(const fg::Value& v, const Lattice& lat);
std::string show(const fg::RawPtr& r, const Lattice& lat);
std::string show(const cg::Value& v, const Lattice& lat);
std::string show(const fg::Store& s, const Lattice& lat);
std::string show(const fg::Heap& h, const Lattice& lat);
std::string show(const cg::Store& s, const Lattice& lat);
std::string show(const cg::Heap& h, const Lattice& lat);
std::string show(const Bijection& b);

// Lossless structured forms; closure code travels as surface text over its environment's names.
Json to_json(const fg::Value& v, const Lattice& lat);
Json to_json(const fg::RawPtr& r, const Lattice& lat);
Json to_json(const cg::Value& v, const Lattice& lat);
Json to_json(const fg::Store& s, const Lattice& lat);
Json to_json(const fg::Heap& h, const Lattice& lat);
Json to_json(const cg::Store& s, const Lattice& lat);
Json to_json(const cg::Heap& h, const Lattice& lat);
Json to_json(const fg::Final& c, const Lattice& lat);
Json to_json(const cg::Final& c, const Lattice& lat);
Json to_json(const Bijection& b);

fg::Value fg_value_from_json(const Json& j, const Lattice& lat);
fg::RawPtr fg_raw_from_json(const Json& j, const Lattice& lat);
cg::Value cg_value_from_json(const Json& j, const Lattice& lat);
fg::Final fg_final_from_json(const Json& j, const Lattice& lat);
cg::Final cg_final_from_json(const Json& j, const Lattice& lat);

}  // namespace ifc::surface
