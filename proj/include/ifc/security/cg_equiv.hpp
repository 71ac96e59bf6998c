#pragma once

#include <optional>

#include "ifc/cg/value.hpp"
#include "ifc/security/bijection.hpp"
#include "ifc/security/observer.hpp"

namespace ifc::cg {

bool low_equiv(const Observer& o, const Bijection& b, const Value& x, const Value& y);
bool low_equiv(const Observer& o, const Bijection& b, const Env& x, const Env& y);
bool low_equiv_memory(const Observer& o, const Bijection& b, Label memory, const Store::Memory& x,
                      const Store::Memory& y);
bool low_equiv(const Observer& o, const Bijection& b, const Store& x, const Store& y);
bool low_equiv(const Observer& o, const Bijection& b, const Heap& x, const Heap& y);
bool low_equiv_initial(const Observer& o, const Bijection& b, const Store& s1, const Heap& h1, Label pc1,
                       const Expr& e1, const Store& s2, const Heap& h2, Label pc2, const Expr& e2);
bool low_equiv(const Observer& o, const Bijection& b, const Final& x, const Final& y);

bool valid(std::size_t n, const Value& v);
bool valid(std::size_t n, const Env& env);
bool valid(std::size_t n, const Store& s);
bool valid(std::size_t n, const Heap& h);
bool valid_inputs(const Store& s, const Heap& h, const Env& env);
bool valid_outputs(const Final& c);

std::optional<Bijection> find_bijection(const Observer& o, const Bijection& base, const Final& c1, const Final& c2);

}  // namespace ifc::cg
