#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ifc/cg/expr.hpp"
#include "ifc/fg/expr.hpp"
#include "ifc/surface/sexpr.hpp"

namespace ifc::surface {

// Names in scope, outermost first.
using Scope = std::vector<std::string>;

Type parse_type(const Sexp& s);
Type parse_type(std::string_view text);

// A bare name is a variable when bound, otherwise a lattice point.
fg::Expr parse_fg(const Sexp& s, const Lattice& lat, const Scope& scope = {});
fg::Expr parse_fg(std::string_view text, const Lattice& lat, const Scope& scope = {});
cg::Expr parse_cg(const Sexp& s, const Lattice& lat, const Scope& scope = {});
cg::Expr parse_cg(std::string_view text, const Lattice& lat, const Scope& scope = {});

// Binder names are x<depth>, so free variable i of a term with n free variables prints as x<n-1-i>.
Scope default_scope(std::size_t n, const Lattice& lat);
std::string print_fg(const fg::Expr& e, const Lattice& lat, std::size_t free = 0);
std::string print_cg(const cg::Expr& e, const Lattice& lat, std::size_t free = 0);
std::string print_fg(const fg::Expr& e, const Lattice& lat, const Scope& scope);
std::string print_cg(const cg::Expr& e, const Lattice& lat, const Scope& scope);

}  // namespace ifc::surface
