#ifndef LCFT_PARSER_HPP
#define LCFT_PARSER_HPP

#include <string>

#include "lcft/series.hpp"

namespace lcft {

// Element literal grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' int)?
//   atom   := <param1> | <param2> | 'g' | uint | '(' expr ')'
// Parameter names come from the spec (t1/t2 for base fields, s/pi for
// extension towers). Parsing is exact; 'g' is the field generator theta.
TowerElem parse_element(const std::string& text, TowerSpecPtr spec);

// canonical form: terms sorted by exponent, ascending, inner level first
std::string print_element(const TowerElem& e);
std::string print_fq(Fq c);

} // namespace lcft

#endif
