#pragma once

#include "bflift/lpa.hpp"

#include <string>

namespace bflift {

// Parses an element expression over a graph. Identifiers are vertex and
// edge names, a postfix '*' marks a ghost factor, '.' or juxtaposition
// multiplies factors, '+'/'-' combine terms and an integer prefixes a term
// as coefficient, as in
//     2 x1.x2 x1* - z
// Adjacent plain factors (and adjacent ghost factors) must compose as
// paths; mixed adjacencies multiply freely in the algebra. Errors carry a
// column position.
LPAElement parse_element(const GraphPtr& g, const std::string& text);

}  // namespace bflift
