#pragma once

#include <string>
#include <string_view>

#include "kb.hpp"

namespace mcl {

// Parses a whole knowledge-base file. Throws ParseError with line/column on
// lexical or grammatical problems, duplicate module names, or a typicality
// wrapper outside a default's left-hand side.
ModularKB parse_kb(std::string_view text);

// Parses a query string: a default ("T(C) <= D."), an axiom ("C <= D."), or
// an assertion ("A(a)." / "r(a,b).").
Query parse_query(std::string_view text);

// Parses a bare concept (no trailing period).
Concept parse_concept(std::string_view text);

}  // namespace mcl
