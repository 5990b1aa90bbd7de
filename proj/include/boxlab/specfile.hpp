#pragma once

#include <string>

#include "boxlab/boolfn.hpp"
#include "boxlab/rational.hpp"

namespace boxlab {

// Surface syntax for box experiments:
//   parties: <int>
//   f: <expr>          expr := term ('+' term)*, term := factor ('*' factor)*,
//                      factor := x<i> | 0 | 1;  '+' is XOR, '*' is AND
//   epsilon: <p>/<q>   optional, default 1
struct BoxSpec {
    int parties = 0;
    BooleanFunction f;
    AnfForm anf;
    Rat epsilon = 1;
};

struct SpecError {
    int line = 0, column = 0;
    std::string message;
    std::string describe() const;
};

struct SpecParseResult {
    bool ok = false;
    BoxSpec spec;
    SpecError error;
};

SpecParseResult parse_spec(const std::string& text);

struct PolyParseResult {
    bool ok = false;
    AnfForm anf;
    SpecError error;
};

// Parses a GF(2) polynomial expression; duplicate monomials cancel.
PolyParseResult parse_poly(const std::string& text, int parties, int line);

// Canonical pretty-print; parse(canonical(spec)) == spec.
std::string canonical_spec(const BoxSpec& spec);

}  // namespace boxlab
