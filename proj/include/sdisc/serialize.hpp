#pragma once

#include <json.hpp>
#include <string>

#include "sdisc/quantize.hpp"

namespace sdisc {

using json = nlohmann::ordered_json;

// GrassmannElement: {"n": n, "coeffs": {"<mask-as-decimal-string>": [re, im]}}
json to_json(const Grassmann& g);
Grassmann grassmann_from_json(const json& j);

// SuperMatrix: {"shape": {"p_minus", "p_plus", "q", "n"}, "type": "even"|"odd",
//               "kind": "matrix"|"disc_point"|"group"|"lie",
//               "entries": [[row, col, <GrassmannElement>], ...]}
// The shape describes the full space; row/column spaces follow from the kind.
json to_json(const SuperMatrix& m, const std::string& kind = "matrix");
SuperMatrix supermatrix_from_json(const json& j, std::string* kind_out = nullptr);

json to_json(const DiscPoint& p);
DiscPoint disc_point_from_json(const json& j);
json to_json(const GroupElement& g);
GroupElement group_from_json(const json& j);
json to_json(const LieElement& u);
LieElement lie_from_json(const json& j);

// Monomial section: [{"coeff": [re, im],
//                     "vars": [{"block": "w"|"theta", "row", "col", "power"}]}]
json section_to_json(const MonomialSection& s);
SectionPtr section_from_json(const json& j);

}  // namespace sdisc
