#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "iet/induction.hpp"
#include "iet/iet.hpp"
#include "iet/saf.hpp"
#include "iet/scalar.hpp"

namespace iet {

using json = nlohmann::ordered_json;

// Contexts: {"kind": "rational"|"quadratic"|"symbolic", "d": int?, "entries": [{"name", "decimal", "exact"?}]}
json context_to_json(const BasisContext& ctx);
ContextPtr context_from_json(const json& j);

// Scalars: {"coords": ["p/q", ...]}
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, const ContextPtr& ctx);

// IETs: {"context": ..., "left": Scalar, "lengths": [Scalar...], "perm": [1-based ints]}.
// An optional "length" field is checked against the sum of the lengths on input.
json iet_to_json(const Iet& f);
Iet iet_from_json(const json& j);

/// Validating parser for IET documents. Throws SyntaxError (with byte offset),
/// SchemaError, InvariantViolation, or AmbiguousSign.
Iet parse_iet_document(std::string_view text);
std::string serialize_iet(const Iet& f);

// Wedge elements: {"basis": [names], "p": [[i, j, "p/q"], ...]} with 1-based i < j.
json wedge_to_json(const WedgeElement& w);
WedgeElement wedge_from_json(const json& j, const ContextPtr& ctx);

json report_to_json(const MembershipReport& r);
json factorization_to_json(const Factorization& f);
json induction_to_json(const InductionResult& r);
json keane_to_json(const KeaneVerdict& v);

}  // namespace iet
