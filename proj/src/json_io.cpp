#include "iet/json_io.hpp"

#include "iet/error.hpp"

namespace iet {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const json& field(const json& j, const char* name) {
    if (!j.is_object()) schema(std::string("expected an object holding '") + name + "'");
    auto it = j.find(name);
    if (it == j.end()) schema(std::string("missing field '") + name + "'");
    return *it;
}

std::string string_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_string()) schema(std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

Rational rational_from_json(const json& j) {
    if (!j.is_string()) schema("rationals must be strings of the form \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        schema(e.what());
    }
}

}  // namespace

json context_to_json(const BasisContext& ctx) {
    json out;
    switch (ctx.kind()) {
        case ContextKind::Rational: out["kind"] = "rational"; break;
        case ContextKind::Quadratic:
            out["kind"] = "quadratic";
            out["d"] = ctx.quadratic_d();
            break;
        case ContextKind::Symbolic: out["kind"] = "symbolic"; break;
    }
    json entries = json::array();
    for (const auto& e : ctx.entries()) {
        json entry{{"name", e.name}, {"decimal", e.decimal}};
        if (ctx.kind() == ContextKind::Symbolic && e.exact && !e.exact->is_rational())
            entry["exact"] = format_quadratic(*e.exact);
        entries.push_back(std::move(entry));
    }
    out["entries"] = std::move(entries);
    return out;
}

ContextPtr context_from_json(const json& j) {
    std::string kind = string_field(j, "kind");
    if (kind == "rational") return BasisContext::rational();
    if (kind == "quadratic") {
        const json& d = field(j, "d");
        if (!d.is_number_integer()) schema("field 'd' must be an integer");
        try {
            return BasisContext::quadratic(d.get<long>());
        } catch (const Error& e) {
            throw Error(ErrorCode::InvariantViolation, e.what());
        }
    }
    if (kind != "symbolic") schema("unknown context kind '" + kind + "'");
    const json& list = field(j, "entries");
    if (!list.is_array() || list.empty()) schema("field 'entries' must be a non-empty array");
    std::vector<BasisEntry> entries;
    for (const auto& e : list) {
        BasisEntry entry{string_field(e, "name"), string_field(e, "decimal"), std::nullopt};
        if (auto it = e.find("exact"); it != e.end()) {
            if (!it->is_string()) schema("field 'exact' must be a string");
            try {
                entry.exact = parse_quadratic(it->get<std::string>());
            } catch (const Error& err) {
                schema(err.what());
            }
        }
        entries.push_back(std::move(entry));
    }
    try {
        return BasisContext::symbolic(std::move(entries));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SyntaxError) schema(e.what());
        throw Error(ErrorCode::InvariantViolation, e.what());
    }
}

json scalar_to_json(const Scalar& s) {
    json coords = json::array();
    for (const auto& c : s.coords()) coords.push_back(to_string(c));
    return json{{"coords", std::move(coords)}};
}

Scalar scalar_from_json(const json& j, const ContextPtr& ctx) {
    const json& coords = field(j, "coords");
    if (!coords.is_array()) schema("field 'coords' must be an array");
    if (coords.size() != ctx->size())
        schema("scalar has " + std::to_string(coords.size()) + " coordinates, context has " +
               std::to_string(ctx->size()) + " entries");
    std::vector<Rational> values;
    for (const auto& c : coords) values.push_back(rational_from_json(c));
    return Scalar(ctx, std::move(values));
}

json iet_to_json(const Iet& f) {
    json lengths = json::array();
    for (const auto& l : f.lengths()) lengths.push_back(scalar_to_json(l));
    json perm = json::array();
    for (std::size_t p : f.perm()) perm.push_back(p + 1);
    return json{{"context", context_to_json(*f.context())},
                {"left", scalar_to_json(f.left())},
                {"lengths", std::move(lengths)},
                {"perm", std::move(perm)}};
}

Iet iet_from_json(const json& j) {
    if (!j.is_object()) schema("an IET document must be a JSON object");
    ContextPtr ctx = context_from_json(field(j, "context"));
    Scalar left = j.contains("left") ? scalar_from_json(j.at("left"), ctx) : Scalar::zero(ctx);
    const json& lengths_json = field(j, "lengths");
    if (!lengths_json.is_array() || lengths_json.empty()) schema("field 'lengths' must be a non-empty array");
    std::vector<Scalar> lengths;
    for (const auto& l : lengths_json) lengths.push_back(scalar_from_json(l, ctx));
    const json& perm_json = field(j, "perm");
    if (!perm_json.is_array()) schema("field 'perm' must be an array");
    Permutation perm;
    for (const auto& p : perm_json) {
        if (!p.is_number_integer() || p.get<long long>() < 1) schema("perm entries must be positive integers");
        perm.push_back(static_cast<std::size_t>(p.get<long long>() - 1));
    }
    if (j.contains("length")) {
        Scalar declared = scalar_from_json(j.at("length"), ctx);
        Scalar total = Scalar::zero(ctx);
        for (const auto& l : lengths) total += l;
        Scalar residual = declared - total;
        if (!residual.is_zero())
            throw Error(ErrorCode::InvariantViolation,
                        "lengths do not sum to the domain length; residual " + format_scalar(residual));
    }
    try {
        return Iet::make(ctx, std::move(left), std::move(lengths), std::move(perm));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NonPositiveLength || e.code() == ErrorCode::InvalidPermutation)
            throw Error(ErrorCode::InvariantViolation, e.what());
        throw;
    }
}

Iet parse_iet_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, "at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return iet_from_json(doc);
    } catch (const json::exception& e) {
        schema(e.what());
    }
}

std::string serialize_iet(const Iet& f) { return iet_to_json(f).dump(2); }

json wedge_to_json(const WedgeElement& w) {
    json entries = json::array();
    for (const auto& e : w.nonzero_entries()) entries.push_back(json::array({e.i + 1, e.j + 1, to_string(e.value)}));
    return json{{"basis", w.context()->names()}, {"p", std::move(entries)}};
}

WedgeElement wedge_from_json(const json& j, const ContextPtr& ctx) {
    const json& basis = field(j, "basis");
    if (basis != json(ctx->names())) schema("wedge basis does not match the context");
    std::size_t n = ctx->size();
    QMatrix p(n, n);
    for (const auto& e : field(j, "p")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            schema("wedge entries must be [i, j, \"p/q\"]");
        auto i = e[0].get<long long>();
        auto k = e[1].get<long long>();
        if (i < 1 || k <= i || static_cast<std::size_t>(k) > n) schema("wedge entry index out of range");
        Rational v = rational_from_json(e[2]);
        p(i - 1, k - 1) = v;
        p(k - 1, i - 1) = -v;
    }
    return WedgeElement(ctx, std::move(p));
}

json factorization_to_json(const Factorization& f) {
    return json{{"g", iet_to_json(f.g)}, {"h1", iet_to_json(f.h1)}, {"h2", iet_to_json(f.h2)}, {"verified", true}};
}

json report_to_json(const MembershipReport& r) {
    json obstruction = json::array();
    for (const auto& o : r.obstruction) obstruction.push_back(json::array({o.i, o.j, to_string(o.value)}));
    json basis = json::array();
    for (std::size_t c = 0; c < r.normalized_basis.cols(); ++c) {
        json column = json::array();
        for (const auto& q : r.normalized_basis.column(c)) column.push_back(to_string(q));
        basis.push_back(std::move(column));
    }
    json out{{"in_gper", r.in_gper},
             {"in_g1", r.in_g1},
             {"saf", wedge_to_json(r.saf)},
             {"obstruction", std::move(obstruction)},
             {"normalized_basis", std::move(basis)}};
    if (r.factorization) out["factorization"] = factorization_to_json(*r.factorization);
    return out;
}

json induction_to_json(const InductionResult& r) {
    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back(json{{"start", scalar_to_json(p.start)},
                              {"length", scalar_to_json(p.length)},
                              {"return_time", p.return_time}});
    return json{{"context", context_to_json(*r.induced.context())},
                {"induced", iet_to_json(r.induced)},
                {"pieces", std::move(pieces)},
                {"max_return", r.max_return}};
}

json keane_to_json(const KeaneVerdict& v) {
    json out{{"satisfied", v.satisfied()}, {"depth", v.depth}};
    if (v.violation) {
        out["violation"] = json{{"orbit_start", scalar_to_json(v.violation->orbit_start)},
                                {"discontinuity", v.violation->discontinuity + 1},
                                {"step", v.violation->step}};
    } else {
        out["note"] = "no coincidence up to the given depth; this does not prove minimality";
    }
    return out;
}

}  // namespace iet
