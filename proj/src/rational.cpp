#include "iet/rational.hpp"

#include <cctype>

#include "iet/error.hpp"

namespace iet {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::AmbiguousSign: return "AmbiguousSign";
        case ErrorCode::AlreadyInSpan: return "AlreadyInSpan";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::ZeroScalar: return "ZeroScalar";
        case ErrorCode::NotInKX: return "NotInKX";
        case ErrorCode::NotInG1: return "NotInG1";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotCellAligned: return "NotCellAligned";
        case ErrorCode::InvalidContext: return "InvalidContext";
        case ErrorCode::InvalidInterval: return "InvalidInterval";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::InternalAssertion: return "InternalAssertion";
    }
    return "Unknown";
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::SyntaxError, "malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        Integer d(std::string(den), 10);
        if (d == 0) bad(text);
        out = Rational(Integer(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            bad(text);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        out = Rational(digits, scale);
    } else {
        if (!all_digits(s)) bad(text);
        out = Rational(Integer(std::string(s), 10));
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

}  // namespace iet
