#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iet/rational.hpp"

namespace iet {

/// A real number of the form a + b*sqrt(d) with d squarefree and d >= 2,
/// or b == 0 and d == 1 for a plain rational.
struct QuadraticForm {
    Rational a;
    Rational b;
    long d = 1;

    static QuadraticForm rational(Rational q) { return {std::move(q), 0, 1}; }
    static QuadraticForm sqrt(long radicand);

    bool is_rational() const { return b == 0; }
    /// Pulls square factors out of d so that d is squarefree.
    QuadraticForm normalized() const;

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Parses expressions such as "3/4", "sqrt(2)", "1-sqrt(2)", "3/2*sqrt(5)+1",
/// "sqrt(3)/3". At most one distinct radicand is allowed.
QuadraticForm parse_quadratic(std::string_view text);
std::string format_quadratic(const QuadraticForm& q);
/// Decimal expansion truncated toward zero to the given number of digits after the point.
std::string decimal_string(const QuadraticForm& q, std::size_t digits);

long squarefree_part(long n, long* square_root_of_rest = nullptr);

enum class ContextKind { Rational, Quadratic, Symbolic };

struct BasisEntry {
    std::string name;
    std::string decimal;
    /// Closed form when known. Entries with a closed form refine without limit;
    /// decimal-only entries are bounded by the precision of their decimal string.
    std::optional<QuadraticForm> exact;

    friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

class BasisContext;
using ContextPtr = std::shared_ptr<const BasisContext>;

/// Ordered list of reals declared independent over Q. Entry 0 is always 1.
class BasisContext {
public:
    static ContextPtr rational();
    static ContextPtr quadratic(long d);
    /// Independence of the entries is trusted, not verified.
    static ContextPtr symbolic(std::vector<BasisEntry> entries);

    ContextKind kind() const { return kind_; }
    long quadratic_d() const { return d_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<BasisEntry>& entries() const { return entries_; }
    const BasisEntry& entry(std::size_t i) const { return entries_.at(i); }
    std::vector<std::string> names() const;

    /// True if every entry of `prefix` appears, in order, at the start of this context.
    bool extends(const BasisContext& prefix) const;

    friend bool operator==(const BasisContext& a, const BasisContext& b) {
        return a.kind_ == b.kind_ && a.d_ == b.d_ && a.entries_ == b.entries_;
    }

private:
    BasisContext(ContextKind kind, long d, std::vector<BasisEntry> entries)
        : kind_(kind), d_(d), entries_(std::move(entries)) {}

    ContextKind kind_;
    long d_;
    std::vector<BasisEntry> entries_;
};

bool same_context(const ContextPtr& a, const ContextPtr& b);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

/// A real number given by rational coordinates over a BasisContext.
class Scalar {
public:
    Scalar(ContextPtr ctx, std::vector<Rational> coords);

    static Scalar zero(ContextPtr ctx);
    static Scalar from_rational(ContextPtr ctx, const Rational& q);
    static Scalar unit(ContextPtr ctx, std::size_t index);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Rational>& coords() const { return coords_; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t size() const { return coords_.size(); }

    bool is_zero() const;
    bool is_rational() const;
    /// Coordinate on the constant 1; meaningful when is_rational().
    const Rational& rational_part() const { return coords_[0]; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Rational& q);
    Scalar& operator/=(const Rational& q);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Rational& q) { return a *= q; }
    friend Scalar operator*(const Rational& q, Scalar a) { return a *= q; }
    friend Scalar operator/(Scalar a, const Rational& q) { return a /= q; }

    /// Exact coordinate equality; contexts must agree.
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    ContextPtr ctx_;
    std::vector<Rational> coords_;
};

Scalar scalar_add(const Scalar& a, const Scalar& b);
Scalar scalar_sub(const Scalar& a, const Scalar& b);
Scalar scalar_scale(const Scalar& a, const Rational& q);

/// Product and quotient exist when one side is rational or the context is quadratic.
/// Throws NotRepresentable otherwise.
Scalar scalar_mul(const Scalar& a, const Scalar& b);
Scalar scalar_div(const Scalar& a, const Scalar& b);

/// Maximum working precision (bits) for symbolic sign decisions.
inline constexpr unsigned kDefaultPrecisionCap = 4096;
void set_default_precision_cap(unsigned bits);
unsigned default_precision_cap();

/// Exact sign. Symbolic contexts use interval enclosures at doubling precision
/// starting from 64 bits, and throw AmbiguousSign when the cap is reached.
Sign scalar_sign(const Scalar& a, unsigned precision_cap = default_precision_cap());
int compare(const Scalar& a, const Scalar& b);
inline bool less(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }

/// Outward-rounded rational enclosure of the represented real.
struct Enclosure {
    Rational lo;
    Rational hi;
};
Enclosure enclose(const Scalar& a, unsigned bits);
double approximate(const Scalar& a);

/// floor(a / b) for b > 0, decided exactly.
Integer floor_ratio(const Scalar& a, const Scalar& b);

/// A number supplied from outside a context.
struct EntryRef {
    std::size_t index;
};
using ExternalReal = std::variant<QuadraticForm, EntryRef>;

/// Coordinates of `value` in `ctx`, or nullopt when it lies outside the span.
/// Only entries with a closed form can absorb irrational quadratic values.
std::optional<Scalar> context_express(const ContextPtr& ctx, const ExternalReal& value);

struct Adjoined {
    ContextPtr context;
    Scalar value;  // unit vector on the new entry
};

/// Appends `value` as a new (declared independent) symbolic entry.
/// Throws AlreadyInSpan when context_express would succeed.
Adjoined context_adjoin(const ContextPtr& ctx, const QuadraticForm& value);

/// Re-embeds `a` into a context that extends its own; new coordinates are zero.
Scalar embed(const Scalar& a, const ContextPtr& target);

/// Expresses the value in ctx, or adjoins it. Returns the (possibly new) context.
std::pair<ContextPtr, Scalar> express_or_adjoin(const ContextPtr& ctx, const QuadraticForm& value);

std::string format_scalar(const Scalar& a);

}  // namespace iet
