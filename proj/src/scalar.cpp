#include "iet/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "iet/error.hpp"

namespace iet {

namespace {

std::atomic<unsigned> g_precision_cap{kDefaultPrecisionCap};

Integer pow10(std::size_t n) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, n);
    return out;
}

Integer pow2(std::size_t n) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, n);
    return out;
}

Integer isqrt(const Integer& n) {
    Integer out;
    mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
    return out;
}

Integer floor_of(const Rational& q) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// sqrt(d) in [s / 2^bits, (s + 1) / 2^bits].
Enclosure sqrt_enclosure(long d, unsigned bits) {
    Integer scale = pow2(bits);
    Integer s = isqrt(Integer(d) * scale * scale);
    Enclosure e{Rational(s, scale), Rational(s + 1, scale)};
    e.lo.canonicalize();
    e.hi.canonicalize();
    return e;
}

Enclosure quadratic_enclosure(const QuadraticForm& q, unsigned bits) {
    if (q.is_rational()) return {q.a, q.a};
    Enclosure r = sqrt_enclosure(q.d, bits);
    Rational lo = q.a + q.b * r.lo;
    Rational hi = q.a + q.b * r.hi;
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi};
}

Sign to_sign(int s) { return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero); }

Sign quadratic_sign(const Rational& a, const Rational& b, long d) {
    int sa = sgn(a);
    int sb = sgn(b);
    if (sb == 0) return to_sign(sa);
    if (sa == 0 || sa == sb) return to_sign(sb);
    // Opposite signs: compare a^2 with b^2 d; equality is impossible for squarefree d >= 2.
    Rational lhs = a * a;
    Rational rhs = b * b * d;
    return to_sign(lhs > rhs ? sa : sb);
}

// Number of significant digits in a plain decimal string.
std::size_t significant_digits(const std::string& text) {
    std::size_t count = 0;
    bool started = false;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) continue;
        if (c != '0') started = true;
        if (started) ++count;
    }
    return count;
}

Enclosure decimal_enclosure(const std::string& text) {
    Rational centre = parse_rational(text);
    auto dot = text.find('.');
    std::size_t places = dot == std::string::npos ? 0 : text.size() - dot - 1;
    Rational ulp(1, pow10(places));
    return {centre - ulp, centre + ulp};
}

BasisEntry one_entry() { return {"1", "1", QuadraticForm::rational(1)}; }

BasisEntry radical_entry(const QuadraticForm& q) {
    return {format_quadratic(q), decimal_string(q, 80), q};
}

void require_same(const Scalar& a, const Scalar& b) {
    if (!same_context(a.context(), b.context()))
        throw Error(ErrorCode::ContextMismatch, "scalars belong to different basis contexts");
}

// Collapses a scalar onto a single quadratic form when every nonzero coordinate
// sits on an entry with a closed form over one common radicand.
std::optional<QuadraticForm> as_quadratic(const Scalar& s) {
    const auto& ctx = *s.context();
    QuadraticForm out = QuadraticForm::rational(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) continue;
        const auto& exact = ctx.entry(i).exact;
        if (!exact) return std::nullopt;
        out.a += s[i] * exact->a;
        if (exact->b != 0) {
            if (out.d != 1 && out.d != exact->d) return std::nullopt;
            out.d = exact->d;
            out.b += s[i] * exact->b;
        }
    }
    if (out.b == 0) out.d = 1;
    return out;
}

}  // namespace

// ---------------------------------------------------------------- quadratic forms

long squarefree_part(long n, long* square_root_of_rest) {
    if (n <= 0) throw Error(ErrorCode::InvalidContext, "radicand must be positive");
    long root = 1;
    long rest = n;
    for (long p = 2; p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            root *= p;
        }
    }
    if (square_root_of_rest) *square_root_of_rest = root;
    return rest;
}

QuadraticForm QuadraticForm::sqrt(long radicand) {
    return QuadraticForm{0, 1, radicand}.normalized();
}

QuadraticForm QuadraticForm::normalized() const {
    if (b == 0) return rational(a);
    long root = 1;
    long core = squarefree_part(d, &root);
    if (core == 1) return rational(a + b * root);
    return {a, b * root, core};
}

namespace {

class QuadraticParser {
public:
    explicit QuadraticParser(std::string_view text) : text_(text) {}

    QuadraticForm parse() {
        std::map<long, Rational> terms;  // radicand -> coefficient, 1 = rational part
        skip();
        bool negative = false;
        if (peek('+') || peek('-')) negative = take() == '-';
        for (;;) {
            auto [coef, radicand] = term();
            if (negative) coef = -coef;
            long root = 1;
            long core = radicand == 1 ? 1 : squarefree_part(radicand, &root);
            terms[core] += coef * root;
            skip();
            if (pos_ == text_.size()) break;
            if (!peek('+') && !peek('-')) fail("expected '+' or '-'");
            negative = take() == '-';
        }
        QuadraticForm out = QuadraticForm::rational(terms[1]);
        for (auto& [core, coef] : terms) {
            if (core == 1 || coef == 0) continue;
            if (out.b != 0) fail("more than one distinct square root");
            out.b = coef;
            out.d = core;
        }
        return out;
    }

private:
    std::pair<Rational, long> term() {
        Rational coef = 1;
        long radicand = 1;
        bool first = true;
        for (;;) {
            skip();
            if (!first) {
                if (peek('*')) {
                    take();
                } else if (peek('/')) {
                    take();
                    Rational den = number();
                    if (den == 0) fail("division by zero");
                    coef /= den;
                    continue;
                } else {
                    break;
                }
                skip();
            }
            first = false;
            if (text_.substr(pos_, 5) == "sqrt(") {
                pos_ += 5;
                Rational r = number();
                skip();
                if (!peek(')')) fail("expected ')'");
                take();
                if (r.get_den() != 1 || r <= 0) fail("sqrt argument must be a positive integer");
                if (radicand != 1) fail("product of square roots");
                radicand = r.get_num().get_si();
            } else {
                coef *= number();
            }
        }
        return {coef, radicand};
    }

    Rational number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (start == pos_) fail("expected a number");
        return parse_rational(text_.substr(start, pos_ - start));
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    char take() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::SyntaxError, "in '" + std::string(text_) + "' at offset " +
                                                std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

QuadraticForm parse_quadratic(std::string_view text) { return QuadraticParser(text).parse(); }

std::string format_quadratic(const QuadraticForm& q) {
    std::string out;
    auto rat = [](const Rational& r) { return r.get_str(); };
    if (q.a != 0 || q.b == 0) out = rat(q.a);
    if (q.b != 0) {
        Rational mag = abs(q.b);
        std::string root = "sqrt(" + std::to_string(q.d) + ")";
        std::string body;
        if (mag == 1) {
            body = root;
        } else if (mag.get_num() == 1) {
            body = root + "/" + mag.get_den().get_str();
        } else {
            body = rat(mag) + "*" + root;
        }
        if (out.empty())
            out = (q.b < 0 ? "-" : "") + body;
        else
            out += (q.b < 0 ? "-" : "+") + body;
    }
    return out;
}

std::string decimal_string(const QuadraticForm& q, std::size_t digits) {
    // Approximate with 20 guard digits, then truncate.
    std::size_t guard = digits + 20;
    Rational approx = q.a;
    if (!q.is_rational()) {
        Integer scale = pow10(guard);
        Integer s = isqrt(Integer(q.d) * scale * scale);
        Rational root(s, scale);
        root.canonicalize();
        approx += q.b * root;
    }
    bool negative = approx < 0;
    Rational mag = abs(approx);
    Integer scaled = floor_of(mag * Rational(pow10(digits)));
    std::string body = scaled.get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out = body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    return (negative ? "-" : "") + out;
}

// ---------------------------------------------------------------- contexts

ContextPtr BasisContext::rational() {
    static const ContextPtr instance(new BasisContext(ContextKind::Rational, 1, {one_entry()}));
    return instance;
}

ContextPtr BasisContext::quadratic(long d) {
    if (d < 2 || squarefree_part(d) != d)
        throw Error(ErrorCode::InvalidContext,
                    "quadratic context needs a squarefree d >= 2, got " + std::to_string(d));
    return ContextPtr(new BasisContext(ContextKind::Quadratic, d,
                                       {one_entry(), radical_entry(QuadraticForm::sqrt(d))}));
}

ContextPtr BasisContext::symbolic(std::vector<BasisEntry> entries) {
    if (entries.empty()) throw Error(ErrorCode::InvalidContext, "symbolic context has no entries");
    if (parse_rational(entries[0].decimal) != 1 ||
        (entries[0].exact && *entries[0].exact != QuadraticForm::rational(1)))
        throw Error(ErrorCode::InvalidContext, "entry 0 must be the constant 1");
    entries[0].exact = QuadraticForm::rational(1);
    std::vector<long> radicands;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        auto& e = entries[i];
        if (e.exact) {
            e.exact = e.exact->normalized();
            if (e.exact->is_rational())
                throw Error(ErrorCode::InvalidContext, "entry '" + e.name + "' is rational");
            if (std::find(radicands.begin(), radicands.end(), e.exact->d) != radicands.end())
                throw Error(ErrorCode::InvalidContext,
                            "entry '" + e.name + "' shares its radicand with an earlier entry");
            radicands.push_back(e.exact->d);
            if (e.decimal.empty()) e.decimal = decimal_string(*e.exact, 80);
            Enclosure dec = decimal_enclosure(e.decimal);
            Enclosure ex = quadratic_enclosure(*e.exact, 256);
            if (ex.hi < dec.lo || ex.lo > dec.hi)
                throw Error(ErrorCode::InvalidContext,
                            "decimal of entry '" + e.name + "' disagrees with its closed form");
        } else if (significant_digits(e.decimal) < 64) {
            throw Error(ErrorCode::InvalidContext,
                        "entry '" + e.name + "' needs a decimal with at least 64 significant digits");
        } else {
            (void)decimal_enclosure(e.decimal);
        }
    }
    return ContextPtr(new BasisContext(ContextKind::Symbolic, 0, std::move(entries)));
}

std::vector<std::string> BasisContext::names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
}

bool BasisContext::extends(const BasisContext& prefix) const {
    if (prefix.size() > size()) return false;
    if (*this == prefix) return true;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const auto& a = entries_[i];
        const auto& b = prefix.entries_[i];
        if (a.exact || b.exact) {
            if (a.exact != b.exact) return false;
        } else if (a != b) {
            return false;
        }
    }
    return true;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------- scalars

Scalar::Scalar(ContextPtr ctx, std::vector<Rational> coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    if (coords_.size() != ctx_->size())
        throw Error(ErrorCode::ContextMismatch, "coordinate count " + std::to_string(coords_.size()) +
                                                    " does not match context size " +
                                                    std::to_string(ctx_->size()));
    for (auto& c : coords_) c.canonicalize();
}

Scalar Scalar::zero(ContextPtr ctx) {
    std::size_t n = ctx->size();
    return Scalar(std::move(ctx), std::vector<Rational>(n));
}

Scalar Scalar::from_rational(ContextPtr ctx, const Rational& q) {
    Scalar s = zero(std::move(ctx));
    s.coords_[0] = q;
    return s;
}

Scalar Scalar::unit(ContextPtr ctx, std::size_t index) {
    Scalar s = zero(std::move(ctx));
    s.coords_.at(index) = 1;
    return s;
}

bool Scalar::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool Scalar::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& q) { return q == 0; });
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    require_same(*this, other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    require_same(*this, other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Rational& q) {
    for (auto& c : coords_) c *= q;
    return *this;
}

Scalar& Scalar::operator/=(const Rational& q) {
    if (q == 0) throw Error(ErrorCode::ZeroScalar, "division by zero");
    for (auto& c : coords_) c /= q;
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    return same_context(a.ctx_, b.ctx_) && a.coords_ == b.coords_;
}

Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar scalar_sub(const Scalar& a, const Scalar& b) { return a - b; }
Scalar scalar_scale(const Scalar& a, const Rational& q) { return a * q; }

Scalar scalar_mul(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (a.is_rational()) return b * a.rational_part();
    if (b.is_rational()) return a * b.rational_part();
    const auto& ctx = a.context();
    if (ctx->kind() != ContextKind::Quadratic)
        throw Error(ErrorCode::NotRepresentable,
                    "product of two irrational scalars leaves a symbolic context");
    long d = ctx->quadratic_d();
    return Scalar(ctx, {a[0] * b[0] + d * a[1] * b[1], a[0] * b[1] + a[1] * b[0]});
}

Scalar scalar_div(const Scalar& a, const Scalar& b) {
    require_same(a, b);
    if (b.is_zero()) throw Error(ErrorCode::ZeroScalar, "division by zero");
    if (b.is_rational()) return a / b.rational_part();
    const auto& ctx = b.context();
    if (ctx->kind() != ContextKind::Quadratic)
        throw Error(ErrorCode::NotRepresentable,
                    "quotient by an irrational scalar leaves a symbolic context");
    long d = ctx->quadratic_d();
    Rational norm = b[0] * b[0] - d * b[1] * b[1];
    Scalar conj(ctx, {b[0], -b[1]});
    return scalar_mul(a, conj) / norm;
}

void set_default_precision_cap(unsigned bits) { g_precision_cap.store(std::max(bits, 1u)); }
unsigned default_precision_cap() { return g_precision_cap.load(); }

Enclosure enclose(const Scalar& a, unsigned bits) {
    const auto& ctx = *a.context();
    Rational lo = 0;
    Rational hi = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational& c = a[i];
        if (c == 0) continue;
        const auto& entry = ctx.entry(i);
        Enclosure e = entry.exact ? quadratic_enclosure(*entry.exact, bits)
                                  : decimal_enclosure(entry.decimal);
        if (c > 0) {
            lo += c * e.lo;
            hi += c * e.hi;
        } else {
            lo += c * e.hi;
            hi += c * e.lo;
        }
    }
    return {lo, hi};
}

double approximate(const Scalar& a) {
    Enclosure e = enclose(a, 64);
    Rational mid = (e.lo + e.hi) / 2;
    return mid.get_d();
}

Sign scalar_sign(const Scalar& a, unsigned precision_cap) {
    if (a.is_zero()) return Sign::Zero;
    const auto& ctx = *a.context();
    if (a.is_rational()) return to_sign(sgn(a[0]));
    if (ctx.kind() == ContextKind::Quadratic) return quadratic_sign(a[0], a[1], ctx.quadratic_d());
    if (auto q = as_quadratic(a)) return quadratic_sign(q->a, q->b, q->d);
    unsigned bits = std::min(64u, precision_cap);
    for (;;) {
        Enclosure e = enclose(a, bits);
        if (e.lo > 0) return Sign::Positive;
        if (e.hi < 0) return Sign::Negative;
        if (bits >= precision_cap) break;
        bits = std::min(bits * 2, precision_cap);
    }
    throw Error(ErrorCode::AmbiguousSign,
                "could not separate " + format_scalar(a) + " from zero within " +
                    std::to_string(precision_cap) + " bits");
}

int compare(const Scalar& a, const Scalar& b) { return static_cast<int>(scalar_sign(a - b)); }

Integer floor_ratio(const Scalar& a, const Scalar& b) {
    if (scalar_sign(b) != Sign::Positive)
        throw Error(ErrorCode::ZeroScalar, "floor_ratio needs a positive divisor");
    double guess = std::floor(approximate(a) / approximate(b));
    Integer r(guess);
    while (scalar_sign(a - b * Rational(r)) == Sign::Negative) --r;
    while (scalar_sign(a - b * Rational(r + 1)) != Sign::Negative) ++r;
    return r;
}

std::optional<Scalar> context_express(const ContextPtr& ctx, const ExternalReal& value) {
    if (auto ref = std::get_if<EntryRef>(&value)) {
        if (ref->index >= ctx->size()) return std::nullopt;
        return Scalar::unit(ctx, ref->index);
    }
    QuadraticForm q = std::get<QuadraticForm>(value).normalized();
    if (q.is_rational()) return Scalar::from_rational(ctx, q.a);
    for (std::size_t i = 1; i < ctx->size(); ++i) {
        const auto& exact = ctx->entry(i).exact;
        if (!exact || exact->d != q.d) continue;
        // q = s * entry + t * 1
        Rational s = q.b / exact->b;
        Rational t = q.a - s * exact->a;
        Scalar out = Scalar::zero(ctx);
        std::vector<Rational> coords = out.coords();
        coords[0] = t;
        coords[i] = s;
        return Scalar(ctx, std::move(coords));
    }
    return std::nullopt;
}

Adjoined context_adjoin(const ContextPtr& ctx, const QuadraticForm& value) {
    if (auto s = context_express(ctx, value))
        throw Error(ErrorCode::AlreadyInSpan,
                    format_quadratic(value) + " already has coordinates " + format_scalar(*s));
    std::vector<BasisEntry> entries = ctx->entries();
    entries.push_back(radical_entry(value.normalized()));
    ContextPtr next = BasisContext::symbolic(std::move(entries));
    return {next, Scalar::unit(next, next->size() - 1)};
}

Scalar embed(const Scalar& a, const ContextPtr& target) {
    if (same_context(a.context(), target)) return Scalar(target, a.coords());
    if (!target->extends(*a.context()))
        throw Error(ErrorCode::ContextMismatch, "target context does not extend the scalar's context");
    std::vector<Rational> coords = a.coords();
    coords.resize(target->size());
    return Scalar(target, std::move(coords));
}

std::pair<ContextPtr, Scalar> express_or_adjoin(const ContextPtr& ctx, const QuadraticForm& value) {
    if (auto s = context_express(ctx, value)) return {ctx, *s};
    QuadraticForm q = value.normalized();
    if (q.is_rational()) throw Error(ErrorCode::InternalAssertion, "rational value missing from context span");
    ContextPtr next = context_adjoin(ctx, QuadraticForm::sqrt(q.d)).context;
    auto s = context_express(next, q);
    if (!s) throw Error(ErrorCode::InternalAssertion, "adjoined radical does not span the value");
    return {next, *s};
}

std::string format_scalar(const Scalar& a) {
    const auto& ctx = *a.context();
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational& c = a[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << ctx.entry(i).name;
        }
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace iet
