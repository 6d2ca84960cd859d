#include "iet/saf.hpp"

#include "iet/error.hpp"

namespace iet {

WedgeElement::WedgeElement(ContextPtr ctx, QMatrix p) : ctx_(std::move(ctx)), p_(std::move(p)) {
    if (p_.rows() != ctx_->size() || p_.cols() != ctx_->size())
        throw Error(ErrorCode::ContextMismatch, "wedge matrix does not match the context size");
    if (!p_.is_antisymmetric()) throw Error(ErrorCode::NotAntisymmetric, "wedge matrix is not antisymmetric");
}

WedgeElement WedgeElement::zero(ContextPtr ctx) {
    std::size_t n = ctx->size();
    return WedgeElement(std::move(ctx), QMatrix(n, n));
}

std::vector<WedgeElement::Entry> WedgeElement::nonzero_entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dimension(); ++i)
        for (std::size_t j = i + 1; j < dimension(); ++j)
            if (p_(i, j) != 0) out.push_back({i, j, p_(i, j)});
    return out;
}

WedgeElement WedgeElement::embed(const ContextPtr& target) const {
    if (same_context(ctx_, target)) return WedgeElement(target, p_);
    if (!target->extends(*ctx_))
        throw Error(ErrorCode::ContextMismatch, "target context does not extend the wedge's context");
    QMatrix q(target->size(), target->size());
    for (std::size_t i = 0; i < dimension(); ++i)
        for (std::size_t j = 0; j < dimension(); ++j) q(i, j) = p_(i, j);
    return WedgeElement(target, std::move(q));
}

WedgeElement WedgeElement::operator-() const { return WedgeElement(ctx_, QMatrix(dimension(), dimension()) - p_); }

namespace {

void require_same(const WedgeElement& a, const WedgeElement& b) {
    if (!same_context(a.context(), b.context()))
        throw Error(ErrorCode::ContextMismatch, "wedge elements belong to different contexts");
}

}  // namespace

WedgeElement operator+(const WedgeElement& a, const WedgeElement& b) {
    require_same(a, b);
    return WedgeElement(a.ctx_, a.p_ + b.p_);
}

WedgeElement operator-(const WedgeElement& a, const WedgeElement& b) {
    require_same(a, b);
    return WedgeElement(a.ctx_, a.p_ - b.p_);
}

WedgeElement operator*(const Rational& q, const WedgeElement& a) {
    QMatrix p = a.p_;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) *= q;
    return WedgeElement(a.ctx_, std::move(p));
}

bool operator==(const WedgeElement& a, const WedgeElement& b) {
    return same_context(a.ctx_, b.ctx_) && a.p_ == b.p_;
}

WedgeElement wedge(const Scalar& u, const Scalar& v) {
    if (!same_context(u.context(), v.context()))
        throw Error(ErrorCode::ContextMismatch, "wedge of scalars from different contexts");
    return WedgeElement(u.context(), wedge_coords(u.coords(), v.coords()));
}

WedgeElement saf(const Iet& f) {
    QMatrix m = displacement_tensor(f);
    IET_ENSURE((m + m.transpose()).is_zero(), "symmetric part of the SAF tensor does not vanish");
    return WedgeElement(f.context(), std::move(m));
}

WedgeElement saf_3iet_closed_form(const Scalar& lambda1, const Scalar& lambda3, const Scalar& x_length) {
    Scalar lambda2 = x_length - lambda1 - lambda3;
    for (const Scalar* l : std::initializer_list<const Scalar*>{&lambda1, &lambda2, &lambda3})
        if (scalar_sign(*l) != Sign::Positive)
            throw Error(ErrorCode::NonPositiveLength, "3-IET length " + format_scalar(*l) + " is not positive");
    return wedge(x_length, lambda3 - lambda1) - wedge(lambda1, lambda3);
}

QMatrix normalized_coordinates(const WedgeElement& w, const Scalar& s, std::optional<std::size_t> pivot) {
    if (!same_context(w.context(), s.context()))
        throw Error(ErrorCode::ContextMismatch, "scalar and wedge element live in different contexts");
    if (s.is_zero()) throw Error(ErrorCode::ZeroScalar, "K(0) is not a valid target");
    QMatrix basis = complete_basis_with_first(s.coords(), pivot);
    return bivector_in_basis(w.matrix(), basis);
}

bool in_K_of(const WedgeElement& w, const Scalar& s, std::optional<std::size_t> pivot) {
    QMatrix p = normalized_coordinates(w, s, pivot);
    for (std::size_t i = 1; i < p.rows(); ++i)
        for (std::size_t j = i + 1; j < p.cols(); ++j)
            if (p(i, j) != 0) return false;
    return true;
}

bool member_Gper(const Iet& f) { return saf(f).is_zero(); }

MembershipReport member_G1(const Iet& f, bool with_factorization) {
    MembershipReport report{.saf = saf(f), .obstruction = {}, .normalized_basis = {}, .factorization = std::nullopt};
    report.in_gper = report.saf.is_zero();
    report.normalized_basis = complete_basis_with_first(f.length().coords());
    QMatrix p = bivector_in_basis(report.saf.matrix(), report.normalized_basis);
    for (std::size_t i = 1; i < p.rows(); ++i)
        for (std::size_t j = i + 1; j < p.cols(); ++j)
            if (p(i, j) != 0) report.obstruction.push_back({i + 1, j + 1, p(i, j)});
    report.in_g1 = report.obstruction.empty();
    IET_ENSURE(!report.in_gper || report.in_g1, "G_per member outside G_1");
    if (with_factorization && report.in_g1) report.factorization = factor_through_rotation(f);
    return report;
}

Iet rotation_with_saf(const ContextPtr& ctx, const Scalar& left, const Scalar& length, const WedgeElement& target) {
    if (!same_context(ctx, target.context()) || !same_context(ctx, length.context()))
        throw Error(ErrorCode::ContextMismatch, "rotation target lives in another context");
    if (target.is_zero()) return Iet::identity(ctx, left, length);
    QMatrix basis = complete_basis_with_first(length.coords());
    QMatrix p = bivector_in_basis(target.matrix(), basis);
    for (std::size_t i = 1; i < p.rows(); ++i)
        for (std::size_t j = i + 1; j < p.cols(); ++j)
            if (p(i, j) != 0) throw Error(ErrorCode::NotInKX, "target is not of the form |X| ^ t");

    // target = w_0 ^ sum_j p'(0, j) w_j with w_0 = |X|.
    std::vector<Rational> t_new(p.rows());
    for (std::size_t j = 1; j < p.rows(); ++j) t_new[j] = p(0, j);
    std::vector<Rational> t_old(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) t_old[i] += basis(i, j) * t_new[j];
    Scalar t(ctx, std::move(t_old));

    // Unique integer r with 0 < r|X| + t < |X|; t is not a rational multiple of |X|.
    Integer r = -floor_ratio(t, length);
    Scalar piece = t + length * Rational(r);
    IET_ENSURE(scalar_sign(piece) == Sign::Positive && compare(piece, length) < 0,
               "rotation length outside (0, |X|)");

    // Exchanging (|X| - piece, piece) has invariant |X| ^ piece; the other order negates it.
    for (bool swap : {false, true}) {
        Scalar first = swap ? piece : length - piece;
        Scalar second = length - first;
        Iet g = Iet::make(ctx, left, {first, second}, {1, 0});
        if (saf(g) == target) return g;
    }
    throw Error(ErrorCode::InternalAssertion, "neither rotation orientation reproduces the target invariant");
}

Factorization factor_through_rotation(const Iet& f) {
    WedgeElement invariant = saf(f);
    if (!in_K_of(invariant, f.length()))
        throw Error(ErrorCode::NotInG1, "SAF(f) is not in K(|X|)");
    Iet g = rotation_with_saf(f.context(), f.left(), f.length(), invariant);
    Iet g_inv = inverse(g);
    Factorization out{g, compose(f, g_inv), compose(g_inv, f)};
    IET_ENSURE(compose(out.g, out.h2) == f, "f != g o h2");
    IET_ENSURE(compose(out.h1, out.g) == f, "f != h1 o g");
    IET_ENSURE(saf(out.h1).is_zero() && saf(out.h2).is_zero(), "factor outside G_per");
    return out;
}

std::optional<std::pair<Scalar, Scalar>> decompose(const WedgeElement& w) {
    auto factors = antisym_decompose(w.matrix());
    if (!factors) return std::nullopt;
    return std::pair{Scalar(w.context(), std::move(factors->u)), Scalar(w.context(), std::move(factors->v))};
}

}  // namespace iet
