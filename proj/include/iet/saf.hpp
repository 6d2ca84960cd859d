#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "iet/iet.hpp"
#include "iet/linalg.hpp"
#include "iet/scalar.hpp"

namespace iet {

/// An element of R ^_Q R in coordinates: the antisymmetric matrix p with
/// p(i, j) the coefficient of v_i ^ v_j for i < j.
class WedgeElement {
public:
    WedgeElement(ContextPtr ctx, QMatrix p);
    static WedgeElement zero(ContextPtr ctx);

    const ContextPtr& context() const { return ctx_; }
    const QMatrix& matrix() const { return p_; }
    const Rational& coefficient(std::size_t i, std::size_t j) const { return p_(i, j); }
    std::size_t dimension() const { return p_.rows(); }
    bool is_zero() const { return p_.is_zero(); }

    struct Entry {
        std::size_t i;  // 0-based, i < j
        std::size_t j;
        Rational value;
    };
    /// Nonzero entries above the diagonal, in lexicographic order.
    std::vector<Entry> nonzero_entries() const;

    /// Re-expressed in a context extending the current one.
    WedgeElement embed(const ContextPtr& target) const;

    WedgeElement operator-() const;
    friend WedgeElement operator+(const WedgeElement& a, const WedgeElement& b);
    friend WedgeElement operator-(const WedgeElement& a, const WedgeElement& b);
    friend WedgeElement operator*(const Rational& q, const WedgeElement& a);
    friend bool operator==(const WedgeElement& a, const WedgeElement& b);

private:
    ContextPtr ctx_;
    QMatrix p_;
};

WedgeElement wedge(const Scalar& u, const Scalar& v);

/// The SAF invariant, sum_k lambda_k (x) gamma_k. Asserts that the
/// symmetric part of the tensor vanishes before reading off the wedge coordinates.
WedgeElement saf(const Iet& f);

/// |X| ^ (lambda_3 - lambda_1) - lambda_1 ^ lambda_3: the invariant of the
/// 3-interval reversal with outer lengths lambda_1, lambda_3 on an interval of length |X|.
WedgeElement saf_3iet_closed_form(const Scalar& lambda1, const Scalar& lambda3, const Scalar& x_length);

/// Bivector coordinates in the basis whose first vector is `s` (see complete_basis_with_first).
QMatrix normalized_coordinates(const WedgeElement& w, const Scalar& s,
                               std::optional<std::size_t> pivot = std::nullopt);

/// True iff w = s ^ t for some real t. Throws ZeroScalar when s == 0.
bool in_K_of(const WedgeElement& w, const Scalar& s, std::optional<std::size_t> pivot = std::nullopt);

bool member_Gper(const Iet& f);

struct Factorization {
    Iet g;   // rotation (or identity)
    Iet h1;  // f = h1 o g
    Iet h2;  // f = g o h2
};

struct MembershipReport {
    bool in_gper = false;
    bool in_g1 = false;
    WedgeElement saf;
    /// Surviving coefficients p'(i, j), 2 <= i < j (1-based), in the basis whose first vector is |X|.
    struct Obstruction {
        std::size_t i;
        std::size_t j;
        Rational value;
    };
    std::vector<Obstruction> obstruction;
    /// Columns are the normalized basis vectors in the original coordinates.
    QMatrix normalized_basis;
    std::optional<Factorization> factorization;
};

MembershipReport member_G1(const Iet& f, bool with_factorization = false);

/// A rotation g of [left, left + length) with saf(g) == target.
/// Throws NotInKX when target is not of the form length ^ t.
Iet rotation_with_saf(const ContextPtr& ctx, const Scalar& left, const Scalar& length,
                      const WedgeElement& target);

/// f = g o h2 = h1 o g with g a rotation and h1, h2 in G_per. Throws NotInG1.
Factorization factor_through_rotation(const Iet& f);

/// u, v with u ^ v == w, or nullopt when the bivector has rank > 2.
std::optional<std::pair<Scalar, Scalar>> decompose(const WedgeElement& w);

}  // namespace iet
