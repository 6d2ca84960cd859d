#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "iet/linalg.hpp"
#include "iet/scalar.hpp"

namespace iet {

/// Permutation convention: source interval k lands in target slot perm[k]
/// (0-based here, 1-based in JSON documents).
using Permutation = std::vector<std::size_t>;

/// gamma_k = sum_{j: perm[j] < perm[k]} lambda_j - sum_{j < k} lambda_j.
std::vector<Scalar> translation_constants(const std::vector<Scalar>& lengths, const Permutation& perm);

bool is_permutation(const Permutation& perm);
Permutation inverse_permutation(const Permutation& perm);

struct PointLocation {
    std::size_t interval;
    Scalar offset;
};

/// An interval exchange transformation on the standard interval [left, left + length).
///
/// Always held in canonical form: adjacent source intervals that move
/// together are merged, so an r-interval map has exactly r - 1 discontinuities.
class Iet {
public:
    /// Validates and canonicalizes. Throws NonPositiveLength, InvalidPermutation,
    /// ContextMismatch, or AmbiguousSign.
    static Iet make(ContextPtr ctx, Scalar left, std::vector<Scalar> lengths, Permutation perm);
    static Iet make(ContextPtr ctx, std::vector<Scalar> lengths, Permutation perm);

    /// Builds the map sending each source piece [s_k, s_k + lengths[k]) by translations[k].
    /// The translated pieces must tile the domain.
    static Iet from_translations(ContextPtr ctx, Scalar left, std::vector<Scalar> lengths,
                                 const std::vector<Scalar>& translations);

    static Iet identity(ContextPtr ctx, Scalar left, Scalar length);
    /// x -> x + alpha (mod |X|) on [left, left + length), for 0 <= alpha < length.
    static Iet rotation(ContextPtr ctx, Scalar left, Scalar length, const Scalar& alpha);

    const ContextPtr& context() const { return ctx_; }
    const Scalar& left() const { return left_; }
    const Scalar& length() const { return length_; }
    Scalar right() const { return left_ + length_; }
    std::size_t interval_count() const { return lengths_.size(); }
    const std::vector<Scalar>& lengths() const { return lengths_; }
    const Permutation& perm() const { return perm_; }
    const std::vector<Scalar>& gammas() const { return gammas_; }

    /// Left endpoints of the source intervals.
    std::vector<Scalar> source_starts() const;
    /// Interior discontinuities (left endpoints of intervals 2..r).
    std::vector<Scalar> discontinuities() const;

    bool is_identity() const { return lengths_.size() == 1; }
    bool contains(const Scalar& x) const;

    PointLocation locate(const Scalar& x) const;
    Scalar apply(const Scalar& x) const;
    /// The source interval whose image contains y, and the preimage of y.
    std::pair<std::size_t, Scalar> preimage(const Scalar& y) const;

    /// Same map, expressed in a context extending the current one.
    Iet embed(const ContextPtr& target) const;

    friend bool operator==(const Iet& a, const Iet& b);

private:
    Iet() = default;

    ContextPtr ctx_;
    Scalar left_{Scalar::zero(BasisContext::rational())};
    Scalar length_{Scalar::zero(BasisContext::rational())};
    std::vector<Scalar> lengths_;
    Permutation perm_;
    std::vector<Scalar> gammas_;
};

/// f after g (g applied first). Domains and contexts must agree.
Iet compose(const Iet& f, const Iet& g);
Iet inverse(const Iet& f);
/// Conjugates by the affine order-preserving bijection onto [y_left, y_left + y_length).
Iet conjugate_affine(const Iet& f, const Scalar& y_left, const Scalar& y_length);

/// Least n <= cap with f^n = id. Rational maps use a cell-permutation fast path;
/// otherwise a nonzero displacement tensor rules out finite order, and the order
/// is the lcm of the periods of the piece endpoints.
std::optional<std::uint64_t> order(const Iet& f, std::uint64_t cap);
/// Same, by repeated composition only.
std::optional<std::uint64_t> order_by_iteration(const Iet& f, std::uint64_t cap);

/// dim_Q of the span of the interval lengths.
std::size_t rank_of_iet(const Iet& f);

/// Sum_k lambda_k (x) gamma_k in tensor coordinates: entry (i, j) is the
/// coefficient of v_i (x) v_j. Its symmetric part vanishes for every IET,
/// which is the coordinate form of sum_k lambda_k * gamma_k = 0.
QMatrix displacement_tensor(const Iet& f);

}  // namespace iet
