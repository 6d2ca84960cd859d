#include "iet/induction.hpp"

#include <algorithm>

#include "iet/error.hpp"

namespace iet {

namespace {

struct Piece {
    Scalar source;    // left end of the piece inside Y
    Scalar length;
    Scalar position;  // left end of its current image
    std::uint64_t steps;
};

// Splits [start, start + length) at the points of `cuts` lying strictly inside.
std::vector<std::pair<Scalar, Scalar>> split_at(const Scalar& start, const Scalar& length,
                                                const std::vector<Scalar>& cuts) {
    std::vector<std::pair<Scalar, Scalar>> out;
    Scalar s = start;
    Scalar end = start + length;
    for (const auto& c : cuts) {
        if (compare(c, s) > 0 && compare(c, end) < 0) {
            out.emplace_back(s, c - s);
            s = c;
        }
    }
    out.emplace_back(s, end - s);
    return out;
}

bool is_irreducible(const Permutation& perm) {
    std::size_t max_slot = 0;
    for (std::size_t k = 0; k + 1 < perm.size(); ++k) {
        max_slot = std::max(max_slot, perm[k]);
        if (max_slot == k) return false;
    }
    return true;
}

}  // namespace

InductionResult induce(const Iet& f, const Scalar& y_left, const Scalar& y_right, std::uint64_t cap) {
    const ContextPtr& ctx = f.context();
    if (!same_context(ctx, y_left.context()) || !same_context(ctx, y_right.context()))
        throw Error(ErrorCode::ContextMismatch, "subinterval endpoints are not in the IET's context");
    if (compare(y_left, y_right) >= 0)
        throw Error(ErrorCode::InvalidInterval, "subinterval has non-positive length");
    if (compare(y_left, f.left()) < 0 || compare(y_right, f.right()) > 0)
        throw Error(ErrorCode::InvalidInterval, "subinterval is not contained in the domain");

    const std::vector<Scalar> y_cuts{y_left, y_right};
    std::vector<Piece> active{{y_left, y_right - y_left, y_left, 0}};
    std::vector<Piece> retired;
    while (!active.empty()) {
        Piece piece = std::move(active.back());
        active.pop_back();

        // One step of f: cut the current image at f's discontinuities.
        Scalar consumed = Scalar::zero(ctx);
        while (compare(consumed, piece.length) < 0) {
            Scalar pos = piece.position + consumed;
            PointLocation loc = f.locate(pos);
            Scalar room = f.lengths()[loc.interval] - loc.offset;
            Scalar remaining = piece.length - consumed;
            Scalar take = compare(remaining, room) < 0 ? remaining : room;
            Scalar moved = pos + f.gammas()[loc.interval];
            Scalar source = piece.source + consumed;

            for (auto& [image_start, part_length] : split_at(moved, take, y_cuts)) {
                Scalar part_source = source + (image_start - moved);
                Piece next{part_source, part_length, image_start, piece.steps + 1};
                bool inside = compare(image_start, y_left) >= 0 && compare(image_start, y_right) < 0;
                if (inside) {
                    retired.push_back(std::move(next));
                } else if (next.steps >= cap) {
                    throw Error(ErrorCode::CapExceeded,
                                "a piece did not return within " + std::to_string(cap) +
                                    " steps (f may not be minimal, or the cap is too small)");
                } else {
                    active.push_back(std::move(next));
                }
            }
            consumed += take;
        }
    }

    std::sort(retired.begin(), retired.end(),
              [](const Piece& a, const Piece& b) { return less(a.source, b.source); });
    std::vector<Scalar> lengths;
    std::vector<Scalar> translations;
    InductionResult result{.induced = Iet::identity(ctx, y_left, y_right - y_left),
                           .pieces = {},
                           .source_intervals = f.interval_count()};
    for (const auto& p : retired) {
        lengths.push_back(p.length);
        translations.push_back(p.position - p.source);
        result.pieces.push_back({p.source, p.length, p.steps});
        result.max_return = std::max(result.max_return, p.steps);
    }
    result.induced = Iet::from_translations(ctx, y_left, std::move(lengths), translations);
    return result;
}

InductionResult induce(const Iet& f, const QuadraticForm& y_left, const QuadraticForm& y_right,
                       std::uint64_t cap) {
    auto [ctx_l, left] = express_or_adjoin(f.context(), y_left);
    auto [ctx, right] = express_or_adjoin(ctx_l, y_right);
    return induce(f.embed(ctx), embed(left, ctx), right, cap);
}

KeaneVerdict keane_check(const Iet& f, std::uint64_t depth) {
    if (depth < 1) throw Error(ErrorCode::InvalidInterval, "Keane depth must be at least 1");
    KeaneVerdict verdict{.depth = depth, .violation = std::nullopt};
    std::vector<Scalar> discs = f.discontinuities();
    for (const auto& d : discs) {
        Scalar x = d;
        for (std::uint64_t step = 1; step <= depth; ++step) {
            x = f.apply(x);
            auto hit = std::find(discs.begin(), discs.end(), x);
            if (hit != discs.end()) {
                verdict.violation = KeaneVerdict::Violation{d, static_cast<std::size_t>(hit - discs.begin()), step};
                return verdict;
            }
        }
    }
    return verdict;
}

namespace {

SafPreservation compare_invariants(const Iet& f, std::uint64_t keane_depth, InductionResult induction) {
    SafPreservation out{.keane = keane_check(f, keane_depth), .induction = std::move(induction)};
    out.minimality_attested = out.keane.satisfied() && f.interval_count() >= 2 && is_irreducible(f.perm());
    const ContextPtr& ctx = out.induction.induced.context();
    out.preserved = saf(f).embed(ctx) == saf(out.induction.induced);
    return out;
}

}  // namespace

SafPreservation check_saf_preserved(const Iet& f, const Scalar& y_left, const Scalar& y_right,
                                    std::uint64_t keane_depth, std::uint64_t cap) {
    return compare_invariants(f, keane_depth, induce(f, y_left, y_right, cap));
}

SafPreservation check_saf_preserved(const Iet& f, const QuadraticForm& y_left, const QuadraticForm& y_right,
                                    std::uint64_t keane_depth, std::uint64_t cap) {
    return compare_invariants(f, keane_depth, induce(f, y_left, y_right, cap));
}

std::optional<InducingSubinterval> find_G1_inducing_subinterval(const Iet& f, std::uint64_t cap) {
    WedgeElement invariant = saf(f);
    if (invariant.is_zero()) return InducingSubinterval{f.left(), f.right(), induce(f, f.left(), f.right(), cap)};
    auto factors = decompose(invariant);
    if (!factors) return std::nullopt;
    Scalar u = factors->first;
    if (scalar_sign(u) == Sign::Negative) u = -u;  // u ^ v = (-u) ^ (-v)
    Rational q = 1;
    while (compare(u * q, f.length()) >= 0) q /= 2;
    Scalar right = f.left() + u * q;
    InducingSubinterval out{f.left(), right, induce(f, f.left(), right, cap)};
    if (!member_G1(out.induction.induced).in_g1)
        throw Error(ErrorCode::InvariantViolation,
                    "induced map on [" + format_scalar(f.left()) + ", " + format_scalar(right) +
                        ") is not in G_1; the input is probably not minimal");
    return out;
}

}  // namespace iet
