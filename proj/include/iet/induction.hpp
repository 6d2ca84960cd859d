#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iet/iet.hpp"
#include "iet/saf.hpp"

namespace iet {

inline constexpr std::uint64_t kDefaultInduceCap = 100000;
inline constexpr std::uint64_t kDefaultKeaneDepth = 64;

struct ReturnPiece {
    Scalar start;
    Scalar length;
    std::uint64_t return_time;
};

struct InductionResult {
    Iet induced;
    std::vector<ReturnPiece> pieces;  // ordered by start, partitioning Y
    std::uint64_t max_return = 0;
    /// Interval count of f; the induced map stays within r + 2 intervals.
    std::size_t source_intervals = 0;
};

/// First-return map of f on Y = [y_left, y_right) by piece iteration.
/// Throws CapExceeded when a piece needs more than `cap` steps, InvalidInterval
/// when Y is empty or not inside the domain.
InductionResult induce(const Iet& f, const Scalar& y_left, const Scalar& y_right,
                       std::uint64_t cap = kDefaultInduceCap);

/// As above, with endpoints given externally; they are expressed in f's context
/// or adjoined to it (f is embedded into the enlarged context).
InductionResult induce(const Iet& f, const QuadraticForm& y_left, const QuadraticForm& y_right,
                       std::uint64_t cap = kDefaultInduceCap);

struct KeaneVerdict {
    struct Violation {
        Scalar orbit_start;          // discontinuity whose orbit was followed
        std::size_t discontinuity;   // index (0-based among interior discontinuities) that was hit
        std::uint64_t step;          // f^step(orbit_start) == that discontinuity
    };
    std::uint64_t depth = 0;
    std::optional<Violation> violation;
    bool satisfied() const { return !violation; }
};

/// Follows every discontinuity forward up to `depth` steps. Satisfaction is a
/// bounded semi-check, not a proof of minimality.
KeaneVerdict keane_check(const Iet& f, std::uint64_t depth);

struct SafPreservation {
    bool preserved = false;
    bool minimality_attested = false;
    KeaneVerdict keane;
    InductionResult induction;
};

SafPreservation check_saf_preserved(const Iet& f, const Scalar& y_left, const Scalar& y_right,
                                    std::uint64_t keane_depth = kDefaultKeaneDepth,
                                    std::uint64_t cap = kDefaultInduceCap);
SafPreservation check_saf_preserved(const Iet& f, const QuadraticForm& y_left, const QuadraticForm& y_right,
                                    std::uint64_t keane_depth = kDefaultKeaneDepth,
                                    std::uint64_t cap = kDefaultInduceCap);

struct InducingSubinterval {
    Scalar left;
    Scalar right;
    InductionResult induction;
};

/// A subinterval Y = [left, left + q u) with f_Y in G_1(Y), where SAF(f) = u ^ v
/// and q is the largest power of 1/2 with q u < |X|. nullopt when SAF(f) has
/// rank > 2. The caller attests that f is minimal.
std::optional<InducingSubinterval> find_G1_inducing_subinterval(const Iet& f,
                                                                std::uint64_t cap = kDefaultInduceCap);

}  // namespace iet
