#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "iet/error.hpp"
#include "iet/induction.hpp"
#include "iet/iet.hpp"
#include "iet/saf.hpp"

namespace testing {

using namespace iet;

inline BasisEntry radical(long d) {
    QuadraticForm q = QuadraticForm::sqrt(d);
    return {"sqrt(" + std::to_string(d) + ")", decimal_string(q, 80), q};
}

/// {1, sqrt(d1), sqrt(d2), ...} as a symbolic context.
inline ContextPtr symbolic_radicals(const std::vector<long>& ds) {
    std::vector<BasisEntry> entries{{"1", "1", std::nullopt}};
    for (long d : ds) entries.push_back(radical(d));
    return BasisContext::symbolic(std::move(entries));
}

inline Rational q(const char* s) { return parse_rational(s); }

inline Rational rat(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Scalar sc(const ContextPtr& ctx, std::vector<Rational> coords) {
    coords.resize(ctx->size());
    return Scalar(ctx, std::move(coords));
}

inline Scalar expr(const ContextPtr& ctx, const std::string& text) {
    auto s = context_express(ctx, parse_quadratic(text));
    if (!s) throw Error(ErrorCode::NotRepresentable, text);
    return *s;
}

inline Scalar one(const ContextPtr& ctx) { return Scalar::from_rational(ctx, 1); }

inline Iet rotation(const ContextPtr& ctx, const Scalar& alpha) {
    return Iet::rotation(ctx, Scalar::zero(ctx), one(ctx), alpha);
}

inline Iet reversal(const ContextPtr& ctx, const Scalar& l1, const Scalar& l2, const Scalar& l3) {
    return Iet::make(ctx, {l1, l2, l3}, {2, 1, 0});
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(long num_range, long max_den) {
        Rational r(integer(-num_range, num_range), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    /// Small real: v_i minus a close rational approximation, for each irrational entry.
    Scalar wobble(const ContextPtr& ctx) {
        std::vector<Rational> c(ctx->size());
        for (std::size_t i = 1; i < ctx->size(); ++i) {
            long k = integer(-3, 3);
            if (k == 0) continue;
            double x = approximate(Scalar::unit(ctx, i));
            Rational approx(static_cast<long>(std::floor(x * 64)), 64);
            approx.canonicalize();
            c[i] += Rational(k);
            c[0] -= Rational(k) * approx;
        }
        return Scalar(ctx, c) / Rational(integer(2, 9));
    }

    /// r positive lengths summing to total, with cut points near random rationals.
    std::vector<Scalar> partition(const ContextPtr& ctx, const Scalar& total, std::size_t r, bool irrational = true) {
        for (;;) {
            std::vector<Scalar> cuts;
            for (std::size_t k = 0; k + 1 < r; ++k) {
                Rational t(integer(1, 63), 64);
                t.canonicalize();
                Scalar c = total * t;
                if (irrational) c += wobble(ctx) / Rational(16);
                cuts.push_back(c);
            }
            std::sort(cuts.begin(), cuts.end(), less);
            bool ok = true;
            std::vector<Scalar> out;
            Scalar prev = Scalar::zero(ctx);
            cuts.push_back(total);
            for (const auto& c : cuts) {
                Scalar l = c - prev;
                if (scalar_sign(l) != Sign::Positive) ok = false;
                out.push_back(l);
                prev = c;
            }
            if (ok) return out;
        }
    }

    Permutation permutation(std::size_t r) {
        Permutation p(r);
        for (std::size_t i = 0; i < r; ++i) p[i] = i;
        std::shuffle(p.begin(), p.end(), rng_);
        return p;
    }

    Iet iet(const ContextPtr& ctx, const Scalar& left, const Scalar& total, std::size_t max_r, bool irrational = true) {
        std::size_t r = static_cast<std::size_t>(integer(2, static_cast<long>(max_r)));
        return Iet::make(ctx, left, partition(ctx, total, r, irrational), permutation(r));
    }

    Iet iet(const ContextPtr& ctx, std::size_t max_r, bool irrational = true) {
        return iet(ctx, Scalar::zero(ctx), one(ctx), max_r, irrational);
    }

    /// Rational IET on [0, 1) with breakpoints on the grid 1/q.
    Iet cell_iet(const ContextPtr& ctx, std::size_t q, std::size_t max_r) {
        std::size_t r = std::min<std::size_t>(q, static_cast<std::size_t>(integer(1, static_cast<long>(max_r))));
        std::vector<long> cells(q - 1);
        for (std::size_t i = 0; i + 1 < q; ++i) cells[i] = static_cast<long>(i + 1);
        std::shuffle(cells.begin(), cells.end(), rng_);
        cells.resize(r - 1);
        std::sort(cells.begin(), cells.end());
        cells.push_back(static_cast<long>(q));
        std::vector<Scalar> lengths;
        long prev = 0;
        for (long c : cells) {
            Rational l(c - prev, static_cast<long>(q));
            l.canonicalize();
            lengths.push_back(Scalar::from_rational(ctx, l));
            prev = c;
        }
        return Iet::make(ctx, lengths, permutation(r));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing
