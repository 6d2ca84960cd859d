#include "iet/iet.hpp"

#include <algorithm>
#include <numeric>

#include "iet/error.hpp"

namespace iet {

bool is_permutation(const Permutation& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t p : perm) {
        if (p >= perm.size() || seen[p]) return false;
        seen[p] = true;
    }
    return true;
}

Permutation inverse_permutation(const Permutation& perm) {
    Permutation inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
    return inv;
}

std::vector<Scalar> translation_constants(const std::vector<Scalar>& lengths, const Permutation& perm) {
    if (lengths.size() != perm.size() || !is_permutation(perm))
        throw Error(ErrorCode::InvalidPermutation, "permutation does not match the interval count");
    std::vector<Scalar> out;
    out.reserve(lengths.size());
    ContextPtr ctx = lengths.front().context();
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        Scalar g = Scalar::zero(ctx);
        for (std::size_t j = 0; j < lengths.size(); ++j) {
            if (perm[j] < perm[k]) g += lengths[j];
            if (j < k) g -= lengths[j];
        }
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

void require_context(const ContextPtr& ctx, const Scalar& s, const char* what) {
    if (!same_context(ctx, s.context()))
        throw Error(ErrorCode::ContextMismatch, std::string(what) + " is not in the IET's context");
}

void require_same_domain(const Iet& f, const Iet& g) {
    if (!same_context(f.context(), g.context()))
        throw Error(ErrorCode::ContextMismatch, "IETs live in different basis contexts");
    if (!(f.left() == g.left()) || !(f.length() == g.length()))
        throw Error(ErrorCode::DomainMismatch, "IETs act on different intervals");
}

}  // namespace

Iet Iet::make(ContextPtr ctx, Scalar left, std::vector<Scalar> lengths, Permutation perm) {
    if (lengths.empty()) throw Error(ErrorCode::InvalidPermutation, "an IET needs at least one interval");
    if (lengths.size() != perm.size() || !is_permutation(perm))
        throw Error(ErrorCode::InvalidPermutation, "perm is not a permutation of the intervals");
    require_context(ctx, left, "left endpoint");
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        require_context(ctx, lengths[k], "interval length");
        if (scalar_sign(lengths[k]) != Sign::Positive)
            throw Error(ErrorCode::NonPositiveLength,
                        "length " + std::to_string(k + 1) + " = " + format_scalar(lengths[k]) +
                            " is not positive");
    }

    // Merge co-moving neighbours, then compress the target slots.
    std::vector<Scalar> merged{lengths.front()};
    Permutation slots{perm.front()};
    for (std::size_t k = 1; k < lengths.size(); ++k) {
        if (perm[k] == slots.back() + 1) {
            merged.back() += lengths[k];
            slots.back() = perm[k];
        } else {
            merged.push_back(lengths[k]);
            slots.push_back(perm[k]);
        }
    }
    // slots holds the target slot of each merged interval's last member; rank them.
    Permutation order(slots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return slots[a] < slots[b]; });
    Permutation compact(slots.size());
    for (std::size_t r = 0; r < order.size(); ++r) compact[order[r]] = r;

    Iet f;
    f.ctx_ = std::move(ctx);
    f.left_ = std::move(left);
    f.length_ = Scalar::zero(f.ctx_);
    for (const auto& l : merged) f.length_ += l;
    f.gammas_ = translation_constants(merged, compact);
    f.lengths_ = std::move(merged);
    f.perm_ = std::move(compact);
    return f;
}

Iet Iet::make(ContextPtr ctx, std::vector<Scalar> lengths, Permutation perm) {
    Scalar left = Scalar::zero(ctx);
    return make(std::move(ctx), std::move(left), std::move(lengths), std::move(perm));
}

Iet Iet::from_translations(ContextPtr ctx, Scalar left, std::vector<Scalar> lengths,
                           const std::vector<Scalar>& translations) {
    std::size_t r = lengths.size();
    IET_ENSURE(translations.size() == r, "one translation per piece required");
    std::vector<Scalar> images;
    images.reserve(r);
    Scalar start = left;
    for (std::size_t k = 0; k < r; ++k) {
        images.push_back(start + translations[k]);
        start += lengths[k];
    }
    Permutation by_image(r);
    std::iota(by_image.begin(), by_image.end(), 0);
    std::sort(by_image.begin(), by_image.end(),
              [&](std::size_t a, std::size_t b) { return less(images[a], images[b]); });
    Scalar expected = left;
    Permutation perm(r);
    for (std::size_t slot = 0; slot < r; ++slot) {
        std::size_t k = by_image[slot];
        IET_ENSURE(images[k] == expected, "translated pieces do not tile the domain");
        expected += lengths[k];
        perm[k] = slot;
    }
    return make(std::move(ctx), std::move(left), std::move(lengths), std::move(perm));
}

Iet Iet::identity(ContextPtr ctx, Scalar left, Scalar length) {
    return make(std::move(ctx), std::move(left), {std::move(length)}, {0});
}

Iet Iet::rotation(ContextPtr ctx, Scalar left, Scalar length, const Scalar& alpha) {
    Sign s = scalar_sign(alpha);
    if (s == Sign::Negative || compare(alpha, length) >= 0)
        throw Error(ErrorCode::InvalidInterval, "rotation amount must lie in [0, |X|)");
    if (s == Sign::Zero) return identity(std::move(ctx), std::move(left), std::move(length));
    Scalar first = length - alpha;
    return make(std::move(ctx), std::move(left), {first, alpha}, {1, 0});
}

std::vector<Scalar> Iet::source_starts() const {
    std::vector<Scalar> out;
    Scalar s = left_;
    for (const auto& l : lengths_) {
        out.push_back(s);
        s += l;
    }
    return out;
}

std::vector<Scalar> Iet::discontinuities() const {
    std::vector<Scalar> starts = source_starts();
    starts.erase(starts.begin());
    return starts;
}

bool Iet::contains(const Scalar& x) const {
    return compare(x, left_) >= 0 && compare(x, right()) < 0;
}

PointLocation Iet::locate(const Scalar& x) const {
    require_context(ctx_, x, "point");
    Scalar offset = x - left_;
    if (scalar_sign(offset) == Sign::Negative)
        throw Error(ErrorCode::OutOfDomain, format_scalar(x) + " lies left of the domain");
    for (std::size_t k = 0; k < lengths_.size(); ++k) {
        if (compare(offset, lengths_[k]) < 0) return {k, offset};
        offset -= lengths_[k];
    }
    throw Error(ErrorCode::OutOfDomain, format_scalar(x) + " lies right of the domain");
}

Scalar Iet::apply(const Scalar& x) const { return x + gammas_[locate(x).interval]; }

std::pair<std::size_t, Scalar> Iet::preimage(const Scalar& y) const {
    require_context(ctx_, y, "point");
    Permutation inv = inverse_permutation(perm_);
    Scalar offset = y - left_;
    if (scalar_sign(offset) == Sign::Negative)
        throw Error(ErrorCode::OutOfDomain, format_scalar(y) + " lies left of the domain");
    for (std::size_t slot = 0; slot < inv.size(); ++slot) {
        std::size_t k = inv[slot];
        if (compare(offset, lengths_[k]) < 0) return {k, y - gammas_[k]};
        offset -= lengths_[k];
    }
    throw Error(ErrorCode::OutOfDomain, format_scalar(y) + " lies right of the domain");
}

Iet Iet::embed(const ContextPtr& target) const {
    if (same_context(ctx_, target) && ctx_ == target) return *this;
    Iet f = *this;
    f.ctx_ = target;
    f.left_ = iet::embed(left_, target);
    f.length_ = iet::embed(length_, target);
    for (auto& l : f.lengths_) l = iet::embed(l, target);
    for (auto& g : f.gammas_) g = iet::embed(g, target);
    return f;
}

bool operator==(const Iet& a, const Iet& b) {
    return same_context(a.ctx_, b.ctx_) && a.left_ == b.left_ && a.perm_ == b.perm_ &&
           a.lengths_ == b.lengths_;
}

Iet compose(const Iet& f, const Iet& g) {
    require_same_domain(f, g);
    std::vector<Scalar> cuts = g.discontinuities();
    for (const auto& d : f.discontinuities()) {
        Scalar x = g.preimage(d).second;
        if (!(x == g.left())) cuts.push_back(std::move(x));
    }
    std::sort(cuts.begin(), cuts.end(), less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Scalar> lengths;
    std::vector<Scalar> translations;
    Scalar start = g.left();
    cuts.push_back(g.right());
    for (const auto& end : cuts) {
        std::size_t kg = g.locate(start).interval;
        Scalar mid = start + g.gammas()[kg];
        std::size_t kf = f.locate(mid).interval;
        lengths.push_back(end - start);
        translations.push_back(g.gammas()[kg] + f.gammas()[kf]);
        start = end;
    }
    return Iet::from_translations(g.context(), g.left(), std::move(lengths), translations);
}

Iet inverse(const Iet& f) {
    Permutation inv = inverse_permutation(f.perm());
    std::vector<Scalar> lengths;
    lengths.reserve(inv.size());
    for (std::size_t slot = 0; slot < inv.size(); ++slot) lengths.push_back(f.lengths()[inv[slot]]);
    return Iet::make(f.context(), f.left(), std::move(lengths), inv);
}

Iet conjugate_affine(const Iet& f, const Scalar& y_left, const Scalar& y_length) {
    require_context(f.context(), y_left, "target left endpoint");
    require_context(f.context(), y_length, "target length");
    if (scalar_sign(y_length) != Sign::Positive)
        throw Error(ErrorCode::InvalidInterval, "target interval must have positive length");
    if (y_left == f.left() && y_length == f.length()) return f;
    Scalar ratio = scalar_div(y_length, f.length());
    std::vector<Scalar> lengths;
    for (const auto& l : f.lengths()) lengths.push_back(scalar_mul(l, ratio));
    return Iet::make(f.context(), y_left, std::move(lengths), f.perm());
}

namespace {

// Order via the permutation of equal cells; nullopt when the cells are too many.
std::optional<Integer> rational_order(const Iet& f) {
    constexpr std::size_t kMaxCells = std::size_t{1} << 22;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& l : f.lengths()) {
        const Rational& q = l.rational_part();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    Rational width(num_gcd, den_lcm);
    width.canonicalize();
    std::vector<std::size_t> counts;
    Integer total = 0;
    for (const auto& l : f.lengths()) {
        Rational c = l.rational_part() / width;
        IET_ENSURE(c.get_den() == 1, "cell width does not divide an interval length");
        total += c.get_num();
        if (total > Integer(static_cast<unsigned long>(kMaxCells))) return std::nullopt;
        counts.push_back(c.get_num().get_ui());
    }
    std::size_t q = total.get_ui();
    Permutation inv = inverse_permutation(f.perm());
    std::vector<std::size_t> target_start(counts.size());
    std::size_t acc = 0;
    for (std::size_t slot = 0; slot < inv.size(); ++slot) {
        target_start[inv[slot]] = acc;
        acc += counts[inv[slot]];
    }
    std::vector<std::size_t> cell_map(q);
    std::size_t source = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        for (std::size_t c = 0; c < counts[k]; ++c) cell_map[source++] = target_start[k] + c;

    Integer result = 1;
    std::vector<bool> seen(q, false);
    for (std::size_t i = 0; i < q; ++i) {
        if (seen[i]) continue;
        unsigned long len = 0;
        for (std::size_t j = i; !seen[j]; j = cell_map[j]) {
            seen[j] = true;
            ++len;
        }
        mpz_lcm_ui(result.get_mpz_t(), result.get_mpz_t(), len);
    }
    return result;
}

}  // namespace

std::optional<std::uint64_t> order_by_iteration(const Iet& f, std::uint64_t cap) {
    Iet power = f;
    for (std::uint64_t n = 1; n <= cap; ++n) {
        if (power.is_identity()) return n;
        if (n < cap) power = compose(power, f);
    }
    return std::nullopt;
}

std::optional<std::uint64_t> order(const Iet& f, std::uint64_t cap) {
    bool rational = std::all_of(f.lengths().begin(), f.lengths().end(),
                                [](const Scalar& l) { return l.is_rational(); });
    if (rational) {
        if (auto n = rational_order(f)) {
            if (*n > Integer(static_cast<unsigned long>(cap))) return std::nullopt;
            return n->get_ui();
        }
    }
    std::size_t n = f.context()->size();
    if (!(displacement_tensor(f) == QMatrix(n, n))) return std::nullopt;
    Integer result = 1;
    std::vector<Scalar> starts = f.discontinuities();
    starts.push_back(f.left());
    for (const auto& d : starts) {
        Scalar x = f.apply(d);
        std::uint64_t period = 1;
        while (!(x == d)) {
            if (period == cap) return std::nullopt;
            x = f.apply(x);
            ++period;
        }
        mpz_lcm_ui(result.get_mpz_t(), result.get_mpz_t(), period);
        if (result > Integer(static_cast<unsigned long>(cap))) return std::nullopt;
    }
    return result.get_ui();
}

std::size_t rank_of_iet(const Iet& f) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& l : f.lengths()) rows.push_back(l.coords());
    return qmat_rank(QMatrix::from_rows(rows));
}

QMatrix displacement_tensor(const Iet& f) {
    std::size_t n = f.context()->size();
    QMatrix m(n, n);
    for (std::size_t k = 0; k < f.interval_count(); ++k) {
        const auto& l = f.lengths()[k];
        const auto& g = f.gammas()[k];
        for (std::size_t i = 0; i < n; ++i) {
            if (l[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) m(i, j) += l[i] * g[j];
        }
    }
    return m;
}

}  // namespace iet
