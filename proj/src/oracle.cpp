#include "iet/oracle.hpp"

#include <numeric>

#include "iet/error.hpp"

namespace iet::oracle {

namespace {

Rational as_rational(const Scalar& s, const char* what) {
    if (!s.is_rational())
        throw Error(ErrorCode::NotCellAligned, std::string(what) + " is irrational");
    return s.rational_part();
}

}  // namespace

CellPermutation to_cells(const Iet& f, std::size_t q) {
    if (q == 0) throw Error(ErrorCode::NotCellAligned, "cell count must be positive");
    Rational left = as_rational(f.left(), "left endpoint");
    Rational width = as_rational(f.length(), "domain length") / Rational(static_cast<unsigned long>(q));
    CellPermutation out{std::vector<std::size_t>(q)};
    std::vector<bool> hit(q, false);
    for (std::size_t i = 0; i < q; ++i) {
        Rational a = left + width * Rational(static_cast<unsigned long>(i));
        Scalar x = Scalar::from_rational(f.context(), a);
        auto loc = f.locate(x);
        // The whole cell must sit in one interval.
        Rational room = as_rational(f.lengths()[loc.interval] - loc.offset, "interval length");
        if (room < width) throw Error(ErrorCode::NotCellAligned, "a discontinuity falls inside a cell");
        Rational image = as_rational(f.apply(x), "image");
        Rational cell = (image - left) / width;
        if (cell.get_den() != 1) throw Error(ErrorCode::NotCellAligned, "an image cell is misaligned");
        std::size_t j = cell.get_num().get_ui();
        if (j >= q || hit[j]) throw Error(ErrorCode::InternalAssertion, "cell map is not a bijection");
        hit[j] = true;
        out.map[i] = j;
    }
    return out;
}

CellPermutation brute_compose(const CellPermutation& a, const CellPermutation& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::NotCellAligned, "cell counts differ");
    CellPermutation out{std::vector<std::size_t>(a.size())};
    for (std::size_t i = 0; i < a.size(); ++i) out.map[i] = a.map[b.map[i]];
    return out;
}

std::uint64_t brute_order(const CellPermutation& p) {
    std::uint64_t result = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p.map[j]) {
            seen[j] = true;
            ++len;
        }
        result = std::lcm(result, len);
    }
    return result;
}

CellInduction brute_induce(const CellPermutation& p, std::size_t first, std::size_t count) {
    if (count == 0 || first + count > p.size())
        throw Error(ErrorCode::NotCellAligned, "subinterval cells out of range");
    CellInduction out{{std::vector<std::size_t>(count)}, std::vector<std::uint64_t>(count)};
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t cell = p.map[first + i];
        std::uint64_t steps = 1;
        while (cell < first || cell >= first + count) {
            cell = p.map[cell];
            ++steps;
        }
        out.induced.map[i] = cell - first;
        out.return_times[i] = steps;
    }
    return out;
}

}  // namespace iet::oracle
