#pragma once

// Brute-force models of rational IETs as permutations of equal cells.
// Used to cross-check the exact algorithms on rational data.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "iet/iet.hpp"

namespace iet::oracle {

struct CellPermutation {
    std::vector<std::size_t> map;  // cell i -> cell map[i]

    std::size_t size() const { return map.size(); }
    friend bool operator==(const CellPermutation&, const CellPermutation&) = default;
};

/// Cell i is [left + i w, left + (i + 1) w) with w = |X| / q. Throws NotCellAligned
/// unless every breakpoint and translation is a multiple of w.
CellPermutation to_cells(const Iet& f, std::size_t q);

/// a after b.
CellPermutation brute_compose(const CellPermutation& a, const CellPermutation& b);
std::uint64_t brute_order(const CellPermutation& p);

struct CellInduction {
    CellPermutation induced;                 // on cells first .. first + count - 1, renumbered from 0
    std::vector<std::uint64_t> return_times;  // per cell
};

/// First return of p to the cells [first, first + count).
CellInduction brute_induce(const CellPermutation& p, std::size_t first, std::size_t count);

}  // namespace iet::oracle
