#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "iet/rational.hpp"

namespace iet {

/// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> column(std::size_t j) const;
    QMatrix transpose() const;
    bool is_zero() const;
    bool is_antisymmetric() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination on the integer-scaled matrix.
std::size_t qmat_rank(const QMatrix& m);

/// Determinant of a square matrix, also via Bareiss.
Rational determinant(const QMatrix& m);

/// Exact inverse, or nullopt for a singular matrix.
std::optional<QMatrix> inverse(const QMatrix& m);

/// Change-of-basis matrix whose first column is `v`.
///
/// The unit vector at `pivot` (default: the first nonzero index of v) is
/// replaced by v; the remaining columns are the other unit vectors in index
/// order. The result is invertible with determinant +-v[pivot].
/// Throws ZeroVector when v == 0, and ZeroVector when v[pivot] == 0.
QMatrix complete_basis_with_first(std::span<const Rational> v,
                                  std::optional<std::size_t> pivot = std::nullopt);

/// Coordinates of a bivector after a change of basis whose columns are `basis`:
/// returns B^{-1} P B^{-T}.
QMatrix bivector_in_basis(const QMatrix& p, const QMatrix& basis);

/// u and v coordinates with wedge(u, v) == p, for an antisymmetric p of rank <= 2.
struct BivectorFactors {
    std::vector<Rational> u;
    std::vector<Rational> v;
};

/// Throws NotAntisymmetric. Returns nullopt when rank(p) > 2.
std::optional<BivectorFactors> antisym_decompose(const QMatrix& p);

/// p_ij = u_i v_j - u_j v_i.
QMatrix wedge_coords(std::span<const Rational> u, std::span<const Rational> v);

}  // namespace iet
