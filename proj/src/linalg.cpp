#include "iet/linalg.hpp"

#include <utility>

#include "iet/error.hpp"

namespace iet {

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw Error(ErrorCode::InvariantViolation, "matrix data length does not match dimensions");
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error(ErrorCode::InvariantViolation, "ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Rational> QMatrix::column(std::size_t j) const {
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const {
    for (const auto& q : data_)
        if (q != 0) return false;
    return true;
}

bool QMatrix::is_antisymmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvariantViolation, "matrix shape mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorCode::InvariantViolation, "matrix shape mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorCode::InvariantViolation, "matrix shape mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// Each row multiplied by the lcm of its denominators; rank and determinant
// (up to the recorded scale) are preserved.
IntMatrix integer_rows(const QMatrix& m, Rational* scale = nullptr) {
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    Rational total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * Rational(l);
            out[i][j] = scaled.get_num();
        }
        total *= Rational(l);
    }
    if (scale) *scale = total;
    return out;
}

// Bareiss elimination in place; returns the rank and the sign flips from row swaps.
std::size_t bareiss(IntMatrix& a, std::size_t cols, int* swap_sign = nullptr) {
    std::size_t rows = a.size();
    std::size_t rank = 0;
    Integer prev = 1;
    int flips = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            std::swap(a[pivot], a[rank]);
            flips = -flips;
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Integer t = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    if (swap_sign) *swap_sign = flips;
    return rank;
}

}  // namespace

std::size_t qmat_rank(const QMatrix& m) {
    IntMatrix a = integer_rows(m);
    return bareiss(a, m.cols());
}

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvariantViolation, "determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    Rational scale;
    IntMatrix a = integer_rows(m, &scale);
    int flips = 1;
    // Bareiss skips zero columns, so a rank deficit means the determinant vanishes.
    if (bareiss(a, n, &flips) < n) return 0;
    return Rational(a[n - 1][n - 1] * flips) / scale;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvariantViolation, "inverse of non-square matrix");
    std::size_t n = m.rows();
    QMatrix a = m;
    QMatrix inv = QMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational factor = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= factor * a(col, j);
                inv(i, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

QMatrix complete_basis_with_first(std::span<const Rational> v, std::optional<std::size_t> pivot) {
    std::size_t n = v.size();
    std::size_t p = n;
    if (pivot) {
        p = *pivot;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) {
                p = i;
                break;
            }
    }
    if (p >= n || v[p] == 0)
        throw Error(ErrorCode::ZeroVector, "basis completion needs a nonzero pivot coordinate");
    QMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) t(i, 0) = v[i];
    std::size_t col = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == p) continue;
        t(j, col++) = 1;
    }
    return t;
}

QMatrix bivector_in_basis(const QMatrix& p, const QMatrix& basis) {
    auto inv = inverse(basis);
    if (!inv) throw Error(ErrorCode::InvariantViolation, "basis matrix is singular");
    return *inv * p * inv->transpose();
}

QMatrix wedge_coords(std::span<const Rational> u, std::span<const Rational> v) {
    if (u.size() != v.size()) throw Error(ErrorCode::ContextMismatch, "wedge of vectors of different length");
    std::size_t n = u.size();
    QMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            p(i, j) = u[i] * v[j] - u[j] * v[i];
            p(j, i) = -p(i, j);
        }
    return p;
}

std::optional<BivectorFactors> antisym_decompose(const QMatrix& p) {
    if (!p.is_antisymmetric()) throw Error(ErrorCode::NotAntisymmetric, "matrix is not antisymmetric");
    std::size_t n = p.rows();
    std::size_t rank = qmat_rank(p);
    IET_ENSURE(rank % 2 == 0, "antisymmetric matrix with odd rank");
    if (rank == 0) return BivectorFactors{std::vector<Rational>(n), std::vector<Rational>(n)};
    if (rank > 2) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p(i, j) == 0) continue;
            // With P = u^v and p_ij != 0: u = P e_i / p_ij, v = P e_j.
            BivectorFactors out{p.column(i), p.column(j)};
            for (auto& c : out.u) c /= p(i, j);
            IET_ENSURE(wedge_coords(out.u, out.v) == p, "bivector reconstruction failed");
            return out;
        }
    return std::nullopt;  // unreachable: rank 2 has a nonzero entry
}

}  // namespace iet
