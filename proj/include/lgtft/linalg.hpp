// linalg.hpp
//
// Dense exact linear algebra over a field, and parity-graded vector spaces and
// maps built on it.

#pragma once

#include "lgtft/scalar.hpp"

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
    }
    std::vector<T> col(std::size_t c) const {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(r, k);
                if (x == T(0)) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) p(r, c) += x * b(k, c);
            }
        return p;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!(v[c] == T(0))) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == T(0))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Reduced row echelon form with the list of pivot columns.
template <typename T>
struct Echelon {
    Matrix<T> reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

template <typename T>
bool entry_is_zero(const T& x) {
    if constexpr (requires { x.is_zero(); }) return x.is_zero();
    else return x == T(0);
}

}  // namespace detail

template <typename T>
Echelon<T> row_reduce(Matrix<T> m) {
    using detail::entry_is_zero;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && entry_is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
        support.clear();
        for (std::size_t k = c; k < m.cols(); ++k)
            if (!entry_is_zero(m(lead_row, k))) support.push_back(k);
        T inv = T(1) / m(lead_row, c);
        for (auto k : support) m(lead_row, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || entry_is_zero(m(r, c))) continue;
            T f = m(r, c);
            for (auto k : support) m(r, k) -= f * m(lead_row, k);
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only.
template <typename T>
std::size_t rank(Matrix<T> m) {
    using detail::entry_is_zero;
    std::vector<std::size_t> support;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && entry_is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
        support.clear();
        for (std::size_t k = c + 1; k < m.cols(); ++k)
            if (!entry_is_zero(m(lead_row, k))) support.push_back(k);
        T inv = T(1) / m(lead_row, c);
        for (std::size_t r = lead_row + 1; r < m.rows(); ++r) {
            if (entry_is_zero(m(r, c))) continue;
            T f = m(r, c) * inv;
            for (auto k : support) m(r, k) -= f * m(lead_row, k);
        }
        ++lead_row;
    }
    return lead_row;
}

/// Basis of the null space, one vector per free column (free entry set to 1).
template <typename T>
std::vector<std::vector<T>> null_space(const Matrix<T>& m) {
    auto ech = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Matrix<T>(0, 0);
    Matrix<T> aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = T(1);
    }
    auto ech = row_reduce(aug);
    if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
    return inv;
}

/// Some solution x of m x = b, if one exists.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix<T> aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto ech = row_reduce(aug);
    if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
    std::vector<T> x(m.cols(), T(0));
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, m.cols());
    return x;
}

/// A vector space with a parity (and optionally integer degree) attached to each basis vector.
struct GradedVectorSpace {
    struct BasisVector {
        std::string label;
        int parity = 0;
        std::optional<long> degree;
    };
    std::vector<BasisVector> basis;

    std::size_t dim() const { return basis.size(); }
    std::size_t dim(int parity) const {
        std::size_t n = 0;
        for (const auto& b : basis) n += (b.parity == parity);
        return n;
    }
};

struct LinearMapExact {
    GradedVectorSpace domain;
    GradedVectorSpace codomain;
    Matrix<Scalar> matrix;  // codomain.dim() x domain.dim()
    int parity = 0;

    void validate() const {
        if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim())
            throw std::invalid_argument("linear map matrix shape does not match its spaces");
    }
};

inline LinearMapExact compose(const LinearMapExact& g, const LinearMapExact& f) {
    f.validate();
    g.validate();
    if (g.domain.dim() != f.codomain.dim()) throw std::invalid_argument("composition of incompatible linear maps");
    return {f.domain, g.codomain, g.matrix * f.matrix, (g.parity + f.parity) % 2};
}

struct KernelImage {
    std::vector<std::vector<Scalar>> kernel;
    std::vector<std::vector<Scalar>> image;
};

/// Exact bases of the kernel and image; rank-nullity is asserted.
inline KernelImage kernel_and_image(const LinearMapExact& map) {
    map.validate();
    auto ech = row_reduce(map.matrix);
    KernelImage out;
    out.kernel = null_space(map.matrix);
    for (auto p : ech.pivots) out.image.push_back(map.matrix.col(p));
    if (out.kernel.size() + out.image.size() != map.domain.dim())
        throw std::logic_error("rank-nullity violated");
    return out;
}

}  // namespace lgtft
