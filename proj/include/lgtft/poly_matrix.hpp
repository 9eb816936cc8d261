// poly_matrix.hpp
//
// Dense matrices with polynomial entries over one ring, plus enumeration of
// monomials in a fixed weighted degree.

#pragma once

#include "lgtft/polynomial.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

    static PolyMatrix identity(const RingPtr& ring, std::size_t n) {
        PolyMatrix m(ring, n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = Polynomial(ring, Scalar(1));
        return m;
    }

    static PolyMatrix scalar(const Polynomial& p, std::size_t n) {
        PolyMatrix m(p.ring(), n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = p;
        return m;
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Polynomial& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
    const Polynomial& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

    bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Largest total degree of an entry; -1 when zero.
    int degree() const {
        int d = -1;
        for (const auto& p : data_) d = std::max(d, p.degree());
        return d;
    }

    PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        PolyMatrix b(ring_, nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const PolyMatrix& b) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
    }

    PolyMatrix partial_derivative(std::size_t k) const {
        PolyMatrix out(ring_, rows_, cols_);
        for (std::size_t n = 0; n < data_.size(); ++n) out.data_[n] = data_[n].partial_derivative(k);
        return out;
    }

    PolyMatrix& operator+=(const PolyMatrix& o) {
        check_shape(o);
        for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
        return *this;
    }
    PolyMatrix& operator-=(const PolyMatrix& o) {
        check_shape(o);
        for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
        return *this;
    }
    PolyMatrix& operator*=(const Scalar& s) {
        for (auto& p : data_) p *= s;
        return *this;
    }
    PolyMatrix& operator*=(const Polynomial& s) {
        for (auto& p : data_) p *= s;
        return *this;
    }

    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(PolyMatrix a, const Scalar& s) { return a *= s; }
    friend PolyMatrix operator*(const Scalar& s, PolyMatrix a) { return a *= s; }
    friend PolyMatrix operator*(const Polynomial& s, PolyMatrix a) { return a *= s; }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("polynomial matrix shape mismatch in product");
        PolyMatrix p(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& x = a(r, k);
                if (x.is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    if (!b(k, c).is_zero()) p(r, c) += x * b(k, c);
            }
        return p;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).str());
        return out;
    }

private:
    void check_shape(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("polynomial matrix shape mismatch");
    }

    RingPtr ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Polynomial> data_;
};

/// Exponent vectors with weighted degree exactly `deg`, ascending in grevlex.
inline std::vector<Monomial> monomials_of_weighted_degree(std::span<const int> weights, long deg) {
    std::vector<Monomial> out;
    if (deg < 0) return out;
    Monomial m(weights.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long left) {
        if (k == weights.size()) {
            if (left == 0) out.push_back(m);
            return;
        }
        if (weights[k] <= 0) throw std::invalid_argument("weights must be positive");
        for (int e = 0; static_cast<long>(e) * weights[k] <= left; ++e) {
            m[k] = e;
            rec(k + 1, left - static_cast<long>(e) * weights[k]);
        }
        m[k] = 0;
    };
    rec(0, deg);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return GrevlexGreater{}(b, a); });
    return out;
}

}  // namespace lgtft
