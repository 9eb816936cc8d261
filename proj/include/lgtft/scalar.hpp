// scalar.hpp
//
// Exact Gaussian rationals a + b*i with a, b in Q.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lgtft {

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}  // NOLINT: implicit integer promotion is intended
    Scalar(int v) : re_(v) {}   // NOLINT
    Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    /// Parses "p", "p/q" (signed integers) as a real rational.
    static Scalar rational(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0 || q.get_den() == 0)
            throw std::invalid_argument("invalid rational literal '" + text + "'");
        q.canonicalize();
        return Scalar(q);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero scalar");
        mpq_class n = norm();
        return Scalar(re_ / n, -im_ / n);
    }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text: "p/q", "p/q*i" or "a+b*i" (no spaces, no parentheses).
    std::string str() const {
        if (sgn(im_) == 0) return re_.get_str();
        std::string imag;
        if (im_ == 1)
            imag = "i";
        else if (im_ == -1)
            imag = "-i";
        else
            imag = im_.get_str() + "*i";
        if (sgn(re_) == 0) return imag;
        if (imag[0] == '-') return re_.get_str() + imag;
        return re_.get_str() + "+" + imag;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::string>{}(re_.get_str());
        return h ^ (std::hash<std::string>{}(im_.get_str()) * 1000003u);
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace lgtft
