// polynomial.hpp
//
// Sparse multivariate polynomials over the Gaussian rationals. Terms are kept
// in a map ordered by graded reverse lexicographic order, leading term first.

#pragma once

#include "lgtft/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline long weighted_degree(const Monomial& m, std::span<const int> weights) {
    long d = 0;
    for (std::size_t k = 0; k < m.size(); ++k) d += static_cast<long>(m[k]) * weights[k];
    return d;
}

/// Strict "a comes before b" in graded reverse lexicographic order, largest first.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        for (std::size_t k = a.size(); k-- > 0;) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    }
};

inline bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

inline Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
    return r;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline Monomial monomial_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

/// An ordered list of variable names; polynomials over equal rings interoperate.
class Ring {
public:
    explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            const auto& v = vars_[k];
            bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
            for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
            if (!ok) throw std::invalid_argument("invalid variable name '" + v + "'");
            if (v == "i") throw std::invalid_argument("'i' is reserved for the imaginary unit");
            if (std::find(vars_.begin(), vars_.begin() + static_cast<long>(k), v) != vars_.begin() + static_cast<long>(k))
                throw std::invalid_argument("duplicate variable name '" + v + "'");
        }
    }

    std::size_t size() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& name(std::size_t k) const { return vars_.at(k); }

    int index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.vars_ == b.vars_; }

private:
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) { return std::make_shared<const Ring>(std::move(vars)); }

class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, GrevlexGreater>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    Polynomial(RingPtr ring, const Scalar& c) : ring_(std::move(ring)) {
        if (!c.is_zero()) terms_.emplace(Monomial(ring_->size(), 0), c);
    }

    static Polynomial monomial(RingPtr ring, Monomial m, Scalar c = Scalar(1)) {
        if (m.size() != ring->size()) throw std::invalid_argument("exponent vector length does not match ring");
        for (int e : m)
            if (e < 0) throw std::invalid_argument("negative exponent");
        Polynomial p(std::move(ring));
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    static Polynomial variable(RingPtr ring, std::size_t k) {
        Monomial m(ring->size(), 0);
        m.at(k) = 1;
        return monomial(std::move(ring), std::move(m));
    }

    const RingPtr& ring() const { return ring_; }
    std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }

    Scalar constant_term() const {
        auto it = terms_.find(Monomial(nvars(), 0));
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
        return terms_.begin()->first;
    }
    const Scalar& leading_coefficient() const {
        if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return terms_.begin()->second;
    }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
        return d;
    }

    bool is_homogeneous(std::span<const int> weights) const {
        if (terms_.empty()) return true;
        long d = weighted_degree(terms_.begin()->first, weights);
        for (const auto& [m, c] : terms_)
            if (weighted_degree(m, weights) != d) return false;
        return true;
    }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        adopt_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
    friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.ring_ ? a.ring_ : b.ring_);
        a.check_ring(b);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Multiplies by c * x^m.
    Polynomial mul_term(const Monomial& m, const Scalar& c) const {
        Polynomial r(ring_);
        if (c.is_zero()) return r;
        for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), monomial_mul(mm, m), cc * c);
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r(ring_, Scalar(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1u) r *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return r;
    }

    Polynomial partial_derivative(std::size_t k) const {
        if (k >= nvars()) throw std::out_of_range("partial derivative index out of range");
        Polynomial r(ring_);
        for (const auto& [m, c] : terms_) {
            if (m[k] == 0) continue;
            Monomial d = m;
            d[k] -= 1;
            r.add_term(d, c * Scalar(m[k]));
        }
        return r;
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        if (point.size() != nvars()) throw std::invalid_argument("evaluation point has wrong dimension");
        Scalar total;
        for (const auto& [m, c] : terms_) {
            Scalar t = c;
            for (std::size_t k = 0; k < m.size(); ++k)
                for (int e = 0; e < m[k]; ++e) t *= point[k];
            total += t;
        }
        return total;
    }

    /// Scales so that the leading coefficient is 1.
    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * leading_coefficient().inverse();
    }

    /// Reinterprets in `target`, sending variable k to target variable index_map[k].
    Polynomial embed(const RingPtr& target, std::span<const std::size_t> index_map) const {
        Polynomial r(target);
        for (const auto& [m, c] : terms_) {
            Monomial t(target->size(), 0);
            for (std::size_t k = 0; k < m.size(); ++k) t[index_map[k]] += m[k];
            r.add_term(t, c);
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.ring_ && b.ring_ && !(*a.ring_ == *b.ring_)) return false;
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Canonical text in grevlex order, e.g. "x^3 + (1+2*i)*x*y - 1/2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            bool negative = sgn(c.im()) == 0 ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0);
            Scalar mag = negative ? -c : c;
            if (first)
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            first = false;
            std::string mono = monomial_str(m);
            if (mono.empty()) {
                out += mag.is_real() ? mag.str() : "(" + mag.str() + ")";
            } else if (mag.is_one()) {
                out += mono;
            } else if (mag.is_real() || sgn(mag.re()) == 0) {
                out += mag.str() + "*" + mono;
            } else {
                out += "(" + mag.str() + ")*" + mono;
            }
        }
        return out;
    }

    std::string monomial_str(const Monomial& m) const {
        std::string s;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += ring_->name(k);
            if (m[k] > 1) s += "^" + std::to_string(m[k]);
        }
        return s;
    }

private:
    void check_ring(const Polynomial& o) const {
        if (ring_ && o.ring_ && ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw std::invalid_argument("ring mismatch");
    }
    void adopt_ring(const Polynomial& o) {
        check_ring(o);
        if (!ring_) ring_ = o.ring_;
    }

    RingPtr ring_;
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

}  // namespace lgtft
