// groebner.hpp
//
// Buchberger's algorithm in graded reverse lexicographic order, producing
// reduced monic bases, plus full normal-form reduction.

#pragma once

#include "lgtft/polynomial.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lgtft {

class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, std::vector<Polynomial> generators)
        : ring_(std::move(ring)), generators_(std::move(generators)) {}

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    static constexpr const char* order() { return "grevlex"; }

    bool is_unit_ideal() const {
        return generators_.size() == 1 && generators_.front().is_constant() && !generators_.front().is_zero();
    }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (const auto& g : generators_) out.push_back(g.leading_monomial());
        return out;
    }

private:
    RingPtr ring_;
    std::vector<Polynomial> generators_;
};

/// Remainder of p on division by `divisors`; fully reduced (no term divisible by a leading monomial).
inline Polynomial reduce(Polynomial p, const std::vector<Polynomial>& divisors) {
    Polynomial rem(p.ring());
    while (!p.is_zero()) {
        const Monomial lm = p.leading_monomial();
        const Scalar lc = p.leading_coefficient();
        bool divided = false;
        for (const auto& g : divisors) {
            if (g.is_zero() || !divides(g.leading_monomial(), lm)) continue;
            p -= g.mul_term(monomial_div(lm, g.leading_monomial()), lc / g.leading_coefficient());
            divided = true;
            break;
        }
        if (!divided) {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return rem;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = monomial_lcm(f.leading_monomial(), g.leading_monomial());
    return f.mul_term(monomial_div(l, f.leading_monomial()), f.leading_coefficient().inverse()) -
           g.mul_term(monomial_div(l, g.leading_monomial()), g.leading_coefficient().inverse());
}

inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    if (p.ring() && !(*p.ring() == *gb.ring())) throw std::invalid_argument("normal form: ring mismatch");
    return reduce(p, gb.generators());
}

/// Every S-polynomial reduces to zero.
inline bool satisfies_buchberger_criterion(const std::vector<Polynomial>& g) {
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b)
            if (!reduce(s_polynomial(g[a], g[b]), g).is_zero()) return false;
    return true;
}

namespace detail {

// Minimal, monic, and every tail reduced against the others.
inline std::vector<Polynomial> make_reduced(std::vector<Polynomial> g) {
    std::vector<Polynomial> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
            if (a == b) continue;
            const auto& la = g[a].leading_monomial();
            const auto& lb = g[b].leading_monomial();
            // keep the first of two equal leading monomials
            if (divides(lb, la) && (la != lb || b < a)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[a].monic());
    }
    std::vector<Polynomial> out;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<Polynomial> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        Polynomial head = Polynomial::monomial(minimal[a].ring(), minimal[a].leading_monomial());
        Polynomial tail = minimal[a] - head;
        out.push_back(head + reduce(tail, others));
    }
    std::sort(out.begin(), out.end(), [](const Polynomial& x, const Polynomial& y) {
        return GrevlexGreater{}(x.leading_monomial(), y.leading_monomial());
    });
    return out;
}

}  // namespace detail

inline GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators) {
    if (generators.empty()) throw std::invalid_argument("groebner basis of an empty generator list");
    RingPtr ring = generators.front().ring();
    for (const auto& g : generators)
        if (!g.ring() || !(*g.ring() == *ring)) throw std::invalid_argument("generators live in different rings");

    std::vector<Polynomial> basis;
    for (const auto& g : generators)
        if (!g.is_zero()) basis.push_back(g.monic());
    if (basis.empty()) return GroebnerBasis(ring, {});

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) pairs.emplace_back(a, b);

    while (!pairs.empty()) {
        auto [a, b] = pairs.front();
        pairs.pop_front();
        // product criterion
        if (coprime(basis[a].leading_monomial(), basis[b].leading_monomial())) continue;
        Polynomial r = reduce(s_polynomial(basis[a], basis[b]), basis);
        if (r.is_zero()) continue;
        if (r.is_constant()) {
            basis = {Polynomial(ring, Scalar(1))};
            break;
        }
        basis.push_back(r.monic());
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    for (const auto& g : basis)
        if (g.is_constant()) return GroebnerBasis(ring, {Polynomial(ring, Scalar(1))});

    auto reduced = detail::make_reduced(std::move(basis));
    if (!satisfies_buchberger_criterion(reduced)) throw std::logic_error("Buchberger criterion failed on result");
    return GroebnerBasis(ring, std::move(reduced));
}

/// True when `gb` is a reduced Groebner basis (Buchberger criterion, minimal, monic, tail
/// reduced) and every generator lies in the ideal it spans.
inline bool verify_groebner_basis(const GroebnerBasis& gb, const std::vector<Polynomial>& generators) {
    const auto& g = gb.generators();
    if (g.empty()) return false;
    for (const auto& p : g)
        if (p.is_zero() || !(*p.ring() == *gb.ring())) return false;
    if (!satisfies_buchberger_criterion(g)) return false;
    if (detail::make_reduced(g) != g) return false;
    for (const auto& p : generators)
        if (!reduce(p, g).is_zero()) return false;
    return true;
}

}  // namespace lgtft
