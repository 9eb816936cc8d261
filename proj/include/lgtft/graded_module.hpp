// graded_module.hpp
//
// Finite-dimensional slices of graded free modules over a polynomial ring, and
// the scalar matrices of polynomial-matrix maps restricted to those slices.

#pragma once

#include "lgtft/linalg.hpp"
#include "lgtft/poly_matrix.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lgtft {

/// Free module with generators e_g of degree shifts[g]; x^a e_g has degree wdeg(a) + shifts[g].
struct GradedFreeModule {
    std::vector<int> weights;
    std::vector<long> shifts;

    struct Element {
        std::size_t generator;
        Monomial monomial;
        friend bool operator<(const Element& a, const Element& b) {
            return a.generator != b.generator ? a.generator < b.generator : a.monomial < b.monomial;
        }
    };

    /// Basis of the homogeneous piece of degree m.
    std::vector<Element> piece(long m) const {
        std::vector<Element> out;
        for (std::size_t g = 0; g < shifts.size(); ++g)
            for (auto& a : monomials_of_weighted_degree(weights, m - shifts[g])) out.push_back({g, std::move(a)});
        return out;
    }

    /// Basis of everything of degree at most m.
    std::vector<Element> up_to(long m) const {
        std::vector<Element> out;
        for (std::size_t g = 0; g < shifts.size(); ++g)
            for (long d = 0; d + shifts[g] <= m; ++d)
                for (auto& a : monomials_of_weighted_degree(weights, d)) out.push_back({g, std::move(a)});
        return out;
    }
};

using SliceBasis = std::vector<GradedFreeModule::Element>;

/// Matrix of `map` (rows: target generators, cols: source generators) from the span of `src`
/// into the span of `dst`. Throws if an image leaves `dst`.
inline Matrix<Scalar> slice_matrix(const PolyMatrix& map, const SliceBasis& src, const SliceBasis& dst) {
    std::map<GradedFreeModule::Element, std::size_t> index;
    for (std::size_t k = 0; k < dst.size(); ++k) index.emplace(dst[k], k);
    Matrix<Scalar> out(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& [g, a] = src[c];
        for (std::size_t r = 0; r < map.rows(); ++r) {
            const auto& entry = map(r, g);
            for (const auto& [m, coef] : entry.terms()) {
                auto it = index.find({r, monomial_mul(m, a)});
                if (it == index.end()) throw std::logic_error("map does not preserve the chosen slice");
                out(it->second, c) += coef;
            }
        }
    }
    return out;
}

/// Polynomial vector (one entry per generator) from slice coordinates.
inline std::vector<Polynomial> slice_vector(const RingPtr& ring, std::size_t generators, const SliceBasis& basis,
                                            const std::vector<Scalar>& coords) {
    std::vector<Polynomial> out(generators, Polynomial(ring));
    for (std::size_t k = 0; k < basis.size(); ++k) out[basis[k].generator].add_term(basis[k].monomial, coords.at(k));
    return out;
}

/// Slice coordinates of a polynomial vector; nullopt if some term lies outside the slice.
inline std::optional<std::vector<Scalar>> slice_coordinates(const std::vector<Polynomial>& v, const SliceBasis& basis) {
    std::map<GradedFreeModule::Element, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
    std::vector<Scalar> out(basis.size());
    for (std::size_t g = 0; g < v.size(); ++g)
        for (const auto& [m, c] : v[g].terms()) {
            auto it = index.find({g, m});
            if (it == index.end()) return std::nullopt;
            out[it->second] = c;
        }
    return out;
}

}  // namespace lgtft
