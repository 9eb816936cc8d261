// koszul.hpp
//
// The Koszul complex of the contraction iota_W = -i (dW) on polyvector fields
// over C[x_1..x_d]:
//
//   0 -> wedge^d -> wedge^(d-1) -> ... -> wedge^1 -> O -> 0
//
// with wedge^p in homological degree k = -p, and its cohomology computed one
// internal degree at a time.

#pragma once

#include "lgtft/graded_module.hpp"
#include "lgtft/lg_pair.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

using IndexSet = std::vector<std::size_t>;

class KoszulComplex {
public:
    explicit KoszulComplex(LGPair lg) : lg_(std::move(lg)) {
        const auto d = lg_.dimension();
        wedges_.resize(d + 1);
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            IndexSet s;
            for (std::size_t k = 0; k < d; ++k)
                if (mask & (1u << k)) s.push_back(k);
            wedges_[s.size()].push_back(s);
        }
        for (auto& w : wedges_) std::sort(w.begin(), w.end());

        const Polynomial minus_i(lg_.ring(), -Scalar::i());
        auto grad = lg_.gradient();
        differentials_.resize(d + 1);
        for (std::size_t p = 1; p <= d; ++p) {
            PolyMatrix m(lg_.ring(), wedges_[p - 1].size(), wedges_[p].size());
            for (std::size_t c = 0; c < wedges_[p].size(); ++c) {
                const auto& set = wedges_[p][c];
                for (std::size_t s = 0; s < set.size(); ++s) {
                    IndexSet rest = set;
                    rest.erase(rest.begin() + static_cast<long>(s));
                    std::size_t r = index_of(p - 1, rest);
                    Polynomial entry = minus_i * grad[set[s]];
                    if (s % 2) entry = -entry;
                    m(r, c) += entry;
                }
            }
            differentials_[p] = std::move(m);
        }
        if (!squares_to_zero()) throw std::logic_error("iota_W does not square to zero");
    }

    const LGPair& lg() const { return lg_; }
    std::size_t dimension() const { return lg_.dimension(); }

    /// Lexicographically ordered index sets i_1 < ... < i_p spanning wedge^p.
    const std::vector<IndexSet>& wedge_basis(std::size_t p) const { return wedges_.at(p); }

    /// Matrix of iota_W : wedge^p -> wedge^(p-1), for 1 <= p <= d.
    const PolyMatrix& differential(std::size_t p) const {
        if (p == 0 || p > dimension()) throw std::out_of_range("no Koszul differential out of wedge^" + std::to_string(p));
        return differentials_[p];
    }

    bool squares_to_zero() const {
        for (std::size_t p = 2; p <= dimension(); ++p)
            if (!(differentials_[p - 1] * differentials_[p]).is_zero()) return false;
        return true;
    }

    std::string wedge_label(std::size_t p, std::size_t idx) const {
        const auto& set = wedges_.at(p).at(idx);
        if (set.empty()) return "1";
        std::string s;
        for (std::size_t k = 0; k < set.size(); ++k) {
            if (k) s += "^";
            s += "d" + lg_.ring()->name(set[k]);
        }
        return s;
    }

    std::size_t index_of(std::size_t p, const IndexSet& set) const {
        const auto& w = wedges_.at(p);
        auto it = std::lower_bound(w.begin(), w.end(), set);
        if (it == w.end() || *it != set) throw std::logic_error("index set not in wedge basis");
        return static_cast<std::size_t>(it - w.begin());
    }

    /// Grading used for cohomology: exact weights when W is quasi-homogeneous, else a
    /// total-degree filtration with d/dx_i weighted by deg(dW/dx_i).
    bool is_graded() const { return lg_.grading().has_value(); }

    GradedFreeModule module(std::size_t p) const {
        const auto d = dimension();
        GradedFreeModule mod;
        std::vector<long> vector_weight(d);
        if (auto g = lg_.grading()) {
            mod.weights = *g;
            long big = lg_.weighted_degree_of_W();
            for (std::size_t k = 0; k < d; ++k) vector_weight[k] = big - (*g)[k];
        } else {
            mod.weights.assign(d, 1);
            auto grad = lg_.gradient();
            for (std::size_t k = 0; k < d; ++k) vector_weight[k] = std::max(grad[k].degree(), 0);
        }
        for (const auto& set : wedges_.at(p)) {
            long s = 0;
            for (auto k : set) s += vector_weight[k];
            mod.shifts.push_back(s);
        }
        return mod;
    }

    SliceBasis slice(std::size_t p, long m) const { return is_graded() ? module(p).piece(m) : module(p).up_to(m); }

    Matrix<Scalar> slice_differential(std::size_t p, long m) const {
        return slice_matrix(differential(p), slice(p, m), slice(p - 1, m));
    }

private:
    LGPair lg_;
    std::vector<std::vector<IndexSet>> wedges_;
    std::vector<PolyMatrix> differentials_;
};

inline KoszulComplex contraction_iota(const LGPair& lg) { return KoszulComplex(lg); }

/// dims[p][m]: dimension of H^{-p} in internal degree m (graded), or of the cohomology of the
/// subcomplex of internal degree <= m (filtered).
struct GradedDimensionTable {
    bool graded = true;
    long degree_bound = 0;
    std::vector<int> weights;
    std::vector<std::vector<std::size_t>> dims;
    std::vector<bool> stabilized;
    std::string note;

    std::size_t dim(int k, long m) const { return dims.at(static_cast<std::size_t>(-k)).at(static_cast<std::size_t>(m)); }

    /// Total dimension of H^k seen within the bound.
    std::size_t total(int k) const {
        const auto& row = dims.at(static_cast<std::size_t>(-k));
        if (!graded) return row.empty() ? 0 : row.back();
        std::size_t t = 0;
        for (auto v : row) t += v;
        return t;
    }
};

inline GradedDimensionTable koszul_cohomology(const KoszulComplex& complex, long degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be non-negative");
    const auto d = complex.dimension();
    GradedDimensionTable table;
    table.graded = complex.is_graded();
    table.degree_bound = degree_bound;
    table.weights = complex.module(0).weights;
    table.dims.assign(d + 1, std::vector<std::size_t>(static_cast<std::size_t>(degree_bound) + 1, 0));
    for (long m = 0; m <= degree_bound; ++m) {
        // ranks[p] = rank of iota out of wedge^p in this slice
        std::vector<std::size_t> ranks(d + 2, 0), sizes(d + 1, 0);
        for (std::size_t p = 0; p <= d; ++p) sizes[p] = complex.slice(p, m).size();
        for (std::size_t p = 1; p <= d; ++p) ranks[p] = rank(complex.slice_differential(p, m));
        for (std::size_t p = 0; p <= d; ++p)
            table.dims[p][static_cast<std::size_t>(m)] = sizes[p] - ranks[p] - ranks[p + 1];
    }
    table.stabilized.assign(d + 1, true);
    if (!table.graded) {
        for (std::size_t p = 0; p <= d; ++p) {
            const auto& row = table.dims[p];
            table.stabilized[p] = row.size() >= 3 && row[row.size() - 1] == row[row.size() - 2] &&
                                  row[row.size() - 2] == row[row.size() - 3];
        }
        table.note = "W is not quasi-homogeneous: dimensions are of the total-degree filtration F_m, "
                     "and 'stabilized' means unchanged over the last two degrees (heuristic)";
    }
    return table;
}

inline GradedDimensionTable koszul_cohomology(const LGPair& lg, long degree_bound) {
    return koszul_cohomology(KoszulComplex(lg), degree_bound);
}

/// A cocycle of wedge^p (k = -p) in one internal degree that is not a boundary there.
struct KoszulWitness {
    int k = 0;
    long internal_degree = 0;
    std::vector<Polynomial> components;  // coefficients on wedge_basis(-k)
};

struct VanishingResult {
    bool vanishes = true;
    std::optional<KoszulWitness> witness;
};

inline bool verify_koszul_witness(const KoszulComplex& complex, const KoszulWitness& w) {
    const auto p = static_cast<std::size_t>(-w.k);
    if (p == 0 || p > complex.dimension()) return false;
    if (w.components.size() != complex.wedge_basis(p).size()) return false;
    // cocycle as a polynomial identity
    const auto& iota = complex.differential(p);
    for (std::size_t r = 0; r < iota.rows(); ++r) {
        Polynomial s(complex.lg().ring());
        for (std::size_t c = 0; c < iota.cols(); ++c) s += iota(r, c) * w.components[c];
        if (!s.is_zero()) return false;
    }
    auto basis = complex.slice(p, w.internal_degree);
    auto coords = slice_coordinates(w.components, basis);
    if (!coords) return false;
    if (p == complex.dimension()) return std::any_of(coords->begin(), coords->end(), [](const Scalar& s) { return !s.is_zero(); });
    // not in the span of the boundaries of this slice
    auto incoming = complex.slice_differential(p + 1, w.internal_degree);
    Matrix<Scalar> extended(incoming.rows(), incoming.cols() + 1);
    for (std::size_t r = 0; r < incoming.rows(); ++r) {
        for (std::size_t c = 0; c < incoming.cols(); ++c) extended(r, c) = incoming(r, c);
        extended(r, incoming.cols()) = (*coords)[r];
    }
    return rank(extended) > rank(incoming);
}

inline VanishingResult check_vanishing_negative_degrees(const KoszulComplex& complex, long degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be non-negative");
    const auto d = complex.dimension();
    for (long m = 0; m <= degree_bound; ++m) {
        // ranks[p] = rank of iota out of wedge^p in this slice
        std::vector<Matrix<Scalar>> outgoing(d + 1);
        std::vector<std::size_t> ranks(d + 2, 0);
        for (std::size_t p = 1; p <= d; ++p) {
            outgoing[p] = complex.slice_differential(p, m);
            ranks[p] = rank(outgoing[p]);
        }
        for (std::size_t p = 1; p <= d; ++p) {
            const auto& out = outgoing[p];
            const std::size_t boundary_rank = ranks[p + 1];
            if (out.cols() - ranks[p] == boundary_rank) continue;
            auto kernel = null_space(out);
            auto basis = complex.slice(p, m);
            Matrix<Scalar> span = p < d ? outgoing[p + 1] : Matrix<Scalar>(basis.size(), 0);
            for (const auto& v : kernel) {
                Matrix<Scalar> extended(span.rows(), span.cols() + 1);
                for (std::size_t r = 0; r < span.rows(); ++r) {
                    for (std::size_t c = 0; c < span.cols(); ++c) extended(r, c) = span(r, c);
                    extended(r, span.cols()) = v[r];
                }
                if (rank(extended) == boundary_rank) continue;
                KoszulWitness w{-static_cast<int>(p), m,
                                slice_vector(complex.lg().ring(), complex.wedge_basis(p).size(), basis, v)};
                if (!verify_koszul_witness(complex, w)) throw std::logic_error("Koszul witness failed re-verification");
                return {false, std::move(w)};
            }
        }
    }
    return {true, std::nullopt};
}

inline VanishingResult check_vanishing_negative_degrees(const LGPair& lg, long degree_bound) {
    return check_vanishing_negative_degrees(KoszulComplex(lg), degree_bound);
}

}  // namespace lgtft
