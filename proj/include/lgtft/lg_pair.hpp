// lg_pair.hpp
//
// A polynomial superpotential W on C^d, optionally with quasi-homogeneous weights.

#pragma once

#include "lgtft/parser.hpp"
#include "lgtft/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

class LGPair {
public:
    LGPair(Polynomial w, std::optional<std::vector<int>> weights = std::nullopt)
        : w_(std::move(w)), weights_(std::move(weights)) {
        if (!w_.ring() || w_.nvars() == 0) throw std::invalid_argument("LG pair needs at least one variable");
        if (w_.is_constant()) throw std::invalid_argument("superpotential must be non-constant");
        if (weights_) {
            if (weights_->size() != w_.nvars()) throw std::invalid_argument("one weight per variable is required");
            for (int q : *weights_)
                if (q <= 0) throw std::invalid_argument("weights must be positive integers");
            if (!w_.is_homogeneous(*weights_))
                throw std::invalid_argument("W is not quasi-homogeneous for the given weights");
        }
    }

    static LGPair parse(const std::string& w, std::vector<std::string> variables,
                        std::optional<std::vector<int>> weights = std::nullopt) {
        return LGPair(parse_polynomial(w, make_ring(std::move(variables))), std::move(weights));
    }

    const Polynomial& W() const { return w_; }
    const RingPtr& ring() const { return w_.ring(); }
    std::size_t dimension() const { return w_.nvars(); }
    int signature() const { return static_cast<int>(dimension() % 2); }
    const std::optional<std::vector<int>>& weights() const { return weights_; }

    /// Declared weights, or all-ones when W is homogeneous in the standard grading.
    std::optional<std::vector<int>> grading() const {
        if (weights_) return weights_;
        std::vector<int> ones(dimension(), 1);
        if (w_.is_homogeneous(ones)) return ones;
        return std::nullopt;
    }

    /// Weighted degree of W under grading(); requires a grading.
    long weighted_degree_of_W() const {
        auto g = grading();
        if (!g) throw std::logic_error("W has no quasi-homogeneous grading");
        return weighted_degree(w_.leading_monomial(), *g);
    }

    std::vector<Polynomial> gradient() const {
        std::vector<Polynomial> out;
        for (std::size_t k = 0; k < dimension(); ++k) out.push_back(w_.partial_derivative(k));
        return out;
    }

private:
    Polynomial w_;
    std::optional<std::vector<int>> weights_;
};

}  // namespace lgtft
