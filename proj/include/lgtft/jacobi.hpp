// jacobi.hpp
//
// The Jacobi algebra C[x]/(dW/dx_1, ..., dW/dx_d), its Milnor number, and the
// residue trace on it.

#pragma once

#include "lgtft/groebner.hpp"
#include "lgtft/lg_pair.hpp"
#include "lgtft/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgtft {

/// Raised when the critical locus of W is not a finite set of points.
class NonIsolatedCriticalSet : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline GroebnerBasis jacobian_ideal_basis(const LGPair& lg) { return groebner_basis(lg.gradient()); }

/// True iff every variable has a pure power among the leading monomials (or the ideal is the unit ideal).
inline bool has_finite_staircase(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return true;
    std::size_t n = gb.ring()->size();
    for (std::size_t k = 0; k < n; ++k) {
        bool found = false;
        for (const auto& lm : gb.leading_monomials()) {
            bool pure = lm[k] > 0;
            for (std::size_t l = 0; l < n && pure; ++l)
                if (l != k && lm[l] != 0) pure = false;
            found = found || pure;
        }
        if (!found) return false;
    }
    return true;
}

inline bool is_critical_set_finite(const LGPair& lg) { return has_finite_staircase(jacobian_ideal_basis(lg)); }

/// Monomials outside the leading-term ideal, ascending in grevlex. Requires a finite staircase.
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& gb) {
    if (gb.is_unit_ideal()) return {};
    if (!has_finite_staircase(gb)) throw NonIsolatedCriticalSet("staircase is infinite");
    std::size_t n = gb.ring()->size();
    std::vector<int> bound(n, 0);
    for (const auto& lm : gb.leading_monomials())
        for (std::size_t k = 0; k < n; ++k) {
            bool pure = true;
            for (std::size_t l = 0; l < n; ++l)
                if (l != k && lm[l] != 0) pure = false;
            if (pure && lm[k] > 0) bound[k] = bound[k] == 0 ? lm[k] : std::min(bound[k], lm[k]);
        }
    auto lms = gb.leading_monomials();
    std::vector<Monomial> out;
    Monomial m(n, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == n) {
            for (const auto& lm : lms)
                if (divides(lm, m)) return;
            out.push_back(m);
            return;
        }
        for (int e = 0; e < bound[k]; ++e) {
            m[k] = e;
            walk(k + 1);
        }
        m[k] = 0;
    };
    walk(0);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return GrevlexGreater{}(b, a); });
    return out;
}

class JacobiAlgebra {
public:
    JacobiAlgebra(GroebnerBasis gb) : gb_(std::move(gb)), basis_(standard_monomials(gb_)) {
        const auto n = basis_.size();
        table_.assign(n, std::vector<std::vector<Scalar>>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                table_[a][b] = coordinates(Polynomial::monomial(gb_.ring(), monomial_mul(basis_[a], basis_[b])));
                table_[b][a] = table_[a][b];
            }
    }

    const GroebnerBasis& groebner() const { return gb_; }
    const RingPtr& ring() const { return gb_.ring(); }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    std::size_t unit_index() const {
        if (basis_.empty()) throw std::logic_error("the zero algebra has no unit");
        return 0;
    }

    /// Product of basis elements a and b in basis coordinates.
    const std::vector<Scalar>& product(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }

    std::vector<Scalar> coordinates(const Polynomial& p) const {
        Polynomial nf = normal_form(p, gb_);
        std::vector<Scalar> v(basis_.size());
        for (const auto& [m, c] : nf.terms()) {
            auto it = std::find(basis_.begin(), basis_.end(), m);
            if (it == basis_.end()) throw std::logic_error("normal form left the standard monomials");
            v[static_cast<std::size_t>(it - basis_.begin())] = c;
        }
        return v;
    }

    Polynomial element(const std::vector<Scalar>& coords) const {
        Polynomial p(gb_.ring());
        for (std::size_t k = 0; k < basis_.size(); ++k) p.add_term(basis_[k], coords.at(k));
        return p;
    }

    std::vector<Scalar> multiply(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
        std::vector<Scalar> out(basis_.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (u[a].is_zero()) continue;
            for (std::size_t b = 0; b < v.size(); ++b) {
                if (v[b].is_zero()) continue;
                Scalar s = u[a] * v[b];
                const auto& t = table_[a][b];
                for (std::size_t c = 0; c < t.size(); ++c)
                    if (!t[c].is_zero()) out[c] += s * t[c];
            }
        }
        return out;
    }

    bool is_commutative() const {
        for (std::size_t a = 0; a < dimension(); ++a)
            for (std::size_t b = 0; b < dimension(); ++b)
                if (coordinates(Polynomial::monomial(ring(), monomial_mul(basis_[a], basis_[b]))) != table_[b][a])
                    return false;
        return true;
    }

    bool is_associative() const {
        const auto n = dimension();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    auto left = multiply(table_[a][b], unit_vector(c));
                    auto right = multiply(unit_vector(a), table_[b][c]);
                    if (left != right) return false;
                }
        return true;
    }

    bool is_unital() const {
        if (basis_.empty()) return true;
        for (std::size_t a = 0; a < dimension(); ++a)
            if (table_[unit_index()][a] != unit_vector(a)) return false;
        return true;
    }

    std::vector<Scalar> unit_vector(std::size_t k) const {
        std::vector<Scalar> v(dimension());
        v.at(k) = Scalar(1);
        return v;
    }

private:
    GroebnerBasis gb_;
    std::vector<Monomial> basis_;
    std::vector<std::vector<std::vector<Scalar>>> table_;
};

/// Jacobi algebra from an already computed basis of the Jacobian ideal.
inline JacobiAlgebra jacobi_algebra(const LGPair& lg, GroebnerBasis gb) {
    if (!has_finite_staircase(gb))
        throw NonIsolatedCriticalSet("critical set of W = " + lg.W().str() +
                                     " is not finite; inspect Koszul cohomology in negative degrees instead");
    return JacobiAlgebra(std::move(gb));
}

inline JacobiAlgebra jacobi_algebra(const LGPair& lg) { return jacobi_algebra(lg, jacobian_ideal_basis(lg)); }

inline std::size_t milnor_number(const LGPair& lg) { return jacobi_algebra(lg).dimension(); }

/// Hessian determinant det(d^2 W / dx_i dx_j), by permutation expansion.
inline Polynomial hessian_determinant(const LGPair& lg) {
    const auto d = lg.dimension();
    auto grad = lg.gradient();
    std::vector<std::vector<Polynomial>> h(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) h[r].push_back(grad[r].partial_derivative(c));
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial det(lg.ring());
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) inversions += perm[a] > perm[b];
        Polynomial term(lg.ring(), Scalar(inversions % 2 ? -1 : 1));
        for (std::size_t r = 0; r < d && !term.is_zero(); ++r) term *= h[r][perm[r]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Linear functional on the Jacobi algebra, given by its values on the basis.
struct ResidueTrace {
    std::vector<Scalar> values;
    Scalar normalization{1};

    Scalar operator()(const std::vector<Scalar>& coords) const {
        Scalar s;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (!coords.at(k).is_zero()) s += values[k] * coords[k];
        return s;
    }

    Matrix<Scalar> gram(const JacobiAlgebra& jac) const {
        const auto n = jac.dimension();
        Matrix<Scalar> g(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) g(a, b) = (*this)(jac.product(a, b));
        return g;
    }
};

namespace detail {

inline std::vector<std::string> fresh_names(const Ring& ring, const std::string& stem) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < ring.size(); ++k) {
        std::string name = stem + std::to_string(k);
        while (ring.index_of(name) >= 0) name = "_" + name;
        out.push_back(name);
    }
    return out;
}

}  // namespace detail

/// Global Grothendieck residue Res[g dx / (d_1 W ... d_d W)] on every basis monomial.
///
/// The Bezoutian of the gradient, reduced modulo the Jacobian ideal in both sets
/// of variables, has coefficient matrix C with C * G = 1 where G is the residue
/// Gram matrix on the monomial basis. The residue of basis element b is G(b, 1).
inline std::vector<Scalar> grothendieck_residues(const JacobiAlgebra& jac, const LGPair& lg) {
    const auto d = lg.dimension();
    const auto mu = jac.dimension();
    auto yvars = detail::fresh_names(*lg.ring(), "y");
    std::vector<std::string> all = lg.ring()->variables();
    all.insert(all.end(), yvars.begin(), yvars.end());
    RingPtr ring2 = make_ring(all);

    // entry (i, j): divided difference of d_i W in slot j, with slots < j already in y
    auto grad = lg.gradient();
    std::vector<std::vector<Polynomial>> bez(d, std::vector<Polynomial>(d, Polynomial(ring2)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& [e, c] : grad[i].terms()) {
                if (e[j] == 0) continue;
                Monomial base(2 * d, 0);
                for (std::size_t l = 0; l < d; ++l) {
                    if (l < j) base[d + l] = e[l];
                    if (l > j) base[l] = e[l];
                }
                for (int a = 0; a < e[j]; ++a) {
                    Monomial m = base;
                    m[j] += a;
                    m[d + j] += e[j] - 1 - a;
                    bez[i][j].add_term(m, c);
                }
            }

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial delta(ring2);
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b) inversions += perm[a] > perm[b];
        Polynomial term(ring2, Scalar(inversions % 2 ? -1 : 1));
        for (std::size_t r = 0; r < d && !term.is_zero(); ++r) term *= bez[r][perm[r]];
        delta += term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::size_t> to_x(d), to_y(d);
    std::iota(to_x.begin(), to_x.end(), 0);
    std::iota(to_y.begin(), to_y.end(), d);
    std::vector<Polynomial> both;
    for (const auto& g : jac.groebner().generators()) {
        both.push_back(g.embed(ring2, to_x));
        both.push_back(g.embed(ring2, to_y));
    }
    Polynomial reduced = reduce(delta, both);

    Matrix<Scalar> coeff(mu, mu);
    const auto& basis = jac.basis();
    for (const auto& [m, c] : reduced.terms()) {
        Monomial mx(m.begin(), m.begin() + static_cast<long>(d));
        Monomial my(m.begin() + static_cast<long>(d), m.end());
        auto ix = std::find(basis.begin(), basis.end(), mx);
        auto iy = std::find(basis.begin(), basis.end(), my);
        if (ix == basis.end() || iy == basis.end()) throw std::logic_error("Bezoutian did not reduce to standard monomials");
        coeff(static_cast<std::size_t>(ix - basis.begin()), static_cast<std::size_t>(iy - basis.begin())) = c;
    }
    auto gram = inverse(coeff);
    if (!gram) throw std::domain_error("Bezoutian coefficient matrix is singular");
    std::vector<Scalar> res(mu);
    for (std::size_t b = 0; b < mu; ++b) res[b] = (*gram)(b, jac.unit_index());
    return res;
}

/// Trace = normalization * residue; with normalization 1, Tr([hess W]) = mu.
inline ResidueTrace residue_trace(const JacobiAlgebra& jac, const LGPair& lg, const Scalar& normalization = Scalar(1)) {
    if (jac.dimension() == 0) throw std::domain_error("residue trace on the zero algebra is undefined");
    if (normalization.is_zero()) throw std::domain_error("trace normalization must be nonzero");
    ResidueTrace tr;
    tr.normalization = normalization;
    tr.values = grothendieck_residues(jac, lg);
    for (auto& v : tr.values) v *= normalization;

    Scalar hess = tr(jac.coordinates(hessian_determinant(lg)));
    if (hess != normalization * Scalar(static_cast<long>(jac.dimension())))
        throw std::logic_error("residue of the Hessian differs from the Milnor number");
    if (!inverse(tr.gram(jac))) throw std::domain_error("residue pairing is degenerate");
    return tr;
}

}  // namespace lgtft
