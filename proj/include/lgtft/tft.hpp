// tft.hpp
//
// The open/closed TFT datum of an LG pair with finitely many branes: the bulk
// Frobenius algebra (Jacobi algebra with its residue trace), the brane
// category with composition tensors, bulk-boundary maps e_a(h) = [h id],
// residue boundary traces, the adjoint boundary-bulk maps, and a clause by
// clause verifier that records a witness for each failure.

#pragma once

#include "lgtft/jacobi.hpp"
#include "lgtft/matfact.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lgtft {

/// Jacobi algebra with the residue trace Tr = bulk_normalization * Res.
class BulkAlgebra {
public:
    BulkAlgebra(const LGPair& lg, const Scalar& normalization)
        : jac_(jacobi_algebra(lg)), trace_(residue_trace(jac_, lg, normalization)),
          residues_(grothendieck_residues(jac_, lg)) {}

    const JacobiAlgebra& algebra() const { return jac_; }
    const ResidueTrace& trace() const { return trace_; }
    std::size_t dimension() const { return jac_.dimension(); }
    Polynomial element(std::size_t k) const { return jac_.element(jac_.unit_vector(k)); }

    Scalar Tr(const std::vector<Scalar>& coords) const { return trace_(coords); }

    /// Res[p / (dW/dx_1 ... dW/dx_d)], independent of the bulk normalization.
    Scalar residue(const Polynomial& p) const {
        auto c = jac_.coordinates(p);
        Scalar s;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!c[k].is_zero()) s += c[k] * residues_[k];
        return s;
    }

private:
    JacobiAlgebra jac_;
    ResidueTrace trace_;
    std::vector<Scalar> residues_;
};

/// Finite brane list with all Hom cohomologies and composition tensors in their bases.
class BraneCategory {
public:
    BraneCategory(std::vector<Brane> objects, std::optional<long> degree_bound) : objects_(std::move(objects)) {
        for (const auto& a : objects_) {
            if (!same_superpotential(a->lg(), objects_.front()->lg()))
                throw std::invalid_argument("branes factorize different superpotentials");
            if (!a->weights2()) throw std::invalid_argument("brane '" + a->name() + "' is not graded");
        }
        for (const auto& a : objects_) {
            homs_.emplace_back();
            for (const auto& b : objects_) homs_.back().push_back(hom_cohomology(a, b, degree_bound));
        }
    }

    std::size_t size() const { return objects_.size(); }
    const Brane& object(std::size_t a) const { return objects_.at(a); }
    const HomCohomology& hom(std::size_t a, std::size_t b) const { return homs_.at(a).at(b); }

    /// Coordinates of g o f in Hom(a, c) for basis f = i of Hom(a, b) and g = j of Hom(b, c).
    const std::vector<Scalar>& compose(std::size_t a, std::size_t b, std::size_t c, std::size_t i, std::size_t j) const {
        auto key = std::make_tuple(a, b, c, i, j);
        auto it = composition_.find(key);
        if (it != composition_.end()) return it->second;
        auto g = hom(b, c).representative(j), f = hom(a, b).representative(i);
        return composition_.emplace(key, hom(a, c).coordinates(g * f)).first->second;
    }

    /// Extends compose() bilinearly to coordinate vectors.
    std::vector<Scalar> compose(std::size_t a, std::size_t b, std::size_t c, const std::vector<Scalar>& f,
                                const std::vector<Scalar>& g) const {
        std::vector<Scalar> out(hom(a, c).basis().size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i].is_zero()) continue;
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (g[j].is_zero()) continue;
                const auto& v = compose(a, b, c, i, j);
                for (std::size_t k = 0; k < out.size(); ++k) out[k] += f[i] * g[j] * v[k];
            }
        }
        return out;
    }

    const std::vector<Scalar>& unit(std::size_t a) const {
        auto it = units_.find(a);
        if (it != units_.end()) return it->second;
        return units_.emplace(a, hom(a, a).coordinates(PolyMatrix::identity(object(a)->lg().ring(), object(a)->rank())))
            .first->second;
    }

private:
    std::vector<Brane> objects_;
    std::vector<std::vector<HomCohomology>> homs_;
    mutable std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>, std::vector<Scalar>>
        composition_;
    mutable std::map<std::size_t, std::vector<Scalar>> units_;
};

struct TFTOptions {
    std::optional<long> degree_bound;
    std::optional<Scalar> c_d;  // boundary trace constant, 1/d! when unset
    Scalar bulk_normalization{1};
};

inline Scalar inverse_factorial(std::size_t d) {
    mpz_class f = 1;
    for (std::size_t k = 2; k <= d; ++k) f *= static_cast<unsigned long>(k);
    return Scalar(mpq_class(mpz_class(1), f));
}

class TFTDatum {
public:
    TFTDatum(LGPair lg, std::vector<Brane> branes, TFTOptions options = {})
        : lg_(std::move(lg)), branes_(std::move(branes), options.degree_bound),
          c_d_(options.c_d ? *options.c_d : inverse_factorial(lg_.dimension())), mu_(lg_.signature()) {
        for (std::size_t a = 0; a < branes_.size(); ++a)
            if (!same_superpotential(branes_.object(a)->lg(), lg_))
                throw std::invalid_argument("brane does not factorize W");
        try {
            bulk_.emplace(lg_, options.bulk_normalization);
        } catch (const NonIsolatedCriticalSet& e) {
            bulk_note_ = e.what();
        } catch (const std::domain_error& e) {
            bulk_note_ = e.what();
        }
        for (std::size_t a = 0; a < branes_.size(); ++a) kernels_.push_back(trace_kernel(*branes_.object(a)));
    }

    const LGPair& lg() const { return lg_; }
    const BraneCategory& branes() const { return branes_; }
    bool has_bulk_pairing() const { return bulk_.has_value(); }
    const BulkAlgebra& bulk() const {
        if (!bulk_) throw std::domain_error("bulk pairing unavailable: " + bulk_note_);
        return *bulk_;
    }
    const std::string& bulk_note() const { return bulk_note_; }
    const Scalar& c_d() const { return c_d_; }
    int trace_parity() const { return mu_; }

    /// e_a(h_k) as coordinates in the End(a) basis.
    std::vector<Scalar> bulk_boundary(std::size_t a, std::size_t k) const {
        const auto& obj = branes_.object(a);
        return branes_.hom(a, a).coordinates(PolyMatrix::scalar(bulk().element(k), obj->rank()));
    }

    /// c_d Res[str(t * sum_s sgn(s) d_s1 D ... d_sd D) / (dW/dx_1 ... dW/dx_d)] on a representative.
    Scalar boundary_trace(std::size_t a, const PolyMatrix& t) const {
        const auto& obj = branes_.object(a);
        if (obj->rank() == 0) return Scalar(0);
        PolyMatrix m = t * kernels_.at(a);
        Polynomial s(lg_.ring());
        for (std::size_t k = 0; k < obj->rank(); ++k) {
            if (obj->parity(k)) s -= m(k, k);
            else s += m(k, k);
        }
        return c_d_ * bulk().residue(s);
    }

    Scalar boundary_trace(std::size_t a, const std::vector<Scalar>& coords) const {
        return coords.empty() ? Scalar(0) : boundary_trace(a, branes_.hom(a, a).combination(coords));
    }

    /// f_a(t): the bulk coordinates y with Tr(h_k y) = tr_a(e_a(h_k) t) for every basis h_k.
    std::vector<Scalar> boundary_bulk(std::size_t a, const PolyMatrix& t) const {
        const auto& B = bulk();
        const auto n = B.dimension();
        std::vector<Scalar> rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = boundary_trace(a, B.element(k) * t);
        auto y = solve(B.trace().gram(B.algebra()), rhs);
        if (!y) throw std::domain_error("bulk pairing is degenerate");
        return *y;
    }

    /// <t1, t2> = tr_b(t1 o t2) for basis t1 of Hom(a, b) and t2 of Hom(b, a).
    Matrix<Scalar> pairing(std::size_t a, std::size_t b) const {
        const auto& hab = branes_.hom(a, b);
        const auto& hba = branes_.hom(b, a);
        Matrix<Scalar> p(hab.basis().size(), hba.basis().size());
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) = boundary_trace(b, branes_.compose(b, a, b, j, i));
        return p;
    }

private:
    PolyMatrix trace_kernel(const MatrixFactorization& obj) const {
        const auto d = lg_.dimension();
        PolyMatrix out(lg_.ring(), obj.rank(), obj.rank());
        std::vector<PolyMatrix> partials;
        const PolyMatrix D = obj.D();
        for (std::size_t k = 0; k < d; ++k) partials.push_back(D.partial_derivative(k));
        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int inversions = 0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j) inversions += perm[i] > perm[j];
            PolyMatrix term = PolyMatrix::identity(lg_.ring(), obj.rank());
            for (auto k : perm) term = term * partials[k];
            if (inversions % 2) out -= term;
            else out += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }

    LGPair lg_;
    BraneCategory branes_;
    Scalar c_d_;
    int mu_;
    std::optional<BulkAlgebra> bulk_;
    std::string bulk_note_;
    std::vector<PolyMatrix> kernels_;
};

inline TFTDatum assemble_tft_datum(const LGPair& lg, std::vector<Brane> branes, TFTOptions options = {}) {
    return TFTDatum(lg, std::move(branes), std::move(options));
}

// --- verification -----------------------------------------------------------

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "not applicable";
    }
}

struct AxiomVerdict {
    std::string axiom;
    Verdict verdict = Verdict::Pass;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> witness;
};

struct CardyResult {
    Verdict verdict = Verdict::Pass;
    std::optional<Scalar> constant;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::string, std::string>> witness;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomVerdict> verdicts;
    std::optional<Scalar> cardy_constant;

    const AxiomVerdict& at(const std::string& axiom) const {
        for (const auto& v : verdicts)
            if (v.axiom == axiom) return v;
        throw std::out_of_range("no verdict for " + axiom);
    }

    bool all_pass() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const AxiomVerdict& v) { return v.verdict != Verdict::Fail; });
    }
};

namespace detail {

inline std::string coords_str(const std::vector<Scalar>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
    return s + "]";
}

inline std::string brane_label(const TFTDatum& t, std::size_t a) {
    const auto& n = t.branes().object(a)->name();
    return n.empty() ? "#" + std::to_string(a) : n;
}

/// Checks a clause over a list of cases, keeping the first failure as the witness.
class Clause {
public:
    explicit Clause(std::string name) { v_.axiom = std::move(name); }
    bool failed() const { return v_.verdict == Verdict::Fail; }
    void fail(std::string detail, std::vector<std::pair<std::string, std::string>> witness) {
        if (failed()) return;
        v_.verdict = Verdict::Fail;
        v_.detail = std::move(detail);
        v_.witness = std::move(witness);
    }
    void not_applicable(std::string why) {
        v_.verdict = Verdict::NotApplicable;
        v_.detail = "not applicable: " + why;
    }
    AxiomVerdict done() { return std::move(v_); }

private:
    AxiomVerdict v_;
};

inline std::vector<Scalar> unit_coords(std::size_t n, std::size_t k) {
    std::vector<Scalar> v(n);
    v[k] = Scalar(1);
    return v;
}

inline std::vector<Scalar> add_scaled(std::vector<Scalar> a, const Scalar& s, const std::vector<Scalar>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
    return a;
}

/// Parity-preserving unitriangular change of basis with small random integer entries.
inline Matrix<Scalar> random_basis_change(const std::vector<int>& parities, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-2, 2);
    const auto n = parities.size();
    auto m = Matrix<Scalar>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (parities[i] == parities[j]) m(i, j) = Scalar(pick(rng));
    return m;
}

inline std::vector<int> parities(const HomCohomology& h) {
    std::vector<int> p;
    for (std::size_t k = 0; k < h.basis().size(); ++k) p.push_back(h.parity_of(k));
    return p;
}

}  // namespace detail

/// Cardy constraint Tr(f_a(t1) f_b(t2)) = c str(Phi(t1, t2)) over all brane pairs and End basis
/// pairs, Phi(t1, t2)(t) = (-1)^{|t1|(|t|+|t2|)} t2 o t o t1 on Hom(a, b); `koszul_sign = false`
/// drops the sign. The End bases and the Hom(a, b) basis may be replaced through `change`:
/// new basis vector i = sum_j change(i, j) old basis vector j.
struct CardyOptions {
    std::function<Matrix<Scalar>(std::size_t a, std::size_t b)> change;  // keyed (a, b); a == b gives End(a)
    bool koszul_sign = true;
};

inline CardyResult cardy_check(const TFTDatum& datum, const CardyOptions& bases = {}) {
    CardyResult out;
    if (!datum.has_bulk_pairing()) {
        out.verdict = Verdict::NotApplicable;
        out.detail = "not applicable: bulk pairing degenerate (" + datum.bulk_note() + ")";
        return out;
    }
    const auto& cat = datum.branes();
    const auto& bulk = datum.bulk();
    auto change = [&](std::size_t a, std::size_t b) {
        return bases.change ? bases.change(a, b) : Matrix<Scalar>::identity(cat.hom(a, b).basis().size());
    };
    // f_a of each (possibly changed) End basis vector
    std::vector<std::vector<std::vector<Scalar>>> f(cat.size());
    std::vector<Matrix<Scalar>> end_change;
    for (std::size_t a = 0; a < cat.size(); ++a) {
        const auto& h = cat.hom(a, a);
        end_change.push_back(change(a, a));
        for (std::size_t i = 0; i < h.basis().size(); ++i)
            f[a].push_back(datum.boundary_bulk(a, h.combination(end_change[a].row(i))));
    }
    std::optional<Scalar> c;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, Scalar, Scalar>> zero_rhs;
    for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = 0; b < cat.size(); ++b) {
            const auto& hab = cat.hom(a, b);
            const auto n = hab.basis().size();
            Matrix<Scalar> N = a == b ? end_change[a] : change(a, b);
            auto Ninv_t = inverse(N.transpose());
            if (!Ninv_t) throw std::invalid_argument("basis change is not invertible");
            for (std::size_t i = 0; i < f[a].size(); ++i)
                for (std::size_t j = 0; j < f[b].size(); ++j) {
                    Scalar lhs = bulk.Tr(bulk.algebra().multiply(f[a][i], f[b][j]));
                    auto t1 = end_change[a].row(i), t2 = end_change[b].row(j);
                    Scalar rhs;
                    for (std::size_t k = 0; k < n; ++k) {
                        auto s = N.row(k);
                        auto image = cat.compose(a, b, b, cat.compose(a, a, b, t1, s), t2);
                        auto in_new = Ninv_t->apply(image);
                        int sign = hab.parity_of(k);
                        if (bases.koszul_sign)
                            sign += cat.hom(a, a).parity_of(i) * (hab.parity_of(k) + cat.hom(b, b).parity_of(j));
                        if (sign % 2) rhs -= in_new[k];
                        else rhs += in_new[k];
                    }
                    ++out.pairs_checked;
                    if (rhs.is_zero()) {
                        if (!lhs.is_zero()) zero_rhs.emplace_back(a, b, i, j, lhs, rhs);
                        continue;
                    }
                    Scalar ratio = lhs * rhs.inverse();
                    if (!c) c = ratio;
                    else if (ratio != *c && out.verdict == Verdict::Pass) {
                        out.verdict = Verdict::Fail;
                        out.detail = "no single constant: ratio " + ratio.str() + " differs from " + c->str();
                        out.witness = {{"a", detail::brane_label(datum, a)}, {"b", detail::brane_label(datum, b)},
                                       {"t1", std::to_string(i)}, {"t2", std::to_string(j)},
                                       {"lhs", lhs.str()}, {"rhs", rhs.str()}};
                    }
                }
        }
    if (!zero_rhs.empty() && out.verdict == Verdict::Pass) {
        auto [a, b, i, j, lhs, rhs] = zero_rhs.front();
        out.verdict = Verdict::Fail;
        out.detail = "left side nonzero where the supertrace vanishes";
        out.witness = {{"a", detail::brane_label(datum, a)}, {"b", detail::brane_label(datum, b)},
                       {"t1", std::to_string(i)}, {"t2", std::to_string(j)}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
    }
    out.constant = c;
    if (out.verdict == Verdict::Pass && !c) out.detail = "both sides vanish for every pair; constant undetermined";
    return out;
}

/// Both sides of the Cardy relation for homogeneous t1 in End(a), t2 in End(b), in the stored bases.
inline std::pair<Scalar, Scalar> cardy_sides(const TFTDatum& datum, std::size_t a, std::size_t b,
                                             const std::vector<Scalar>& t1, const std::vector<Scalar>& t2,
                                             bool koszul_sign = true) {
    const auto& cat = datum.branes();
    const auto& bulk = datum.bulk();
    auto parity_of = [](const HomCohomology& h, const std::vector<Scalar>& v) {
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) return h.parity_of(k);
        return 0;
    };
    Scalar lhs;
    if (!t1.empty() && !t2.empty())
        lhs = bulk.Tr(bulk.algebra().multiply(datum.boundary_bulk(a, cat.hom(a, a).combination(t1)),
                                              datum.boundary_bulk(b, cat.hom(b, b).combination(t2))));
    const int p1 = parity_of(cat.hom(a, a), t1), p2 = parity_of(cat.hom(b, b), t2);
    const auto& hab = cat.hom(a, b);
    Scalar rhs;
    for (std::size_t k = 0; k < hab.basis().size(); ++k) {
        auto s = detail::unit_coords(hab.basis().size(), k);
        auto image = cat.compose(a, b, b, cat.compose(a, a, b, t1, s), t2);
        int sign = hab.parity_of(k) + (koszul_sign ? p1 * (hab.parity_of(k) + p2) : 0);
        if (sign % 2) rhs -= image[k];
        else rhs += image[k];
    }
    return {lhs, rhs};
}

inline AxiomReport verify_tft_datum(const TFTDatum& datum, unsigned seed = 20240601) {
    using detail::Clause;
    using detail::coords_str;
    AxiomReport report;
    const auto& cat = datum.branes();
    const std::size_t nb = cat.size();
    auto label = [&](std::size_t a) { return detail::brane_label(datum, a); };
    const bool bulk = datum.has_bulk_pairing();
    const std::string no_bulk = "bulk pairing degenerate (" + datum.bulk_note() + ")";

    {
        Clause c("hom_finite");
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; b < nb; ++b)
                if (!cat.hom(a, b).finite())
                    c.fail("cohomology not captured within the degree bound", {{"a", label(a)}, {"b", label(b)}});
        report.verdicts.push_back(c.done());
    }
    const bool finite = report.verdicts.back().verdict == Verdict::Pass;

    {
        Clause unital("bulk_unital"), comm("bulk_supercommutative"), assoc("bulk_associative"),
            frob("frobenius_nondegenerate");
        if (!bulk) {
            for (auto* c : {&unital, &comm, &assoc, &frob}) c->not_applicable(no_bulk);
        } else {
            const auto& jac = datum.bulk().algebra();
            if (!jac.is_unital()) unital.fail("unit law fails", {});
            if (!jac.is_commutative()) comm.fail("product is not commutative", {});
            if (!jac.is_associative()) assoc.fail("product is not associative", {});
            if (!inverse(datum.bulk().trace().gram(jac))) frob.fail("Gram matrix of Tr is singular", {});
        }
        for (auto* c : {&unital, &comm, &assoc, &frob}) report.verdicts.push_back(c->done());
    }

    {
        Clause unit("composition_unital"), assoc("composition_associative");
        if (!finite) {
            unit.not_applicable("Hom spaces not finite within the bound");
            assoc.not_applicable("Hom spaces not finite within the bound");
        } else {
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; b < nb; ++b) {
                    const auto n = cat.hom(a, b).basis().size();
                    for (std::size_t i = 0; i < n; ++i) {
                        auto e = detail::unit_coords(n, i);
                        auto left = cat.compose(a, b, b, e, cat.unit(b));
                        auto right = cat.compose(a, a, b, cat.unit(a), e);
                        if (left != e || right != e)
                            unit.fail("identity does not act trivially",
                                      {{"a", label(a)}, {"b", label(b)}, {"t", std::to_string(i)},
                                       {"1_b o t", coords_str(left)}, {"t o 1_a", coords_str(right)}});
                    }
                }
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; b < nb; ++b)
                    for (std::size_t c = 0; c < nb; ++c)
                        for (std::size_t d = 0; d < nb; ++d) {
                            const auto n1 = cat.hom(a, b).basis().size(), n2 = cat.hom(b, c).basis().size(),
                                       n3 = cat.hom(c, d).basis().size();
                            for (std::size_t i = 0; i < n1; ++i)
                                for (std::size_t j = 0; j < n2; ++j)
                                    for (std::size_t k = 0; k < n3; ++k) {
                                        auto f = detail::unit_coords(n1, i), g = detail::unit_coords(n2, j),
                                             h = detail::unit_coords(n3, k);
                                        auto x = cat.compose(a, c, d, cat.compose(a, b, c, f, g), h);
                                        auto y = cat.compose(a, b, d, f, cat.compose(b, c, d, g, h));
                                        if (x != y)
                                            assoc.fail("(h g) f differs from h (g f)",
                                                       {{"objects", label(a) + "," + label(b) + "," + label(c) + "," + label(d)},
                                                        {"f", std::to_string(i)}, {"g", std::to_string(j)},
                                                        {"h", std::to_string(k)}, {"(hg)f", coords_str(x)},
                                                        {"h(gf)", coords_str(y)}});
                                    }
                        }
        }
        report.verdicts.push_back(unit.done());
        report.verdicts.push_back(assoc.done());
    }

    {
        Clause unital("bulk_boundary_unital"), mult("bulk_boundary_multiplicative"), central("graded_centrality");
        if (!bulk || !finite) {
            for (auto* c : {&unital, &mult, &central})
                c->not_applicable(!bulk ? no_bulk : "Hom spaces not finite within the bound");
        } else {
            const auto& jac = datum.bulk().algebra();
            const auto nh = jac.dimension();
            for (std::size_t a = 0; a < nb; ++a) {
                std::vector<std::vector<Scalar>> e;
                for (std::size_t k = 0; k < nh; ++k) e.push_back(datum.bulk_boundary(a, k));
                if (e[jac.unit_index()] != cat.unit(a))
                    unital.fail("e_a(1) is not 1_a", {{"a", label(a)}, {"e_a(1)", coords_str(e[jac.unit_index()])}});
                for (std::size_t k = 0; k < nh; ++k)
                    for (std::size_t l = 0; l < nh; ++l) {
                        const auto& prod = jac.product(k, l);
                        std::vector<Scalar> lhs(cat.hom(a, a).basis().size());
                        for (std::size_t m = 0; m < nh; ++m)
                            if (!prod[m].is_zero()) lhs = detail::add_scaled(lhs, prod[m], e[m]);
                        auto rhs = cat.compose(a, a, a, e[l], e[k]);
                        if (lhs != rhs)
                            mult.fail("e_a(h h') differs from e_a(h) e_a(h')",
                                      {{"a", label(a)}, {"h", std::to_string(k)}, {"h'", std::to_string(l)},
                                       {"lhs", coords_str(lhs)}, {"rhs", coords_str(rhs)}});
                    }
            }
            // bulk is purely even, so the sign (-1)^{|h||t|} is +1
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; b < nb; ++b)
                    for (std::size_t k = 0; k < nh; ++k) {
                        auto ea = datum.bulk_boundary(a, k), eb = datum.bulk_boundary(b, k);
                        const auto n = cat.hom(a, b).basis().size();
                        for (std::size_t i = 0; i < n; ++i) {
                            auto t = detail::unit_coords(n, i);
                            auto left = cat.compose(a, b, b, t, eb);
                            auto right = cat.compose(a, a, b, ea, t);
                            if (left != right)
                                central.fail("e_b(h) t differs from t e_a(h)",
                                             {{"a", label(a)}, {"b", label(b)}, {"h", std::to_string(k)},
                                              {"t", std::to_string(i)}, {"e_b(h) t", coords_str(left)},
                                              {"t e_a(h)", coords_str(right)}});
                        }
                    }
        }
        for (auto* c : {&unital, &mult, &central}) report.verdicts.push_back(c->done());
    }

    {
        Clause parity("trace_parity"), sym("cy_symmetry"), nondeg("cy_nondegenerate");
        if (!bulk || !finite) {
            for (auto* c : {&parity, &sym, &nondeg})
                c->not_applicable(!bulk ? no_bulk : "Hom spaces not finite within the bound");
        } else {
            const int mu = datum.trace_parity();
            for (std::size_t a = 0; a < nb; ++a) {
                const auto& h = cat.hom(a, a);
                for (std::size_t i = 0; i < h.basis().size(); ++i) {
                    if (h.parity_of(i) == mu) continue;
                    Scalar v = datum.boundary_trace(a, h.representative(i));
                    if (!v.is_zero())
                        parity.fail("trace nonzero on the wrong parity",
                                    {{"a", label(a)}, {"t", std::to_string(i)}, {"tr_a(t)", v.str()}});
                }
                if (mu == 1 && h.basis().size() > 0) {
                    Scalar v = datum.boundary_trace(a, PolyMatrix::identity(datum.lg().ring(), cat.object(a)->rank()));
                    if (!v.is_zero()) parity.fail("tr_a(1_a) must vanish for odd trace", {{"a", label(a)}, {"tr_a(1_a)", v.str()}});
                }
            }
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; b < nb; ++b) {
                    auto pab = datum.pairing(a, b), pba = datum.pairing(b, a);
                    const auto& hab = cat.hom(a, b);
                    const auto& hba = cat.hom(b, a);
                    for (std::size_t i = 0; i < pab.rows(); ++i)
                        for (std::size_t j = 0; j < pab.cols(); ++j) {
                            Scalar sign = (hab.parity_of(i) * hba.parity_of(j)) % 2 ? Scalar(-1) : Scalar(1);
                            if (pab(i, j) != sign * pba(j, i))
                                sym.fail("<t1,t2> differs from the signed <t2,t1>",
                                         {{"a", label(a)}, {"b", label(b)}, {"t1", std::to_string(i)},
                                          {"t2", std::to_string(j)}, {"<t1,t2>", pab(i, j).str()},
                                          {"<t2,t1>", pba(j, i).str()}});
                        }
                    if (pab.rows() != pab.cols()) {
                        nondeg.fail("Hom(a,b) and Hom(b,a) have different dimensions",
                                    {{"a", label(a)}, {"b", label(b)}});
                    } else if (pab.rows() > 0 && !inverse(pab)) {
                        auto kernel = null_space(pab.transpose());
                        nondeg.fail("boundary pairing is degenerate",
                                    {{"a", label(a)}, {"b", label(b)}, {"t1 in kernel", coords_str(kernel.front())}});
                    }
                }
        }
        for (auto* c : {&parity, &sym, &nondeg}) report.verdicts.push_back(c->done());
    }

    {
        Clause adj("adjointness");
        if (!bulk || !finite) {
            adj.not_applicable(!bulk ? no_bulk : "Hom spaces not finite within the bound");
        } else {
            const auto& B = datum.bulk();
            for (std::size_t a = 0; a < nb; ++a) {
                const auto& h = cat.hom(a, a);
                for (std::size_t i = 0; i < h.basis().size(); ++i) {
                    auto t = h.representative(i);
                    auto y = datum.boundary_bulk(a, t);
                    for (std::size_t k = 0; k < B.dimension(); ++k) {
                        Scalar lhs = B.Tr(B.algebra().multiply(B.algebra().unit_vector(k), y));
                        Scalar rhs = datum.boundary_trace(a, B.element(k) * t);
                        if (lhs != rhs)
                            adj.fail("Tr(h f_a(t)) differs from tr_a(e_a(h) t)",
                                     {{"a", label(a)}, {"t", std::to_string(i)}, {"h", std::to_string(k)},
                                      {"lhs", lhs.str()}, {"rhs", rhs.str()}});
                    }
                }
            }
        }
        report.verdicts.push_back(adj.done());
    }

    {
        Clause cardy("cardy"), independent("cardy_basis_independence");
        if (!bulk || !finite) {
            cardy.not_applicable(!bulk ? no_bulk : "Hom spaces not finite within the bound");
            independent.not_applicable(!bulk ? no_bulk : "Hom spaces not finite within the bound");
        } else {
            auto first = cardy_check(datum);
            if (first.verdict == Verdict::Fail) cardy.fail(first.detail, first.witness);
            report.cardy_constant = first.constant;
            std::mt19937 rng(seed);
            std::map<std::pair<std::size_t, std::size_t>, Matrix<Scalar>> changes;
            for (std::size_t a = 0; a < nb; ++a)
                for (std::size_t b = 0; b < nb; ++b)
                    changes[{a, b}] = detail::random_basis_change(detail::parities(cat.hom(a, b)), rng);
            auto second = cardy_check(datum, {[&](std::size_t a, std::size_t b) { return changes.at({a, b}); }});
            if (second.verdict != first.verdict || second.constant != first.constant)
                independent.fail("Cardy result changes under a change of cohomology bases",
                                 {{"constant", first.constant ? first.constant->str() : "none"},
                                  {"constant after change", second.constant ? second.constant->str() : "none"}});
        }
        report.verdicts.push_back(cardy.done());
        report.verdicts.push_back(independent.done());
    }
    return report;
}

}  // namespace lgtft
