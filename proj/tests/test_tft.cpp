#include "lgtft/parser.hpp"
#include "lgtft/tft.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace lgtft;

namespace {

PolyMatrix one_by_one(const RingPtr& r, const std::string& s) {
    PolyMatrix m(r, 1, 1);
    m(0, 0) = parse_polynomial(s, r);
    return m;
}

Brane monomial_brane(const LGPair& lg, int n, int p) {
    auto r = lg.ring();
    return make_factorization(lg, 1, 1, one_by_one(r, "x^" + std::to_string(p)),
                              one_by_one(r, "x^" + std::to_string(n - p)), "x^" + std::to_string(p));
}

std::vector<Brane> all_monomial_branes(const LGPair& lg, int n) {
    std::vector<Brane> out;
    for (int p = 1; p < n; ++p) out.push_back(monomial_brane(lg, n, p));
    return out;
}

std::vector<Scalar> unit(std::size_t n, std::size_t k) {
    std::vector<Scalar> v(n);
    v[k] = Scalar(1);
    return v;
}

std::size_t odd_index(const HomCohomology& h) {
    for (std::size_t k = 0; k < h.basis().size(); ++k)
        if (h.parity_of(k) == 1) return k;
    throw std::logic_error("no odd class");
}

}  // namespace

TEST(Tft, BulkBoundaryUnitAndMultiplicative) {
    auto lg = LGPair::parse("x^4", {"x"});
    TFTDatum datum(lg, all_monomial_branes(lg, 4));
    const auto& jac = datum.bulk().algebra();
    for (std::size_t a = 0; a < datum.branes().size(); ++a) {
        EXPECT_EQ(datum.bulk_boundary(a, jac.unit_index()), datum.branes().unit(a));
        for (std::size_t k = 0; k < jac.dimension(); ++k)
            for (std::size_t l = 0; l < jac.dimension(); ++l) {
                std::vector<Scalar> lhs(datum.branes().hom(a, a).basis().size());
                const auto& prod = jac.product(k, l);
                for (std::size_t m = 0; m < prod.size(); ++m) {
                    auto e = datum.bulk_boundary(a, m);
                    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += prod[m] * e[i];
                }
                EXPECT_EQ(lhs, datum.branes().compose(a, a, a, datum.bulk_boundary(a, l), datum.bulk_boundary(a, k)));
            }
    }
}

TEST(Tft, BulkBoundaryOfXOnCubicBrane) {
    auto lg = LGPair::parse("x^3", {"x"});
    auto r = lg.ring();
    auto a = monomial_brane(lg, 3, 1);
    TFTDatum datum(lg, {a});
    // x id = d(h) with the odd h = [[0, 1], [0, 0]], so e_a([x]) is the zero class
    PolyMatrix h(r, 2, 2);
    h(0, 1) = Polynomial(r, Scalar(1));
    EXPECT_EQ(datum.branes().hom(0, 0).complex().differential(h), PolyMatrix::scalar(parse_polynomial("x", r), 2));
    const auto& basis = datum.bulk().algebra().basis();
    auto kx = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), Monomial{1}) - basis.begin());
    ASSERT_LT(kx, basis.size());
    auto e = datum.bulk_boundary(0, kx);
    for (const auto& c : e) EXPECT_TRUE(c.is_zero());
}

TEST(Tft, BoundaryTraceOnCubicBraneMatchesOracle) {
    auto lg = LGPair::parse("x^3", {"x"});
    auto r = lg.ring();
    TFTDatum datum(lg, {monomial_brane(lg, 3, 1)});
    const auto& h = datum.branes().hom(0, 0);
    auto t = h.representative(odd_index(h));
    // str(t D') by hand with D' = [[0, 2x], [1, 0]]
    auto dprime = PolyMatrix(r, 2, 2);
    dprime(0, 1) = parse_polynomial("2*x", r);
    dprime(1, 0) = Polynomial(r, Scalar(1));
    oracle::Poly str;
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (const auto& [m, c] : oracle::mul(oracle::from(t(k, j)), oracle::from(dprime(j, k))))
                str[m] += k == 0 ? c : -c;
    std::vector<oracle::Q> g(4, 0);
    for (const auto& [m, c] : str) g[static_cast<std::size_t>(m[0])] += c;
    oracle::Q expect = oracle::one_variable_residue(g, {0, 0, 3});
    EXPECT_EQ(datum.boundary_trace(0, t), Scalar(expect));
    EXPECT_FALSE(datum.boundary_trace(0, t).is_zero());

    EXPECT_TRUE(datum.boundary_trace(0, PolyMatrix::identity(r, 2)).is_zero());
    EXPECT_TRUE(datum.boundary_trace(0, PolyMatrix(r, 2, 2)).is_zero());
}

TEST(Tft, BoundaryBulkSolvesAdjointSystem) {
    auto lg = LGPair::parse("x^3", {"x"});
    auto r = lg.ring();
    TFTDatum datum(lg, {monomial_brane(lg, 3, 1)});
    const auto& h = datum.branes().hom(0, 0);
    auto t = h.representative(odd_index(h));
    auto y = datum.boundary_bulk(0, t);
    // by hand: Gram [[Tr 1, Tr x], [Tr x, Tr x^2]] = [[0, 1/3], [1/3, 0]], rhs = (tr t, tr x t)
    Scalar r0 = datum.boundary_trace(0, t), r1 = datum.boundary_trace(0, parse_polynomial("x", r) * t);
    const auto& jac = datum.bulk().algebra();
    auto expect = jac.element({r1 * Scalar(3), r0 * Scalar(3)});
    EXPECT_EQ(jac.element(y), expect);
    EXPECT_EQ(jac.element(y), parse_polynomial("3*x", r));
    auto zero = datum.boundary_bulk(0, PolyMatrix(r, 2, 2));
    for (const auto& c : zero) EXPECT_TRUE(c.is_zero());
}

TEST(Tft, CubicDatumPassesEveryClause) {
    auto lg = LGPair::parse("x^3", {"x"});
    TFTDatum datum(lg, {monomial_brane(lg, 3, 1)});
    auto report = verify_tft_datum(datum);
    for (const auto& v : report.verdicts) EXPECT_EQ(v.verdict, Verdict::Pass) << v.axiom << ": " << v.detail;
    EXPECT_TRUE(report.all_pass());
    EXPECT_EQ(datum.trace_parity(), 1);
}

TEST(Tft, CardyWithIdentitiesIsEulerCharacteristic) {
    auto lg = LGPair::parse("x^5", {"x"});
    TFTDatum datum(lg, all_monomial_branes(lg, 5));
    const auto& cat = datum.branes();
    for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = 0; b < cat.size(); ++b) {
            auto [lhs, rhs] = cardy_sides(datum, a, b, cat.unit(a), cat.unit(b));
            const auto& hab = cat.hom(a, b);
            EXPECT_EQ(rhs, Scalar(static_cast<long>(hab.dim(0))) - Scalar(static_cast<long>(hab.dim(1))));
            EXPECT_TRUE(lhs.is_zero());  // f_a(1_a) vanishes for an odd trace
        }
}

TEST(Tft, CardyOnZeroObject) {
    auto lg = LGPair::parse("x^2", {"x"});
    auto r = lg.ring();
    auto zero = make_factorization(lg, 1, 1, one_by_one(r, "1"), one_by_one(r, "x^2"), "zero");
    TFTDatum datum(lg, {zero, monomial_brane(lg, 2, 1)});
    auto [lhs, rhs] = cardy_sides(datum, 0, 0, {}, {});
    EXPECT_TRUE(lhs.is_zero());
    EXPECT_TRUE(rhs.is_zero());
    EXPECT_TRUE(verify_tft_datum(datum).all_pass());
}

TEST(Tft, CardyConstantForMonomials) {
    for (int n = 2; n <= 5; ++n) {
        auto lg = LGPair::parse("x^" + std::to_string(n), {"x"});
        TFTDatum datum(lg, all_monomial_branes(lg, n));
        auto result = cardy_check(datum);
        EXPECT_EQ(result.verdict, Verdict::Pass) << n << ": " << result.detail;
        if (n % 2 == 0) {
            ASSERT_TRUE(result.constant.has_value());
            EXPECT_EQ(*result.constant, Scalar(1));
        } else {
            // every f_a(t) has odd degree, so Tr(f_a f_b) and the supertrace vanish together
            EXPECT_FALSE(result.constant.has_value());
        }
    }
}

TEST(Tft, UnsignedCardyMapHasVanishingSupertraceForOddTraces) {
    auto lg = LGPair::parse("x^2", {"x"});
    TFTDatum datum(lg, {monomial_brane(lg, 2, 1)});
    const auto& h = datum.branes().hom(0, 0);
    auto eta = unit(h.basis().size(), odd_index(h));
    auto [lhs, signed_rhs] = cardy_sides(datum, 0, 0, eta, eta, true);
    auto [lhs2, plain_rhs] = cardy_sides(datum, 0, 0, eta, eta, false);
    EXPECT_FALSE(lhs.is_zero());
    EXPECT_EQ(lhs, signed_rhs);
    EXPECT_TRUE(plain_rhs.is_zero());
    EXPECT_EQ(cardy_check(datum, {{}, false}).verdict, Verdict::Fail);
}

TEST(Tft, TwoVariableConstantIsMeasured) {
    auto lg = LGPair::parse("x^2 + y^2", {"x", "y"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x", r)},
                                       {parse_polynomial("y", r), parse_polynomial("y", r)}});
    TFTDatum datum(lg, {a});
    EXPECT_EQ(datum.c_d(), Scalar::rational("1/2"));
    auto report = verify_tft_datum(datum);
    EXPECT_TRUE(report.all_pass());
    ASSERT_TRUE(report.cardy_constant.has_value());
    EXPECT_EQ(*report.cardy_constant, Scalar(-1));

    // both sides of the Cardy relation are quadratic in c_d: a sign in c_d is invisible, a factor i is not
    TFTOptions negated, rotated;
    negated.c_d = Scalar(-1) * Scalar::rational("1/2");
    rotated.c_d = Scalar::i() * Scalar::rational("1/2");
    EXPECT_EQ(*verify_tft_datum(TFTDatum(lg, {a}, negated)).cardy_constant, Scalar(-1));
    EXPECT_EQ(*verify_tft_datum(TFTDatum(lg, {a}, rotated)).cardy_constant, Scalar(1));
}

TEST(Tft, ZeroedTraceFailsNondegeneracyWithWitness) {
    auto lg = LGPair::parse("x^3", {"x"});
    TFTOptions opts;
    opts.c_d = Scalar(0);
    TFTDatum datum(lg, {monomial_brane(lg, 3, 1)}, opts);
    auto report = verify_tft_datum(datum);
    const auto& v = report.at("cy_nondegenerate");
    EXPECT_EQ(v.verdict, Verdict::Fail);
    EXPECT_FALSE(v.witness.empty());
    EXPECT_FALSE(report.all_pass());
}

TEST(Tft, NonIsolatedSingularityIsNotApplicable) {
    auto lg = LGPair::parse("x^2*y", {"x", "y"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x*y", r)}});
    TFTDatum datum(lg, {a}, {2, std::nullopt, Scalar(1)});
    EXPECT_FALSE(datum.has_bulk_pairing());
    auto report = verify_tft_datum(datum);
    for (auto name : {"cardy", "adjointness", "frobenius_nondegenerate", "cy_nondegenerate"}) {
        EXPECT_EQ(report.at(name).verdict, Verdict::NotApplicable) << name;
        EXPECT_NE(report.at(name).detail.find("not applicable"), std::string::npos);
    }
}

TEST(Tft, CardyIsBasisIndependent) {
    auto lg = LGPair::parse("x^4", {"x"});
    TFTDatum datum(lg, all_monomial_branes(lg, 4));
    auto base = cardy_check(datum);
    for (unsigned seed = 1; seed <= 3; ++seed) {
        std::mt19937 rng(seed);
        std::map<std::pair<std::size_t, std::size_t>, Matrix<Scalar>> changes;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                changes[{a, b}] = detail::random_basis_change(detail::parities(datum.branes().hom(a, b)), rng);
        auto moved = cardy_check(datum, {[&](std::size_t a, std::size_t b) { return changes.at({a, b}); }});
        EXPECT_EQ(moved.verdict, base.verdict);
        EXPECT_EQ(moved.constant, base.constant);
    }
}

TEST(Tft, RejectsUngradedBranes) {
    auto lg = LGPair::parse("x^3/3 - x + 2/3", {"x"});
    auto r = lg.ring();
    auto a = make_factorization(lg, 1, 1, one_by_one(r, "x - 1"), one_by_one(r, "(x^2 + x - 2)/3"));
    EXPECT_THROW(TFTDatum(lg, {a}), std::invalid_argument);
}
