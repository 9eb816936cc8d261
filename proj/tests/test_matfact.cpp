#include "lgtft/matfact.hpp"
#include "lgtft/parser.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

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
                              one_by_one(r, "x^" + std::to_string(n - p)));
}

PolyMatrix random_matrix(const RingPtr& r, std::size_t rows, std::size_t cols, std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg);
    PolyMatrix m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (int t = 0; t < 2; ++t) {
                Monomial mono(r->size(), 0);
                for (auto& e : mono) e = deg(rng);
                m(i, j).add_term(mono, Scalar(coef(rng)));
            }
    return m;
}

int min4(int a, int b, int c, int d) { return std::min(std::min(a, b), std::min(c, d)); }

}  // namespace

TEST(MatFact, RejectsBadFactorization) {
    auto lg = LGPair::parse("x^3", {"x"});
    try {
        make_factorization(lg, 1, 1, one_by_one(lg.ring(), "x"), one_by_one(lg.ring(), "x"));
        FAIL() << "expected FactorizationError";
    } catch (const FactorizationError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("entry (1,1)"), std::string::npos) << msg;
        EXPECT_NE(msg.find("x^2"), std::string::npos) << msg;
    }
    EXPECT_THROW(make_factorization(lg, 1, 1, PolyMatrix(lg.ring(), 2, 1), one_by_one(lg.ring(), "x")),
                 FactorizationError);
}

TEST(MatFact, KoszulFactorizationShapes) {
    auto lg = LGPair::parse("x^3", {"x"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x^2", r)}});
    EXPECT_EQ(a->d01()(0, 0), parse_polynomial("x", r));
    EXPECT_EQ(a->d10()(0, 0), parse_polynomial("x^2", r));

    auto lg2 = LGPair::parse("x^2 + y^2", {"x", "y"});
    auto r2 = lg2.ring();
    auto b = koszul_factorization(lg2, {{parse_polynomial("x", r2), parse_polynomial("x", r2)},
                                        {parse_polynomial("y", r2), parse_polynomial("y", r2)}});
    EXPECT_EQ(b->rank0(), 2u);
    EXPECT_EQ(b->rank1(), 2u);
    EXPECT_EQ(b->D() * b->D(), PolyMatrix::scalar(lg2.W(), 4));
    EXPECT_TRUE(b->weights2().has_value());

    EXPECT_THROW(koszul_factorization(lg2, {{parse_polynomial("x", r2), parse_polynomial("x", r2)}}),
                 FactorizationError);
}

TEST(MatFact, BasisWeightsMakeDifferentialHomogeneous) {
    auto lg = LGPair::parse("x^5", {"x"});
    auto a = monomial_brane(lg, 5, 2);
    ASSERT_TRUE(a->weights2());
    const auto& q = *a->weights2();
    // x^2 : e0 -> e1 has half-unit degree 4 = q1 - q0 + 5
    EXPECT_EQ(q[1] - q[0] + 5, 4);
    EXPECT_EQ(std::min(q[0], q[1]), 0);
}

TEST(MatFact, DifferentialSquaresToZeroAndLeibniz) {
    std::mt19937 rng(7);
    auto lg = LGPair::parse("x^3 + y^3", {"x", "y"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x^2", r)},
                                       {parse_polynomial("y", r), parse_polynomial("y^2", r)}});
    auto b = koszul_factorization(lg, {{parse_polynomial("x^2", r), parse_polynomial("x", r)},
                                       {parse_polynomial("y", r), parse_polynomial("y^2", r)}});
    auto c = koszul_factorization(lg, {{parse_polynomial("x + y", r), parse_polynomial("x^2 - x*y + y^2", r)}});
    HomComplex ab(a, b), bc(b, c), ac(a, c);
    EXPECT_TRUE(ab.squares_to_zero());
    EXPECT_TRUE(bc.squares_to_zero());
    EXPECT_TRUE(ac.squares_to_zero());
    for (int trial = 0; trial < 5; ++trial) {
        auto [f, f_odd] = ab.split(random_matrix(r, ab.rows(), ab.cols(), rng, 2));
        auto [g_even, g] = bc.split(random_matrix(r, bc.rows(), bc.cols(), rng, 2));
        EXPECT_TRUE(ab.differential(ab.differential(f + f_odd)).is_zero());
        // d(g f) = d(g) f + (-1)^|g| g d(f), g odd and f even
        EXPECT_EQ(ac.differential(g * f), bc.differential(g) * f - g * ab.differential(f));
        EXPECT_EQ(ac.differential(g_even * f_odd), bc.differential(g_even) * f_odd + g_even * ab.differential(f_odd));
    }
}

TEST(MatFact, MonomialHomsMatchOracle) {
    for (int n = 2; n <= 6; ++n) {
        auto lg = LGPair::parse("x^" + std::to_string(n), {"x"});
        for (int p = 1; p < n; ++p)
            for (int q = 1; q < n; ++q) {
                auto a = monomial_brane(lg, n, p), b = monomial_brane(lg, n, q);
                auto h = hom_cohomology(a, b);
                ASSERT_TRUE(h.graded());
                EXPECT_TRUE(h.finite());
                std::size_t expect = static_cast<std::size_t>(min4(p, q, n - p, n - q));
                EXPECT_EQ(h.dim(0), expect) << n << " " << p << " " << q;
                EXPECT_EQ(h.dim(1), expect) << n << " " << p << " " << q;
                for (long m = h.lowest_degree2() - 2; m <= h.highest_degree2(); ++m)
                    for (int par = 0; par < 2; ++par) {
                        auto table = h.dimension_table();
                        auto it = table.find({m, par});
                        std::size_t got = it == table.end() ? 0 : it->second;
                        EXPECT_EQ(got, oracle::monomial_mf_hom_dim(n, p, q, m, par))
                            << "n=" << n << " p=" << p << " q=" << q << " m=" << m << " parity=" << par;
                    }
            }
    }
}

TEST(MatFact, UnitClassIsNonzero) {
    auto lg = LGPair::parse("x^4", {"x"});
    for (int p = 1; p < 4; ++p) {
        auto a = monomial_brane(lg, 4, p);
        auto h = hom_cohomology(a, a);
        auto id = identity_class(a);
        EXPECT_TRUE(h.complex().is_cocycle(id.representative));
        EXPECT_FALSE(h.is_zero_class(id.representative));
    }
}

TEST(MatFact, ZeroObjects) {
    auto lg = LGPair::parse("x^3", {"x"});
    auto r = lg.ring();
    auto trivial = make_factorization(lg, 1, 1, one_by_one(r, "1"), one_by_one(r, "x^3"));
    auto h = hom_cohomology(trivial, trivial);
    EXPECT_EQ(h.dim(), 0u);
    EXPECT_TRUE(h.is_zero_class(PolyMatrix::identity(r, 2)));
    auto empty = make_factorization(lg, 0, 0, PolyMatrix(r, 0, 0), PolyMatrix(r, 0, 0));
    EXPECT_EQ(hom_cohomology(empty, monomial_brane(lg, 3, 1)).dim(), 0u);
}

TEST(MatFact, RepresentativeIndependence) {
    std::mt19937 rng(11);
    auto lg = LGPair::parse("x^3 + y^3", {"x", "y"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x^2", r)},
                                       {parse_polynomial("y", r), parse_polynomial("y^2", r)}});
    auto h = hom_cohomology(a, a);
    EXPECT_EQ(h.dim(0), 2u);
    EXPECT_EQ(h.dim(1), 2u);
    for (std::size_t k = 0; k < h.basis().size(); ++k) {
        auto f = h.representative(k);
        std::vector<Scalar> unit(h.basis().size());
        unit[k] = Scalar(1);
        EXPECT_EQ(h.coordinates(f), unit);
        auto shifted = f + h.complex().differential(random_matrix(r, 4, 4, rng, 2));
        EXPECT_EQ(h.coordinates(shifted), unit);
    }
    EXPECT_THROW(h.coordinates(h.complex().split(random_matrix(r, 4, 4, rng, 1)).first), std::invalid_argument);
}

TEST(MatFact, PartialsOfWActNullHomotopically) {
    auto lg = LGPair::parse("x^3 + x*y^2", {"x", "y"});
    auto r = lg.ring();
    auto a = koszul_factorization(lg, {{parse_polynomial("x", r), parse_polynomial("x^2 + y^2", r)}});
    auto h = hom_cohomology(a, a);
    ASSERT_GT(h.dim(), 0u);
    auto grad = lg.gradient();
    for (std::size_t k = 0; k < h.basis().size(); ++k) {
        auto f = h.representative(k);
        for (std::size_t j = 0; j < 2; ++j) {
            auto g = grad[j] * f;
            EXPECT_TRUE(h.is_zero_class(g));
            // explicit homotopy d(dD f) = dW f
            EXPECT_EQ(h.complex().differential(a->D().partial_derivative(j) * f), g);
        }
    }
}

TEST(MatFact, CompositionOfClasses) {
    auto lg = LGPair::parse("x^5", {"x"});
    auto a = monomial_brane(lg, 5, 1), b = monomial_brane(lg, 5, 2), c = monomial_brane(lg, 5, 3);
    auto hab = hom_cohomology(a, b), hbc = hom_cohomology(b, c), hcc = hom_cohomology(c, c), hac = hom_cohomology(a, c);
    for (std::size_t i = 0; i < hab.basis().size(); ++i) {
        auto f = hab.basis_class(i);
        auto left = compose_classes(identity_class(b), f);
        EXPECT_EQ(hab.coordinates(left.representative), hab.coordinates(f.representative));
        for (std::size_t j = 0; j < hbc.basis().size(); ++j)
            for (std::size_t k = 0; k < hcc.basis().size(); ++k) {
                auto g = hbc.basis_class(j), e = hcc.basis_class(k);
                auto x = compose_classes(e, compose_classes(g, f));
                auto y = compose_classes(compose_classes(e, g), f);
                EXPECT_EQ(hac.coordinates(x.representative), hac.coordinates(y.representative));
                EXPECT_EQ(x.parity, (e.parity + g.parity + f.parity) % 2);
            }
    }
    EXPECT_THROW(compose_classes(hbc.basis_class(0), hbc.basis_class(0)), std::invalid_argument);
}

TEST(MatFact, FilteredFallbackForInhomogeneousW) {
    // W = (x-1)^2 (x+2)/3 has a Morse point at x = 1 with critical value 0
    auto lg = LGPair::parse("x^3/3 - x + 2/3", {"x"});
    auto r = lg.ring();
    auto a = make_factorization(lg, 1, 1, one_by_one(r, "x - 1"), one_by_one(r, "(x^2 + x - 2)/3"));
    auto h = hom_cohomology(a, a, 6);
    EXPECT_FALSE(h.graded());
    EXPECT_TRUE(h.finite());
    EXPECT_EQ(h.dim(0), 1u);
    EXPECT_EQ(h.dim(1), 1u);
    EXPECT_FALSE(h.note().empty());
    EXPECT_THROW(h.representative(0), std::logic_error);
}

TEST(MatFact, SmallBoundIsFlagged) {
    auto lg = LGPair::parse("x^6", {"x"});
    auto a = monomial_brane(lg, 6, 3);
    auto h = hom_cohomology(a, a, 0);
    EXPECT_FALSE(h.finite());
    EXPECT_LT(h.dim(), 6u);
    EXPECT_THROW(hom_cohomology(a, a, -1), std::invalid_argument);
}
