#include "lgtft/linalg.hpp"
#include "lgtft/parser.hpp"
#include "lgtft/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lgtft;

namespace {

Scalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return Scalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

Polynomial random_polynomial(std::mt19937& rng, const RingPtr& ring, int max_deg, int terms) {
    std::uniform_int_distribution<int> e(0, max_deg);
    Polynomial p(ring);
    for (int t = 0; t < terms; ++t) {
        Monomial m(ring->size());
        for (auto& x : m) x = e(rng);
        p.add_term(m, random_scalar(rng));
    }
    return p;
}

}  // namespace

TEST(Scalar, Arithmetic) {
    Scalar i = Scalar::i();
    EXPECT_EQ(i * i, Scalar(-1));
    EXPECT_EQ((Scalar(1) + i) * (Scalar(1) - i), Scalar(2));
    EXPECT_EQ(Scalar::rational("3/6"), Scalar(mpq_class(1, 2)));
    EXPECT_EQ((Scalar(3) + Scalar(4) * i).inverse(), Scalar(mpq_class(3, 25), mpq_class(-4, 25)));
    EXPECT_THROW(Scalar(0).inverse(), std::domain_error);
    EXPECT_EQ(Scalar(mpq_class(1, 2), mpq_class(-3)).str(), "1/2-3*i");
    EXPECT_EQ((-i).str(), "-i");
}

TEST(Scalar, FieldLawsRandomized) {
    std::mt19937 rng(7);
    for (int n = 0; n < 300; ++n) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar(1));
    }
}

TEST(Parser, Examples) {
    auto p = parse_polynomial("x^3 + y^3", {"x", "y"});
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.coefficient({3, 0}), Scalar(1));
    EXPECT_EQ(p.coefficient({0, 3}), Scalar(1));

    auto z = parse_polynomial("0", {"x"});
    EXPECT_TRUE(z.is_zero());
    EXPECT_TRUE(z.terms().empty());

    try {
        parse_polynomial("x^", {"x"});
        FAIL() << "expected a syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
    }
}

TEST(Parser, Errors) {
    EXPECT_THROW(parse_polynomial("x + z", {"x", "y"}), ParseError);
    EXPECT_THROW(parse_polynomial("x^-2", {"x"}), ParseError);
    EXPECT_THROW(parse_polynomial("x/y", {"x", "y"}), ParseError);
    EXPECT_THROW(parse_polynomial("(x + 1", {"x"}), ParseError);
    EXPECT_THROW(parse_polynomial("", {"x"}), ParseError);
    EXPECT_THROW(parse_polynomial("x 1", {"x"}), ParseError);
    EXPECT_THROW(make_ring({"x", "x"}), std::invalid_argument);
    EXPECT_THROW(make_ring({"i"}), std::invalid_argument);
    try {
        parse_polynomial("x + zz", {"x"});
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    }
}

TEST(Parser, RationalAndImaginaryLiterals) {
    auto ring = make_ring({"x", "y"});
    auto p = parse_polynomial("3/4*x - (2 + i)*x*y + i*y^2/3", ring);
    EXPECT_EQ(p.coefficient({1, 0}), Scalar(mpq_class(3, 4)));
    EXPECT_EQ(p.coefficient({1, 1}), Scalar(-2) - Scalar::i());
    EXPECT_EQ(p.coefficient({0, 2}), Scalar(mpq_class(0), mpq_class(1, 3)));
}

TEST(Printer, CanonicalGrevlexOrder) {
    auto ring = make_ring({"x", "y", "z"});
    // grevlex: among degree-2 monomials x^2 > xy > y^2 > xz > yz > z^2
    auto p = parse_polynomial("z^2 + y*z + x*z + y^2 + x*y + x^2 + 1", ring);
    EXPECT_EQ(p.str(), "x^2 + x*y + y^2 + x*z + y*z + z^2 + 1");
    EXPECT_EQ(parse_polynomial("-x + i*y - 1/2", ring).str(), "-x + i*y - 1/2");
    EXPECT_EQ(parse_polynomial("-i*x + (1-i)*y", ring).str(), "-i*x + (1-i)*y");
}

TEST(Printer, ParsePrintIdempotentRandomized) {
    std::mt19937 rng(11);
    auto ring = make_ring({"x", "y", "w"});
    for (int n = 0; n < 200; ++n) {
        auto p = random_polynomial(rng, ring, 4, 6);
        auto q = parse_polynomial(p.str(), ring);
        EXPECT_EQ(p, q) << p.str();
        EXPECT_EQ(q.str(), p.str());
    }
}

TEST(Polynomial, PartialDerivative) {
    auto ring = make_ring({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    EXPECT_EQ(P("x^3").partial_derivative(0), P("3*x^2"));
    EXPECT_EQ(P("x").partial_derivative(1), P("0"));
    EXPECT_EQ(P("x*y + x^2").partial_derivative(0), P("y + 2*x"));
    EXPECT_THROW(P("x").partial_derivative(2), std::out_of_range);
}

TEST(Polynomial, Arithmetic) {
    auto ring = make_ring({"x", "y"});
    auto P = [&](const char* s) { return parse_polynomial(s, ring); };
    EXPECT_EQ(P("x+1") * P("x-1"), P("x^2-1"));
    std::vector<Scalar> pt{Scalar(1), Scalar::i()};
    EXPECT_EQ(P("x^2+y").evaluate(pt), Scalar(1) + Scalar::i());
    auto p = P("3*x*y - y^4 + i");
    EXPECT_TRUE((p + Scalar(-1) * p).is_zero());
    auto other = parse_polynomial("x", {"u", "x"});
    EXPECT_THROW(p + other, std::invalid_argument);
    EXPECT_THROW(p * other, std::invalid_argument);
}

TEST(Polynomial, RingLawsRandomized) {
    std::mt19937 rng(13);
    auto ring = make_ring({"x", "y"});
    for (int n = 0; n < 200; ++n) {
        auto a = random_polynomial(rng, ring, 3, 4), b = random_polynomial(rng, ring, 3, 4),
             c = random_polynomial(rng, ring, 3, 4);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) - b, a);
        // product rule
        EXPECT_EQ((a * b).partial_derivative(0), a.partial_derivative(0) * b + a * b.partial_derivative(0));
    }
}

TEST(LinearAlgebra, KernelAndImage) {
    auto space = [](std::size_t n) {
        GradedVectorSpace v;
        for (std::size_t k = 0; k < n; ++k) v.basis.push_back({"e" + std::to_string(k), 0, {}});
        return v;
    };
    LinearMapExact id{space(3), space(3), Matrix<Scalar>::identity(3), 0};
    auto ki = kernel_and_image(id);
    EXPECT_EQ(ki.kernel.size(), 0u);
    EXPECT_EQ(ki.image.size(), 3u);

    LinearMapExact zero{space(2), space(2), Matrix<Scalar>(2, 2), 0};
    ki = kernel_and_image(zero);
    EXPECT_EQ(ki.kernel.size(), 2u);
    EXPECT_EQ(ki.image.size(), 0u);

    LinearMapExact rel{space(2), space(1), Matrix<Scalar>::from_rows({{Scalar(1), Scalar::i()}}, 2), 0};
    ki = kernel_and_image(rel);
    ASSERT_EQ(ki.kernel.size(), 1u);
    EXPECT_EQ(ki.kernel[0], (std::vector<Scalar>{-Scalar::i(), Scalar(1)}));

    LinearMapExact bad{space(2), space(2), Matrix<Scalar>(3, 2), 0};
    EXPECT_THROW(kernel_and_image(bad), std::invalid_argument);
}

TEST(LinearAlgebra, RankNullityRandomized) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> dim(1, 6), sparse(0, 2);
    for (int n = 0; n < 100; ++n) {
        std::size_t r = dim(rng), c = dim(rng);
        Matrix<Scalar> m(r, c);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b)
                if (sparse(rng) == 0) m(a, b) = random_scalar(rng);
        auto kernel = null_space(m);
        EXPECT_EQ(kernel.size() + rank(m), c);
        for (const auto& v : kernel) {
            for (const auto& x : m.apply(v)) EXPECT_TRUE(x.is_zero());
        }
        if (r == c) {
            if (auto inv = inverse(m)) EXPECT_EQ(m * *inv, Matrix<Scalar>::identity(r));
            else EXPECT_LT(rank(m), r);
        }
    }
}

TEST(LinearAlgebra, CompositionParity) {
    GradedVectorSpace v;
    v.basis = {{"a", 0, {}}, {"b", 1, {}}};
    LinearMapExact f{v, v, Matrix<Scalar>::identity(2), 1};
    LinearMapExact g{v, v, Matrix<Scalar>::identity(2), 1};
    EXPECT_EQ(compose(g, f).parity, 0);
    EXPECT_EQ(v.dim(1), 1u);
}
