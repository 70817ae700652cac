#include <gtest/gtest.h>

#include "fj/field.hpp"
#include "fj/oracle.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

namespace fj {
namespace {

using namespace fj::testing;

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an fj::Error";
    return ErrorKind::InvalidInput;
}

TEST(PrimeField, RejectsComposite) {
    EXPECT_EQ(kind_of([] { PrimeField f(Nat(15)); }), ErrorKind::InvalidModulus);
}

TEST(PrimeField, InverseCountsAndRejectsZero) {
    instrumentation::reset_inversions();
    EXPECT_EQ(F7().inv(3), 5);
    EXPECT_EQ(instrumentation::inversions(), 1u);
    EXPECT_EQ(kind_of([] { F7().inv(0); }), ErrorKind::NotAUnit);
}

TEST(FpPoly, ParsesBothSyntaxes) {
    FpPoly a = FpPoly::parse(F5(), "3,3,0,1");
    FpPoly b = FpPoly::parse(F5(), "x^3+3*x+3");
    FpPoly c = FpPoly::parse(F5(), " x^3 + 3x + 3 ");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(a.to_string(), "x^3+3*x+3");
    EXPECT_EQ(a.to_coefficient_list(), "3,3,0,1");
    FpPoly neg = FpPoly::parse(PrimeField(Nat(kBigPrime)), "x^3-x-1");
    Nat pm1 = Nat(kBigPrime) - 1;
    EXPECT_EQ(neg.coefficients(), (std::vector<Nat>{pm1, pm1, 0, 1}));
    EXPECT_EQ(FpPoly::parse(F5(), "-1,7"), FpPoly::parse(F5(), "2*x+4"));
    EXPECT_THROW(FpPoly::parse(F5(), "x^^2"), Error);
    EXPECT_THROW(FpPoly::parse(F5(), "3,,1"), Error);
    EXPECT_THROW(FpPoly::parse(F5(), ""), Error);
}

TEST(FpPoly, DivisionRoundTrips) {
    FpPoly f = FpPoly::parse(F7(), "x^5+3*x^2+6");
    FpPoly g = FpPoly::parse(F7(), "2*x^2+x+5");
    auto [q, r] = f.divmod(g);
    EXPECT_EQ(q * g + r, f);
    EXPECT_LT(r.degree(), g.degree());
}

TEST(IsIrreducible, Examples) {
    EXPECT_FALSE(is_irreducible(FpPoly::parse(F5(), "x^2+1")));
    EXPECT_TRUE(is_irreducible(f5_cubic()));
    EXPECT_TRUE(is_irreducible(FpPoly::parse(PrimeField(Nat(kBigPrime)), "x^3-x-1")));
    EXPECT_EQ(kind_of([] { is_irreducible(FpPoly::constant(F5(), 3)); }), ErrorKind::InvalidInput);
}

TEST(IsIrreducible, AgreesWithExhaustiveDivisorSearch) {
    for (const PrimeField* F : {&F2(), &F3(), &F5(), &F7()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (std::size_t d = 1; d <= 3; ++d) {
            for_each_monic_small(p, d, [&](const SmallPoly& s) {
                ASSERT_EQ(is_irreducible(to_fp(*F, s)), exhaustive_irreducible(s, p)) << to_fp(*F, s).to_string() << " over F_" << p;
            });
        }
    }
}

TEST(ElementOrder, Examples) {
    auto four = factor(4);
    EXPECT_EQ(element_order(F5(), 1, four), 1);
    EXPECT_EQ(element_order(F5(), 2, four), 4);
    auto p_minus_1 = factor(Nat(kBigPrime) - 1);
    ASSERT_TRUE(p_minus_1.complete);
    PrimeField big{Nat(kBigPrime)};
    EXPECT_EQ(element_order(big, big.neg(1), p_minus_1), 2);
}

TEST(ElementOrder, ErrorPaths) {
    auto partial = factor(Nat("1000000007") * Nat("1000000009"), 0);
    EXPECT_EQ(kind_of([&] { element_order(F5(), 2, partial); }), ErrorKind::IncompleteFactorization);
    // 3^3 = 2 mod 5, so 3 is not in a group of order 3.
    EXPECT_EQ(kind_of([] { element_order(F5(), 3, factor(3)); }), ErrorKind::NotAUnit);
}

TEST(ElementOrder, OrderIsExactForEveryUnitOfSmallFields) {
    for (const PrimeField* F : {&F3(), &F5(), &F7(), &F11()}) {
        const std::uint64_t p = F->modulus().get_ui();
        auto group = factor(F->modulus() - 1);
        for (std::uint64_t g = 1; g < p; ++g) {
            Nat ord = element_order(*F, Nat(static_cast<unsigned long>(g)), group);
            std::uint64_t k = 1, acc = g;
            while (acc != 1) acc = acc * g % p, ++k;
            EXPECT_EQ(ord, k);
            EXPECT_EQ(F->pow(Nat(static_cast<unsigned long>(g)), ord), 1);
            for (const auto& [r, e] : factor(ord).factors) {
                EXPECT_NE(F->pow(Nat(static_cast<unsigned long>(g)), ord / r), 1);
            }
        }
    }
}

TEST(ProjectivelyPrimitive, PaperExamples) {
    const PrimeField big{Nat(kBigPrime)};
    const Nat p(kBigPrime);
    const Nat cof = (p * p * p - 1) / (p - 1);
    auto hint = known_factorization(cof, {{cof, 1}});
    EXPECT_TRUE(is_projectively_primitive(FpPoly::parse(big, "x^3-x-1"), hint));
    EXPECT_TRUE(is_projectively_primitive(FpPoly::parse(big, "x^3-x-1")));
    EXPECT_TRUE(is_projectively_primitive(f3_cubic()));
    EXPECT_TRUE(is_projectively_primitive(f5_cubic()));
    EXPECT_FALSE(is_projectively_primitive(FpPoly::parse(F3(), "x^2+1")));
}

TEST(ProjectivelyPrimitive, HintMustMatch) {
    auto wrong = factor(12);
    EXPECT_EQ(kind_of([&] { is_projectively_primitive(f5_cubic(), wrong); }), ErrorKind::InvalidInput);
}

TEST(ProjectivelyPrimitive, AgreesWithQuotientGroupOracle) {
    for (const PrimeField* F : {&F2(), &F3(), &F5(), &F7()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (std::size_t m = 2; m <= 3; ++m) {
            for_each_monic_small(p, m, [&](const SmallPoly& s) {
                ASSERT_EQ(is_projectively_primitive(to_fp(*F, s)), small_projectively_primitive(s, p)) << to_fp(*F, s).to_string();
            });
        }
    }
}

TEST(ProjectivelyPrimitive, PrimitiveImpliesProjectivelyPrimitive) {
    for (const PrimeField* F : {&F3(), &F5(), &F7()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (std::size_t m = 2; m <= 3; ++m) {
            for_each_monic_small(p, m, [&](const SmallPoly& s) {
                if (small_primitive(s, p)) {
                    EXPECT_TRUE(is_projectively_primitive(to_fp(*F, s)));
                    EXPECT_TRUE(is_primitive(to_fp(*F, s)));
                }
            });
        }
    }
}

TEST(ProjectivelyPrimitive, InvariantUnderRootScaling) {
    for (const PrimeField* F : {&F2(), &F3(), &F5(), &F7()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (std::size_t m = 2; m <= 3 && ipow(p, m) <= 343; ++m) {
            for_each_monic_small(p, m, [&](const SmallPoly& s) {
                const FpPoly f = to_fp(*F, s);
                const bool base = is_projectively_primitive(f);
                for (unsigned long lambda = 1; lambda < p; ++lambda) {
                    ASSERT_EQ(is_projectively_primitive(f.rescale_roots(Nat(lambda))), base) << f.to_string() << " lambda=" << lambda;
                }
            });
        }
    }
}

TEST(NormSign, MatchesFrobeniusNorm) {
    // N(alpha) = alpha^((p^m-1)/(p-1)) must equal (-1)^m f(0).
    for (const PrimeField* F : {&F3(), &F5(), &F7()}) {
        for (std::size_t m = 2; m <= 3; ++m) {
            for (const auto& f : enumerate_projectively_primitive(*F, m)) {
                QuotientRing ring(f);
                FpPoly norm = ring.pow(ring.x(), projective_group_order(F->modulus(), m));
                Nat expected = m % 2 == 0 ? f.coefficient(0) : F->neg(f.coefficient(0));
                EXPECT_EQ(norm, FpPoly::constant(*F, expected)) << f.to_string();
            }
        }
    }
}

TEST(MakePrimitive, AlreadyPrimitiveKeepsLambdaOne) {
    // x^3+3x+3 over F_5 is primitive (root order 124 by brute force).
    auto r = make_primitive(f5_cubic());
    EXPECT_EQ(r.lambda, 1);
    EXPECT_EQ(r.polynomial, f5_cubic());
    EXPECT_TRUE(brute_force_primitive(r.polynomial));
}

TEST(MakePrimitive, RepairsEveryNonPrimitiveQuadraticOverF7) {
    auto all = enumerate_projectively_primitive(F7(), 2);
    ASSERT_EQ(all.size(), 12u);
    int primitive = 0, repaired = 0;
    for (const auto& f : all) {
        const bool was = small_primitive(to_small(f), 7);
        primitive += was;
        auto r = make_primitive(f);
        EXPECT_EQ(small_root_order(to_small(r.polynomial), 7), 48u) << f.to_string();
        EXPECT_EQ(r.polynomial, f.rescale_roots(r.lambda));
        if (!was) {
            EXPECT_NE(r.lambda, 1);
            ++repaired;
        }
    }
    EXPECT_EQ(primitive, 8);
    EXPECT_EQ(repaired, 4);
}

TEST(MakePrimitive, PostconditionForAllSmallCases) {
    for (const PrimeField* F : {&F2(), &F3(), &F5()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (std::size_t m = 2; m <= 3; ++m) {
            for (const auto& f : enumerate_projectively_primitive(*F, m)) {
                auto r = make_primitive(f);
                EXPECT_EQ(small_root_order(to_small(r.polynomial), p), ipow(p, m) - 1) << f.to_string();
                // g(x) = lambda^m f(x / lambda), checked pointwise at every x
                Nat lm = F->pow(r.lambda, Nat(static_cast<unsigned long>(m)));
                Nat linv = F->inv(r.lambda);
                for (unsigned long x = 0; x < p; ++x) {
                    EXPECT_EQ(r.polynomial.evaluate(Nat(x)), F->mul(lm, f.evaluate(F->mul(Nat(x), linv))));
                }
            }
        }
    }
}

TEST(MakePrimitive, RejectsNonProjectivelyPrimitive) {
    EXPECT_EQ(kind_of([] { make_primitive(FpPoly::parse(F3(), "x^2+1")); }), ErrorKind::InvalidInput);
}

TEST(Search, ExhaustiveLex) {
    EXPECT_EQ(search_projectively_primitive(F2(), 3), FpPoly::parse(F2(), "x^3+x+1"));
    EXPECT_EQ(search_projectively_primitive(F3(), 3), f3_cubic());
    auto all = enumerate_projectively_primitive(F3(), 3);
    EXPECT_NE(std::find(all.begin(), all.end(), f3_cubic()), all.end());
}

TEST(Search, F7QuadraticCounts) {
    auto all = enumerate_projectively_primitive(F7(), 2);
    EXPECT_EQ(all.size(), 12u);
    int primitive = 0;
    for (const auto& f : all) primitive += brute_force_primitive(f);
    EXPECT_EQ(primitive, 8);
}

TEST(Search, SeededRandomIsReproducible) {
    SearchOptions opts;
    opts.strategy = SearchStrategy::SeededRandom;
    opts.seed = 42;
    FpPoly a = search_projectively_primitive(F11(), 3, opts);
    FpPoly b = search_projectively_primitive(F11(), 3, opts);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(is_projectively_primitive(a));
}

TEST(Search, SmallCoefficientsFirstOnTheBigPrime) {
    const PrimeField big{Nat(kBigPrime)};
    SearchOptions opts;
    opts.strategy = SearchStrategy::SmallCoefficientsFirst;
    FpPoly f = search_projectively_primitive(big, 3, opts);
    for (const auto& c : f.coefficients()) EXPECT_TRUE(c == 0 || c == 1 || c == big.modulus() - 1);
    EXPECT_TRUE(is_projectively_primitive(f));
}

TEST(Search, NotFoundWhenNoneExist) {
    SearchOptions opts;
    opts.strategy = SearchStrategy::SeededRandom;
    opts.random_attempts = 0;
    EXPECT_EQ(kind_of([&] { search_projectively_primitive(F5(), 2, opts); }), ErrorKind::NotFound);
}

}  // namespace
}  // namespace fj
