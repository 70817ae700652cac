#include <gtest/gtest.h>

#include "fj/oracle.hpp"
#include "fj/projective.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

namespace fj {
namespace {

using namespace fj::testing;

std::vector<std::vector<std::uint64_t>> to_rows(const ProjMatrix& m) {
    std::vector<std::vector<std::uint64_t>> a(m.size(), std::vector<std::uint64_t>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m.at(i, j).get_ui();
    return a;
}

ProjPoint proj(const PrimeField& F, std::initializer_list<unsigned long> v) {
    std::vector<Nat> c;
    for (auto x : v) c.emplace_back(x);
    return ProjPoint::canonical(F, std::move(c));
}

TEST(ProjMatrix, RejectsSingularAndMisshapen) {
    EXPECT_THROW(ProjMatrix::parse(F5(), "1,2;2,4"), Error);
    EXPECT_THROW(ProjMatrix::parse(F5(), "1,2;3"), Error);
    EXPECT_THROW((ProjMatrix(F5(), 2, std::vector<Nat>{1, 0, 0})), Error);
}

TEST(ProjMatrix, ParsesNegativeEntries) {
    ProjMatrix m = printed_f5_matrix();
    EXPECT_EQ(m.at(1, 0), 4);
    EXPECT_EQ(m.at(2, 1), 4);
    EXPECT_EQ(m, ProjMatrix::parse(F5(), "0,0,3;4,0,3;0,4,0"));
}

TEST(Companion, StandardForm) {
    ProjMatrix c = companion_matrix(f3_cubic());
    EXPECT_EQ(c, ProjMatrix::parse(F3(), "0,0,2;1,0,1;0,1,0"));
    EXPECT_EQ(c.scaled(F3().neg(1)), printed_f3_matrix());
    EXPECT_EQ(companion_matrix(FpPoly::parse(F7(), "x^2+1")), ProjMatrix::parse(F7(), "0,-1;1,0"));
    EXPECT_EQ(companion_matrix(f5_cubic()).scaled(4), printed_f5_matrix());
}

TEST(Companion, RejectsNonMonic) {
    EXPECT_THROW(companion_matrix(FpPoly::parse(F5(), "2*x^3+1")), Error);
}

TEST(CharPoly, Examples) {
    EXPECT_EQ(char_poly(ProjMatrix::identity(F5(), 2)), FpPoly::parse(F5(), "x^2-2*x+1"));
    EXPECT_EQ(char_poly(printed_f5_matrix()), FpPoly::parse(F5(), "x^3+3*x+2"));
    PrimeField big{Nat(kBigPrime)};
    FpPoly f = FpPoly::parse(big, "x^3-x-1");
    EXPECT_EQ(char_poly(companion_matrix(f)), f);
}

TEST(CharPoly, RecoversEveryMonicCubicOverF5) {
    for_each_monic_small(5, 3, [](const SmallPoly& s) {
        FpPoly f = to_fp(F5(), s);
        if (f.coefficient(0) == 0) return;  // singular companion
        ASSERT_EQ(char_poly(companion_matrix(f)), f);
    });
}

TEST(CharPoly, AgreesWithCofactorExpansion) {
    // Every invertible 3x3 matrix over F_3 with entries drawn from a fixed stride.
    std::uint64_t checked = 0;
    for (std::uint64_t code = 0; code < 19683; code += 7) {
        std::vector<Nat> e(9);
        std::uint64_t c = code;
        for (auto& v : e) v = static_cast<unsigned long>(c % 3), c /= 3;
        if (determinant(F3(), 3, e) == 0) continue;
        ProjMatrix m(F3(), 3, e);
        ASSERT_EQ(to_small(char_poly(m)), laplace_char_poly(to_rows(m), 3)) << m.to_string();
        ++checked;
    }
    EXPECT_GT(checked, 1000u);
    // and a sample of 4x4 over F_5
    for (std::uint64_t seed = 1; seed < 400; ++seed) {
        std::vector<Nat> e(16);
        std::uint64_t c = seed * 2654435761u;
        for (auto& v : e) v = static_cast<unsigned long>((c >>= 3) % 5);
        if (determinant(F5(), 4, e) == 0) continue;
        ProjMatrix m(F5(), 4, e);
        ASSERT_EQ(to_small(char_poly(m)), laplace_char_poly(to_rows(m), 5)) << m.to_string();
    }
}

TEST(Transitivity, Examples) {
    EXPECT_TRUE(is_transitive(printed_f5_matrix()));
    EXPECT_TRUE(is_transitive(printed_f3_matrix()));
    for (const PrimeField* F : {&F3(), &F5(), &F7()}) {
        EXPECT_FALSE(is_transitive(ProjMatrix::parse(*F, "1,1;0,1")));
        EXPECT_FALSE(is_transitive(ProjMatrix::identity(*F, 3)));
    }
}

TEST(ApplyMap, Examples) {
    const ProjMatrix m = printed_f5_matrix();
    EXPECT_EQ(apply_map(m, proj(F5(), {3, 0, 1})), proj(F5(), {1, 0, 0}));
    EXPECT_EQ(apply_map(m, proj(F5(), {0, 0, 1})), proj(F5(), {1, 1, 0}));
    EXPECT_FALSE(apply_map(m, proj(F5(), {0, 0, 1})).in_affine_chart());
    const ProjPoint p = proj(F5(), {2, 4, 1});
    EXPECT_EQ(apply_map(ProjMatrix::identity(F5(), 3), p), p);
}

TEST(ProjPoint, CanonicalScaling) {
    EXPECT_EQ(proj(F5(), {2, 4, 2}).coords(), pt({1, 2, 1}));
    EXPECT_EQ(proj(F5(), {3, 0, 0}).coords(), pt({1, 0, 0}));
    EXPECT_EQ(proj(F5(), {4, 2, 0}).coords(), pt({2, 1, 0}));
    EXPECT_THROW(proj(F5(), {0, 0, 0}), Error);
}

TEST(ApplyMap, IndependentOfRepresentatives) {
    for (const PrimeField* F : {&F3(), &F5()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (const auto& f : enumerate_projectively_primitive(*F, 3)) {
            const ProjMatrix m = companion_matrix(f);
            for_each_point(F->modulus(), 3, [&](const AffinePoint& v) {
                if (v[0] == 0 && v[1] == 0 && v[2] == 0) return;
                const ProjPoint base = apply_map(m, ProjPoint::canonical(*F, v));
                for (unsigned long s = 2; s < p; ++s) {
                    std::vector<Nat> w;
                    for (const auto& c : v) w.push_back(F->mul(c, Nat(s)));
                    ASSERT_EQ(apply_map(m, ProjPoint::canonical(*F, w)), base);
                    ASSERT_EQ(apply_map(m.scaled(Nat(s)), ProjPoint::canonical(*F, v)), base);
                }
                auto expect = small_apply(to_rows(m), {v[0].get_ui(), v[1].get_ui(), v[2].get_ui()}, p);
                ASSERT_EQ(base.coords(), pt({expect[0], expect[1], expect[2]}));
            });
        }
    }
}

TEST(Dehom, Examples) {
    RationalTuple id = dehom(ProjMatrix::identity(F5(), 3));
    EXPECT_EQ(id.numerators[0], LinearForm(pt({1, 0}), 0));
    EXPECT_EQ(id.numerators[1], LinearForm(pt({0, 1}), 0));
    EXPECT_EQ(id.denominator, LinearForm(pt({0, 0}), 1));

    RationalTuple r = dehom(printed_f5_matrix());
    EXPECT_EQ(r.numerators[0], LinearForm(pt({0, 0}), 3));
    EXPECT_EQ(r.numerators[1], LinearForm(pt({4, 0}), 3));
    EXPECT_EQ(r.denominator, LinearForm(pt({0, 4}), 0));

    // printed M^2 rows (0,-3,0),(0,-3,-3),(1,0,-3)
    RationalTuple r2 = dehom(printed_f5_matrix().power(2));
    EXPECT_EQ(r2.numerators[0], LinearForm(pt({0, 2}), 0));
    EXPECT_EQ(r2.numerators[1], LinearForm(pt({0, 2}), 2));
    EXPECT_EQ(r2.denominator, LinearForm(pt({1, 0}), 2));
    EXPECT_EQ(printed_f5_matrix().power(3), ProjMatrix::parse(F5(), "3,0,1;3,3,1;0,3,3"));
}

TEST(Dehom, AgreesWithApplyMapOffTheDenominatorZeroes) {
    for (const PrimeField* F : {&F3(), &F5(), &F7()}) {
        for (std::size_t m = 2; m <= 3; ++m) {
            for (const auto& f : enumerate_projectively_primitive(*F, m)) {
                const ProjMatrix M = companion_matrix(f);
                const RationalTuple r = dehom(M.power(2));
                for_each_point(F->modulus(), M.n(), [&](const AffinePoint& x) {
                    Nat d = r.denominator.evaluate(*F, x);
                    if (d == 0) return;
                    Nat dinv = F->inv(d);
                    AffinePoint y;
                    for (const auto& a : r.numerators) y.push_back(F->mul(a.evaluate(*F, x), dinv));
                    ProjPoint q = apply_map(M, apply_map(M, ProjPoint::lift(x)));
                    ASSERT_TRUE(q.in_affine_chart());
                    ASSERT_EQ(q.dehomogenize(), y);
                });
            }
        }
    }
}

TEST(JumpIndex, Examples) {
    const ProjMatrix m = printed_f5_matrix();
    EXPECT_EQ(jump_index(m, ProjPoint::lift(pt({3, 0}))), 3u);
    EXPECT_EQ(jump_index(m, ProjPoint::lift(pt({1, 1}))), 1u);
    EXPECT_EQ(absolute_jump_index(m), 3u);
    EXPECT_THROW(jump_index(m, proj(F5(), {1, 0, 0})), Error);
}

TEST(JumpIndex, NonTransitiveUnipotent) {
    for (const PrimeField* F : {&F3(), &F5(), &F7()}) {
        EXPECT_EQ(absolute_jump_index(ProjMatrix::parse(*F, "1,1;0,1")), 1u);
    }
}

TEST(JumpIndex, TransitiveMapsReachExactlyNPlusOne) {
    for (const PrimeField* F : {&F3(), &F5(), &F7(), &F11()}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            for (const auto& f : enumerate_projectively_primitive(*F, n + 1)) {
                EXPECT_EQ(absolute_jump_index(companion_matrix(f)), n + 1) << f.to_string();
            }
        }
    }
}

TEST(PsiReference, Examples) {
    const ProjMatrix m = printed_f5_matrix();
    EXPECT_EQ(psi_reference(m, pt({1, 1})), pt({2, 3}));
    EXPECT_EQ(psi_reference(m, pt({3, 0})), pt({0, 0}));
    EXPECT_EQ(psi_reference(m, pt({2, 0})), pt({0, 3}));
}

TEST(PsiReference, MatchesDefinitionOnSmallIntegers) {
    for (const PrimeField* F : {&F3(), &F5()}) {
        const std::uint64_t p = F->modulus().get_ui();
        for (const auto& f : enumerate_projectively_primitive(*F, 3)) {
            const ProjMatrix M = companion_matrix(f);
            for_each_point(F->modulus(), 2, [&](const AffinePoint& x) {
                auto expect = small_psi(to_rows(M), {x[0].get_ui(), x[1].get_ui()}, p);
                ASSERT_EQ(psi_reference(M, x), pt({expect[0], expect[1]}));
            });
        }
    }
}

TEST(PsiReference, SingleCycleForTransitiveMaps) {
    for (const PrimeField* F : {&F2(), &F3(), &F5(), &F7(), &F11(), &F13()}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            if (point_count(F->modulus(), n) > (1u << 12)) continue;
            for (const auto& f : enumerate_projectively_primitive(*F, n + 1)) {
                const ProjMatrix M = companion_matrix(f);
                auto r = verify_full_orbit([&](const AffinePoint& x) { return psi_reference(M, x); },
                                           [&](const AffinePoint& x) { return point_rank(F->modulus(), x).get_ui(); },
                                           AffinePoint(n, Nat(0)), point_count(F->modulus(), n));
                ASSERT_TRUE(r.is_full_cycle) << f.to_string();
            }
        }
    }
}

}  // namespace
}  // namespace fj
