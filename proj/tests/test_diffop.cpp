#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spinor_lab/diffop.hpp"
#include "spinor_lab/walsh_transform.hpp"

using namespace spinor_lab;

namespace {

WalshVector phi(std::initializer_list<int> support, long c = 1) {
    return WalshVector::basis(DyadicIndex::from_support(support), GaussianRational(c));
}

}  // namespace

TEST(Partial, WalshGolden) {
    EXPECT_EQ(partial_k(phi({1}), 1), phi({}, -2));
    EXPECT_TRUE(partial_k(phi({2}), 1).empty());
    EXPECT_EQ(partial_k(phi({1, 3}), 3), phi({1}, -2));
}

TEST(Partial, MatchesPointwiseDifference) {
    const TruncationLevel level(5);
    std::mt19937_64 rng(2);
    WalshVector f;
    for (int t = 0; t < 12; ++t) f.add(index_from_integer(rng() % 32), GaussianRational(static_cast<long>(rng() % 9) - 4));
    for (int k = 1; k <= 5; ++k) {
        const auto lhs = to_point_values(partial_map(level, k).apply(f), level);
        EXPECT_EQ(lhs, partial_k_pointwise(to_point_values(f, level), k)) << "k = " << k;
    }
}

TEST(Dirac, LowLevelGoldens) {
    const Representation one = Representation::dyadic(gamma_presets::zero(3), 1);
    WalshVector expected = phi({1});
    expected.add(DyadicIndex(), GaussianRational(-1));
    EXPECT_EQ(build_D(one).apply(phi({1})), expected);

    const Representation two = Representation::dyadic(gamma_presets::zero(3), 2);
    WalshVector expected2 = phi({1, 2});
    expected2.add(DyadicIndex(), GaussianRational(-1));
    EXPECT_EQ(build_D(two).apply(phi({1, 2})), expected2);
}

TEST(Dirac, FiltrationInvariance) {
    const Representation zero = Representation::dyadic(gamma_presets::zero(4), 4);
    for (int k = 1; k <= 4; ++k) EXPECT_TRUE(check_filtration_invariance(zero, k).passed()) << k;
    // Row 3 leaves W_3 through coordinate 7.
    const Representation chained = Representation::dyadic(GammaSpec({{1, 3}, {3, 7}}, 7), 7);
    EXPECT_FALSE(check_filtration_invariance(chained, 1).passed());
}

TEST(Spectrum, LevelOneAndTwoGoldens) {
    const Representation rep = Representation::dyadic(gamma_presets::zero(3), 1);
    const SpectralData s = integer_spectrum(build_D(rep), 1);
    ASSERT_TRUE(s.complete);
    ASSERT_EQ(s.eigen.size(), 2U);
    EXPECT_EQ(s.eigen[0].value, 0);
    EXPECT_EQ(s.eigen[0].vectors.front(), phi({}));
    EXPECT_EQ(s.eigen[1].value, 1);
    WalshVector v = phi({1});
    v.add(DyadicIndex(), GaussianRational(-1));
    EXPECT_EQ(s.eigen[1].vectors.front(), v);

    const SpectralData s2 = integer_spectrum(build_D(Representation::dyadic(gamma_presets::zero(3), 2)), 2);
    ASSERT_EQ(s2.eigen.size(), 2U);
    EXPECT_EQ(s2.eigen[0].algebraic_multiplicity, 2);
    EXPECT_EQ(s2.eigen[1].algebraic_multiplicity, 2);
}

TEST(Spectrum, EigenvectorsAreEigenvectors) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(5), 5, 4);
    for (const LinearMap& d : {build_D(rep), build_Dprime(rep)}) {
        const SpectralData s = integer_spectrum(d, 5);
        for (const auto& e : s.eigen)
            for (const auto& v : e.vectors) {
                WalshVector lambda_v;
                lambda_v.add_scaled(v, GaussianRational(Rational(e.value)));
                EXPECT_EQ(d.apply(v), lambda_v);
            }
    }
}

TEST(Spectrum, DefectiveExample) {
    // gamma = {1,4} at n = 4: eigenvalue 0 has algebraic multiplicity 8 but
    // only 7 independent eigenvectors.
    const Representation rep = Representation::dyadic(GammaSpec({{1, 4}}, 4), 4);
    const SpectralData s = integer_spectrum(build_D(rep), 4);
    EXPECT_FALSE(s.complete);
    EXPECT_LT(s.geometric_total(), 16U);
    bool found = false;
    for (const auto& e : s.eigen)
        if (e.value == 0) {
            found = true;
            EXPECT_EQ(e.algebraic_multiplicity, 8);
            EXPECT_EQ(e.vectors.size(), 7U);
        }
    EXPECT_TRUE(found);
}

TEST(Spectrum, RecursionAgreesWithOracle) {
    for (int k = 1; k <= 4; ++k) {
        const Representation rep = Representation::dyadic(gamma_presets::zero(4), 4, k);
        const auto r = recursive_diagonalize(rep, k);
        EXPECT_FALSE(r.used_fallback) << k;
        EXPECT_TRUE(r.agrees_with_oracle) << k;
    }
}

TEST(Identities, TConjugatesDIntoDprime) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(8), 8);
    EXPECT_TRUE(verify_T_conjugation(rep).passed());
}

TEST(Identities, RecoveryHoldsWithResolvedSign) {
    const Representation rep = Representation::dyadic(gamma_presets::zero(5), 5);
    const auto r = verify_recovery(rep);
    EXPECT_TRUE(r.sign_resolved.passed());
    EXPECT_TRUE(r.with_character.passed());
    // The D form needs the extra sign; only the D' half of as_printed holds.
    EXPECT_EQ(r.as_printed.failed, 5U);
}

TEST(Derivative, ScaledDifferenceConverges) {
    const auto errors = derivative_limit_check([](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }, 12);
    ASSERT_EQ(errors.size(), 11U);
    for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LT(errors[i].max_error, errors[i - 1].max_error);
    EXPECT_LT(errors.back().max_error, 0.01);
    EXPECT_THROW(derivative_limit_check([](double t) { return t; }, [](double) { return 1.0; }, 1), InputError);
}
