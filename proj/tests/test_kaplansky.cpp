#include <gtest/gtest.h>

#include <random>

#include "spinor_lab/kaplansky.hpp"

using namespace spinor_lab;

namespace {

// Digit j (1-based) of the result: m_j + gamma^{row}_j + [j <= flips], mod 2.
std::uint64_t digitwise(std::uint64_t m, const GammaSpec& g, int row, int flips) {
    std::uint64_t out = 0;
    for (int j = 1; j <= 64; ++j) {
        int bit = static_cast<int>((m >> (j - 1)) & 1U);
        if (row >= 1 && g.entry(row, j)) bit ^= 1;
        if (j <= flips) bit ^= 1;
        if (bit) out |= std::uint64_t{1} << (j - 1);
    }
    return out;
}

}  // namespace

TEST(Kaplansky, IndexMapsMatchDigitDefinition) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
        const GammaSpec g = gamma_presets::random_closed(rng, 7);
        for (int k = 1; k <= 7; ++k)
            for (std::uint64_t m = 0; m < 128; ++m) {
                ASSERT_EQ(N_gamma(k, m, g), digitwise(m, g, k - 1, k - 1));
                ASSERT_EQ(N_gamma_prime(k, m, g), digitwise(m, g, k, k - 1));
            }
    }
    EXPECT_EQ(flip_low_digits(0b1010, 3), 0b1101U);
}

TEST(Kaplansky, FormulaGolden) {
    const GammaSpec g = gamma_presets::zero(6);
    EXPECT_EQ(star_formula(AlgebraElement::w(2), AlgebraElement::w(5), g), AlgebraElement::w(4));
    EXPECT_EQ(star_formula(AlgebraElement::w(0), AlgebraElement::wp(3), g), AlgebraElement::wp(3));
    EXPECT_TRUE(verify_formula_isometry(g, 64, 12).passed());
}

TEST(Kaplansky, CalibrationFindsCliffordIdentification) {
    const GammaSpec g = gamma_presets::zero(6);
    const Representation rep = Representation::dyadic(g, 6);
    const auto cal = calibrate(g, rep);
    EXPECT_EQ(cal.ranking.size(), 32U);
    EXPECT_EQ(cal.convention.unprimed_family, GeneratorFamily::Jprime);
    EXPECT_EQ(cal.convention.unprimed_shift, -1);
    EXPECT_EQ(cal.convention.primed_shift, 0);
    EXPECT_EQ(cal.convention.primed_sign, 1);
    for (const auto& [name, agreement] : cal.rules)
        if (name.rfind("w'_k", 0) == 0) EXPECT_EQ(agreement.agree, agreement.total) << name;
}

TEST(Kaplansky, OracleIsANormedProduct) {
    const GammaSpec g = gamma_presets::real_example(6);
    const Representation rep = Representation::dyadic(g, 6);
    const CliffordAlgebra algebra(rep, calibrate(g, rep).convention);
    EXPECT_TRUE(verify_norm_composition(ProductKind::Oracle, algebra, g, 200, 3).passed());
    EXPECT_TRUE(verify_algebra_laws(algebra, 200, 3).passed());
}

TEST(Kaplansky, LeftInverse) {
    const GammaSpec g = gamma_presets::zero(6);
    const Representation rep = Representation::dyadic(g, 6);
    const CliffordAlgebra algebra(rep, calibrate(g, rep).convention);
    const auto symbols = algebra.left_symbols();
    ASSERT_GE(symbols.size(), 3U);
    AlgebraElement a = AlgebraElement::w(0, Rational(2));
    a += AlgebraElement::symbol(symbols[1], Rational(3));
    a += AlgebraElement::symbol(symbols[2], Rational(-1, 2));
    const AlgebraElement inv = left_inverse(a);
    EXPECT_EQ(star_oracle(inv, star_oracle(a, AlgebraElement::wp(5), algebra), algebra), AlgebraElement::wp(5));
    EXPECT_THROW(left_inverse(AlgebraElement()), InputError);
}

TEST(Kaplansky, ReflectionRelation) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(5), 5);
    EXPECT_TRUE(verify_reflection_relation(rep, {Rational(3, 5), Rational(0), Rational(4, 5)}).passed());
    EXPECT_TRUE(verify_reflection_relation(rep, {Rational(0), Rational(1)}).passed());
    EXPECT_THROW(verify_reflection_relation(rep, {Rational(1), Rational(1)}), InputError);
}
