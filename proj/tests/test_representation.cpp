#include <gtest/gtest.h>

#include <random>

#include "spinor_lab/representation.hpp"
#include "spinor_lab/walsh_transform.hpp"

using namespace spinor_lab;

TEST(Gamma, ValidationErrorsNameThePair) {
    try {
        validate(GammaSpec({{1, 3}, {4, 4}}, 6));
        FAIL() << "diagonal entry accepted";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("[4,4]"), std::string::npos);
    }
    EXPECT_THROW(validate(GammaSpec({{0, 2}}, 4)), InputError);
    EXPECT_THROW(validate(GammaSpec({{1, 65}}, 4)), InputError);
    EXPECT_THROW(validate(GammaSpec({}, 0)), InputError);
    EXPECT_FALSE(validate(GammaSpec({}, 4)).warnings.empty());  // row 3 empty
}

TEST(Gamma, Classes) {
    EXPECT_EQ(classify(gamma_presets::real_example(8)).tag, GammaTag::Gamma1);
    EXPECT_EQ(classify(gamma_presets::quaternionic_example(8)).tag, GammaTag::GammaMinus1);
    EXPECT_EQ(classify(gamma_presets::zero(4)).tag, GammaTag::Neither);
    const auto c = classify(GammaSpec({{1, 2}}, 4));
    EXPECT_EQ(c.tag, GammaTag::Neither);
    EXPECT_EQ(c.gamma1_witness, 2);
}

TEST(Gamma, FiltrationLevels) {
    const GammaSpec g({{1, 3}}, 3);
    EXPECT_EQ(required_level(g, 1), 3);
    EXPECT_EQ(required_level(g, 2), 3);
    EXPECT_EQ(filtration_levels(gamma_presets::zero(4), 4), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_THROW(required_level(g, 4), InputError);
    EXPECT_EQ(generators_at_level(gamma_presets::real_example(8), 6), 4);
}

TEST(Gamma, ClosedGamma1NeedsCompatibleSize) {
    // Row weights sum to an even number, so sum_{k<=R} k must be even.
    std::mt19937_64 rng(3);
    EXPECT_THROW(gamma_presets::random_closed_in_class(rng, 6, GammaTag::Gamma1, 2000), Error);
    EXPECT_EQ(classify(gamma_presets::random_closed_in_class(rng, 7, GammaTag::Gamma1)).tag, GammaTag::Gamma1);
}

TEST(Cocycles, DyadicTensorConstantAreCocycles) {
    const TruncationLevel level(5);
    EXPECT_TRUE(verify_cocycle(CocycleFamily::dyadic(GammaSpec({{1, 3}, {2, 5}}, 5)), level).passed());
    const GaussianRational i = GaussianRational::i();
    EXPECT_TRUE(verify_cocycle(CocycleFamily::tensor({i, GaussianRational(1), -i, GaussianRational(-1), i}), level).passed());
    EXPECT_TRUE(verify_cocycle(CocycleFamily::constant_one(), level).passed());
    EXPECT_THROW(CocycleFamily::tensor({GaussianRational(2)}), InputError);
}

TEST(Cocycles, BrokenTableIsReported) {
    const TruncationLevel level(2);
    std::vector<std::vector<GaussianRational>> table(2, std::vector<GaussianRational>(4, GaussianRational(1)));
    table[0][1] = GaussianRational(-1);  // c_1(x) = -1 only at x = d^1: breaks c_1(x)* = c_1(x + d^1)
    EXPECT_FALSE(verify_cocycle(CocycleFamily::explicit_table(level, table), level).passed());
}

TEST(Representation, WalshActionMatchesPointwiseDefinition) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 4; ++t) {
        const GammaSpec g = gamma_presets::random_closed(rng, 5);
        const Representation rep = Representation::dyadic(g, 5);
        for (int k = 1; k <= rep.generator_count(); ++k) {
            EXPECT_EQ(build_J(rep, k), build_J_pointwise(rep, k)) << "J" << k;
            EXPECT_EQ(build_Jprime(rep, k), build_Jprime_pointwise(rep, k)) << "J'" << k;
        }
    }
}

TEST(Representation, WalshActionGolden) {
    // J_k phi_a = -i (-1)^{a_k} phi_{a + gamma^k + sigma^{k-1}}
    const Representation rep = Representation::dyadic(GammaSpec({{1, 3}}, 3), 3);
    const WalshVector img = build_J(rep, 1).apply(WalshVector::basis(DyadicIndex::delta(1)));
    EXPECT_EQ(img, WalshVector::basis(DyadicIndex::from_support({1, 3}), GaussianRational::i()));
    const WalshVector img2 = build_Jprime(rep, 2).apply(WalshVector::basis(DyadicIndex()));
    EXPECT_EQ(img2, WalshVector::basis(DyadicIndex::from_support({1, 2})));
}

TEST(Representation, CliffordAndCarExact) {
    for (const auto& g : {gamma_presets::zero(6), gamma_presets::real_example(6), gamma_presets::quaternionic_example(6)}) {
        const Representation rep = Representation::dyadic(g, 6);
        EXPECT_TRUE(verify_clifford(rep).passed());
        EXPECT_TRUE(verify_car(rep).passed());
    }
}

TEST(Representation, TensorAndWeightedRepresentations) {
    const TruncationLevel level(4);
    const GaussianRational i = GaussianRational::i();
    const Representation tensor(level, MeasureWeights::haar(level), CocycleFamily::tensor({i, -i, GaussianRational(1), i}));
    EXPECT_TRUE(verify_clifford(tensor).passed());
    EXPECT_TRUE(verify_car(tensor).passed());

    // Non-uniform weights: sqrt weights built so that w(x + d^k)/w(x) is a
    // rational square.
    std::vector<Rational> s(level.dimension());
    for (std::uint64_t x = 0; x < s.size(); ++x) s[x] = Rational(1 + static_cast<long>(x % 3));
    const Representation weighted(level, MeasureWeights::from_sqrt(level, s), CocycleFamily::constant_one());
    EXPECT_TRUE(verify_clifford(weighted).passed());
}

TEST(Representation, AnnihilatorAdjoint) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(5), 5);
    for (int k = 1; k <= rep.generator_count(); ++k) {
        const LinearMap a = build_a(rep, k);
        EXPECT_EQ(build_a_star(rep, k), a.adjoint());
        EXPECT_TRUE((a * a).is_zero());
        // The other sign choice is not the adjoint.
        LinearMap other = GaussianRational(0L, -1L) * build_J(rep, k);
        other -= build_Jprime(rep, k);
        other *= GaussianRational(Rational(1, 2));
        EXPECT_FALSE(other == a.adjoint());
    }
}

TEST(Representation, GeneratorRangeChecked) {
    const Representation rep = Representation::dyadic(gamma_presets::zero(4), 4);
    EXPECT_THROW(build_J(rep, 5), InputError);
    EXPECT_THROW(Representation::dyadic(gamma_presets::quaternionic_example(8), 4, 3), InputError);
}
