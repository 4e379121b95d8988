#include <gtest/gtest.h>

#include "spinor_lab/structures.hpp"

using namespace spinor_lab;

TEST(Structures, RealStructureOnGamma1) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(6), 6);
    const AntilinearMap s = build_S(rep);
    EXPECT_EQ(s * s, LinearMap::identity(rep.level()));
    EXPECT_TRUE(verify_structure(s, rep, 1).passed());
    EXPECT_TRUE(check_standard_conditions(rep.cocycles(), rep.level(), StandardForm::Real).passed());
    EXPECT_EQ(fixed_real_dimension(s), rep.level().dimension());
}

TEST(Structures, QuaternionicStructureOnGammaMinus1) {
    const Representation rep = Representation::dyadic(gamma_presets::quaternionic_example(6), 6);
    const AntilinearMap q = build_Q(rep);
    EXPECT_EQ(q * q, GaussianRational(-1) * LinearMap::identity(rep.level()));
    EXPECT_TRUE(verify_structure(q, rep, -1).passed());
    EXPECT_TRUE(check_standard_conditions(rep.cocycles(), rep.level(), StandardForm::Quaternionic).passed());
    EXPECT_EQ(fixed_real_dimension(q), 0U);
}

TEST(Structures, NegativeControls) {
    const Representation quat = Representation::dyadic(gamma_presets::quaternionic_example(6), 6);
    EXPECT_FALSE(verify_structure(build_S(quat), quat, 1).passed());
    EXPECT_FALSE(check_standard_conditions(quat.cocycles(), quat.level(), StandardForm::Real).passed());
    const Representation real = Representation::dyadic(gamma_presets::real_example(6), 6);
    EXPECT_FALSE(verify_structure(build_Q(real), real, -1).passed());
}

TEST(Structures, ExactTypeMatchesStructure) {
    EXPECT_EQ(classify_antilinear(Representation::dyadic(gamma_presets::real_example(4), 4)).tag, RepresentationType::Real);
    // zero(2) is in the Gamma-1 class with K = n = 2.
    EXPECT_EQ(classify_antilinear(Representation::dyadic(gamma_presets::zero(2), 2)).tag,
              RepresentationType::Quaternionic);
}

TEST(Structures, FiniteTypesFollowCartanDiracSign) {
    const std::vector<RepresentationType> expected{RepresentationType::Quaternionic, RepresentationType::Quaternionic,
                                                   RepresentationType::Real, RepresentationType::Real,
                                                   RepresentationType::Quaternionic};
    for (int m = 1; m <= 5; ++m) {
        const auto verdict = classify_antilinear(Representation::finite(m));
        EXPECT_EQ(verdict.tag, expected[static_cast<std::size_t>(m - 1)]) << "m = " << m;
        EXPECT_EQ(verdict.commutant_dimension, 1U);
        EXPECT_EQ(sgn(verdict.lambda), cartan_dirac_sign(m));
    }
    EXPECT_EQ(cartan_dirac_sign(7), 1);
    EXPECT_EQ(cartan_dirac_sign(6), -1);
    EXPECT_THROW(cartan_dirac_sign(0), InputError);
}

TEST(Structures, TIsAnInvolution) {
    const Representation rep = Representation::dyadic(gamma_presets::real_example(5), 5);
    const LinearMap t = build_T(rep);
    EXPECT_EQ(t * t, LinearMap::identity(rep.level()));
}
