#include <gtest/gtest.h>

#include <random>

#include "spinor_lab/exact_linalg.hpp"
#include "spinor_lab/walsh_transform.hpp"

using namespace spinor_lab;

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(to_string(Rational(5)), "5/1");
    EXPECT_EQ(to_string(parse_rational("-2/4")), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational("x"), InputError);
}

TEST(GaussianRational, Arithmetic) {
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(i * i, GaussianRational(-1));
    EXPECT_EQ(GaussianRational(1) / i, -i);
    EXPECT_EQ(GaussianRational(3L, 4L).norm2(), Rational(25));
    EXPECT_TRUE(is_fourth_root_of_unity(-i));
    EXPECT_FALSE(is_fourth_root_of_unity(GaussianRational(1L, 1L)));
}

TEST(Dyadic, IndexConventions) {
    const DyadicIndex a = DyadicIndex::from_support({1, 3});
    EXPECT_EQ(index_to_integer(a), 5U);
    EXPECT_TRUE(a.test(1));
    EXPECT_FALSE(a.test(2));
    EXPECT_EQ(a.weight(), 2);
    EXPECT_EQ(a.highest(), 3);
    EXPECT_EQ(sigma(3), DyadicIndex::from_support({1, 2, 3}));
    EXPECT_EQ(sigma(0), DyadicIndex());
    EXPECT_EQ(a + DyadicIndex::delta(1), DyadicIndex::delta(3));
}

TEST(Dyadic, CheckInvolutionRespectsTruncation) {
    const TruncationLevel level(3);
    EXPECT_EQ(check(DyadicIndex::from_support({1}), level), DyadicIndex::from_support({2, 3}));
    EXPECT_THROW(check(DyadicIndex::delta(4), level), Error);
}

TEST(Dyadic, WalshCharacters) {
    // phi_alpha(x) = (-1)^{sum alpha_k x_k}
    const DyadicIndex alpha = DyadicIndex::from_support({1, 2});
    EXPECT_EQ(walsh_eval(alpha, DyadicIndex::from_support({1})), -1);
    EXPECT_EQ(walsh_eval(alpha, DyadicIndex::from_support({1, 2})), 1);
    EXPECT_EQ(walsh_eval(alpha, DyadicIndex()), 1);
}

TEST(Dyadic, PointOfReal) {
    const TruncationLevel level(4);
    // t = 0.1011b: x_1 = 1, x_2 = 0, x_3 = 1, x_4 = 1
    EXPECT_EQ(point_of_real(11.0 / 16 + 1.0 / 64, level), DyadicIndex::from_support({1, 3, 4}));
    EXPECT_THROW(point_of_real(0.0, level), InputError);
    EXPECT_THROW(point_of_real(1.5, level), InputError);
}

TEST(WalshTransform, RoundTrip) {
    const TruncationLevel level(4);
    std::mt19937_64 rng(1);
    WalshVector f;
    for (int t = 0; t < 10; ++t)
        f.add(index_from_integer(rng() % 16), GaussianRational(Rational(static_cast<long>(rng() % 7) - 3), Rational(static_cast<long>(rng() % 5) - 2)));
    EXPECT_EQ(from_point_values(to_point_values(f, level), level), f);
}

TEST(WalshTransform, PointValuesMatchDirectEvaluation) {
    const TruncationLevel level(3);
    WalshVector f = WalshVector::basis(DyadicIndex::from_support({1, 3}), GaussianRational(2));
    f.add(DyadicIndex(), GaussianRational(1));
    const auto values = to_point_values(f, level);
    for (std::uint64_t x = 0; x < 8; ++x) {
        const int expected = 2 * walsh_eval(DyadicIndex::from_support({1, 3}), index_from_integer(x)) + 1;
        EXPECT_EQ(values[x], GaussianRational(expected));
    }
}

TEST(LinearMap, CompositionAndAdjoint) {
    const TruncationLevel level(2);
    LinearMap m(level);
    m.set_column(0, WalshVector::basis(index_from_integer(1), GaussianRational::i()));
    m.set_column(1, WalshVector::basis(index_from_integer(0)));
    m.set_column(2, WalshVector::basis(index_from_integer(3)));
    m.set_column(3, WalshVector::basis(index_from_integer(2), GaussianRational(-1)));
    const LinearMap adj = m.adjoint();
    EXPECT_EQ(adj.column(std::uint64_t{1}).coefficient(index_from_integer(0)), -GaussianRational::i());
    EXPECT_EQ(m.first_difference(m), -1);
    LinearMap wrong(TruncationLevel(3));
    EXPECT_THROW(m += wrong, InputError);
}

TEST(LinearMap, AntilinearComposition) {
    const TruncationLevel level(1);
    const AntilinearMap conj_only(LinearMap::identity(level));
    const LinearMap times_i = GaussianRational::i() * LinearMap::identity(level);
    // conj(i f) = -i conj(f)
    const AntilinearMap left = conj_only * times_i;
    const AntilinearMap right = (GaussianRational(-1) * times_i) * conj_only;
    EXPECT_EQ(left, right);
    EXPECT_EQ(conj_only * conj_only, LinearMap::identity(level));
}

namespace {

// det(A) over Q by plain Gaussian elimination.
Rational determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

}  // namespace

TEST(ExactLinalg, BerkowitzMatchesEliminationDeterminant) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        IntegerMatrix a(n, std::vector<Integer>(n));
        for (auto& row : a)
            for (auto& v : row) v = static_cast<long>(rng() % 7) - 3;
        const auto p = characteristic_polynomial(a);
        ASSERT_EQ(p.size(), n + 1);
        EXPECT_EQ(p.front(), 1);
        for (long x = -3; x <= 3; ++x) {
            std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational((i == j ? Integer(x) : Integer(0)) - a[i][j]);
            EXPECT_EQ(Rational(evaluate(p, Integer(x))), determinant(m)) << "trial " << trial << " x " << x;
        }
    }
}

TEST(ExactLinalg, IntegerRoots) {
    // (x-2)^2 (x+3) x = x^4 - x^3 - 8x^2 + 12x
    const std::vector<Integer> p{1, -1, -8, 12, 0};
    const auto r = integer_roots(p, Integer(20));
    EXPECT_EQ(r.remainder.size(), 1U);
    EXPECT_EQ(r.multiplicity.at(Integer(2)), 2);
    EXPECT_EQ(r.multiplicity.at(Integer(-3)), 1);
    EXPECT_EQ(r.multiplicity.at(Integer(0)), 1);
    // x^2 - 2 has no integer roots
    EXPECT_EQ(integer_roots({1, 0, -2}, Integer(5)).remainder.size(), 3U);
}

TEST(ExactLinalg, NullspaceAndParticularSolution) {
    RowEchelon<Rational> e(3);
    e.add_row({{0, Rational(1)}, {1, Rational(2)}});
    EXPECT_FALSE(e.add_row({{0, Rational(2)}, {1, Rational(4)}}));
    const auto ns = e.nullspace();
    ASSERT_EQ(ns.size(), 2U);
    EXPECT_EQ(ns[0][0] + Rational(2) * ns[0][1], Rational(0));

    // x + y = 3, x - y = 1 with rhs in column 2
    RowEchelon<Rational> s(3);
    s.add_row({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(3)}});
    s.add_row({{0, Rational(1)}, {1, Rational(-1)}, {2, Rational(1)}});
    const auto x = s.particular_solution(2);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], Rational(2));
    EXPECT_EQ((*x)[1], Rational(1));
}
