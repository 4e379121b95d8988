#pragma once

// Real and quaternionic structures: the standard-form antilinear operators S
// and Q, the pointwise conditions on cocycles, the functional equations for
// r(x) / q(x), a brute-force antilinear commutant classifier and the
// Cartan-Dirac sign.

#include <string>
#include <vector>

#include "spinor_lab/exact_linalg.hpp"
#include "spinor_lab/representation.hpp"

namespace spinor_lab {

namespace detail {

// Point-basis matrix of f -> (x -> u(x) (s(check x)/s(x)) f(check x)),
// i.e. e_y -> u(check y) (s(y)/s(check y)) e_{check y}.
inline LinearMap flip_matrix(const Representation& rep, const std::vector<GaussianRational>& u) {
    const TruncationLevel level = rep.level();
    PointMonomial p;
    p.target.resize(level.dimension());
    p.coefficient.resize(level.dimension());
    for (std::uint64_t y = 0; y < level.dimension(); ++y) {
        const std::uint64_t x = index_to_integer(check(index_from_integer(y), level));
        p.target[y] = x;
        p.coefficient[y] =
            u.at(x) * GaussianRational(Rational(rep.weights().sqrt_weight(y) / rep.weights().sqrt_weight(x)));
    }
    return walsh_matrix(p, level);
}

inline std::vector<GaussianRational> constant_unit(TruncationLevel level) {
    return std::vector<GaussianRational>(level.dimension(), GaussianRational(1));
}

inline std::vector<GaussianRational> first_coordinate_sign(TruncationLevel level) {
    std::vector<GaussianRational> u(level.dimension());
    for (std::uint64_t x = 0; x < level.dimension(); ++x) u[x] = (x & 1U) ? GaussianRational(-1) : GaussianRational(1);
    return u;
}

}  // namespace detail

/// S f(x) = sqrt(w(check x)/w(x)) conj f(check x).
/// Uniform weights: S phi_a = (-1)^{|a|} phi_a, extended antilinearly.
inline AntilinearMap build_S(const Representation& rep) {
    const TruncationLevel level = rep.level();
    if (!rep.weights().is_uniform()) return AntilinearMap(detail::flip_matrix(rep, detail::constant_unit(level)));
    LinearMap c(level);
    for (std::uint64_t a = 0; a < level.dimension(); ++a) {
        const DyadicIndex alpha = index_from_integer(a);
        c.set_column(a, WalshVector::basis(alpha, alpha.weight() % 2 ? -1 : 1));
    }
    return AntilinearMap(std::move(c));
}

/// Q f(x) = (-1)^{x_1} sqrt(w(check x)/w(x)) conj f(check x).
/// Uniform weights: Q phi_a = (-1)^{|a|} phi_{a + d^1}.
inline AntilinearMap build_Q(const Representation& rep) {
    const TruncationLevel level = rep.level();
    if (!rep.weights().is_uniform())
        return AntilinearMap(detail::flip_matrix(rep, detail::first_coordinate_sign(level)));
    LinearMap c(level);
    const DyadicIndex d1 = DyadicIndex::delta(1);
    for (std::uint64_t a = 0; a < level.dimension(); ++a) {
        const DyadicIndex alpha = index_from_integer(a);
        c.set_column(a, WalshVector::basis(alpha + d1, alpha.weight() % 2 ? -1 : 1));
    }
    return AntilinearMap(std::move(c));
}

/// Antilinear map f(x) -> u(x) sqrt(w(check x)/w(x)) conj f(check x) for a
/// unit family u, the operator form of a pointwise r(x) v = u(x) conj v.
inline AntilinearMap antilinear_from_units(const Representation& rep, const std::vector<GaussianRational>& u) {
    if (u.size() != rep.level().dimension()) throw InputError("unit table has the wrong size");
    return AntilinearMap(detail::flip_matrix(rep, u));
}

/// Linear T f(x) = sqrt(w(check x)/w(x)) f(check x).
/// Uniform weights: T phi_a = (-1)^{|a|} phi_a.
inline LinearMap build_T(const Representation& rep) {
    return rep.weights().is_uniform() ? build_S(rep).matrix()
                                      : detail::flip_matrix(rep, detail::constant_unit(rep.level()));
}

/// A^2 = sign I, isometry, and A G = G A for every generator G.
inline Report verify_structure(const AntilinearMap& a, const Representation& rep, int sign) {
    if (sign != 1 && sign != -1) throw InputError("structure sign must be +1 or -1");
    Report report(sign > 0 ? "real_structure" : "quaternionic_structure");
    const LinearMap identity = LinearMap::identity(rep.level());
    const LinearMap square = a * a;
    report.record(square == GaussianRational(sign) * identity, sign > 0 ? "A^2 = I" : "A^2 = -I");
    // conj is an isometry pointwise, so A is isometric iff its matrix is.
    report.record(is_weighted_isometry(a.matrix(), rep.weights()), "isometry");
    const auto gens = generators(rep);
    std::vector<Report> per(gens.size());
    parallel_for(gens.size(), [&](std::size_t g) {
        const AntilinearMap left = a * gens[g];
        const AntilinearMap right = gens[g] * a;
        per[g].record(left == right, "A G = G A",
                      {{"k", static_cast<std::int64_t>(g / 2) + 1},
                       {"primed", static_cast<std::int64_t>(g % 2)},
                       {"column", left.matrix().first_difference(right.matrix())}});
    });
    for (const auto& r : per) report.merge(r);
    return report;
}

enum class StandardForm { Real, Quaternionic };

/// Real: conj c_k(x) = (-1)^k c_k(check x) for all k <= K.
/// Quaternionic: same for k >= 2, and conj c_1(x) = c_1(check x).
inline Report check_standard_conditions(const CocycleFamily& c, TruncationLevel level, StandardForm which,
                                        int generators = 0) {
    Report report(which == StandardForm::Real ? "standard_real" : "standard_quaternionic");
    const int K = generators == 0 ? c.available_generators(level) : generators;
    for (int k = 1; k <= K; ++k) {
        const bool flip_sign = (k % 2 == 1) && !(which == StandardForm::Quaternionic && k == 1);
        for (std::uint64_t xi = 0; xi < level.dimension(); ++xi) {
            const DyadicIndex x = index_from_integer(xi);
            GaussianRational rhs = c.value(k, check(x, level));
            if (flip_sign) rhs = -rhs;
            report.record(c.value(k, x).conj() == rhs, "conj c_k(x) = s_k c_k(check x)",
                          {{"k", k}, {"x", static_cast<std::int64_t>(xi)}});
        }
    }
    return report;
}

/// r(x) v = u(x) conj v. Checks r(x) r(check x) = sign and
/// r(x) c_k(check x) = (-1)^k c_k(x) r(x + d^k), i.e.
///   u(x) conj u(check x) = sign,
///   u(x) conj c_k(check x) = (-1)^k c_k(x) u(x + d^k).
inline Report check_r_equations(const std::vector<GaussianRational>& u, const CocycleFamily& c, TruncationLevel level,
                                int sign, int generators = 0) {
    if (u.size() != level.dimension()) throw InputError("unit table has the wrong size");
    Report report(sign > 0 ? "r_equations" : "q_equations");
    const int K = generators == 0 ? c.available_generators(level) : generators;
    for (std::uint64_t xi = 0; xi < level.dimension(); ++xi) {
        const DyadicIndex x = index_from_integer(xi);
        const DyadicIndex xc = check(x, level);
        report.record(u[xi].norm2() == 1, "|u(x)| = 1", {{"x", static_cast<std::int64_t>(xi)}});
        report.record(u[xi] * u[index_to_integer(xc)].conj() == GaussianRational(sign), "r(x) r(check x) = sign",
                      {{"x", static_cast<std::int64_t>(xi)}});
        for (int k = 1; k <= K; ++k) {
            GaussianRational rhs = c.value(k, x) * u[index_to_integer(x + DyadicIndex::delta(k))];
            if (k % 2) rhs = -rhs;
            report.record(u[xi] * c.value(k, xc).conj() == rhs, "r(x) c_k(check x) = (-1)^k c_k(x) r(x+d^k)",
                          {{"k", k}, {"x", static_cast<std::int64_t>(xi)}});
        }
    }
    return report;
}

enum class RepresentationType { Real, Quaternionic, Complex };

inline std::string to_string(RepresentationType t) {
    switch (t) {
        case RepresentationType::Real: return "real";
        case RepresentationType::Quaternionic: return "quaternionic";
        case RepresentationType::Complex: return "complex";
    }
    return "?";
}

struct TypeVerdict {
    RepresentationType tag = RepresentationType::Complex;
    /// C conj(C) = lambda I for the normalized commutant matrix; 0 if none.
    Rational lambda;
    /// Complex dimension of the antilinear commutant.
    std::size_t commutant_dimension = 0;
};

/// Solves C conj(M) = M C for every generator matrix M (unknowns: the d^2
/// entries of C), normalizes the first nonzero entry of a solution to 1 and
/// reads the type off the sign of the Schur scalar C conj(C).
inline TypeVerdict classify_antilinear(const Representation& rep) {
    const std::uint64_t d = rep.level().dimension();
    const auto gens = generators(rep);
    auto unknown = [d](std::uint64_t i, std::uint64_t j) { return static_cast<std::size_t>(i * d + j); };

    RowEchelon<GaussianRational> system(static_cast<std::size_t>(d * d));
    for (const auto& m : gens) {
        // rows_of[i] = {(l, M_il)}
        std::vector<std::vector<std::pair<std::uint64_t, GaussianRational>>> rows_of(d);
        for (std::uint64_t l = 0; l < d; ++l)
            for (const auto& [alpha, v] : m.column(l).terms()) rows_of[index_to_integer(alpha)].emplace_back(l, v);
        for (std::uint64_t i = 0; i < d; ++i) {
            for (std::uint64_t j = 0; j < d; ++j) {
                // sum_l C_il conj(M_lj) - sum_l M_il C_lj = 0
                SparseRow<GaussianRational> row;
                for (const auto& [alpha, v] : m.column(j).terms()) row[unknown(i, index_to_integer(alpha))] += v.conj();
                for (const auto& [l, v] : rows_of[i]) row[unknown(l, j)] -= v;
                system.add_row(std::move(row));
            }
        }
    }
    TypeVerdict verdict;
    auto basis = system.nullspace();
    verdict.commutant_dimension = basis.size();
    if (basis.empty()) return verdict;

    auto& sol = basis.front();
    GaussianRational lead;
    for (const auto& v : sol)
        if (!v.is_zero()) {
            lead = v;
            break;
        }
    LinearMap c(rep.level());
    for (std::uint64_t j = 0; j < d; ++j) {
        WalshVector col;
        for (std::uint64_t i = 0; i < d; ++i)
            if (!sol[unknown(i, j)].is_zero()) col.add(index_from_integer(i), sol[unknown(i, j)] / lead);
        c.set_column(j, std::move(col));
    }
    const LinearMap square = c * c.conj();
    const GaussianRational lambda = square.column(std::uint64_t{0}).coefficient(index_from_integer(0));
    if (!lambda.is_real() || lambda.is_zero() || !(square == lambda * LinearMap::identity(rep.level())))
        throw Error("commutant not scalar");
    verdict.lambda = lambda.re;
    verdict.tag = sgn(lambda.re) > 0 ? RepresentationType::Real : RepresentationType::Quaternionic;
    return verdict;
}

/// (-1)^{m(m+1)/2}.
inline int cartan_dirac_sign(int m) {
    if (m < 1) throw InputError("cartan_dirac_sign expects m >= 1");
    const long long t = static_cast<long long>(m) * (m + 1) / 2;
    return t % 2 == 0 ? 1 : -1;
}

/// Real dimension of {f : A f = f}.
inline std::size_t fixed_real_dimension(const AntilinearMap& a) {
    const LinearMap& c = a.matrix();
    const std::uint64_t d = c.dimension();
    // f = sum (x_a + i y_a) phi_a; unknowns x_a -> a, y_a -> d + a.
    std::vector<SparseRow<Rational>> re_rows(d), im_rows(d);
    for (std::uint64_t b = 0; b < d; ++b) {
        re_rows[b][b] -= 1;
        im_rows[b][d + b] -= 1;
    }
    for (std::uint64_t a2 = 0; a2 < d; ++a2) {
        for (const auto& [beta, v] : c.column(a2).terms()) {
            const auto b = index_to_integer(beta);
            // v (x - i y) = (v.re x + v.im y) + i (v.im x - v.re y)
            re_rows[b][a2] += v.re;
            re_rows[b][d + a2] += v.im;
            im_rows[b][a2] += v.im;
            im_rows[b][d + a2] -= v.re;
        }
    }
    RowEchelon<Rational> system(static_cast<std::size_t>(2 * d));
    for (auto& r : re_rows) system.add_row(std::move(r));
    for (auto& r : im_rows) system.add_row(std::move(r));
    return static_cast<std::size_t>(2 * d) - system.rank();
}

}  // namespace spinor_lab
