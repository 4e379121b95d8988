#pragma once

// Dyadic difference operators and the operators D = sum a_k d_k,
// D' = sum a_k* d_k: filtration checks, integer spectra, the two-family
// recursion for eigenpairs, conjugation by T and the recovery identities.

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "spinor_lab/exact_linalg.hpp"
#include "spinor_lab/structures.hpp"

namespace spinor_lab {

/// d_k phi_a = -2 phi_{a + d^k} if a_k = 1, else 0.
inline WalshVector partial_k(const WalshVector& f, int k) {
    const DyadicIndex dk = DyadicIndex::delta(k);
    WalshVector out;
    for (const auto& [alpha, c] : f.terms())
        if (alpha.test(k)) out.add(alpha + dk, GaussianRational(-2) * c);
    return out;
}

inline LinearMap partial_map(TruncationLevel level, int k) {
    LinearMap out(level);
    for (std::uint64_t a = 0; a < level.dimension(); ++a) out.set_column(a, partial_k(WalshVector::basis(index_from_integer(a)), k));
    return out;
}

/// d_k f(x) = phi_{d^k}(x) (f(x + d^k) - f(x)), evaluated on point values.
inline std::vector<GaussianRational> partial_k_pointwise(const std::vector<GaussianRational>& values, int k) {
    std::vector<GaussianRational> out(values.size());
    const std::uint64_t bit = std::uint64_t{1} << (k - 1);
    for (std::uint64_t x = 0; x < values.size(); ++x) {
        GaussianRational diff = values[x ^ bit] - values[x];
        out[x] = (x & bit) ? -diff : diff;
    }
    return out;
}

namespace detail {

inline LinearMap sum_with_partials(const Representation& rep, bool primed) {
    LinearMap out(rep.level());
    for (int k = 1; k <= rep.generator_count(); ++k) {
        const LinearMap a = primed ? build_a_star(rep, k) : build_a(rep, k);
        out += a * partial_map(rep.level(), k);
    }
    return out;
}

}  // namespace detail

/// D = sum_{k <= K} a_k d_k on W_n.
inline LinearMap build_D(const Representation& rep) { return detail::sum_with_partials(rep, false); }

/// D' = sum_{k <= K} a_k* d_k on W_n.
inline LinearMap build_Dprime(const Representation& rep) { return detail::sum_with_partials(rep, true); }

/// Every image of a basis vector of W_N stays in W_N.
inline bool preserves_subspace(const LinearMap& m, int n_sub) {
    if (n_sub > m.level().n()) return false;
    const std::uint64_t dim = std::uint64_t{1} << n_sub;
    for (std::uint64_t j = 0; j < dim; ++j)
        for (const auto& [alpha, c] : m.column(j).terms())
            if (index_to_integer(alpha) >= dim) return false;
    return true;
}

/// D(W_{N_k}) and D'(W_{N_k}) stay inside W_{N_k}. All d_j with j <= N_k
/// act on W_{N_k}, so the representation must carry at least N_k generators.
inline Report check_filtration_invariance(const Representation& rep, int k) {
    Report report("filtration");
    if (rep.cocycles().kind() != CocycleFamily::Kind::Dyadic)
        throw InputError("filtration levels are defined for dyadic cocycles");
    const int nk = required_level(*rep.cocycles().gamma(), k);
    report.notes.push_back("N_k = " + std::to_string(nk));
    const bool enough = nk <= rep.level().n() && rep.generator_count() >= nk;
    report.record(enough, "representation carries every d_j acting on W_{N_k}",
                  {{"N_k", nk}, {"generators", rep.generator_count()}});
    if (!enough) return report;
    report.record(preserves_subspace(build_D(rep), nk), "D(W_{N_k}) in W_{N_k}", {{"N_k", nk}});
    report.record(preserves_subspace(build_Dprime(rep), nk), "D'(W_{N_k}) in W_{N_k}", {{"N_k", nk}});
    return report;
}

struct Eigenspace {
    Integer value;
    int algebraic_multiplicity = 0;
    /// Primitive integer vectors (content 1, coefficient of the highest Walsh
    /// index > 0).
    std::vector<WalshVector> vectors;
};

struct SpectralData {
    int level = 0;
    std::vector<Eigenspace> eigen;  // ascending eigenvalue
    bool complete = false;

    std::size_t geometric_total() const {
        std::size_t n = 0;
        for (const auto& e : eigen) n += e.vectors.size();
        return n;
    }
};

/// Restriction of m to W_N as a dense integer matrix; throws on a
/// non-integer entry or when W_N is not preserved.
inline IntegerMatrix restrict_integer(const LinearMap& m, int n_sub) {
    if (n_sub < 0 || n_sub > m.level().n()) throw InputError("subspace level exceeds the operator's level");
    if (!preserves_subspace(m, n_sub)) throw InputError("operator does not preserve W_" + std::to_string(n_sub));
    const std::uint64_t dim = std::uint64_t{1} << n_sub;
    IntegerMatrix out(dim, std::vector<Integer>(dim));
    for (std::uint64_t j = 0; j < dim; ++j) {
        for (const auto& [alpha, c] : m.column(j).terms()) {
            if (!c.is_real() || !is_integer(c.re)) throw SpectrumError("non-integer matrix");
            out[index_to_integer(alpha)][j] = c.re.get_num();
        }
    }
    return out;
}

namespace detail {

inline WalshVector primitive_integer_vector(const std::vector<Rational>& x) {
    Integer den(1), content(0);
    for (const auto& v : x)
        if (!is_zero(v)) {
            Integer d = v.get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    std::vector<Integer> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (is_zero(x[i])) continue;
        Rational t = x[i] * Rational(den);
        scaled[i] = t.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled[i].get_mpz_t());
    }
    WalshVector out;
    if (content == 0) return out;
    int sign = 0;
    for (auto it = scaled.rbegin(); it != scaled.rend(); ++it)
        if (!is_zero(*it)) {
            sign = sgn(*it);
            break;
        }
    if (sign < 0) content = -content;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero(scaled[i])) out.add(index_from_integer(i), GaussianRational(Rational(Integer(scaled[i] / content))));
    return out;
}

inline std::vector<std::vector<Rational>> integer_nullspace(const IntegerMatrix& a, const Integer& shift) {
    const std::size_t n = a.size();
    RowEchelon<Rational> ech(n);
    for (std::size_t i = 0; i < n; ++i) {
        SparseRow<Rational> row;
        for (std::size_t j = 0; j < n; ++j) {
            Integer v = a[i][j];
            if (i == j) v -= shift;
            if (!is_zero(v)) row.emplace(j, Rational(v));
        }
        ech.add_row(std::move(row));
    }
    return ech.nullspace();
}

inline Integer gershgorin_bound(const IntegerMatrix& a) {
    Integer bound(0);
    for (const auto& row : a) {
        Integer s(0);
        for (const auto& v : row) s += abs(v);
        if (s > bound) bound = s;
    }
    return bound;
}

}  // namespace detail

/// Exact integer eigendecomposition of an integer matrix: characteristic
/// polynomial over Z, integer roots, primitive integer eigenvector bases.
inline SpectralData integer_spectrum_of(const IntegerMatrix& a, int level) {
    SpectralData out;
    out.level = level;
    const auto poly = characteristic_polynomial(a);
    const auto roots = integer_roots(poly, detail::gershgorin_bound(a));
    if (roots.remainder.size() > 1) throw SpectrumError("non-integral eigenvalue found");
    for (const auto& [value, mult] : roots.multiplicity) {
        Eigenspace e;
        e.value = value;
        e.algebraic_multiplicity = mult;
        for (const auto& v : detail::integer_nullspace(a, value)) e.vectors.push_back(detail::primitive_integer_vector(v));
        out.eigen.push_back(std::move(e));
    }
    out.complete = out.geometric_total() == a.size();
    return out;
}

inline SpectralData integer_spectrum(const LinearMap& m, int n_sub) {
    return integer_spectrum_of(restrict_integer(m, n_sub), n_sub);
}

/// Multisets of (eigenvalue, eigenspace dimension) agree and each pair of
/// eigenspaces spans the same subspace.
inline bool same_eigenspaces(const SpectralData& a, const SpectralData& b) {
    if (a.level != b.level || a.eigen.size() != b.eigen.size()) return false;
    const std::size_t dim = std::size_t{1} << a.level;
    for (std::size_t i = 0; i < a.eigen.size(); ++i) {
        const auto& ea = a.eigen[i];
        const auto& eb = b.eigen[i];
        if (ea.value != eb.value || ea.vectors.size() != eb.vectors.size()) return false;
        RowEchelon<Rational> joint(dim);
        auto add = [&](const WalshVector& v) {
            SparseRow<Rational> row;
            for (const auto& [alpha, c] : v.terms()) row.emplace(index_to_integer(alpha), c.re);
            joint.add_row(std::move(row));
        };
        for (const auto& v : ea.vectors) add(v);
        for (const auto& v : eb.vectors) add(v);
        if (joint.rank() != ea.vectors.size()) return false;
    }
    return true;
}

struct RecursiveDiagonalization {
    SpectralData spectrum;    // recursion output, or the oracle's if it fell back
    bool used_fallback = false;
    bool agrees_with_oracle = false;
    Report report{"recursion"};
};

namespace detail {

struct EigenPair {
    Integer value;
    std::vector<Rational> vector;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix block(const IntegerMatrix& m, std::size_t row0, std::size_t col0, std::size_t size) {
    RationalMatrix out(size, std::vector<Rational>(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) out[i][j] = m[row0 + i][col0 + j];
    return out;
}

inline bool equal(const RationalMatrix& a, const RationalMatrix& b) { return a == b; }

inline bool is_zero_matrix(const RationalMatrix& a) {
    for (const auto& r : a)
        for (const auto& v : r)
            if (!is_zero(v)) return false;
    return true;
}

inline std::vector<Rational> multiply(const RationalMatrix& a, const std::vector<Rational>& x) {
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!is_zero(a[i][j]) && !is_zero(x[j])) out[i] += a[i][j] * x[j];
    return out;
}

// Solves (M - nu) x = rhs given a complete eigenbasis of M. Fails (nullopt)
// when rhs has a component along an eigenvector of eigenvalue nu.
inline std::optional<std::vector<Rational>> solve_shifted(const std::vector<EigenPair>& eig,
                                                          const std::vector<Rational>& rhs, const Integer& nu) {
    const std::size_t n = rhs.size();
    // Coordinates c with sum c_i v_i = rhs.
    RowEchelon<Rational> ech(eig.size() + 1);
    for (std::size_t r = 0; r < n; ++r) {
        SparseRow<Rational> row;
        for (std::size_t i = 0; i < eig.size(); ++i)
            if (!is_zero(eig[i].vector[r])) row.emplace(i, eig[i].vector[r]);
        if (!is_zero(rhs[r])) row.emplace(eig.size(), rhs[r]);
        ech.add_row(std::move(row));
    }
    auto coords = ech.particular_solution(eig.size());
    if (!coords) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        const Rational& c = (*coords)[i];
        if (is_zero(c)) continue;
        if (eig[i].value == nu) return std::nullopt;
        const Rational f = c / Rational(eig[i].value - nu);
        for (std::size_t r = 0; r < n; ++r)
            if (!is_zero(eig[i].vector[r])) x[r] += f * eig[i].vector[r];
    }
    return x;
}

inline SpectralData to_spectral_data(const std::vector<EigenPair>& pairs, int level) {
    std::map<Integer, std::vector<const EigenPair*>> grouped;
    for (const auto& p : pairs) grouped[p.value].push_back(&p);
    SpectralData out;
    out.level = level;
    for (const auto& [value, group] : grouped) {
        Eigenspace e;
        e.value = value;
        e.algebraic_multiplicity = static_cast<int>(group.size());
        for (const auto* p : group) e.vectors.push_back(primitive_integer_vector(p->vector));
        out.eigen.push_back(std::move(e));
    }
    out.complete = pairs.size() == (std::size_t{1} << level);
    return out;
}

}  // namespace detail

/// Eigenpairs of D on W_{N_k} by recursion over the coordinates m = 1..N_k.
///
/// With A_m = D|W_m and B_m = (D + phi_{sigma^m})|W_m = D_{[m,-1]}|W_m, split
/// W_m = W_{m-1} + phi_{d^m} W_{m-1}. The recursion requires (and verifies)
///   A_m = [[A_{m-1}, X], [0, B_{m-1}]],   B_m = [[A_{m-1}, 0], [Y, B_{m-1}]],
/// so eigenpairs of both families at level m are lifted from those at level
/// m-1 by one shifted solve each. Any failed block check or defective lift is
/// recorded and the exact oracle is returned instead.
inline RecursiveDiagonalization recursive_diagonalize(const Representation& rep, int k) {
    using namespace detail;
    RecursiveDiagonalization out;
    if (rep.cocycles().kind() != CocycleFamily::Kind::Dyadic || !rep.weights().is_uniform())
        throw InputError("recursive_diagonalize expects a dyadic representation with Haar weights");
    const int target = required_level(*rep.cocycles().gamma(), k);
    out.report.notes.push_back("N_k = " + std::to_string(target));
    const LinearMap d = build_D(rep);

    auto oracle = [&] { return integer_spectrum(d, target); };
    auto fall_back = [&](const std::string& why) {
        out.report.notes.push_back("recursion incomplete: " + why);
        out.used_fallback = true;
        out.spectrum = oracle();
        out.agrees_with_oracle = true;
        return out;
    };

    if (rep.generator_count() < target || target > rep.level().n())
        return fall_back("representation does not carry every d_j acting on W_{N_k}");

    // Level 0: W_0 = constants, A_0 = [0], B_0 = [1] (checked below).
    std::vector<EigenPair> eig_a, eig_b;
    for (int m = 0; m <= target; ++m) {
        bool invariant = preserves_subspace(d, m);
        out.report.record(invariant, "W_m invariant under D", {{"m", m}});
        if (!invariant) return fall_back("W_" + std::to_string(m) + " is not D-invariant");
        const IntegerMatrix a_m = restrict_integer(d, m);
        IntegerMatrix b_m = a_m;
        const DyadicIndex s = sigma(m);
        for (std::size_t j = 0; j < b_m.size(); ++j) b_m[index_to_integer(index_from_integer(j) + s)][j] += 1;

        if (m == 0) {
            out.report.record(a_m[0][0] == 0 && b_m[0][0] == 1, "base blocks", {{"m", 0}});
            eig_a = {EigenPair{a_m[0][0], {Rational(1)}}};
            eig_b = {EigenPair{b_m[0][0], {Rational(1)}}};
            continue;
        }

        const std::size_t h = a_m.size() / 2;
        RationalMatrix prev_a = block(a_m, 0, 0, h);
        const RationalMatrix x = block(a_m, 0, h, h);
        const RationalMatrix y = block(b_m, h, 0, h);
        // Reconstruct A_{m-1}, B_{m-1} from the previous level's eigenpairs'
        // own matrices: the restriction of D to W_{m-1}, shifted by sigma^{m-1}.
        const IntegerMatrix a_prev_int = restrict_integer(d, m - 1);
        IntegerMatrix b_prev_int = a_prev_int;
        const DyadicIndex sp = sigma(m - 1);
        for (std::size_t j = 0; j < b_prev_int.size(); ++j) b_prev_int[index_to_integer(index_from_integer(j) + sp)][j] += 1;
        const RationalMatrix a_prev = block(a_prev_int, 0, 0, h);
        const RationalMatrix b_prev = block(b_prev_int, 0, 0, h);

        const bool shape_ok = equal(prev_a, a_prev) && is_zero_matrix(block(a_m, h, 0, h)) &&
                              equal(block(a_m, h, h, h), b_prev) && equal(block(b_m, 0, 0, h), a_prev) &&
                              is_zero_matrix(block(b_m, 0, h, h)) && equal(block(b_m, h, h, h), b_prev);
        out.report.record(shape_ok, "block-triangular split", {{"m", m}});
        if (!shape_ok) return fall_back("block structure fails at m = " + std::to_string(m));

        std::vector<EigenPair> next_a, next_b;
        auto stack = [h](const std::vector<Rational>& top, const std::vector<Rational>& bottom) {
            std::vector<Rational> v(2 * h);
            for (std::size_t i = 0; i < h; ++i) {
                v[i] = top[i];
                v[h + i] = bottom[i];
            }
            return v;
        };
        const std::vector<Rational> zeros(h);
        for (const auto& p : eig_a) next_a.push_back({p.value, stack(p.vector, zeros)});
        for (const auto& p : eig_b) {
            auto rhs = multiply(x, p.vector);
            for (auto& v : rhs) v = -v;
            auto g = solve_shifted(eig_a, rhs, p.value);
            out.report.record(g.has_value(), "lift B-eigenvector into A_m", {{"m", m}});
            if (!g) return fall_back("defective lift at m = " + std::to_string(m));
            next_a.push_back({p.value, stack(*g, p.vector)});
        }
        for (const auto& p : eig_b) next_b.push_back({p.value, stack(zeros, p.vector)});
        for (const auto& p : eig_a) {
            auto rhs = multiply(y, p.vector);
            for (auto& v : rhs) v = -v;
            auto hv = solve_shifted(eig_b, rhs, p.value);
            out.report.record(hv.has_value(), "lift A-eigenvector into B_m", {{"m", m}});
            if (!hv) return fall_back("defective lift at m = " + std::to_string(m));
            next_b.push_back({p.value, stack(p.vector, *hv)});
        }
        eig_a = std::move(next_a);
        eig_b = std::move(next_b);
    }

    out.spectrum = to_spectral_data(eig_a, target);
    // Every lifted vector must satisfy D v = lambda v by substitution.
    const IntegerMatrix top = restrict_integer(d, target);
    for (const auto& e : out.spectrum.eigen)
        for (const auto& v : e.vectors) {
            std::vector<Rational> x(top.size());
            for (const auto& [alpha, c] : v.terms()) x[index_to_integer(alpha)] = c.re;
            std::vector<Rational> lhs(top.size());
            for (std::size_t i = 0; i < top.size(); ++i)
                for (std::size_t j = 0; j < top.size(); ++j)
                    if (!is_zero(top[i][j]) && !is_zero(x[j])) lhs[i] += Rational(top[i][j]) * x[j];
            bool ok = true;
            for (std::size_t i = 0; i < top.size(); ++i) ok = ok && lhs[i] == Rational(e.value) * x[i];
            out.report.record(ok, "D v = lambda v");
        }
    out.agrees_with_oracle = same_eigenspaces(out.spectrum, oracle());
    out.report.record(out.agrees_with_oracle, "agrees with exact oracle");
    return out;
}

/// T^2 = I and D' T = T D.
inline Report verify_T_conjugation(const Representation& rep) {
    Report report("t_conjugation");
    const LinearMap t = build_T(rep);
    report.record(t * t == LinearMap::identity(rep.level()), "T^2 = I");
    const LinearMap lhs = build_Dprime(rep) * t;
    const LinearMap rhs = t * build_D(rep);
    report.record(lhs == rhs, "D' T = T D", {{"column", lhs.first_difference(rhs)}});
    return report;
}

struct RecoveryReport {
    /// -2 a_k = phi_{d^k} D phi_{d^k} - D (and the D' variant), as written.
    Report as_printed{"recovery_as_printed"};
    /// -2 phi_{d^k} a_k = phi_{d^k} D phi_{d^k} - D (and the D' variant).
    Report with_character{"recovery_with_character"};
    /// phi_{d^k} a_k = -a_k and phi_{d^k} a_k* = a_k*, so the line above
    /// reads +2 a_k = phi D phi - D and -2 a_k* = phi D' phi - D'.
    Report sign_resolved{"recovery_sign_resolved"};
};

inline RecoveryReport verify_recovery(const Representation& rep) {
    RecoveryReport out;
    const LinearMap d = build_D(rep);
    const LinearMap dp = build_Dprime(rep);
    for (int k = 1; k <= rep.generator_count(); ++k) {
        const LinearMap phi = LinearMap::character(DyadicIndex::delta(k), rep.level());
        const LinearMap a = GaussianRational(-2) * build_a(rep, k);
        const LinearMap as = GaussianRational(-2) * build_a_star(rep, k);
        const LinearMap rhs = phi * d * phi - d;
        const LinearMap rhs_p = phi * dp * phi - dp;
        out.as_printed.record(a == rhs, "-2 a_k = phi D phi - D", {{"k", k}, {"column", a.first_difference(rhs)}});
        out.as_printed.record(as == rhs_p, "-2 a_k* = phi D' phi - D'",
                              {{"k", k}, {"column", as.first_difference(rhs_p)}});
        const LinearMap pa = phi * a;
        const LinearMap pas = phi * as;
        out.with_character.record(pa == rhs, "-2 phi a_k = phi D phi - D", {{"k", k}, {"column", pa.first_difference(rhs)}});
        out.with_character.record(pas == rhs_p, "-2 phi a_k* = phi D' phi - D'",
                                  {{"k", k}, {"column", pas.first_difference(rhs_p)}});
        const LinearMap plus = GaussianRational(-1) * a;
        out.sign_resolved.record(phi * build_a(rep, k) == GaussianRational(-1) * build_a(rep, k), "phi a_k = -a_k", {{"k", k}});
        out.sign_resolved.record(phi * build_a_star(rep, k) == build_a_star(rep, k), "phi a_k* = a_k*", {{"k", k}});
        out.sign_resolved.record(plus == rhs, "+2 a_k = phi D phi - D", {{"k", k}, {"column", plus.first_difference(rhs)}});
    }
    return out;
}

struct DerivativeError {
    int k;
    double max_error;
};

/// max over sample points t of |2^k d_k f(t) - f'(t)| for k = 2..kmax. The
/// samples are the odd multiples of 2^{-(sample_bits+1)}; d_k moves t by
/// (-1)^{t_k} 2^{-k}, which flips binary digit k without carries.
inline std::vector<DerivativeError> derivative_limit_check(const std::function<double(double)>& f,
                                                           const std::function<double(double)>& fprime, int kmax,
                                                           int sample_bits = 12) {
    if (kmax < 2 || kmax > 52) throw InputError("kmax must lie in 2..52");
    const TruncationLevel level(std::min(kmax, TruncationLevel::max_level));
    std::vector<DerivativeError> out;
    for (int k = 2; k <= kmax; ++k) out.push_back({k, 0.0});
    const std::uint64_t samples = std::uint64_t{1} << sample_bits;
    for (std::uint64_t j = 0; j < samples; ++j) {
        const double t = std::ldexp(static_cast<double>(2 * j + 1), -(sample_bits + 1));
        const DyadicIndex x = point_of_real(t, level);
        const double ft = f(t);
        const double exact = fprime(t);
        for (auto& e : out) {
            const double step = std::ldexp(1.0, -e.k);
            const bool digit = e.k <= level.n() && x.test(e.k);
            const double h = digit ? -step : step;
            const double approx = (f(t + h) - ft) / h;  // = 2^k phi_{d^k}(x) (f(x + d^k) - f(x))
            e.max_error = std::max(e.max_error, std::abs(approx - exact));
        }
    }
    return out;
}

}  // namespace spinor_lab
