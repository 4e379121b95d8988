#pragma once

// Normed left-division algebras on the realified Walsh space: the dyadic
// structure constants N_gamma / N'_gamma, the product built directly from a
// Clifford module (h + c) * a = h a + c a, left inverses, and the reflection
// relation J_h J_g = -J_{r_h(g)} J_h.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinor_lab/gamma.hpp"
#include "spinor_lab/parallel.hpp"
#include "spinor_lab/representation.hpp"

namespace spinor_lab {

/// w_m (primed = false) or w'_m.
struct BasisSymbol {
    bool primed = false;
    std::uint64_t m = 0;

    friend auto operator<=>(const BasisSymbol&, const BasisSymbol&) = default;

    std::string to_string() const { return (primed ? "w'" : "w") + std::to_string(m); }
};

class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement symbol(BasisSymbol s, Rational c = Rational(1)) {
        AlgebraElement e;
        e.add(s, c);
        return e;
    }
    static AlgebraElement w(std::uint64_t m, Rational c = Rational(1)) { return symbol({false, m}, std::move(c)); }
    static AlgebraElement wp(std::uint64_t m, Rational c = Rational(1)) { return symbol({true, m}, std::move(c)); }

    const std::map<BasisSymbol, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(BasisSymbol s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(BasisSymbol s, const Rational& c) {
        if (spinor_lab::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (spinor_lab::is_zero(it->second)) terms_.erase(it);
        }
    }

    AlgebraElement& operator+=(const AlgebraElement& o) {
        for (const auto& [s, c] : o.terms_) add(s, c);
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) {
        for (const auto& [s, c] : o.terms_) add(s, -c);
        return *this;
    }
    AlgebraElement& operator*=(const Rational& s) {
        if (spinor_lab::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [sym, c] : terms_) c *= s;
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

    /// The basis {w_m, w'_m} is orthonormal.
    Rational norm2() const {
        Rational s;
        for (const auto& [sym, c] : terms_) s += c * c;
        return s;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [s, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + spinor_lab::to_string(c) + ")" + s.to_string();
        }
        return out;
    }

private:
    std::map<BasisSymbol, Rational> terms_;
};

/// Real inner product of the orthonormal basis.
inline Rational dot(const AlgebraElement& a, const AlgebraElement& b) {
    Rational s;
    for (const auto& [sym, c] : a.terms()) s += c * b.coefficient(sym);
    return s;
}

namespace detail {

inline std::uint64_t row_integer(const GammaSpec& gamma, int k) {
    if (k < 0 || k > gamma.rows())
        throw InputError("row " + std::to_string(k) + " outside declared range 1.." + std::to_string(gamma.rows()));
    return index_to_integer(gamma.row(k));
}

inline std::uint64_t low_ones(int count) { return count <= 0 ? 0 : (count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1); }

}  // namespace detail

/// N_gamma(k, m): binary digits j of m are shifted by gamma^{k-1}_{j+1}, and
/// the first k-1 digits are flipped as well (all sums mod 2).
inline std::uint64_t N_gamma(int k, std::uint64_t m, const GammaSpec& gamma) {
    if (k < 1) throw InputError("N_gamma needs k >= 1");
    return m ^ detail::row_integer(gamma, k - 1) ^ detail::low_ones(k - 1);
}

/// As N_gamma with row gamma^k; k = 0 reads the (absent) row 0 as empty.
inline std::uint64_t N_gamma_prime(int k, std::uint64_t m, const GammaSpec& gamma) {
    if (k < 0) throw InputError("N'_gamma needs k >= 0");
    return m ^ detail::row_integer(gamma, k) ^ detail::low_ones(k - 1);
}

/// m with its first `count` binary digits flipped.
inline std::uint64_t flip_low_digits(std::uint64_t m, int count) { return m ^ detail::low_ones(count); }

namespace detail {

// (-1)^{m_{k-1}}; m_{-1} = 0.
inline int digit_sign(std::uint64_t m, int k) {
    if (k < 1) return 1;
    return ((m >> (k - 1)) & 1U) ? -1 : 1;
}

}  // namespace detail

/// Product of two basis symbols by the six dyadic rules. The factor -i in
/// the primed rules is read through w'_m = i w_m: -i w_N = -w'_N and
/// -i w'_N = +w_N.
inline AlgebraElement star_formula_basis(BasisSymbol a, BasisSymbol b, const GammaSpec& gamma) {
    if (a.m > 64) throw InputError("symbol index exceeds 64");
    const int k = static_cast<int>(a.m);
    if (!a.primed && k == 0) return AlgebraElement::symbol(b);
    const Rational sign(detail::digit_sign(b.m, k));
    if (!a.primed) return AlgebraElement::symbol({b.primed, N_gamma(k, b.m, gamma)}, sign);
    const std::uint64_t n = N_gamma_prime(k, b.m, gamma);
    return b.primed ? AlgebraElement::w(n, sign) : AlgebraElement::wp(n, -sign);
}

inline AlgebraElement star_formula(const AlgebraElement& a, const AlgebraElement& b, const GammaSpec& gamma) {
    AlgebraElement out;
    for (const auto& [sa, ca] : a.terms())
        for (const auto& [sb, cb] : b.terms()) {
            const Rational c = ca * cb;
            const AlgebraElement basis_product = star_formula_basis(sa, sb, gamma);
            for (const auto& [s, v] : basis_product.terms()) out.add(s, c * v);
        }
    return out;
}

enum class GeneratorFamily { J, Jprime };

inline std::string to_string(GeneratorFamily f) { return f == GeneratorFamily::J ? "J" : "J'"; }

/// How the non-unit basis symbols act through the Clifford module:
/// w_k -> unprimed_sign * F_{k + unprimed_shift}, w'_k -> primed_sign *
/// G_{k + primed_shift}, where {F, G} = {J, J'} with F = unprimed_family.
/// w_0 is the left unit; symbols whose generator index falls outside 1..K
/// have no operator in the truncation.
struct Convention {
    GeneratorFamily unprimed_family = GeneratorFamily::Jprime;
    int unprimed_shift = 0;
    int unprimed_sign = 1;
    int primed_shift = 0;
    int primed_sign = 1;

    GeneratorFamily primed_family() const {
        return unprimed_family == GeneratorFamily::J ? GeneratorFamily::Jprime : GeneratorFamily::J;
    }

    friend bool operator==(const Convention&, const Convention&) = default;

    std::string describe() const {
        auto term = [](int sign, GeneratorFamily f, int shift) {
            std::string s = (sign > 0 ? "+" : "-") + to_string(f) + "_{k";
            if (shift != 0) s += (shift > 0 ? "+" : "") + std::to_string(shift);
            return s + "}";
        };
        return "w_k -> " + term(unprimed_sign, unprimed_family, unprimed_shift) + ", w'_k -> " +
               term(primed_sign, primed_family(), primed_shift);
    }

    /// The 32 conventions searched by calibrate().
    static std::vector<Convention> all() {
        std::vector<Convention> out;
        for (auto family : {GeneratorFamily::Jprime, GeneratorFamily::J})
            for (int us : {0, -1})
                for (int ps : {0, -1})
                    for (int usign : {1, -1})
                        for (int psign : {1, -1}) out.push_back({family, us, usign, ps, psign});
        return out;
    }
};

/// The Clifford-module product on the realification of W_n: w_m <-> phi_m,
/// w'_m <-> i phi_m. Left factors must lie in R w_0 + (symbols with an
/// operator under the convention).
class CliffordAlgebra {
public:
    CliffordAlgebra(Representation rep, Convention convention)
        : rep_(std::move(rep)), convention_(convention) {
        if (!rep_.weights().is_uniform()) throw InputError("the algebra needs Haar weights (orthonormal Walsh basis)");
        for (int k = 1; k <= rep_.generator_count(); ++k) {
            j_.push_back(build_J(rep_, k));
            jp_.push_back(build_Jprime(rep_, k));
        }
    }

    const Representation& representation() const { return rep_; }
    const Convention& convention() const { return convention_; }
    std::uint64_t dimension() const { return rep_.level().dimension(); }

    /// Generator index and sign for a non-unit symbol, if it has an operator.
    std::optional<std::pair<const LinearMap*, int>> operator_for(BasisSymbol s) const {
        if (!s.primed && s.m == 0) return std::nullopt;
        const int shift = s.primed ? convention_.primed_shift : convention_.unprimed_shift;
        const int sign = s.primed ? convention_.primed_sign : convention_.unprimed_sign;
        const GeneratorFamily family = s.primed ? convention_.primed_family() : convention_.unprimed_family;
        if (s.m > 64) return std::nullopt;
        const long long k = static_cast<long long>(s.m) + shift;
        if (k < 1 || k > rep_.generator_count()) return std::nullopt;
        const auto& ops = family == GeneratorFamily::J ? j_ : jp_;
        return std::make_pair(&ops[static_cast<std::size_t>(k - 1)], sign);
    }

    /// Symbols spanning the left-factor space: w_0 first, then the
    /// generator symbols in basis order.
    std::vector<BasisSymbol> left_symbols() const {
        std::vector<BasisSymbol> out{{false, 0}};
        const std::uint64_t top = static_cast<std::uint64_t>(rep_.generator_count()) + 1;
        for (std::uint64_t m = 0; m <= top; ++m)
            for (bool p : {false, true})
                if (operator_for({p, m})) out.push_back({p, m});
        return out;
    }

    /// Basis of the right-factor space: w_m, w'_m for m < 2^n.
    std::vector<BasisSymbol> right_symbols() const {
        std::vector<BasisSymbol> out;
        for (std::uint64_t m = 0; m < dimension(); ++m) {
            out.push_back({false, m});
            out.push_back({true, m});
        }
        return out;
    }

    WalshVector to_walsh(const AlgebraElement& b) const {
        WalshVector v;
        for (const auto& [s, c] : b.terms()) {
            if (s.m >= dimension()) throw InputError("symbol " + s.to_string() + " outside the truncated space");
            v.add(index_from_integer(s.m), s.primed ? GaussianRational(Rational(0), c) : GaussianRational(c));
        }
        return v;
    }

    static AlgebraElement from_walsh(const WalshVector& v) {
        AlgebraElement out;
        for (const auto& [alpha, c] : v.terms()) {
            const std::uint64_t m = index_to_integer(alpha);
            out.add({false, m}, c.re);
            out.add({true, m}, c.im);
        }
        return out;
    }

    AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) const {
        const WalshVector bv = to_walsh(b);
        WalshVector out;
        for (const auto& [s, c] : a.terms()) {
            if (!s.primed && s.m == 0) {
                out.add_scaled(bv, GaussianRational(c));
                continue;
            }
            auto op = operator_for(s);
            if (!op) throw Error("left factor symbol " + s.to_string() + " has no generator under " + convention_.describe());
            out.add_scaled(op->first->apply(bv), GaussianRational(c * Rational(op->second)));
        }
        return from_walsh(out);
    }

private:
    Representation rep_;
    Convention convention_;
    std::vector<LinearMap> j_, jp_;
};

inline AlgebraElement star_oracle(const AlgebraElement& a, const AlgebraElement& b, const CliffordAlgebra& algebra) {
    return algebra.product(a, b);
}

/// a = c w_0 + h  ->  (c w_0 - h) / |a|^2.
inline AlgebraElement left_inverse(const AlgebraElement& a) {
    if (a.is_zero()) throw InputError("zero has no inverse");
    AlgebraElement out;
    for (const auto& [s, c] : a.terms()) out.add(s, (!s.primed && s.m == 0) ? c : Rational(-c));
    return Rational(1) / a.norm2() * out;
}

struct RuleAgreement {
    std::size_t agree = 0;
    std::size_t total = 0;
};

struct CalibrationReport {
    Convention convention;
    std::size_t matches = 0;
    std::size_t compared = 0;
    std::map<std::string, RuleAgreement> rules;  // per basis rule
    std::vector<std::pair<Convention, std::size_t>> ranking;  // every convention tried, in search order
};

namespace detail {

inline std::string rule_name(BasisSymbol a, BasisSymbol b) {
    std::string left = a.primed ? "w'_k" : (a.m == 0 ? "w_0" : "w_k");
    return left + " * " + (b.primed ? "w'_m" : "w_m");
}

}  // namespace detail

/// Searches Convention::all() for the identification maximizing the number
/// of basis products where the Clifford product equals the dyadic formula.
/// Only pairs where both sides are defined are compared. Ties keep the
/// earliest convention in search order.
inline CalibrationReport calibrate(const GammaSpec& gamma, const Representation& rep) {
    CalibrationReport best;
    const auto conventions = Convention::all();
    std::vector<CalibrationReport> results(conventions.size());
    parallel_for(conventions.size(), [&](std::size_t i) {
        CliffordAlgebra alg(rep, conventions[i]);
        CalibrationReport r;
        r.convention = conventions[i];
        for (const auto& a : alg.left_symbols()) {
            // The formula needs row k-1 (unprimed) or k (primed).
            const std::uint64_t needed = a.primed ? a.m : (a.m == 0 ? 0 : a.m - 1);
            if (needed > static_cast<std::uint64_t>(gamma.rows())) continue;
            for (const auto& b : alg.right_symbols()) {
                const AlgebraElement f = star_formula_basis(a, b, gamma);
                bool in_range = true;
                for (const auto& [s, c] : f.terms()) in_range = in_range && s.m < alg.dimension();
                if (!in_range) continue;
                const bool ok = f == alg.product(AlgebraElement::symbol(a), AlgebraElement::symbol(b));
                auto& rule = r.rules[detail::rule_name(a, b)];
                ++rule.total;
                ++r.compared;
                if (ok) {
                    ++rule.agree;
                    ++r.matches;
                }
            }
        }
        results[i] = std::move(r);
    });
    std::size_t pick = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        best.ranking.emplace_back(results[i].convention, results[i].matches);
        if (results[i].matches > results[pick].matches) pick = i;
    }
    if (results[pick].matches == 0) throw Error("calibration not found");
    auto ranking = std::move(best.ranking);
    best = std::move(results[pick]);
    best.ranking = std::move(ranking);
    return best;
}

enum class ProductKind { Formula, Oracle };

inline std::string to_string(ProductKind p) { return p == ProductKind::Formula ? "formula" : "oracle"; }

namespace detail {

inline Rational random_coefficient(std::mt19937_64& rng) {
    return Rational(static_cast<long>(rng() % 19) - 9);
}

inline AlgebraElement random_element(std::mt19937_64& rng, const std::vector<BasisSymbol>& pool, std::size_t max_support) {
    AlgebraElement e;
    const std::size_t support = 1 + rng() % std::min(max_support, pool.size());
    for (std::size_t i = 0; i < support; ++i) e.add(pool[rng() % pool.size()], random_coefficient(rng));
    return e;
}

}  // namespace detail

/// |a * b|^2 = |a|^2 |b|^2 and (a * b = 0 => a = 0 or b = 0) on seeded random
/// integer pairs with support <= 32. Formula products draw left factors from
/// the symbols whose rows are declared; oracle products from the left-factor
/// span of the algebra.
inline Report verify_norm_composition(ProductKind kind, const CliffordAlgebra& algebra, const GammaSpec& gamma,
                                      std::size_t trials, std::uint64_t seed) {
    Report report("norm_composition_" + to_string(kind));
    std::mt19937_64 rng(seed);
    std::vector<BasisSymbol> left;
    if (kind == ProductKind::Oracle) {
        left = algebra.left_symbols();
    } else {
        // w_k needs row k-1, w'_k needs row k.
        const auto rows = static_cast<std::uint64_t>(gamma.rows());
        for (std::uint64_t m = 0; m <= rows + 1; ++m) left.push_back({false, m});
        for (std::uint64_t m = 0; m <= rows; ++m) left.push_back({true, m});
    }
    const auto right = algebra.right_symbols();
    // Draw all inputs first so the stream does not depend on scheduling.
    std::vector<std::pair<AlgebraElement, AlgebraElement>> inputs;
    for (std::size_t t = 0; t < trials; ++t) {
        AlgebraElement a = detail::random_element(rng, left, 32);
        AlgebraElement b = detail::random_element(rng, right, 32);
        inputs.emplace_back(std::move(a), std::move(b));
    }
    std::vector<char> norm_ok(trials), divisor_ok(trials);
    parallel_for(trials, [&](std::size_t t) {
        const auto& [a, b] = inputs[t];
        const AlgebraElement p = kind == ProductKind::Oracle ? star_oracle(a, b, algebra) : star_formula(a, b, gamma);
        norm_ok[t] = p.norm2() == a.norm2() * b.norm2();
        divisor_ok[t] = !p.is_zero() || a.is_zero() || b.is_zero();
    });
    for (std::size_t t = 0; t < trials; ++t) {
        report.record(norm_ok[t], "|a*b|^2 = |a|^2 |b|^2", {{"trial", static_cast<std::int64_t>(t)}});
        report.record(divisor_ok[t], "no zero divisors", {{"trial", static_cast<std::int64_t>(t)}});
    }
    report.notes.push_back("seed " + std::to_string(seed) + ", " + std::to_string(trials) + " trials");
    return report;
}

/// Left-unit, Clifford-square and left-inverse laws of the Clifford product
/// on seeded random inputs.
inline Report verify_algebra_laws(const CliffordAlgebra& algebra, std::size_t trials, std::uint64_t seed) {
    Report report("algebra_laws");
    std::mt19937_64 rng(seed);
    const auto left = algebra.left_symbols();
    std::vector<BasisSymbol> span(left.begin() + 1, left.end());
    const auto right = algebra.right_symbols();
    const AlgebraElement unit = AlgebraElement::w(0);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto b = detail::random_element(rng, right, 32);
        const auto h = detail::random_element(rng, span, 32);
        const auto h2 = detail::random_element(rng, span, 32);
        const auto a = detail::random_element(rng, left, 32);
        const std::vector<std::pair<std::string, std::int64_t>> where{{"trial", static_cast<std::int64_t>(t)}};
        report.record(star_oracle(unit, b, algebra) == b, "w_0 * b = b", where);
        report.record(star_oracle(h, star_oracle(h, b, algebra), algebra) == (-h.norm2()) * b, "h*(h*b) = -|h|^2 b",
                      where);
        const AlgebraElement anti =
            star_oracle(h, star_oracle(h2, b, algebra), algebra) + star_oracle(h2, star_oracle(h, b, algebra), algebra);
        report.record(anti == (Rational(-2) * dot(h, h2)) * b, "h*(h'*b) + h'*(h*b) = -2<h,h'> b", where);
        if (!a.is_zero())
            report.record(star_oracle(left_inverse(a), star_oracle(a, b, algebra), algebra) == b, "a^{-1}*(a*b) = b",
                          where);
    }
    return report;
}

/// Left multiplication by every basis symbol w_k, w'_k (k <= kmax, rows
/// permitting) maps basis symbols to signed basis symbols injectively, so it
/// is an isometry.
inline Report verify_formula_isometry(const GammaSpec& gamma, std::uint64_t right_count, int kmax = 64) {
    Report report("formula_isometry");
    for (int k = 0; k <= kmax; ++k) {
        for (bool primed : {false, true}) {
            const int row = primed ? k : k - 1;
            if (row > gamma.rows()) continue;
            const BasisSymbol a{primed, static_cast<std::uint64_t>(k)};
            std::map<BasisSymbol, int> hits;
            bool signed_basis = true;
            for (std::uint64_t m = 0; m < right_count; ++m)
                for (bool bp : {false, true}) {
                    const AlgebraElement p = star_formula_basis(a, {bp, m}, gamma);
                    if (p.terms().size() != 1 || abs(p.terms().begin()->second) != 1) signed_basis = false;
                    else ++hits[p.terms().begin()->first];
                }
            bool injective = true;
            for (const auto& [s, n] : hits) injective = injective && n == 1;
            report.record(signed_basis && injective, "left multiplication by a basis symbol is a signed injection",
                          {{"k", k}, {"primed", primed ? 1 : 0}});
        }
    }
    return report;
}

/// J_h o J_g = -J_{r_h(g)} o J_h for each basis generator g, where
/// J_h = sum h_i G_i in the order J_1, J'_1, J_2, ... and
/// r_h(g) = g - 2 <g, h> h.
inline Report verify_reflection_relation(const Representation& rep, const std::vector<Rational>& h) {
    const auto gens = generators(rep);
    if (h.size() > gens.size()) throw InputError("h has more coordinates than generators");
    Rational n2;
    for (const auto& v : h) n2 += v * v;
    if (n2 != 1) throw InputError("h must be a unit vector");
    Report report("reflection");
    LinearMap jh(rep.level());
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!is_zero(h[i])) jh += GaussianRational(h[i]) * gens[i];
    std::vector<char> ok(gens.size());
    parallel_for(gens.size(), [&](std::size_t g) {
        const Rational hg = g < h.size() ? h[g] : Rational(0);
        LinearMap jr = gens[g];
        if (!is_zero(hg)) jr -= GaussianRational(Rational(2) * hg) * jh;
        ok[g] = jh * gens[g] == GaussianRational(-1) * (jr * jh);
    });
    for (std::size_t g = 0; g < gens.size(); ++g)
        report.record(ok[g], "J_h J_g = -J_{r_h(g)} J_h", {{"generator", static_cast<std::int64_t>(g + 1)}});
    return report;
}

}  // namespace spinor_lab
