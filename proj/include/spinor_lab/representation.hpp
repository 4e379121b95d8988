#pragma once

// Truncated spinor representations built from positive measure weights and a
// cocycle family, with one-dimensional fibres. Operators are returned in the
// Walsh basis of W_n.
//
//   J_k  f(x) = -i phi_{sigma^{k-1}}(x) c_k(x) (s(x+d^k)/s(x)) f(x+d^k)
//   J'_k f(x) =    phi_{sigma^k}(x)     c_k(x) (s(x+d^k)/s(x)) f(x+d^k)
//
// where s is the rational square root of the point weight.

#include <optional>
#include <string>
#include <vector>

#include "spinor_lab/gamma.hpp"
#include "spinor_lab/parallel.hpp"
#include "spinor_lab/report.hpp"
#include "spinor_lab/walsh_transform.hpp"

namespace spinor_lab {

/// Point weights w(x) = s(x)^2 with s(x) > 0 rational.
class MeasureWeights {
public:
    static MeasureWeights haar(TruncationLevel level) {
        return MeasureWeights(level, std::vector<Rational>(level.dimension(), Rational(1)), true);
    }

    static MeasureWeights from_sqrt(TruncationLevel level, std::vector<Rational> sqrt_weight) {
        if (sqrt_weight.size() != level.dimension()) throw InputError("weight table has the wrong size");
        for (const auto& s : sqrt_weight)
            if (sgn(s) <= 0) throw InputError("square-root weights must be positive");
        bool constant = true;
        for (const auto& s : sqrt_weight) constant = constant && s == sqrt_weight.front();
        return MeasureWeights(level, std::move(sqrt_weight), constant);
    }

    TruncationLevel level() const { return level_; }
    const Rational& sqrt_weight(std::uint64_t x) const { return s_.at(x); }
    Rational weight(std::uint64_t x) const { return s_.at(x) * s_.at(x); }

    /// True when all weights are equal: a positive multiple of Haar, so the
    /// Walsh basis is orthogonal and every Radon-Nikodym ratio is 1.
    bool is_uniform() const { return uniform_; }

private:
    MeasureWeights(TruncationLevel level, std::vector<Rational> s, bool uniform)
        : level_(level), s_(std::move(s)), uniform_(uniform) {}

    TruncationLevel level_;
    std::vector<Rational> s_;
    bool uniform_;
};

class CocycleFamily {
public:
    enum class Kind { Dyadic, Tensor, Constant1, Explicit };

    /// c_k(x) = phi_{gamma^k}(x).
    static CocycleFamily dyadic(GammaSpec gamma) {
        CocycleFamily c(Kind::Dyadic);
        c.gamma_ = validate(gamma).spec;
        return c;
    }

    /// c_k(x) = omega_k^{(-1)^{x_k}}, omega_k a fourth root of unity.
    static CocycleFamily tensor(std::vector<GaussianRational> omega) {
        for (const auto& w : omega)
            if (!is_fourth_root_of_unity(w)) throw InputError("tensor cocycle units must lie in {1,-1,i,-i}");
        CocycleFamily c(Kind::Tensor);
        c.omega_ = std::move(omega);
        return c;
    }

    static CocycleFamily constant_one() { return CocycleFamily(Kind::Constant1); }

    /// table[k-1][x] = c_k(x) for the points of a fixed level. Entries must
    /// have modulus 1; the cocycle identities are checked by verify_cocycle.
    static CocycleFamily explicit_table(TruncationLevel level, std::vector<std::vector<GaussianRational>> table) {
        for (const auto& row : table) {
            if (row.size() != level.dimension()) throw InputError("cocycle table row has the wrong size");
            for (const auto& v : row)
                if (v.norm2() != 1) throw InputError("cocycle values must have modulus 1");
        }
        CocycleFamily c(Kind::Explicit);
        c.table_level_ = level.n();
        c.table_ = std::move(table);
        return c;
    }

    Kind kind() const { return kind_; }
    const std::optional<GammaSpec>& gamma() const { return gamma_; }
    const std::vector<GaussianRational>& omega() const { return omega_; }

    /// Number of leading c_k that are well defined on W_n.
    int available_generators(TruncationLevel level) const {
        switch (kind_) {
            case Kind::Dyadic: return generators_at_level(*gamma_, level.n());
            case Kind::Tensor: return std::min<int>(level.n(), static_cast<int>(omega_.size()));
            case Kind::Constant1: return level.n();
            case Kind::Explicit:
                return table_level_ == level.n() ? std::min<int>(level.n(), static_cast<int>(table_.size())) : 0;
        }
        return 0;
    }

    GaussianRational value(int k, DyadicIndex x) const {
        switch (kind_) {
            case Kind::Dyadic: return GaussianRational(walsh_eval(gamma_->row(k), x));
            case Kind::Tensor: {
                const auto& w = omega_.at(static_cast<std::size_t>(k - 1));
                return x.test(k) ? w.conj() : w;
            }
            case Kind::Constant1: return GaussianRational(1);
            case Kind::Explicit: return table_.at(static_cast<std::size_t>(k - 1)).at(index_to_integer(x));
        }
        return {};
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Dyadic: return "dyadic";
            case Kind::Tensor: return "tensor";
            case Kind::Constant1: return "constant1";
            case Kind::Explicit: return "explicit";
        }
        return "?";
    }

private:
    explicit CocycleFamily(Kind k) : kind_(k) {}

    Kind kind_;
    std::optional<GammaSpec> gamma_;
    std::vector<GaussianRational> omega_;
    int table_level_ = 0;
    std::vector<std::vector<GaussianRational>> table_;
};

class Representation {
public:
    /// generators = 0 selects the largest count the cocycles support.
    Representation(TruncationLevel level, MeasureWeights weights, CocycleFamily cocycles, int generators = 0)
        : level_(level), weights_(std::move(weights)), cocycles_(std::move(cocycles)) {
        if (!(weights_.level() == level_)) throw InputError("weights and representation levels differ");
        const int available = cocycles_.available_generators(level_);
        generators_ = generators == 0 ? available : generators;
        if (generators_ < 1 || generators_ > available)
            throw InputError("generator count " + std::to_string(generators_) + " not supported at level " +
                             std::to_string(level_.n()) + " (max " + std::to_string(available) + ")");
    }

    /// Haar weights, c_k = phi_{gamma^k}.
    static Representation dyadic(const GammaSpec& gamma, int n, int generators = 0) {
        TruncationLevel level(n);
        return Representation(level, MeasureWeights::haar(level), CocycleFamily::dyadic(gamma), generators);
    }

    /// The finite representation on functions of n bits: Haar, c_k = 1.
    static Representation finite(int n) {
        TruncationLevel level(n);
        return Representation(level, MeasureWeights::haar(level), CocycleFamily::constant_one());
    }

    TruncationLevel level() const { return level_; }
    const MeasureWeights& weights() const { return weights_; }
    const CocycleFamily& cocycles() const { return cocycles_; }
    int generator_count() const { return generators_; }

    bool is_dyadic_haar() const {
        return cocycles_.kind() == CocycleFamily::Kind::Dyadic && weights_.is_uniform();
    }

private:
    TruncationLevel level_;
    MeasureWeights weights_;
    CocycleFamily cocycles_;
    int generators_ = 0;
};

namespace detail {

inline void require_generator(const Representation& rep, int k) {
    if (k < 1 || k > rep.generator_count())
        throw InputError("generator index " + std::to_string(k) + " outside 1.." + std::to_string(rep.generator_count()));
}

// Point-basis form: e_y -> coeff(y + d^k) e_{y + d^k} where coeff(x) is the
// multiplier in front of f(x + d^k).
inline LinearMap shift_operator_general(const Representation& rep, int k, bool primed) {
    const TruncationLevel level = rep.level();
    const DyadicIndex dk = DyadicIndex::delta(k);
    const DyadicIndex sign_mask = sigma(primed ? k : k - 1);
    PointMonomial p;
    p.target.resize(level.dimension());
    p.coefficient.resize(level.dimension());
    for (std::uint64_t y = 0; y < level.dimension(); ++y) {
        const DyadicIndex x = index_from_integer(y) + dk;
        GaussianRational c = rep.cocycles().value(k, x);
        c *= GaussianRational(Rational(rep.weights().sqrt_weight(y) / rep.weights().sqrt_weight(index_to_integer(x))));
        if (walsh_eval(sign_mask, x) < 0) c = -c;
        if (!primed) c *= GaussianRational(0L, -1L);
        p.target[y] = index_to_integer(x);
        p.coefficient[y] = std::move(c);
    }
    return walsh_matrix(p, level);
}

// Walsh form for Haar and dyadic cocycles:
//   J_k phi_a  = -i (-1)^{a_k} phi_{a + gamma^k + sigma^{k-1}}
//   J'_k phi_a =    (-1)^{a_k} phi_{a + gamma^k + sigma^k}
inline LinearMap shift_operator_dyadic(const Representation& rep, int k, bool primed) {
    const TruncationLevel level = rep.level();
    const DyadicIndex shift = rep.cocycles().gamma()->row(k) + sigma(primed ? k : k - 1);
    const GaussianRational unit = primed ? GaussianRational(1) : GaussianRational(0L, -1L);
    LinearMap out(level);
    for (std::uint64_t a = 0; a < level.dimension(); ++a) {
        const DyadicIndex alpha = index_from_integer(a);
        out.set_column(a, WalshVector::basis(alpha + shift, alpha.test(k) ? -unit : unit));
    }
    return out;
}

}  // namespace detail

inline LinearMap build_J(const Representation& rep, int k) {
    detail::require_generator(rep, k);
    return rep.is_dyadic_haar() ? detail::shift_operator_dyadic(rep, k, false)
                                : detail::shift_operator_general(rep, k, false);
}

inline LinearMap build_Jprime(const Representation& rep, int k) {
    detail::require_generator(rep, k);
    return rep.is_dyadic_haar() ? detail::shift_operator_dyadic(rep, k, true)
                                : detail::shift_operator_general(rep, k, true);
}

/// Same operators through the point-basis construction, whatever the input.
/// Used to cross-check the Walsh closed form.
inline LinearMap build_J_pointwise(const Representation& rep, int k) {
    detail::require_generator(rep, k);
    return detail::shift_operator_general(rep, k, false);
}
inline LinearMap build_Jprime_pointwise(const Representation& rep, int k) {
    detail::require_generator(rep, k);
    return detail::shift_operator_general(rep, k, true);
}

/// a_k = (i J_k - J'_k) / 2.
inline LinearMap build_a(const Representation& rep, int k) {
    LinearMap out = GaussianRational(0L, 1L) * build_J(rep, k);
    out -= build_Jprime(rep, k);
    out *= GaussianRational(Rational(1, 2));
    return out;
}

/// Adjoint of a_k for the weighted inner product. J_k and J'_k are
/// skew-adjoint, so a_k* = (i J_k + J'_k) / 2.
inline LinearMap build_a_star(const Representation& rep, int k) {
    LinearMap out = GaussianRational(0L, 1L) * build_J(rep, k);
    out += build_Jprime(rep, k);
    out *= GaussianRational(Rational(1, 2));
    return out;
}

/// J_1, J'_1, J_2, J'_2, ... (2K operators).
inline std::vector<LinearMap> generators(const Representation& rep) {
    std::vector<LinearMap> out;
    for (int k = 1; k <= rep.generator_count(); ++k) {
        out.push_back(build_J(rep, k));
        out.push_back(build_Jprime(rep, k));
    }
    return out;
}

inline std::string generator_name(std::size_t position) {
    const int k = static_cast<int>(position / 2) + 1;
    return (position % 2 == 0 ? "J" : "J'") + std::to_string(k);
}

/// <M f, M g>_w = <f, g>_w for all f, g. Uniform weights: Walsh columns are
/// orthonormal. Otherwise the check runs on point-basis columns.
inline bool is_weighted_isometry(const LinearMap& m, const MeasureWeights& w) {
    if (w.is_uniform()) return m.adjoint() * m == LinearMap::identity(m.level());
    const auto p = point_matrix(m);
    const std::uint64_t dim = m.level().dimension();
    for (std::uint64_t y = 0; y < dim; ++y) {
        for (std::uint64_t z = y; z < dim; ++z) {
            GaussianRational g;
            for (std::uint64_t x = 0; x < dim; ++x) {
                if (p[y][x].is_zero() || p[z][x].is_zero()) continue;
                g += GaussianRational(w.weight(x)) * p[y][x].conj() * p[z][x];
            }
            const GaussianRational expected = y == z ? GaussianRational(w.weight(y)) : GaussianRational();
            if (g != expected) return false;
        }
    }
    return true;
}

/// Exhaustive check of c_k(x)* = c_k(x + d^k) and
/// c_k(x) c_l(x + d^k) = c_l(x) c_k(x + d^l) for k, l <= K.
inline Report verify_cocycle(const CocycleFamily& c, TruncationLevel level, int generators = 0) {
    Report report("cocycle");
    const int K = generators == 0 ? c.available_generators(level) : generators;
    for (int k = 1; k <= K; ++k) {
        const DyadicIndex dk = DyadicIndex::delta(k);
        for (std::uint64_t xi = 0; xi < level.dimension(); ++xi) {
            const DyadicIndex x = index_from_integer(xi);
            const GaussianRational ck = c.value(k, x);
            report.record(ck.norm2() == 1, "|c_k(x)| = 1", {{"k", k}, {"x", static_cast<std::int64_t>(xi)}});
            report.record(ck.conj() == c.value(k, x + dk), "c_k(x)* = c_k(x+d^k)",
                          {{"k", k}, {"x", static_cast<std::int64_t>(xi)}});
            for (int l = 1; l <= K; ++l) {
                if (l == k) continue;
                const DyadicIndex dl = DyadicIndex::delta(l);
                report.record(ck * c.value(l, x + dk) == c.value(l, x) * c.value(k, x + dl),
                              "c_k(x) c_l(x+d^k) = c_l(x) c_k(x+d^l)",
                              {{"k", k}, {"l", l}, {"x", static_cast<std::int64_t>(xi)}});
            }
        }
    }
    return report;
}

/// J_k^2 = J'_k^2 = -I, pairwise anticommutation of all 2K generators and
/// isometry of each, plus the cocycle identities behind them.
inline Report verify_clifford(const Representation& rep) {
    Report report("clifford");
    const auto gens = generators(rep);
    const LinearMap identity = LinearMap::identity(rep.level());
    const LinearMap minus_identity = GaussianRational(-1) * identity;
    const std::size_t g = gens.size();

    std::vector<Report> per_generator(g);
    parallel_for(g, [&](std::size_t a) {
        Report& r = per_generator[a];
        const int ka = static_cast<int>(a / 2) + 1;
        const std::int64_t primed_a = static_cast<std::int64_t>(a % 2);
        const LinearMap sq = gens[a] * gens[a];
        r.record(sq == minus_identity, "G^2 = -I",
                 {{"k", ka}, {"primed", primed_a}, {"column", sq.first_difference(minus_identity)}});
        r.record(is_weighted_isometry(gens[a], rep.weights()), "isometry", {{"k", ka}, {"primed", primed_a}});
        for (std::size_t b = a + 1; b < g; ++b) {
            const LinearMap anti = gens[a] * gens[b] + gens[b] * gens[a];
            r.record(anti.is_zero(), "G_a G_b + G_b G_a = 0",
                     {{"k", ka},
                      {"primed_k", primed_a},
                      {"l", static_cast<std::int64_t>(b / 2) + 1},
                      {"primed_l", static_cast<std::int64_t>(b % 2)},
                      {"column", anti.first_difference(LinearMap(rep.level()))}});
        }
    });
    for (const auto& r : per_generator) report.merge(r);
    report.merge(verify_cocycle(rep.cocycles(), rep.level(), rep.generator_count()));
    return report;
}

/// a_k a_l + a_l a_k = 0 and a_k a_l* + a_l* a_k = delta_kl I, plus the
/// adjoint relation between a_k and a_k* under the Haar form when weights are
/// uniform.
inline Report verify_car(const Representation& rep) {
    Report report("car");
    const int K = rep.generator_count();
    std::vector<LinearMap> a, as;
    for (int k = 1; k <= K; ++k) {
        a.push_back(build_a(rep, k));
        as.push_back(build_a_star(rep, k));
    }
    const LinearMap identity = LinearMap::identity(rep.level());
    std::vector<Report> rows(static_cast<std::size_t>(K));
    parallel_for(rows.size(), [&](std::size_t k) {
        Report& r = rows[k];
        if (rep.weights().is_uniform())
            r.record(as[k] == a[k].adjoint(), "a_k* is the adjoint of a_k", {{"k", static_cast<std::int64_t>(k) + 1}});
        for (std::size_t l = 0; l < static_cast<std::size_t>(K); ++l) {
            const std::vector<std::pair<std::string, std::int64_t>> where{{"k", static_cast<std::int64_t>(k) + 1},
                                                                          {"l", static_cast<std::int64_t>(l) + 1}};
            r.record((a[k] * a[l] + a[l] * a[k]).is_zero(), "a_k a_l + a_l a_k = 0", where);
            LinearMap mixed = a[k] * as[l] + as[l] * a[k];
            r.record(k == l ? mixed == identity : mixed.is_zero(), "a_k a_l* + a_l* a_k = delta_kl I", where);
        }
    });
    for (const auto& r : rows) report.merge(r);
    return report;
}

}  // namespace spinor_lab
