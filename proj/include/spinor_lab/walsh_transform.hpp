#pragma once

// The 2^n-point character transform between point values f(x) and Walsh
// coefficients, and conversion of point-basis operators to Walsh columns.

#include <algorithm>
#include <functional>
#include <vector>

#include "spinor_lab/linear_map.hpp"

namespace spinor_lab {

/// In-place unnormalized Walsh-Hadamard butterfly:
/// out[b] = sum_a in[a] (-1)^{popcount(a & b)}.
inline void hadamard_in_place(std::vector<GaussianRational>& v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                GaussianRational a = v[j];
                GaussianRational b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

/// f(x) for every truncated point x, indexed by index_to_integer(x).
inline std::vector<GaussianRational> to_point_values(const WalshVector& f, TruncationLevel level) {
    std::vector<GaussianRational> v(level.dimension());
    for (const auto& [alpha, c] : f.terms()) {
        if (!level.contains(alpha)) throw InputError("vector exceeds truncation");
        v[index_to_integer(alpha)] = c;
    }
    hadamard_in_place(v);
    return v;
}

inline WalshVector from_point_values(std::vector<GaussianRational> values, TruncationLevel level) {
    if (values.size() != level.dimension()) throw InputError("point table has the wrong size");
    hadamard_in_place(values);
    const Rational scale(1, level.dimension());
    WalshVector out;
    for (std::uint64_t b = 0; b < values.size(); ++b) {
        if (values[b].is_zero()) continue;
        values[b] *= GaussianRational(scale);
        out.add(index_from_integer(b), values[b]);
    }
    return out;
}

/// A point-basis operator that sends e_y to coefficient(y) * e_{target(y)}.
struct PointMonomial {
    std::vector<std::uint64_t> target;
    std::vector<GaussianRational> coefficient;
};

/// Walsh-basis matrix of a point monomial. Column alpha is the transform of
/// x -> sum over y with target(y) = x of phi_alpha(y) coefficient(y).
inline LinearMap walsh_matrix(const PointMonomial& p, TruncationLevel level) {
    const std::uint64_t dim = level.dimension();
    if (p.target.size() != dim || p.coefficient.size() != dim) throw InputError("point monomial has the wrong size");
    LinearMap out(level);
    std::vector<GaussianRational> g(dim);
    for (std::uint64_t a = 0; a < dim; ++a) {
        std::fill(g.begin(), g.end(), GaussianRational());
        const DyadicIndex alpha = index_from_integer(a);
        for (std::uint64_t y = 0; y < dim; ++y) {
            if (p.coefficient[y].is_zero()) continue;
            GaussianRational c = p.coefficient[y];
            if (walsh_eval(alpha, index_from_integer(y)) < 0) c = -c;
            g[p.target[y]] += c;
        }
        out.set_column(a, from_point_values(std::move(g), level));
        g.assign(dim, GaussianRational());
    }
    return out;
}

/// Point-basis matrix of a Walsh-basis operator: column y is the image of
/// the indicator e_y, as point values.
inline std::vector<std::vector<GaussianRational>> point_matrix(const LinearMap& m) {
    const TruncationLevel level = m.level();
    const std::uint64_t dim = level.dimension();
    std::vector<std::vector<GaussianRational>> out(dim);
    const Rational scale(1, dim);
    for (std::uint64_t y = 0; y < dim; ++y) {
        // e_y = 2^{-n} sum_alpha phi_alpha(y) phi_alpha
        WalshVector ey;
        for (std::uint64_t a = 0; a < dim; ++a)
            ey.add(index_from_integer(a),
                   GaussianRational(walsh_eval(index_from_integer(a), index_from_integer(y)) > 0 ? scale : Rational(-scale)));
        out[y] = to_point_values(m.apply(ey), level);
    }
    return out;
}

}  // namespace spinor_lab
