#pragma once

// Symmetric zero-diagonal 0/1 parameter matrices, given by the positions of
// their 1's plus a declared row range R. Rows 1..R are asserted complete;
// nothing is claimed about rows beyond R.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spinor_lab/dyadic.hpp"

namespace spinor_lab {

class GammaSpec {
public:
    using Pair = std::pair<int, int>;

    GammaSpec() = default;

    /// Pairs are stored as (min, max); the constructor does not validate,
    /// see validate().
    GammaSpec(std::vector<Pair> pairs, int rows) : rows_(rows) {
        for (auto [i, j] : pairs) pairs_.emplace(std::min(i, j), std::max(i, j));
    }

    const std::set<Pair>& pairs() const { return pairs_; }
    int rows() const { return rows_; }

    /// Support of row k, sorted.
    std::vector<int> row_support(int k) const {
        std::vector<int> out;
        for (auto [i, j] : pairs_) {
            if (i == k) out.push_back(j);
            if (j == k) out.push_back(i);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    int row_weight(int k) const { return static_cast<int>(row_support(k).size()); }

    /// Row k as a dyadic index. Row 0 does not exist and is read as empty.
    DyadicIndex row(int k) const {
        if (k == 0) return {};
        return DyadicIndex::from_support(row_support(k));
    }

    bool entry(int k, int l) const { return pairs_.count({std::min(k, l), std::max(k, l)}) > 0; }

    /// Largest column index appearing in rows 1..k, 0 if all are empty.
    int max_column(int k) const {
        int m = 0;
        for (auto [i, j] : pairs_) {
            if (i <= k) m = std::max(m, j);
            if (j <= k) m = std::max(m, i);
        }
        return m;
    }

    friend bool operator==(const GammaSpec&, const GammaSpec&) = default;

private:
    std::set<Pair> pairs_;
    int rows_ = 0;
};

struct GammaValidation {
    GammaSpec spec;
    std::vector<std::string> warnings;
};

/// Rejects diagonal entries and indices < 1; warns about empty odd rows
/// (k >= 3), which rule out both parity classes.
inline GammaValidation validate(const GammaSpec& spec) {
    if (spec.rows() < 1) throw InputError("declared row range must be positive, got " + std::to_string(spec.rows()));
    for (auto [i, j] : spec.pairs()) {
        const std::string where = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
        if (i < 1) throw InputError("nonpositive index in pair " + where);
        if (i == j) throw InputError("diagonal entry " + where);
        if (j > DyadicIndex::max_coordinate)
            throw InputError("index in pair " + where + " exceeds " + std::to_string(DyadicIndex::max_coordinate));
    }
    GammaValidation out{spec, {}};
    for (int k = 3; k <= spec.rows(); k += 2)
        if (spec.row_weight(k) == 0)
            out.warnings.push_back("row " + std::to_string(k) + " is empty; the matrix is in neither parity class");
    return out;
}

enum class GammaTag { Gamma1, GammaMinus1, Neither };

inline std::string to_string(GammaTag t) {
    switch (t) {
        case GammaTag::Gamma1: return "Gamma1";
        case GammaTag::GammaMinus1: return "GammaMinus1";
        case GammaTag::Neither: return "Neither";
    }
    return "?";
}

struct GammaClass {
    GammaTag tag = GammaTag::Neither;
    /// First row breaking the Gamma1 rule, if any.
    std::optional<int> gamma1_witness;
    /// First row breaking the Gamma-1 rule, if any.
    std::optional<int> gamma_minus1_witness;
};

/// Gamma1: |row k| = k (mod 2) for every k <= R.
/// Gamma-1: |row 1| even and |row k| = k (mod 2) for 2 <= k <= R.
inline GammaClass classify(const GammaSpec& spec) {
    GammaClass out;
    for (int k = 1; k <= spec.rows(); ++k) {
        const int w = spec.row_weight(k);
        if (!out.gamma1_witness && (w + k) % 2 != 0) out.gamma1_witness = k;
        const bool minus1_ok = k == 1 ? (w % 2 == 0) : ((w + k) % 2 == 0);
        if (!out.gamma_minus1_witness && !minus1_ok) out.gamma_minus1_witness = k;
    }
    if (!out.gamma1_witness)
        out.tag = GammaTag::Gamma1;
    else if (!out.gamma_minus1_witness)
        out.tag = GammaTag::GammaMinus1;
    return out;
}

/// Smallest n such that rows 1..k live in W_n, and at least k.
inline int required_level(const GammaSpec& spec, int k) {
    if (k < 1 || k > spec.rows())
        throw InputError("row " + std::to_string(k) + " outside declared range 1.." + std::to_string(spec.rows()));
    return std::max(k, spec.max_column(k));
}

/// N_1 <= ... <= N_kmax with N_k = max(k, min{m : rows 1..k in W_m}).
inline std::vector<int> filtration_levels(const GammaSpec& spec, int kmax) {
    std::vector<int> out;
    for (int k = 1; k <= kmax; ++k) out.push_back(required_level(spec, k));
    return out;
}

/// Largest k with required_level(spec, k) <= n (0 if none), capped at R.
inline int generators_at_level(const GammaSpec& spec, int n) {
    int best = 0;
    for (int k = 1; k <= std::min(spec.rows(), n); ++k)
        if (required_level(spec, k) <= n) best = k;
    return best;
}

namespace gamma_presets {

inline GammaSpec zero(int rows) { return GammaSpec({}, rows); }

/// Even rows empty, 4l+1 <-> 4l+3. Pairs whose smaller end is within R.
inline GammaSpec real_example(int rows) {
    std::vector<GammaSpec::Pair> pairs;
    for (int a = 1; a <= rows; a += 4) pairs.emplace_back(a, a + 2);
    return GammaSpec(pairs, rows);
}

/// Rows 1, 2 and all even rows empty, 4l+3 <-> 4l+5.
inline GammaSpec quaternionic_example(int rows) {
    std::vector<GammaSpec::Pair> pairs;
    for (int a = 3; a <= rows; a += 4) pairs.emplace_back(a, a + 2);
    return GammaSpec(pairs, rows);
}

/// Each pair {i,j} within 1..size is present independently with
/// probability 1/2 (bit draws from the engine). Rows = size.
inline GammaSpec random_closed(std::mt19937_64& rng, int size) {
    std::vector<GammaSpec::Pair> pairs;
    for (int i = 1; i <= size; ++i)
        for (int j = i + 1; j <= size; ++j)
            if (rng() & 1U) pairs.emplace_back(i, j);
    return GammaSpec(pairs, size);
}

/// Pairs within 1..size as in random_closed, but only rows 1..rows declared.
/// A class can require this: closed Gamma1 matrices exist only for
/// size = 0, 3 (mod 4), since the row weights sum to an even number.
inline GammaSpec random_in_window(std::mt19937_64& rng, int size, int rows) {
    const GammaSpec closed = random_closed(rng, size);
    return GammaSpec({closed.pairs().begin(), closed.pairs().end()}, rows);
}

/// Rejection sampling of random_closed until the class matches.
inline GammaSpec random_closed_in_class(std::mt19937_64& rng, int size, GammaTag tag, int max_tries = 100000,
                                        int rows = 0) {
    for (int t = 0; t < max_tries; ++t) {
        GammaSpec g = random_in_window(rng, size, rows == 0 ? size : rows);
        if (classify(g).tag == tag) return g;
    }
    throw Error("no random matrix of class " + to_string(tag) + " found at size " + std::to_string(size));
}

}  // namespace gamma_presets

}  // namespace spinor_lab
