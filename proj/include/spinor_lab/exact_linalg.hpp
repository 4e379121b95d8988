#pragma once

// Exact linear algebra over Q and Q(i): sparse row echelon (rank, nullspace,
// particular solutions), division-free characteristic polynomials over Z and
// integer root extraction.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "spinor_lab/rational.hpp"

namespace spinor_lab {

template <class Field>
using SparseRow = std::map<std::size_t, Field>;

/// Incremental echelon form. Each stored row has pivot coefficient 1 at its
/// smallest column; columns are eliminated smallest-first so stored rows only
/// carry columns to the right of their pivot.
template <class Field>
class RowEchelon {
public:
    explicit RowEchelon(std::size_t columns) : columns_(columns) {}

    std::size_t columns() const { return columns_; }
    std::size_t rank() const { return pivots_.size(); }
    const std::map<std::size_t, SparseRow<Field>>& pivot_rows() const { return pivots_; }

    /// Returns true if the row was independent of the rows already added.
    bool add_row(SparseRow<Field> row) {
        prune(row);
        while (!row.empty()) {
            auto lead = row.begin();
            auto p = pivots_.find(lead->first);
            if (p == pivots_.end()) break;
            const Field factor = lead->second;
            row.erase(lead);
            for (const auto& [c, v] : p->second) {
                if (c == p->first) continue;
                Field t = factor;
                t *= v;
                auto [it, inserted] = row.try_emplace(c, Field());
                it->second -= t;
                if (is_zero(it->second)) row.erase(it);
            }
        }
        if (row.empty()) return false;
        const Field inv = Field(1) / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(row.begin()->first, std::move(row));
        return true;
    }

    bool is_pivot(std::size_t c) const { return pivots_.count(c) > 0; }

    /// Basis of {x : A x = 0}, one vector per free column f with x_f = 1.
    std::vector<std::vector<Field>> nullspace() const {
        std::vector<std::vector<Field>> basis;
        for (std::size_t f = 0; f < columns_; ++f) {
            if (is_pivot(f)) continue;
            std::vector<Field> x(columns_);
            x[f] = Field(1);
            back_substitute(x, std::nullopt);
            basis.push_back(std::move(x));
        }
        return basis;
    }

    /// For a system built with an augmented right-hand-side column `rhs`
    /// (rhs >= every variable column), the solution with all free variables
    /// zero, or nullopt when inconsistent.
    std::optional<std::vector<Field>> particular_solution(std::size_t rhs) const {
        if (is_pivot(rhs)) return std::nullopt;
        std::vector<Field> x(columns_);
        back_substitute(x, rhs);
        x.resize(rhs);
        return x;
    }

private:
    static void prune(SparseRow<Field>& row) {
        for (auto it = row.begin(); it != row.end();)
            it = is_zero(it->second) ? row.erase(it) : std::next(it);
    }

    // x_p = -(sum_{c > p} row_p[c] x_c) [+ row_p[rhs] when augmented],
    // pivots visited right to left.
    void back_substitute(std::vector<Field>& x, std::optional<std::size_t> rhs) const {
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const std::size_t p = it->first;
            if (rhs && p >= *rhs) continue;
            Field acc;
            for (const auto& [c, v] : it->second) {
                if (c == p) continue;
                if (rhs && c == *rhs) {
                    acc -= v;
                    continue;
                }
                if (is_zero(x[c])) continue;
                Field t = v;
                t *= x[c];
                acc += t;
            }
            x[p] = -acc;
        }
    }

    std::size_t columns_;
    std::map<std::size_t, SparseRow<Field>> pivots_;
};

/// Dense square integer matrix, row-major.
using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Coefficients of det(x I - A), highest degree first, computed by
/// Berkowitz's division-free recurrence (only ring operations over Z).
inline std::vector<Integer> characteristic_polynomial(const IntegerMatrix& a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw InputError("characteristic_polynomial expects a square matrix");

    // Sparse rows of A for the repeated products A_r w.
    std::vector<std::vector<std::pair<std::size_t, Integer>>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(a[i][j])) rows[i].emplace_back(j, a[i][j]);

    std::vector<Integer> v{Integer(1)};
    for (std::size_t r = 0; r < n; ++r) {
        // Leading (r+1)x(r+1) block: [[A_r, C], [R, a_rr]].
        std::vector<Integer> t(r + 2);
        t[0] = 1;
        t[1] = -a[r][r];
        std::vector<Integer> w(r);
        for (std::size_t i = 0; i < r; ++i) w[i] = a[i][r];
        for (std::size_t j = 0; j < r; ++j) {
            Integer rw;
            for (std::size_t i = 0; i < r; ++i)
                if (!is_zero(a[r][i]) && !is_zero(w[i])) rw += a[r][i] * w[i];
            t[j + 2] = -rw;
            if (j + 1 == r) break;
            std::vector<Integer> next(r);
            for (std::size_t i = 0; i < r; ++i)
                for (const auto& [c, val] : rows[i])
                    if (c < r && !is_zero(w[c])) next[i] += val * w[c];
            w = std::move(next);
        }
        // Lower-triangular Toeplitz (r+2)x(r+1) times v.
        std::vector<Integer> nv(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j)
                if (!is_zero(t[i - j]) && !is_zero(v[j])) nv[i] += t[i - j] * v[j];
        v = std::move(nv);
    }
    return v;
}

/// p(x) by Horner, coefficients highest degree first.
inline Integer evaluate(const std::vector<Integer>& p, const Integer& x) {
    Integer acc;
    for (const auto& c : p) acc = acc * x + c;
    return acc;
}

/// p(x) / (x - r) for a known root r.
inline std::vector<Integer> deflate(const std::vector<Integer>& p, const Integer& r) {
    std::vector<Integer> q;
    Integer acc;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc = acc * r + p[i];
        q.push_back(acc);
    }
    return q;
}

struct IntegerRoots {
    std::map<Integer, int> multiplicity;  // root -> algebraic multiplicity
    std::vector<Integer> remainder;       // leftover factor, degree 0 iff fully split
};

/// Integer roots of a monic integer polynomial. Candidates are 0 and the
/// divisors of the trailing nonzero coefficient with |r| <= bound.
inline IntegerRoots integer_roots(std::vector<Integer> p, const Integer& bound) {
    IntegerRoots out;
    while (p.size() > 1 && is_zero(p.back())) {
        p.pop_back();
        ++out.multiplicity[Integer(0)];
    }
    for (Integer r = 1; r <= bound && p.size() > 1; ++r) {
        for (const Integer& cand : {Integer(r), Integer(-r)}) {
            while (p.size() > 1) {
                const Integer& trailing = p.back();
                if (!mpz_divisible_p(trailing.get_mpz_t(), cand.get_mpz_t())) break;
                if (!is_zero(evaluate(p, cand))) break;
                p = deflate(p, cand);
                ++out.multiplicity[cand];
            }
        }
    }
    out.remainder = std::move(p);
    return out;
}

}  // namespace spinor_lab
