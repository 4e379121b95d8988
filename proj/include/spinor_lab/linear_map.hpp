#pragma once

// Exact operators on a truncated Walsh space W_n, stored column by column:
// column j is the image of phi_alpha with index_to_integer(alpha) == j.

#include <string>
#include <vector>

#include "spinor_lab/walsh_vector.hpp"

namespace spinor_lab {

struct Triplet {
    std::uint64_t row;
    std::uint64_t col;
    GaussianRational value;
};

class LinearMap {
public:
    explicit LinearMap(TruncationLevel level) : level_(level), columns_(level.dimension()) {}

    static LinearMap identity(TruncationLevel level) {
        LinearMap m(level);
        for (std::uint64_t j = 0; j < level.dimension(); ++j) m.columns_[j].add(index_from_integer(j), 1);
        return m;
    }

    /// Multiplication by the character phi_beta.
    static LinearMap character(DyadicIndex beta, TruncationLevel level) {
        if (!level.contains(beta)) throw InputError("character label exceeds truncation");
        LinearMap m(level);
        for (std::uint64_t j = 0; j < level.dimension(); ++j) m.columns_[j].add(index_from_integer(j) + beta, 1);
        return m;
    }

    TruncationLevel level() const { return level_; }
    std::uint64_t dimension() const { return columns_.size(); }

    const WalshVector& column(std::uint64_t j) const { return columns_.at(j); }
    const WalshVector& column(DyadicIndex alpha) const { return column(index_to_integer(alpha)); }

    void set_column(std::uint64_t j, WalshVector v) {
        if (v.highest_coordinate() > level_.n()) throw InputError("column image leaves the truncated space");
        columns_.at(j) = std::move(v);
    }

    WalshVector apply(const WalshVector& f) const {
        WalshVector out;
        for (const auto& [alpha, c] : f.terms()) {
            if (!level_.contains(alpha)) throw InputError("vector exceeds the operator's truncation");
            out.add_scaled(columns_[index_to_integer(alpha)], c);
        }
        return out;
    }

    /// Composition (*this) o rhs.
    LinearMap operator*(const LinearMap& rhs) const {
        require_same_level(rhs);
        LinearMap out(level_);
        for (std::uint64_t j = 0; j < dimension(); ++j) out.columns_[j] = apply(rhs.columns_[j]);
        return out;
    }

    LinearMap& operator+=(const LinearMap& o) {
        require_same_level(o);
        for (std::uint64_t j = 0; j < dimension(); ++j) columns_[j] += o.columns_[j];
        return *this;
    }
    LinearMap& operator-=(const LinearMap& o) {
        require_same_level(o);
        for (std::uint64_t j = 0; j < dimension(); ++j) columns_[j] -= o.columns_[j];
        return *this;
    }
    LinearMap& operator*=(const GaussianRational& s) {
        for (auto& c : columns_) c *= s;
        return *this;
    }

    friend LinearMap operator+(LinearMap a, const LinearMap& b) { return a += b; }
    friend LinearMap operator-(LinearMap a, const LinearMap& b) { return a -= b; }
    friend LinearMap operator*(const GaussianRational& s, LinearMap m) { return m *= s; }

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.level_ == b.level_ && a.columns_ == b.columns_;
    }

    bool is_zero() const {
        for (const auto& c : columns_)
            if (!c.empty()) return false;
        return true;
    }

    /// Index of the first column where the two maps differ, or -1.
    long long first_difference(const LinearMap& o) const {
        require_same_level(o);
        for (std::uint64_t j = 0; j < dimension(); ++j)
            if (!(columns_[j] == o.columns_[j])) return static_cast<long long>(j);
        return -1;
    }

    /// Entrywise conjugate: the matrix of conj o M o conj.
    LinearMap conj() const {
        LinearMap out(level_);
        for (std::uint64_t j = 0; j < dimension(); ++j) out.columns_[j] = columns_[j].conj();
        return out;
    }

    /// Conjugate transpose in Walsh coordinates (the Haar adjoint).
    LinearMap adjoint() const {
        LinearMap out(level_);
        for (std::uint64_t j = 0; j < dimension(); ++j)
            for (const auto& [alpha, c] : columns_[j].terms())
                out.columns_[index_to_integer(alpha)].add(index_from_integer(j), c.conj());
        return out;
    }

    std::size_t nonzero_count() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    std::size_t max_column_size() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n = std::max(n, c.size());
        return n;
    }

    /// Nonzero entries in column-major order.
    std::vector<Triplet> triplets() const {
        std::vector<Triplet> out;
        for (std::uint64_t j = 0; j < dimension(); ++j)
            for (const auto& [alpha, c] : columns_[j].terms()) out.push_back({index_to_integer(alpha), j, c});
        return out;
    }

private:
    void require_same_level(const LinearMap& o) const {
        if (!(level_ == o.level_)) throw InputError("operators live on different truncation levels");
    }

    TruncationLevel level_;
    std::vector<WalshVector> columns_;
};

/// A(f) = C(conj f): an antilinear map carried by the linear matrix C in
/// Walsh coordinates.
class AntilinearMap {
public:
    explicit AntilinearMap(LinearMap matrix) : matrix_(std::move(matrix)) {}

    const LinearMap& matrix() const { return matrix_; }
    TruncationLevel level() const { return matrix_.level(); }

    WalshVector apply(const WalshVector& f) const { return matrix_.apply(f.conj()); }

    friend bool operator==(const AntilinearMap& a, const AntilinearMap& b) { return a.matrix_ == b.matrix_; }

private:
    LinearMap matrix_;
};

/// A o B for antilinear A, B: linear with matrix C_A conj(C_B).
inline LinearMap operator*(const AntilinearMap& a, const AntilinearMap& b) { return a.matrix() * b.matrix().conj(); }

/// A o M: antilinear with matrix C_A conj(M).
inline AntilinearMap operator*(const AntilinearMap& a, const LinearMap& m) {
    return AntilinearMap(a.matrix() * m.conj());
}

/// M o A: antilinear with matrix M C_A.
inline AntilinearMap operator*(const LinearMap& m, const AntilinearMap& a) { return AntilinearMap(m * a.matrix()); }

}  // namespace spinor_lab
