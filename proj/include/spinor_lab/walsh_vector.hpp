#pragma once

#include <algorithm>
#include <map>
#include <utility>

#include "spinor_lab/dyadic.hpp"
#include "spinor_lab/rational.hpp"

namespace spinor_lab {

/// Finite combination of Walsh characters with coefficients in Q(i).
/// Zero coefficients are never stored.
class WalshVector {
public:
    using Terms = std::map<DyadicIndex, GaussianRational>;

    WalshVector() = default;

    /// The single character phi_alpha with coefficient c.
    static WalshVector basis(DyadicIndex alpha, GaussianRational c = GaussianRational(1)) {
        WalshVector v;
        v.add(alpha, std::move(c));
        return v;
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    GaussianRational coefficient(DyadicIndex alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    void add(DyadicIndex alpha, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// this += c * other
    void add_scaled(const WalshVector& other, const GaussianRational& c) {
        if (c.is_zero()) return;
        for (const auto& [alpha, v] : other.terms_) add(alpha, v * c);
    }

    WalshVector& operator+=(const WalshVector& o) {
        for (const auto& [alpha, c] : o.terms_) add(alpha, c);
        return *this;
    }
    WalshVector& operator-=(const WalshVector& o) {
        for (const auto& [alpha, c] : o.terms_) add(alpha, -c);
        return *this;
    }
    WalshVector& operator*=(const GaussianRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [alpha, c] : terms_) c *= s;
        return *this;
    }

    friend WalshVector operator+(WalshVector a, const WalshVector& b) { return a += b; }
    friend WalshVector operator-(WalshVector a, const WalshVector& b) { return a -= b; }
    friend WalshVector operator*(const GaussianRational& s, WalshVector v) { return v *= s; }
    WalshVector operator-() const { return GaussianRational(-1) * *this; }

    friend bool operator==(const WalshVector& a, const WalshVector& b) { return a.terms_ == b.terms_; }

    /// phi_beta * f: shifts every label by beta.
    WalshVector times_character(DyadicIndex beta) const {
        WalshVector out;
        for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha + beta, c);
        return out;
    }

    /// Coefficientwise complex conjugate (Walsh characters are real-valued).
    WalshVector conj() const {
        WalshVector out;
        for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, c.conj());
        return out;
    }

    /// Sum |c_alpha|^2, the Haar norm squared.
    Rational norm2() const {
        Rational s;
        for (const auto& [alpha, c] : terms_) s += c.norm2();
        return s;
    }

    /// Largest coordinate used by any label.
    int highest_coordinate() const {
        int h = 0;
        for (const auto& [alpha, c] : terms_) h = std::max(h, alpha.highest());
        return h;
    }

    bool is_gaussian_integral() const {
        for (const auto& [alpha, c] : terms_)
            if (!c.is_gaussian_integer()) return false;
        return true;
    }

    bool is_integral() const {
        for (const auto& [alpha, c] : terms_)
            if (!c.is_real() || !is_integer(c.re)) return false;
        return true;
    }

private:
    Terms terms_;
};

/// Haar inner product, conjugate-linear in the first argument.
inline GaussianRational inner(const WalshVector& a, const WalshVector& b) {
    GaussianRational s;
    for (const auto& [alpha, c] : a.terms()) {
        auto it = b.terms().find(alpha);
        if (it != b.terms().end()) s += c.conj() * it->second;
    }
    return s;
}

}  // namespace spinor_lab
