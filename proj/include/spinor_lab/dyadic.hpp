#pragma once

// Dyadic index calculus: the group of finite-support 0/1 sequences, Walsh
// characters on it, the flip involution at a fixed truncation, and the bridge
// to binary expansions of points of (0,1).
//
// Coordinates are numbered from 1. Coordinate k is stored in bit k-1 of a
// 64-bit word, so the integer encoding n = sum alpha_{k+1} 2^k is the word
// itself.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "spinor_lab/error.hpp"

namespace spinor_lab {

class DyadicIndex {
public:
    static constexpr int max_coordinate = 64;

    constexpr DyadicIndex() = default;

    static constexpr DyadicIndex from_integer(std::uint64_t n) { return DyadicIndex(n); }

    /// delta^k: the single coordinate k.
    static DyadicIndex delta(int k) {
        check_coordinate(k);
        return DyadicIndex(std::uint64_t{1} << (k - 1));
    }

    static DyadicIndex from_support(std::initializer_list<int> coords) {
        return from_support(std::vector<int>(coords));
    }
    static DyadicIndex from_support(const std::vector<int>& coords) {
        DyadicIndex out;
        for (int k : coords) out.bits_ |= delta(k).bits_;
        return out;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }

    bool test(int k) const {
        if (k < 1 || k > max_coordinate) return false;
        return (bits_ >> (k - 1)) & 1U;
    }

    /// Number of coordinates equal to 1.
    int weight() const { return std::popcount(bits_); }

    /// Largest coordinate in the support, 0 for the empty index.
    int highest() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }

    std::vector<int> support() const {
        std::vector<int> out;
        for (int k = 1; k <= max_coordinate; ++k)
            if (test(k)) out.push_back(k);
        return out;
    }

    /// Componentwise addition mod 2.
    friend constexpr DyadicIndex operator+(DyadicIndex a, DyadicIndex b) { return DyadicIndex(a.bits_ ^ b.bits_); }
    DyadicIndex& operator+=(DyadicIndex o) {
        bits_ ^= o.bits_;
        return *this;
    }

    friend constexpr bool operator==(DyadicIndex, DyadicIndex) = default;
    friend constexpr auto operator<=>(DyadicIndex a, DyadicIndex b) { return a.bits_ <=> b.bits_; }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int k : support()) {
            if (!first) s += ",";
            s += std::to_string(k);
            first = false;
        }
        return s + "}";
    }

    static void check_coordinate(int k) {
        if (k < 1 || k > max_coordinate)
            throw InputError("dyadic coordinate " + std::to_string(k) + " outside 1.." +
                             std::to_string(max_coordinate));
    }

private:
    explicit constexpr DyadicIndex(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

/// Number of dyadic coordinates retained; the truncated space has 2^n points.
class TruncationLevel {
public:
    static constexpr int max_level = 30;

    explicit TruncationLevel(int n) : n_(n) {
        if (n < 1 || n > max_level)
            throw InputError("truncation level " + std::to_string(n) + " outside 1.." + std::to_string(max_level));
    }

    int n() const { return n_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }

    bool contains(DyadicIndex x) const { return x.highest() <= n_; }

    friend bool operator==(TruncationLevel, TruncationLevel) = default;

private:
    int n_;
};

/// sigma^k = delta^1 + ... + delta^k, sigma^0 = 0.
inline DyadicIndex sigma(int k) {
    if (k < 0 || k > DyadicIndex::max_coordinate) throw InputError("sigma index " + std::to_string(k) + " out of range");
    if (k == 0) return {};
    if (k == 64) return DyadicIndex::from_integer(~std::uint64_t{0});
    return DyadicIndex::from_integer((std::uint64_t{1} << k) - 1);
}

/// The flip involution at a fixed level: x + sigma^n.
inline DyadicIndex check(DyadicIndex x, TruncationLevel level) {
    if (!level.contains(x)) throw InputError("index exceeds truncation");
    return x + sigma(level.n());
}

/// phi_alpha(x) = (-1)^{|supp(alpha) & supp(x)|}.
inline int walsh_eval(DyadicIndex alpha, DyadicIndex x) {
    return (std::popcount(alpha.bits() & x.bits()) & 1) ? -1 : 1;
}

inline std::uint64_t index_to_integer(DyadicIndex alpha) { return alpha.bits(); }
inline DyadicIndex index_from_integer(std::uint64_t n) { return DyadicIndex::from_integer(n); }

/// First n binary digits of t in (0,1); dyadic rationals take the
/// terminating expansion.
inline DyadicIndex point_of_real(double t, TruncationLevel level) {
    if (!(t > 0.0 && t < 1.0)) throw InputError("point_of_real expects 0 < t < 1");
    std::uint64_t bits = 0;
    double r = t;
    for (int k = 1; k <= level.n(); ++k) {
        r *= 2.0;
        if (r >= 1.0) {
            bits |= std::uint64_t{1} << (k - 1);
            r -= 1.0;
        }
    }
    return DyadicIndex::from_integer(bits);
}

}  // namespace spinor_lab
