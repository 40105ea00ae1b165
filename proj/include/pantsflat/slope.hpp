#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>

namespace pantsflat {

/// A vertex of the Farey graph: a reduced fraction p/q, or 1/0 for infinity.
///
/// Canonical form has gcd(|p|, q) = 1, q >= 0 and, when q = 0, p = 1. The
/// slope p/q names the primitive lattice direction (q, p).
class Slope {
public:
    /// 0/1.
    constexpr Slope() = default;

    /// Canonicalizes (p, q); (0, 0) is rejected.
    Slope(std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0) throw std::invalid_argument("0/0 is not a slope");
        if (q < 0 || (q == 0 && p < 0)) {
            p = -p;
            q = -q;
        }
        const std::int64_t g = std::gcd(p, q);
        p_ = p / g;
        q_ = q / g;
    }

    static Slope infinity() { return Slope(1, 0); }
    static Slope integer(std::int64_t n) { return Slope(n, 1); }

    [[nodiscard]] constexpr std::int64_t p() const { return p_; }
    [[nodiscard]] constexpr std::int64_t q() const { return q_; }
    [[nodiscard]] constexpr bool is_infinity() const { return q_ == 0; }

    /// max(|p|, q); every height-bounded enumeration uses this.
    [[nodiscard]] std::int64_t height() const { return std::max(std::abs(p_), q_); }

    /// "p/q" with "1/0" for infinity.
    [[nodiscard]] std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

    /// Strict "p/q" parser. Non-reduced input is canonicalized.
    static Slope parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size())
            throw std::invalid_argument("malformed slope '" + std::string(text) + "' (expected p/q)");
        auto to_int = [&](std::string_view part) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(std::string(part), &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != part.size() || used == 0)
                throw std::invalid_argument("malformed slope '" + std::string(text) + "' (expected p/q)");
            return static_cast<std::int64_t>(v);
        };
        return Slope(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    }

    friend bool operator==(const Slope&, const Slope&) = default;

    /// Order by value on the real line; infinity sorts last.
    friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() <=> b.is_infinity();
        const __int128 l = static_cast<__int128>(a.p_) * b.q_;
        const __int128 r = static_cast<__int128>(b.p_) * a.q_;
        return l <=> r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << s.str(); }

private:
    std::int64_t p_ = 0;
    std::int64_t q_ = 1;
};

struct SlopeHash {
    std::size_t operator()(const Slope& s) const noexcept {
        return std::hash<std::int64_t>{}(s.p()) * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(s.q());
    }
};

/// p_a q_b - q_a p_b.
inline __int128 determinant(const Slope& a, const Slope& b) {
    return static_cast<__int128>(a.p()) * b.q() - static_cast<__int128>(a.q()) * b.p();
}

inline std::int64_t abs_determinant(const Slope& a, const Slope& b) {
    const __int128 d = determinant(a, b);
    return static_cast<std::int64_t>(d < 0 ? -d : d);
}

/// Farey adjacency: |p_a q_b - q_a p_b| = 1.
inline bool adjacent(const Slope& a, const Slope& b) { return abs_determinant(a, b) == 1; }

/// Integer matrix [[a, b], [c, d]] acting on slopes by x -> (a x + b) / (c x + d).
struct Unimodular {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    [[nodiscard]] std::int64_t det() const { return a * d - b * c; }

    /// Acts on the column vector (p, q).
    [[nodiscard]] Slope operator()(const Slope& s) const {
        return Slope(a * s.p() + b * s.q(), c * s.p() + d * s.q());
    }
};

/// Returns (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - quot * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - quot * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// The determinant-1 matrix sending `s` to 1/0.
inline Unimodular to_infinity(const Slope& s) {
    // Need v p - u q = 1; then [[v, -u], [-q, p]] maps (p, q) to (1, 0).
    auto [g, x, y] = extended_gcd(s.p(), s.q());
    (void)g;
    return Unimodular{x, y, -s.q(), s.p()};
}

}  // namespace pantsflat
