#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pantsflat/rational.hpp"
#include "pantsflat/slope.hpp"

// Flat models of the two complexity-1 pieces.
//
// Both pieces are worked in the square torus T = R^2 / Z^2. The one-holed
// torus is T with a puncture at the lattice points. The four-holed sphere is
// the pillowcase T / (x -> -x), whose four cone points are the images of the
// half-lattice points; every object there is represented by its full preimage
// in T, and intersection numbers are half the crossing count upstairs.
//
// A slope p/q is the lattice direction (q, p).
namespace pantsflat::orbifold {

enum class PieceKind { OneHoledTorus, FourHoledSphere };
enum class ObjectKind { Curve, Seam, Wave };

inline const char* to_string(PieceKind k) {
    return k == PieceKind::OneHoledTorus ? "one-holed-torus" : "four-holed-sphere";
}
inline const char* to_string(ObjectKind k) {
    switch (k) {
        case ObjectKind::Curve: return "curve";
        case ObjectKind::Seam: return "seam";
        default: return "wave";
    }
}

inline int boundary_count(PieceKind k) { return k == PieceKind::OneHoledTorus ? 1 : 4; }

/// Which half-lattice corner class the direction (q, p) moves a corner by:
/// bit 0 is q mod 2, bit 1 is p mod 2. Never 0 for a primitive direction.
inline int parity_delta(const Slope& s) { return static_cast<int>((s.q() & 1) | ((s.p() & 1) << 1)); }

/// Label l sits at ((l & 1) / 2, (l >> 1) / 2).
inline int label_partner(const Slope& s, int label) { return label ^ parity_delta(s); }

/// A curve, seam or wave in one piece.
///
/// endpoints: a seam stores its two labels in increasing order (a torus arc
/// stores {0, 0}); a wave stores {label it starts and ends on, label it winds
/// around}; a curve stores {0, 0}.
struct PieceObject {
    PieceKind piece = PieceKind::OneHoledTorus;
    ObjectKind kind = ObjectKind::Curve;
    Slope slope;
    std::array<int, 2> endpoints{0, 0};

    static PieceObject curve(PieceKind piece, const Slope& s) { return {piece, ObjectKind::Curve, s, {0, 0}}; }

    /// Torus arc from the puncture back to itself.
    static PieceObject torus_arc(const Slope& s) { return {PieceKind::OneHoledTorus, ObjectKind::Seam, s, {0, 0}}; }

    /// Seam of slope `s` leaving `label`; the other end is forced by parity.
    static PieceObject seam(const Slope& s, int label) {
        check_label(label);
        const int other = label_partner(s, label);
        return {PieceKind::FourHoledSphere, ObjectKind::Seam, s, {std::min(label, other), std::max(label, other)}};
    }

    /// The wave with both ends on `label`, winding around the far end of the
    /// seam of slope `s` leaving `label`.
    static PieceObject wave(const Slope& s, int label) {
        check_label(label);
        return {PieceKind::FourHoledSphere, ObjectKind::Wave, s, {label, label_partner(s, label)}};
    }

    [[nodiscard]] bool is_arc() const { return kind != ObjectKind::Curve; }

    /// The seam a wave is the partial projection of.
    [[nodiscard]] PieceObject stored_seam() const {
        if (kind != ObjectKind::Wave) throw std::invalid_argument("only waves store a seam");
        return seam(slope, endpoints[0]);
    }

    /// Throws when the descriptor is not canonical or not parity-consistent.
    void validate() const {
        if (piece == PieceKind::OneHoledTorus) {
            if (kind == ObjectKind::Wave) throw std::invalid_argument("waves live in four-holed spheres only");
            if (endpoints != std::array<int, 2>{0, 0}) throw std::invalid_argument("torus objects use the single label 0");
            return;
        }
        if (kind == ObjectKind::Curve) {
            if (endpoints != std::array<int, 2>{0, 0}) throw std::invalid_argument("curves carry no endpoints");
            return;
        }
        check_label(endpoints[0]);
        check_label(endpoints[1]);
        if (kind == ObjectKind::Seam) {
            if (endpoints[0] >= endpoints[1]) throw std::invalid_argument("seam endpoints must be two increasing labels");
            if ((endpoints[0] ^ endpoints[1]) != parity_delta(slope))
                throw std::invalid_argument("seam of slope " + slope.str() + " cannot join labels " +
                                            std::to_string(endpoints[0]) + " and " + std::to_string(endpoints[1]));
        } else if (endpoints[1] != label_partner(slope, endpoints[0])) {
            throw std::invalid_argument("wave of slope " + slope.str() + " on label " + std::to_string(endpoints[0]) +
                                        " must wind around label " + std::to_string(label_partner(slope, endpoints[0])));
        }
    }

    [[nodiscard]] std::string str() const {
        std::string out = std::string(to_string(kind)) + " " + slope.str();
        if (piece == PieceKind::FourHoledSphere && kind != ObjectKind::Curve)
            out += " [" + std::to_string(endpoints[0]) + "," + std::to_string(endpoints[1]) + "]";
        return out;
    }

    friend bool operator==(const PieceObject&, const PieceObject&) = default;
    friend auto operator<=>(const PieceObject&, const PieceObject&) = default;

private:
    static void check_label(int label) {
        if (label < 0 || label > 3) throw std::invalid_argument("boundary label must be 0..3");
    }
};

inline int label_of_corner(const Rational& x, const Rational& y) {
    return static_cast<int>((x.frac() * 2).floor() | ((y.frac() * 2).floor() << 1));
}

struct Point {
    Rational x, y;
    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Rational& k, const Point& a) { return {k * a.x, k * a.y}; }
inline Point operator-(const Point& a) { return {-a.x, -a.y}; }

/// A path in the plane projecting to T. It is closed in T when its last point
/// is a lattice translate of its first; arc ends sit on punctures.
struct Polyline {
    std::vector<Point> points;
    bool starts_at_puncture = false;
    bool ends_at_puncture = false;
};

/// Straight data for an object: every lift to T of its realization.
struct Realization {
    PieceObject object;
    std::vector<Polyline> lifts;
};

inline Point corner(int label) { return {Rational(label & 1, 2), Rational(label >> 1, 2)}; }

inline Point direction(const Slope& s) { return {Rational(s.q()), Rational(s.p())}; }

/// A point on the line -p x + q y = lambda, with denominator dividing lambda's.
inline Point line_anchor(const Slope& s, const Rational& lambda) {
    auto [g, a, b] = extended_gcd(-s.p(), s.q());
    (void)g;  // -p a + q b = 1
    return {lambda * Rational(a), lambda * Rational(b)};
}

/// Realizes `obj` as straight data. `context_height` bounds the heights of
/// everything the result will be compared with; waves hug their seam closely
/// enough that nothing of that height fits between. `offset` places a curve on
/// the line -p x + q y = offset and must avoid the punctures.
inline Realization realize(const PieceObject& obj, std::int64_t context_height, const Rational& offset = Rational(1, 4)) {
    obj.validate();
    const bool sphere = obj.piece == PieceKind::FourHoledSphere;
    const Point u = direction(obj.slope);
    Realization r{obj, {}};
    auto add_with_image = [&](Polyline line) {
        Polyline image = line;
        for (auto& p : image.points) p = -p;
        r.lifts.push_back(std::move(line));
        if (sphere) r.lifts.push_back(std::move(image));
    };
    switch (obj.kind) {
        case ObjectKind::Curve: {
            const Rational twice = offset * 2;
            if ((sphere && twice.is_integer()) || (!sphere && offset.is_integer()))
                throw std::invalid_argument("curve offset " + offset.str() + " runs through a puncture");
            const Point o = line_anchor(obj.slope, offset);
            add_with_image({{o, o + u}, false, false});
            break;
        }
        case ObjectKind::Seam: {
            if (!sphere) {
                r.lifts.push_back({{Point{}, u}, true, true});
                break;
            }
            const Point c = corner(obj.endpoints[0]);
            add_with_image({{c, c + Rational(1, 2) * u}, true, true});
            break;
        }
        case ObjectKind::Wave: {
            const std::int64_t h = std::max<std::int64_t>(context_height, obj.slope.height());
            const Rational h2 = Rational(h) * Rational(h);
            // Along the seam by eps |u| either side of the far corner, off it by
            // delta |n|. delta < eps / (2 h^2) keeps the detour from lining up with
            // any direction of height <= h; delta < eps / (3 h^3) keeps every such
            // line through the far corner crossing the detour inside it.
            const Rational eps = Rational(1) / (Rational(64) * h2 * h2);
            const Rational delta = eps / (Rational(4) * h2 * Rational(h));
            const Point n{Rational(-obj.slope.p()), Rational(obj.slope.q())};
            const Point start = corner(obj.endpoints[0]);
            const Point far = start + Rational(1, 2) * u;
            add_with_image({{start, far - eps * u + delta * n, far + eps * u + delta * n, far + Rational(1, 2) * u},
                            true,
                            true});
            break;
        }
    }
    return r;
}

namespace detail {

struct IPoint {
    __int128 x, y;
};

struct ISegment {
    IPoint a, b;
    bool a_puncture;  // the start is a puncture (excluded)
};

inline __int128 cross(const IPoint& o, const IPoint& a, const IPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int sgn(__int128 v) { return (v > 0) - (v < 0); }

inline __int128 floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Crossing of the half-open segments [a, b) and [c, d), ignoring punctures.
// Parallel overlaps are a realization error.
inline int crossing(const ISegment& s, const ISegment& t) {
    const int o1 = sgn(cross(s.a, s.b, t.a));
    const int o2 = sgn(cross(s.a, s.b, t.b));
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlapping in more than a point means two objects share a stretch.
        auto along = [&](const IPoint& p) {
            return (p.x - s.a.x) * (s.b.x - s.a.x) + (p.y - s.a.y) * (s.b.y - s.a.y);
        };
        const __int128 len = along(s.b);
        __int128 lo = along(t.a), hi = along(t.b);
        if (lo > hi) std::swap(lo, hi);
        if (std::min(hi, len) > std::max<__int128>(lo, 0)) throw std::logic_error("realizations overlap along a segment");
        return 0;
    }
    if (o1 * o2 > 0) return 0;
    const int o3 = sgn(cross(t.a, t.b, s.a));
    const int o4 = sgn(cross(t.a, t.b, s.b));
    if (o3 * o4 > 0) return 0;
    if (o4 == 0 || o2 == 0) return 0;  // at an excluded far end
    if (o3 == 0 && s.a_puncture) return 0;
    if (o1 == 0 && t.a_puncture) return 0;
    return 1;
}

inline std::int64_t lcm_den(std::int64_t acc, const Rational& r) { return std::lcm(acc, r.den()); }

inline std::vector<ISegment> scaled_segments(const Realization& r, std::int64_t scale) {
    std::vector<ISegment> out;
    auto conv = [&](const Point& p) {
        return IPoint{static_cast<__int128>(p.x.num()) * (scale / p.x.den()),
                      static_cast<__int128>(p.y.num()) * (scale / p.y.den())};
    };
    for (const auto& line : r.lifts)
        for (std::size_t i = 0; i + 1 < line.points.size(); ++i)
            out.push_back({conv(line.points[i]), conv(line.points[i + 1]), i == 0 && line.starts_at_puncture});
    return out;
}

}  // namespace detail

/// Crossings in T between the two realizations, away from punctures.
/// `window_scale` widens the range of lattice translates tried; a correct
/// count does not depend on it.
inline std::int64_t cover_crossings(const Realization& x, const Realization& y, int window_scale = 1) {
    if (x.object.piece != y.object.piece) throw std::invalid_argument("objects live in different pieces");
    if (window_scale < 1) throw std::invalid_argument("window scale must be positive");
    std::int64_t scale = 1;
    for (const auto* r : {&x, &y})
        for (const auto& line : r->lifts)
            for (const auto& p : line.points) scale = detail::lcm_den(detail::lcm_den(scale, p.x), p.y);
    const auto xs = detail::scaled_segments(x, scale);
    const auto ys = detail::scaled_segments(y, scale);
    const __int128 unit = scale;
    std::int64_t count = 0;
    for (const auto& s : xs) {
        const __int128 sx0 = std::min(s.a.x, s.b.x), sx1 = std::max(s.a.x, s.b.x);
        const __int128 sy0 = std::min(s.a.y, s.b.y), sy1 = std::max(s.a.y, s.b.y);
        for (const auto& t : ys) {
            const __int128 tx0 = std::min(t.a.x, t.b.x), tx1 = std::max(t.a.x, t.b.x);
            const __int128 ty0 = std::min(t.a.y, t.b.y), ty1 = std::max(t.a.y, t.b.y);
            // Translates k with [t + k] meeting the bounding box of s.
            __int128 kx0 = -detail::floor_div(tx1 - sx0, unit), kx1 = detail::floor_div(sx1 - tx0, unit);
            __int128 ky0 = -detail::floor_div(ty1 - sy0, unit), ky1 = detail::floor_div(sy1 - ty0, unit);
            const __int128 padx = (kx1 - kx0 + 1) * (window_scale - 1), pady = (ky1 - ky0 + 1) * (window_scale - 1);
            kx0 -= padx;
            kx1 += padx;
            ky0 -= pady;
            ky1 += pady;
            for (__int128 kx = kx0; kx <= kx1; ++kx)
                for (__int128 ky = ky0; ky <= ky1; ++ky) {
                    const detail::ISegment moved{{t.a.x + kx * unit, t.a.y + ky * unit},
                                                 {t.b.x + kx * unit, t.b.y + ky * unit},
                                                 t.a_puncture};
                    count += detail::crossing(s, moved);
                }
        }
    }
    return count;
}

inline std::int64_t max_height(const PieceObject& a, const PieceObject& b) {
    return std::max(a.slope.height(), b.slope.height());
}

/// Crossings of the given realizations, read in the piece: upstairs count for
/// the torus, half of it for the pillowcase.
inline std::int64_t realized_intersections(const Realization& x, const Realization& y, int window_scale = 1) {
    const std::int64_t up = cover_crossings(x, y, window_scale);
    if (x.object.piece == PieceKind::OneHoledTorus) return up;
    if (up % 2 != 0) throw std::logic_error("odd crossing count in the pillowcase cover");
    return up / 2;
}

/// Geometric intersection number of two objects of one piece, counted on
/// straight representatives. Shared boundary endpoints do not count; equal
/// descriptors give 0.
inline std::int64_t intersection_number(const PieceObject& x, const PieceObject& y, int window_scale = 1) {
    if (x.piece != y.piece) throw std::invalid_argument("objects live in different pieces");
    x.validate();
    y.validate();
    if (x == y) return 0;
    const std::int64_t h = max_height(x, y);
    return realized_intersections(realize(x, h), realize(y, h), window_scale);
}

/// True when the given realizations already sit in minimal position.
inline bool tightness_check(const Realization& x, const Realization& y) {
    return realized_intersections(x, y) == intersection_number(x.object, y.object);
}

inline bool tightness_check(const PieceObject& x, const PieceObject& y) {
    if (x == y) return true;
    const std::int64_t h = max_height(x, y);
    return tightness_check(realize(x, h), realize(y, h));
}

/// Whether the four ends of two torus arcs alternate around the puncture.
inline bool endpoint_linking(const PieceObject& a, const PieceObject& b) {
    for (const auto* o : {&a, &b})
        if (o->piece != PieceKind::OneHoledTorus || o->kind != ObjectKind::Seam)
            throw std::invalid_argument("endpoint linking takes two torus arcs");
    if (a.slope == b.slope) throw std::invalid_argument("endpoint linking needs distinct slopes");
    // An arc leaves the puncture along +u and comes back along -u.
    struct End {
        std::int64_t x, y;
        int owner;
    };
    std::vector<End> ends{{a.slope.q(), a.slope.p(), 0}, {-a.slope.q(), -a.slope.p(), 0},
                          {b.slope.q(), b.slope.p(), 1}, {-b.slope.q(), -b.slope.p(), 1}};
    auto half = [](const End& e) { return e.y < 0 || (e.y == 0 && e.x < 0); };
    std::sort(ends.begin(), ends.end(), [&](const End& l, const End& r) {
        if (half(l) != half(r)) return !half(l);
        return static_cast<__int128>(l.x) * r.y - static_cast<__int128>(l.y) * r.x > 0;
    });
    for (std::size_t i = 0; i < 4; ++i)
        if (ends[i].owner == ends[(i + 1) % 4].owner) return false;
    return true;
}

/// Closed-form intersection numbers, used as laws the oracle is checked against.
namespace law {

inline std::int64_t torus(const PieceObject& x, const PieceObject& y) {
    const std::int64_t d = abs_determinant(x.slope, y.slope);
    if (x.kind == ObjectKind::Seam && y.kind == ObjectKind::Seam) return d == 0 ? 0 : d - 1;
    return d;
}

inline int common_labels(const PieceObject& s, const PieceObject& t) {
    int j = 0;
    for (int a : s.endpoints)
        for (int b : t.endpoints) j += a == b;
    return j;
}

/// Curves and seams of the four-holed sphere, plus waves against curves
/// (twice the stored seam).
inline std::int64_t sphere(const PieceObject& x, const PieceObject& y) {
    const std::int64_t d = abs_determinant(x.slope, y.slope);
    const bool xw = x.kind == ObjectKind::Wave, yw = y.kind == ObjectKind::Wave;
    if (xw || yw) {
        if (xw && y.kind == ObjectKind::Curve) return 2 * sphere(x.stored_seam(), y);
        if (yw && x.kind == ObjectKind::Curve) return 2 * sphere(x, y.stored_seam());
        throw std::invalid_argument("no closed form for waves against arcs");
    }
    const bool xs = x.kind == ObjectKind::Seam, ys = y.kind == ObjectKind::Seam;
    if (!xs && !ys) return 2 * d;
    if (xs != ys) return d;
    if (x == y) return 0;
    return (d - common_labels(x, y)) / 2 > 0 ? (d - common_labels(x, y)) / 2 : 0;
}

}  // namespace law

}  // namespace pantsflat::orbifold
