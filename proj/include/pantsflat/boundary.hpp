#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pantsflat/orbifold.hpp"

// Boundary of a regular neighbourhood of a union of realized objects.
//
// The union is cut into a planar graph in the cover T, thickened as a ribbon
// graph (rotation = angular order at each vertex), and the boundary is read off
// as face walks. Walks stop at punctures that are not part of the union; those
// walks are arcs. Everything here uses unbounded rationals since crossing
// points of near-parallel detours have large denominators.
namespace pantsflat::orbifold {

struct Configuration {
    struct Entry {
        PieceObject object;
        Rational offset{1, 4};  // curves only: the line -p x + q y = offset
    };
    PieceKind piece = PieceKind::OneHoledTorus;
    std::vector<Entry> entries;

    [[nodiscard]] std::int64_t context_height() const {
        std::int64_t h = 1;
        for (const auto& e : entries) h = std::max(h, e.object.slope.height());
        return h;
    }

    [[nodiscard]] Realization realization(std::size_t i) const {
        return realize(entries.at(i).object, context_height(), entries.at(i).offset);
    }
};

/// One boundary component of the neighbourhood. Inessential ones (bounding a
/// disc, or parallel to a boundary label) carry no object.
struct BoundaryComponent {
    bool is_arc = false;
    std::optional<PieceObject> object;

    friend bool operator==(const BoundaryComponent&, const BoundaryComponent&) = default;
    friend auto operator<=>(const BoundaryComponent&, const BoundaryComponent&) = default;
};

namespace detail {

using BigQ = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigZ = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

struct QPoint {
    BigQ x, y;
    friend bool operator<(const QPoint& a, const QPoint& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); }
    friend bool operator==(const QPoint& a, const QPoint& b) { return a.x == b.x && a.y == b.y; }
};

inline QPoint add(const QPoint& a, const QPoint& b) { return {a.x + b.x, a.y + b.y}; }
inline QPoint sub(const QPoint& a, const QPoint& b) { return {a.x - b.x, a.y - b.y}; }
inline BigQ cross(const QPoint& a, const QPoint& b) { return a.x * b.y - a.y * b.x; }

inline BigZ floor_q(const BigQ& v) {
    BigZ n = boost::multiprecision::numerator(v), d = boost::multiprecision::denominator(v);
    BigZ q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline QPoint reduce(const QPoint& p) { return {p.x - BigQ(floor_q(p.x)), p.y - BigQ(floor_q(p.y))}; }

inline QPoint to_q(const Point& p) { return {BigQ(p.x.num(), p.x.den()), BigQ(p.y.num(), p.y.den())}; }

struct QSegment {
    QPoint a, b;
    std::size_t member;
};

// Intersection parameter on s of the closed segments s and t, if they meet in one point.
inline std::optional<BigQ> meet(const QSegment& s, const QPoint& c, const QPoint& d) {
    const QPoint r = sub(s.b, s.a), e = sub(d, c);
    const BigQ den = cross(r, e);
    if (den == 0) {
        if (cross(r, sub(c, s.a)) != 0) return std::nullopt;
        // Collinear: touching at a single endpoint is a vertex, anything longer is an overlap.
        const BigQ rr = r.x * r.x + r.y * r.y;
        BigQ lo = (sub(c, s.a).x * r.x + sub(c, s.a).y * r.y) / rr;
        BigQ hi = (sub(d, s.a).x * r.x + sub(d, s.a).y * r.y) / rr;
        if (lo > hi) std::swap(lo, hi);
        const BigQ from = std::max(lo, BigQ(0)), to = std::min(hi, BigQ(1));
        if (from < to) throw std::logic_error("realizations overlap along a segment");
        if (from == to) return from;
        return std::nullopt;
    }
    const BigQ t = cross(sub(c, s.a), e) / den;
    const BigQ w = cross(sub(c, s.a), r) / den;
    if (t < 0 || t > 1 || w < 0 || w > 1) return std::nullopt;
    return t;
}

struct HalfEdgeKey {
    QPoint mid, dir;
    friend bool operator<(const HalfEdgeKey& a, const HalfEdgeKey& b) {
        return std::tie(a.mid, a.dir) < std::tie(b.mid, b.dir);
    }
};

// Counterclockwise angle order of direction vectors.
inline bool angle_less(const QPoint& a, const QPoint& b) {
    auto upper = [](const QPoint& v) { return v.y > 0 || (v.y == 0 && v.x > 0); };
    if (upper(a) != upper(b)) return upper(a);
    return cross(a, b) > 0;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Boundary components of a thin neighbourhood of the union of the listed
/// configuration entries together with the listed boundary labels, in sorted
/// order. Throws when that union is not connected.
inline std::vector<BoundaryComponent> neighborhood_boundary(const Configuration& config,
                                                            const std::vector<std::size_t>& members,
                                                            const std::vector<int>& holes = {}) {
    using namespace detail;
    if (members.empty()) throw std::invalid_argument("empty union");
    const bool sphere = config.piece == PieceKind::FourHoledSphere;
    for (int h : holes)
        if (h < 0 || h >= boundary_count(config.piece)) throw std::invalid_argument("no such boundary label");

    // Segments of every lift.
    std::vector<QSegment> segs;
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (config.entries.at(members[k]).object.piece != config.piece)
            throw std::invalid_argument("entry lives in another piece");
        for (const auto& line : config.realization(members[k]).lifts)
            for (std::size_t i = 0; i + 1 < line.points.size(); ++i)
                segs.push_back({to_q(line.points[i]), to_q(line.points[i + 1]), k});
    }

    // Split points along each segment, against every lattice translate of every segment.
    std::vector<std::set<BigQ>> cuts(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        cuts[i] = {BigQ(0), BigQ(1)};
        const auto& s = segs[i];
        for (std::size_t j = 0; j < segs.size(); ++j) {
            const auto& t = segs[j];
            const BigZ kx0 = floor_q(std::min(s.a.x, s.b.x) - std::max(t.a.x, t.b.x)),
                       kx1 = floor_q(std::max(s.a.x, s.b.x) - std::min(t.a.x, t.b.x)) + 1;
            const BigZ ky0 = floor_q(std::min(s.a.y, s.b.y) - std::max(t.a.y, t.b.y)),
                       ky1 = floor_q(std::max(s.a.y, s.b.y) - std::min(t.a.y, t.b.y)) + 1;
            for (BigZ kx = kx0; kx <= kx1; ++kx)
                for (BigZ ky = ky0; ky <= ky1; ++ky) {
                    if (i == j && kx == 0 && ky == 0) continue;
                    const QPoint shift{BigQ(kx), BigQ(ky)};
                    if (auto t_on_s = meet(s, add(t.a, shift), add(t.b, shift))) cuts[i].insert(*t_on_s);
                }
        }
    }

    // Vertices live in T; edges keep their planar vector.
    std::map<QPoint, int> vertex_id;
    std::vector<QPoint> vertex_pos;
    auto vertex_of = [&](const QPoint& p) {
        const QPoint r = reduce(p);
        auto [it, fresh] = vertex_id.emplace(r, static_cast<int>(vertex_pos.size()));
        if (fresh) vertex_pos.push_back(r);
        return it->second;
    };
    struct Edge {
        int from, to;
        QPoint vec, mid;
        std::size_t member;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const QPoint r = sub(segs[i].b, segs[i].a);
        std::optional<QPoint> prev;
        for (const BigQ& t : cuts[i]) {
            const QPoint p{segs[i].a.x + t * r.x, segs[i].a.y + t * r.y};
            if (prev) {
                const QPoint mid{(prev->x + p.x) / 2, (prev->y + p.y) / 2};
                edges.push_back({vertex_of(*prev), vertex_of(p), sub(p, *prev), reduce(mid), segs[i].member});
            }
            prev = p;
        }
    }

    auto is_puncture = [&](const QPoint& p) {
        const BigQ f = sphere ? BigQ(2) : BigQ(1);
        return boost::multiprecision::denominator(p.x * f) == 1 && boost::multiprecision::denominator(p.y * f) == 1;
    };
    auto label_at = [&](const QPoint& p) {
        if (!sphere) return 0;
        return static_cast<int>((p.x * 2 == 1 ? 1 : 0) | (p.y * 2 == 1 ? 2 : 0));
    };
    const std::set<int> hole_set(holes.begin(), holes.end());
    std::vector<bool> terminal(vertex_pos.size(), false);
    for (std::size_t v = 0; v < vertex_pos.size(); ++v)
        terminal[v] = is_puncture(vertex_pos[v]) && !hole_set.count(label_at(vertex_pos[v]));

    // Half-edge 2e runs along edge e, 2e + 1 against it.
    const std::size_t nh = 2 * edges.size();
    auto h_from = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].from : edges[h / 2].to; };
    auto h_to = [&](std::size_t h) { return h % 2 == 0 ? edges[h / 2].to : edges[h / 2].from; };
    auto h_vec = [&](std::size_t h) {
        const QPoint& v = edges[h / 2].vec;
        return h % 2 == 0 ? v : QPoint{-v.x, -v.y};
    };
    std::vector<std::vector<std::size_t>> out(vertex_pos.size());
    for (std::size_t h = 0; h < nh; ++h) out[static_cast<std::size_t>(h_from(h))].push_back(h);
    std::vector<std::size_t> succ(nh);
    for (auto& around : out) {
        std::sort(around.begin(), around.end(), [&](std::size_t a, std::size_t b) { return angle_less(h_vec(a), h_vec(b)); });
        for (std::size_t k = 0; k < around.size(); ++k) succ[around[k]] = around[(k + 1) % around.size()];
    }
    auto next = [&](std::size_t h) { return succ[h ^ 1]; };

    // Connectivity through crossings and included holes.
    DisjointSets dsu(members.size());
    std::vector<std::optional<std::size_t>> seen_at(vertex_pos.size());
    std::set<int> touched_holes;
    for (const auto& e : edges)
        for (int v : {e.from, e.to}) {
            if (terminal[static_cast<std::size_t>(v)]) continue;
            auto& slot = seen_at[static_cast<std::size_t>(v)];
            if (slot) dsu.unite(*slot, e.member);
            else slot = e.member;
            if (is_puncture(vertex_pos[static_cast<std::size_t>(v)])) touched_holes.insert(label_at(vertex_pos[static_cast<std::size_t>(v)]));
        }
    for (std::size_t k = 1; k < members.size(); ++k)
        if (dsu.find(k) != dsu.find(0)) throw std::invalid_argument("the union is not connected");
    for (int h : hole_set)
        if (!touched_holes.count(h)) throw std::invalid_argument("boundary label " + std::to_string(h) + " is not attached");

    // Face walks.
    struct Walk {
        std::vector<std::size_t> halves;
        bool arc = false;
        QPoint displacement;
        int start = 0, end = 0;
    };
    std::vector<Walk> walks;
    std::vector<bool> used(nh, false);
    auto trace = [&](std::size_t first, bool arc) {
        Walk w;
        w.arc = arc;
        w.start = h_from(first);
        std::size_t h = first;
        for (;;) {
            used[h] = true;
            w.halves.push_back(h);
            w.displacement = add(w.displacement, h_vec(h));
            const int v = h_to(h);
            if (arc && terminal[static_cast<std::size_t>(v)]) {
                w.end = v;
                break;
            }
            h = next(h);
            if (!arc && h == first) {
                w.end = w.start;
                break;
            }
        }
        walks.push_back(std::move(w));
    };
    for (std::size_t h = 0; h < nh; ++h)
        if (terminal[static_cast<std::size_t>(h_from(h))] && !used[h]) trace(h, true);
    for (std::size_t h = 0; h < nh; ++h)
        if (!used[h]) trace(h, false);

    auto classify = [&](const Walk& w) -> BoundaryComponent {
        BoundaryComponent c{w.arc, std::nullopt};
        const QPoint& d = w.displacement;
        if (d.x == 0 && d.y == 0) return c;
        const BigQ k = sphere && w.arc && label_at(vertex_pos[static_cast<std::size_t>(w.start)]) !=
                                               label_at(vertex_pos[static_cast<std::size_t>(w.end)])
                           ? BigQ(2)
                           : BigQ(1);
        const BigQ qx = d.x * k, qy = d.y * k;
        if (boost::multiprecision::denominator(qx) != 1 || boost::multiprecision::denominator(qy) != 1)
            throw std::logic_error("boundary walk with a fractional period");
        const Slope s(static_cast<std::int64_t>(boost::multiprecision::numerator(qy)),
                      static_cast<std::int64_t>(boost::multiprecision::numerator(qx)));
        if (!w.arc) {
            c.object = PieceObject::curve(config.piece, s);
        } else if (!sphere) {
            c.object = PieceObject::torus_arc(s);
        } else {
            const int a = label_at(vertex_pos[static_cast<std::size_t>(w.start)]);
            const int b = label_at(vertex_pos[static_cast<std::size_t>(w.end)]);
            c.object = a == b ? PieceObject::wave(s, a) : PieceObject::seam(s, a);
        }
        return c;
    };

    std::vector<BoundaryComponent> result;
    if (!sphere) {
        for (const auto& w : walks) result.push_back(classify(w));
    } else {
        // Pair each walk with its image under x -> -x.
        auto key_of = [&](const std::vector<std::size_t>& halves, bool image) {
            std::vector<HalfEdgeKey> keys;
            for (std::size_t h : halves) {
                const Edge& e = edges[h / 2];
                QPoint dir = h_vec(h), mid = e.mid;
                if (image) {
                    dir = {-dir.x, -dir.y};
                    mid = reduce({-mid.x, -mid.y});
                }
                keys.push_back({mid, dir});
            }
            std::sort(keys.begin(), keys.end());
            return keys;
        };
        std::map<std::vector<HalfEdgeKey>, std::size_t> by_key;
        for (std::size_t i = 0; i < walks.size(); ++i) by_key.emplace(key_of(walks[i].halves, false), i);
        std::vector<bool> done(walks.size(), false);
        for (std::size_t i = 0; i < walks.size(); ++i) {
            if (done[i]) continue;
            auto it = by_key.find(key_of(walks[i].halves, true));
            if (it == by_key.end()) throw std::logic_error("boundary walk without a mirror image");
            done[i] = done[it->second] = true;
            BoundaryComponent c = classify(walks[i]);
            if (it->second == i) c.object.reset();  // its own mirror: encircles a single cone point
            result.push_back(c);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace pantsflat::orbifold
