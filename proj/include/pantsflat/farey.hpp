#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pantsflat/slope.hpp"

namespace pantsflat::farey {

using Path = std::vector<Slope>;
using Edge = std::pair<Slope, Slope>;

/// Edge with endpoints in slope order.
inline Edge make_edge(const Slope& a, const Slope& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// All Farey neighbours of `a` with height <= `max_height`, in slope order.
inline std::vector<Slope> neighbors(const Slope& a, std::int64_t max_height) {
    if (max_height < a.height())
        throw std::invalid_argument("height bound " + std::to_string(max_height) + " is below the height of " +
                                    a.str());
    // Solutions of p_a y - q_a x = +-1 are (+-x0 + k p_a, +-y0 + k q_a).
    auto [g, s, t] = extended_gcd(a.p(), a.q());
    (void)g;
    const std::int64_t x0 = -t;
    const std::int64_t y0 = s;
    const std::int64_t step = a.q() != 0 ? a.q() : a.p();
    std::set<Slope> out;
    for (const int sign : {1, -1}) {
        const std::int64_t bx = sign * x0;
        const std::int64_t by = sign * y0;
        const std::int64_t base = a.q() != 0 ? by : bx;
        // |base + k step| <= max_height, step > 0 here.
        const std::int64_t lo = -((max_height + base) / step) - 1;
        const std::int64_t hi = (max_height - base) / step + 1;
        for (std::int64_t k = lo; k <= hi; ++k) {
            const std::int64_t x = bx + k * a.p();
            const std::int64_t y = by + k * a.q();
            if (x == 0 && y == 0) continue;
            const Slope b(x, y);
            if (b.height() <= max_height) out.insert(b);
        }
    }
    return {out.begin(), out.end()};
}

namespace detail {

// Distance from 1/0 to r/s along the Stern-Brocot descent. The edges crossed by
// the vertical line through r/s each separate 1/0 from r/s, so the distance to
// each new mediant is one more than the nearer endpoint of the edge it caps.
// A run of k mediants on one side saturates: d_k = min(d_moving + k, d_fixed + 1).
inline int distance_from_infinity(const Slope& x) {
    if (x.is_infinity()) return 0;
    if (x.q() == 1) return 1;
    const __int128 r = x.p();
    const __int128 s = x.q();
    __int128 n = r / s;
    if (r % s != 0 && r < 0) --n;
    __int128 a = n, b = 1, c = n + 1, d = 1;  // left a/b, right c/d
    std::int64_t dl = 1, dr = 1;
    for (;;) {
        const __int128 lhs = r * b - s * a;  // > 0 : x right of a/b
        const __int128 rhs = s * c - r * d;  // > 0 : x left of c/d
        const __int128 mn = a + c, md = b + d;
        if (mn * s == md * r) return static_cast<int>(1 + std::min(dl, dr));
        if (r * md < s * mn) {
            // x left of the mediant: the right endpoint moves k times.
            const __int128 k = (rhs - 1) / lhs;
            c = k * a + c;
            d = k * b + d;
            dr = std::min<std::int64_t>(dr + static_cast<std::int64_t>(k), dl + 1);
        } else {
            const __int128 k = (lhs - 1) / rhs;
            a = a + k * c;
            b = b + k * d;
            dl = std::min<std::int64_t>(dl + static_cast<std::int64_t>(k), dr + 1);
        }
    }
}

}  // namespace detail

/// Exact distance in the full Farey graph.
inline int distance(const Slope& a, const Slope& b) {
    if (a == b) return 0;
    return detail::distance_from_infinity(to_infinity(a)(b));
}

inline bool is_path(const Path& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!adjacent(path[i], path[i + 1])) return false;
    return true;
}

/// The subgraph induced on all slopes of height <= H, with dense indices.
class HeightGraph {
public:
    explicit HeightGraph(std::int64_t max_height) : max_height_(max_height) {
        if (max_height < 1) throw std::invalid_argument("height bound must be positive");
        for (std::int64_t q = 0; q <= max_height; ++q)
            for (std::int64_t p = -max_height; p <= max_height; ++p) {
                if (std::gcd(p, q) != 1) continue;
                if (q == 0 && p != 1) continue;
                vertices_.emplace_back(p, q);
            }
        std::sort(vertices_.begin(), vertices_.end());
        index_.reserve(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], static_cast<int>(i));
        adj_.resize(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (const Slope& n : neighbors(vertices_[i], max_height)) adj_[i].push_back(index_.at(n));
    }

    [[nodiscard]] std::int64_t max_height() const { return max_height_; }
    [[nodiscard]] std::size_t size() const { return vertices_.size(); }
    [[nodiscard]] const std::vector<Slope>& vertices() const { return vertices_; }
    [[nodiscard]] const Slope& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<int>& adjacent_to(int i) const { return adj_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] std::optional<int> index_of(const Slope& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// BFS distances from `source`; -1 marks unreachable. `limit` caps the depth.
    [[nodiscard]] std::vector<int> bfs(int source, int limit = -1) const {
        std::vector<int> dist(vertices_.size(), -1);
        std::deque<int> queue{source};
        dist[static_cast<std::size_t>(source)] = 0;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            const int dv = dist[static_cast<std::size_t>(v)];
            if (limit >= 0 && dv >= limit) continue;
            for (int w : adj_[static_cast<std::size_t>(v)])
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dv + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }

private:
    std::int64_t max_height_;
    std::vector<Slope> vertices_;
    std::unordered_map<Slope, int, SlopeHash> index_;
    std::vector<std::vector<int>> adj_;
};

/// BFS distance inside the height <= H subgraph; nullopt when unreachable there.
inline std::optional<int> bfs_oracle_distance(const Slope& a, const Slope& b, std::int64_t max_height) {
    if (max_height < std::max(a.height(), b.height()))
        throw std::invalid_argument("height bound below the endpoints' heights");
    const HeightGraph graph(max_height);
    const auto dist = graph.bfs(*graph.index_of(a));
    const int d = dist[static_cast<std::size_t>(*graph.index_of(b))];
    if (d < 0) return std::nullopt;
    return d;
}

struct GeodesicSet {
    Slope from;
    Slope to;
    int length = 0;
    std::vector<Path> paths;  // lexicographic in slope order
    bool truncated = false;   // raising the height bound to 2H found more paths
    std::int64_t max_height = 0;
};

namespace detail {

inline std::vector<Path> shortest_paths_in(const HeightGraph& g, const Slope& a, const Slope& b, int length) {
    const int ia = *g.index_of(a);
    const int ib = *g.index_of(b);
    const auto from_b = g.bfs(ib, length);
    std::vector<Path> out;
    if (from_b[static_cast<std::size_t>(ia)] != length) return out;
    Path current{a};
    auto walk = [&](auto&& self, int v) -> void {
        if (v == ib) {
            out.push_back(current);
            return;
        }
        const int remaining = from_b[static_cast<std::size_t>(v)];
        for (int w : g.adjacent_to(v)) {  // adjacency lists are in slope order
            if (from_b[static_cast<std::size_t>(w)] != remaining - 1) continue;
            current.push_back(g.vertex(w));
            self(self, w);
            current.pop_back();
        }
    };
    walk(walk, ia);
    return out;
}

}  // namespace detail

/// Every geodesic from `a` to `b` whose vertices have height <= H.
inline GeodesicSet geodesics(const Slope& a, const Slope& b, std::int64_t max_height) {
    if (max_height < std::max(a.height(), b.height()))
        throw std::invalid_argument("height bound below the endpoints' heights");
    GeodesicSet result{a, b, distance(a, b), {}, false, max_height};
    result.paths = detail::shortest_paths_in(HeightGraph(max_height), a, b, result.length);
    const auto doubled = detail::shortest_paths_in(HeightGraph(2 * max_height), a, b, result.length);
    result.truncated = doubled.size() != result.paths.size();
    return result;
}

/// A finite vertex + edge subset of the Farey graph.
struct Subgraph {
    std::set<Slope> vertices;
    std::set<Edge> edges;

    [[nodiscard]] bool has_edge(const Slope& a, const Slope& b) const { return edges.count(make_edge(a, b)) > 0; }

    /// All Farey edges among `vertices`.
    static Subgraph induced(std::set<Slope> vertices) {
        Subgraph g{std::move(vertices), {}};
        for (auto i = g.vertices.begin(); i != g.vertices.end(); ++i)
            for (auto j = std::next(i); j != g.vertices.end(); ++j)
                if (adjacent(*i, *j)) g.edges.insert(make_edge(*i, *j));
        return g;
    }
};

/// Height-truncated metric ball around `center`.
struct Ball {
    Slope center;
    int radius = 0;
    std::int64_t max_height = 1;
    Subgraph graph;                     // all induced Farey edges among ball vertices
    std::map<Slope, int> distances;     // BFS distance from the centre within the truncation
};

inline Ball make_ball(const Slope& center, int radius, std::int64_t max_height) {
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
    if (max_height < center.height()) throw std::invalid_argument("height bound below the centre's height");
    const HeightGraph g(max_height);
    const auto dist = g.bfs(*g.index_of(center), radius);
    Ball ball{center, radius, max_height, {}, {}};
    std::set<Slope> verts;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (dist[i] >= 0) {
            verts.insert(g.vertices()[i]);
            ball.distances.emplace(g.vertices()[i], dist[i]);
        }
    ball.graph = Subgraph::induced(std::move(verts));
    return ball;
}

/// Outcome of a ball-relative geodesy check. Witnesses are only set on failure.
struct SubgraphVerdict {
    bool holds = true;
    std::optional<Edge> witness_pair;
    std::optional<Path> witness_path;
};

namespace detail {

struct LocalGraph {
    std::vector<Slope> verts;
    std::map<Slope, int> index;
    std::vector<std::vector<int>> adj;

    explicit LocalGraph(const Subgraph& g) : verts(g.vertices.begin(), g.vertices.end()) {
        for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], static_cast<int>(i));
        adj.resize(verts.size());
        for (const auto& [u, v] : g.edges) {
            adj[static_cast<std::size_t>(index.at(u))].push_back(index.at(v));
            adj[static_cast<std::size_t>(index.at(v))].push_back(index.at(u));
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
    }

    [[nodiscard]] std::vector<int> bfs(int s) const {
        std::vector<int> d(verts.size(), -1);
        std::deque<int> q{s};
        d[static_cast<std::size_t>(s)] = 0;
        while (!q.empty()) {
            const int v = q.front();
            q.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (d[static_cast<std::size_t>(w)] < 0) {
                    d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
                    q.push_back(w);
                }
        }
        return d;
    }
};

inline void require_inside(const Subgraph& sub, const Ball& ball) {
    for (const auto& v : sub.vertices)
        if (!ball.graph.vertices.count(v)) throw std::invalid_argument("subgraph vertex " + v.str() + " is outside the ball");
    for (const auto& e : sub.edges)
        if (!ball.graph.edges.count(e))
            throw std::invalid_argument("subgraph edge " + e.first.str() + "-" + e.second.str() + " is outside the ball");
}

}  // namespace detail

/// False, with the first offending geodesic, when some geodesic of the ball
/// joins two vertices of `sub` but leaves it. Geodesics are full-graph
/// geodesics (length = distance) that happen to lie in the ball, so the answer
/// is relative to the ball.
inline SubgraphVerdict is_totally_geodesic(const Subgraph& sub, const Ball& ball) {
    detail::require_inside(sub, ball);
    const detail::LocalGraph g(ball.graph);
    const std::vector<Slope> sv(sub.vertices.begin(), sub.vertices.end());
    // Shortest pairs first so the witness is as small as possible.
    std::vector<std::tuple<int, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < sv.size(); ++i)
        for (std::size_t j = i + 1; j < sv.size(); ++j) pairs.emplace_back(distance(sv[i], sv[j]), i, j);
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [len, i, j] : pairs) {
        {
            const int src = g.index.at(sv[i]);
            const int dst = g.index.at(sv[j]);
            const auto from_dst = g.bfs(dst);
            if (from_dst[static_cast<std::size_t>(src)] != len) continue;
            Path current{sv[i]};
            std::optional<Path> bad;
            auto walk = [&](auto&& self, int v) -> void {
                if (bad) return;
                if (v == dst) {
                    for (std::size_t k = 0; k < current.size(); ++k) {
                        const bool vertex_ok = sub.vertices.count(current[k]) > 0;
                        const bool edge_ok = k == 0 || sub.has_edge(current[k - 1], current[k]);
                        if (!vertex_ok || !edge_ok) {
                            bad = current;
                            return;
                        }
                    }
                    return;
                }
                for (int w : g.adj[static_cast<std::size_t>(v)]) {
                    if (from_dst[static_cast<std::size_t>(w)] != from_dst[static_cast<std::size_t>(v)] - 1) continue;
                    current.push_back(g.verts[static_cast<std::size_t>(w)]);
                    self(self, w);
                    current.pop_back();
                }
            };
            walk(walk, src);
            if (bad) return {false, make_edge(sv[i], sv[j]), bad};
        }
    }
    return {};
}

/// False, with the first offending pair, when two vertices of `sub` are not
/// joined by any geodesic inside `sub`.
inline SubgraphVerdict is_convex(const Subgraph& sub, const Ball& ball) {
    detail::require_inside(sub, ball);
    const detail::LocalGraph g(sub);
    for (std::size_t i = 0; i < g.verts.size(); ++i) {
        const auto d = g.bfs(static_cast<int>(i));
        for (std::size_t j = i + 1; j < g.verts.size(); ++j)
            if (d[j] != distance(g.verts[i], g.verts[j])) return {false, make_edge(g.verts[i], g.verts[j]), std::nullopt};
    }
    return {};
}

/// The vertices of `ball` lying in [lo, hi] with their induced edges.
inline Subgraph interval_subgraph(const Ball& ball, const Slope& lo, const Slope& hi) {
    std::set<Slope> verts;
    for (const auto& v : ball.graph.vertices)
        if (!v.is_infinity() && lo <= v && v <= hi) verts.insert(v);
    return Subgraph::induced(std::move(verts));
}

}  // namespace pantsflat::farey
