#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pantsflat/farey.hpp"
#include "pantsflat/orbifold.hpp"

// Rank arithmetic, the product of Farey graphs and lattice flats inside it.
namespace pantsflat::flats {

using orbifold::PieceKind;

struct SurfaceDesc {
    std::int64_t genus = 0;
    std::int64_t boundary = 0;

    [[nodiscard]] std::int64_t complexity() const { return 3 * genus - 3 + boundary; }

    void validate() const {
        if (genus < 0 || boundary < 0) throw std::invalid_argument("genus and boundary count must be nonnegative");
        if (complexity() <= 0)
            throw std::invalid_argument("surface of genus " + std::to_string(genus) + " with " +
                                        std::to_string(boundary) + " boundary components has no pants graph");
    }
};

/// Largest number of disjoint complexity-1 pieces.
inline std::int64_t max_handles(const SurfaceDesc& s) {
    s.validate();
    return (3 * s.genus + s.boundary - 2) / 2;
}

struct Template {
    std::int64_t one_holed_tori = 0;
    std::int64_t four_holed_spheres = 0;
    bool has_pants = false;  // a leftover three-holed sphere

    [[nodiscard]] std::int64_t pieces() const { return one_holed_tori + four_holed_spheres; }
};

/// g one-holed tori, floor((g+r)/2) - 1 four-holed spheres and a pair of pants
/// when g + r is odd (the Euler characteristic has to balance).
inline Template decompose_template(const SurfaceDesc& s) {
    s.validate();
    Template t;
    t.one_holed_tori = s.genus;
    t.four_holed_spheres = (s.genus + s.boundary) / 2 - 1;
    t.has_pants = (s.genus + s.boundary) % 2 == 1;
    return t;
}

/// One slope per piece.
using ProductVertex = std::vector<Slope>;

inline std::string str(const ProductVertex& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
    return out + ")";
}

/// Graph metric of the product: edges change one coordinate along a Farey edge.
inline int product_distance(const ProductVertex& u, const ProductVertex& v) {
    if (u.size() != v.size()) throw std::invalid_argument("product vertices of different rank");
    int d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += farey::distance(u[i], v[i]);
    return d;
}

/// A finite window of a bi-infinite line: slopes[k] sits at index first + k.
struct Line {
    std::int64_t first = 0;
    std::vector<Slope> slopes;

    [[nodiscard]] std::int64_t last() const { return first + static_cast<std::int64_t>(slopes.size()) - 1; }
    [[nodiscard]] bool covers(std::int64_t lo, std::int64_t hi) const { return first <= lo && hi <= last(); }
    [[nodiscard]] const Slope& at(std::int64_t k) const {
        if (k < first || k > last()) throw std::out_of_range("index " + std::to_string(k) + " outside the line");
        return slopes[static_cast<std::size_t>(k - first)];
    }
};

/// Grows a geodesic both ways from 0/1 (index 0) and 1/0 (index 1), taking the
/// lowest candidate that keeps every distance equal to the index gap. Each new
/// vertex is also checked against the BFS oracle at twice the running height.
inline Line search_geodesic(std::int64_t reach) {
    std::deque<Slope> seq{Slope::integer(0), Slope::infinity()};
    std::int64_t first = 0;
    std::int64_t top = 1;
    auto fits = [&](const Slope& w, bool forward) {
        const std::int64_t n = static_cast<std::int64_t>(seq.size());
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t gap = forward ? n - i : i + 1;
            if (farey::distance(seq[static_cast<std::size_t>(i)], w) != gap) return false;
        }
        const farey::HeightGraph oracle(2 * std::max(top, w.height()));
        const auto dist = oracle.bfs(*oracle.index_of(w));
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t gap = forward ? n - i : i + 1;
            if (dist[static_cast<std::size_t>(*oracle.index_of(seq[static_cast<std::size_t>(i)]))] != gap) return false;
        }
        return true;
    };
    auto extend = [&](bool forward) {
        const Slope& end = forward ? seq.back() : seq.front();
        for (std::int64_t cap = 2 * top + 2;; cap *= 2) {
            auto cands = farey::neighbors(end, cap);
            std::sort(cands.begin(), cands.end(), [](const Slope& a, const Slope& b) {
                return a.height() != b.height() ? a.height() < b.height() : a < b;
            });
            for (const Slope& w : cands)
                if (fits(w, forward)) {
                    top = std::max(top, w.height());
                    if (forward) seq.push_back(w);
                    else {
                        seq.push_front(w);
                        --first;
                    }
                    return;
                }
        }
    };
    while (first > -reach || first + static_cast<std::int64_t>(seq.size()) - 1 < reach) {
        if (first + static_cast<std::int64_t>(seq.size()) - 1 < reach) extend(true);
        if (first > -reach) extend(false);
    }
    return {first, {seq.begin(), seq.end()}};
}

/// Checks consecutive adjacency and distance = index gap on [lo, hi].
/// Returns the first failing pair by gap, or nothing.
inline std::optional<std::pair<std::int64_t, std::int64_t>> geodesic_defect(const Line& g, std::int64_t lo,
                                                                            std::int64_t hi) {
    for (std::int64_t gap = 1; gap <= hi - lo; ++gap)
        for (std::int64_t i = lo; i + gap <= hi; ++i)
            if (farey::distance(g.at(i), g.at(i + gap)) != gap) return std::pair{i, i + gap};
    return std::nullopt;
}

/// phi(x) = (g_1[x_1], ..., g_n[x_n]).
struct LatticeEmbedding {
    std::vector<Line> lines;

    [[nodiscard]] std::size_t rank() const { return lines.size(); }
    [[nodiscard]] ProductVertex at(const std::vector<std::int64_t>& x) const {
        if (x.size() != lines.size()) throw std::invalid_argument("lattice point of the wrong rank");
        ProductVertex v;
        for (std::size_t i = 0; i < x.size(); ++i) v.push_back(lines[i].at(x[i]));
        return v;
    }
};

/// Distinct copies of one geodesic, moved by Farey automorphisms.
inline LatticeEmbedding embedding_from(const Line& base, std::size_t n) {
    static const Unimodular moves[] = {{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {2, 1, 1, 1}};
    LatticeEmbedding e;
    for (std::size_t i = 0; i < n; ++i) {
        Line g{base.first, {}};
        for (const Slope& s : base.slopes) g.slopes.push_back(moves[i % 4](s));
        e.lines.push_back(g);
    }
    return e;
}

inline LatticeEmbedding default_embedding(std::size_t n, std::int64_t reach) {
    return embedding_from(search_geodesic(reach), n);
}

struct FlatCertificate {
    std::size_t rank = 0;
    std::int64_t window = 0;
    std::int64_t pairs_checked = 0;
    bool pass = true;
    struct Witness {
        std::vector<std::int64_t> x, y;
        int distance;
        std::int64_t gap;
    };
    std::optional<Witness> witness;  // smallest gap, then lexicographic
};

/// d(phi(x), phi(y)) = |x - y|_1 for every pair in [-W, W]^n.
inline FlatCertificate certify_flat(const LatticeEmbedding& e, std::int64_t window) {
    if (window <= 0) throw std::invalid_argument("window must be positive");
    const std::size_t n = e.rank();
    if (n == 0) throw std::invalid_argument("embedding of rank 0");
    const std::int64_t side = 2 * window + 1;
    std::vector<std::vector<int>> table(n, std::vector<int>(static_cast<std::size_t>(side * side)));
    for (std::size_t i = 0; i < n; ++i) {
        if (!e.lines[i].covers(-window, window))
            throw std::invalid_argument("line " + std::to_string(i) + " does not cover the window");
        for (std::int64_t k = -window; k < window; ++k)
            if (!adjacent(e.lines[i].at(k), e.lines[i].at(k + 1)))
                throw std::invalid_argument("line " + std::to_string(i) + " is not a path at index " +
                                            std::to_string(k));
        for (std::int64_t a = 0; a < side; ++a)
            for (std::int64_t b = 0; b < side; ++b)
                table[i][static_cast<std::size_t>(a * side + b)] =
                    farey::distance(e.lines[i].at(a - window), e.lines[i].at(b - window));
    }
    std::int64_t points = 1;
    for (std::size_t i = 0; i < n; ++i) points *= side;
    auto coord = [&](std::int64_t code) {
        std::vector<std::int64_t> x(n);
        for (std::size_t i = n; i-- > 0;) {
            x[i] = code % side;
            code /= side;
        }
        return x;
    };
    FlatCertificate cert{n, window, 0, true, std::nullopt};
    for (std::int64_t a = 0; a < points; ++a) {
        const auto x = coord(a);
        for (std::int64_t b = a + 1; b < points; ++b) {
            const auto y = coord(b);
            int d = 0;
            std::int64_t gap = 0;
            for (std::size_t i = 0; i < n; ++i) {
                d += table[i][static_cast<std::size_t>(x[i] * side + y[i])];
                gap += std::abs(x[i] - y[i]);
            }
            ++cert.pairs_checked;
            if (d == gap) continue;
            cert.pass = false;
            if (!cert.witness || gap < cert.witness->gap) {
                auto shift = [&](std::vector<std::int64_t> v) {
                    for (auto& c : v) c -= window;
                    return v;
                };
                cert.witness = FlatCertificate::Witness{shift(x), shift(y), d, gap};
            }
        }
    }
    return cert;
}

/// Product of height-truncated Farey balls, cut to L1 radius R around a centre.
class ProductBall {
public:
    ProductBall(const ProductVertex& center, int radius, std::int64_t max_height) : center_(center), radius_(radius) {
        std::vector<farey::Ball> factors;
        for (const Slope& c : center) factors.push_back(farey::make_ball(c, radius, max_height));
        ProductVertex cur(center.size(), Slope::infinity());
        std::function<void(std::size_t, int)> fill = [&](std::size_t i, int used) {
            if (i == center.size()) {
                index_.emplace(cur, static_cast<int>(verts_.size()));
                verts_.push_back(cur);
                return;
            }
            for (const auto& [s, d] : factors[i].distances)
                if (used + d <= radius) {
                    cur[i] = s;
                    fill(i + 1, used + d);
                }
        };
        fill(0, 0);
        adj_.resize(verts_.size());
        for (std::size_t v = 0; v < verts_.size(); ++v)
            for (std::size_t i = 0; i < center.size(); ++i)
                for (const Slope& w : farey::neighbors(verts_[v][i], max_height)) {
                    ProductVertex u = verts_[v];
                    u[i] = w;
                    if (auto it = index_.find(u); it != index_.end()) adj_[v].push_back(it->second);
                }
    }

    [[nodiscard]] std::size_t size() const { return verts_.size(); }
    [[nodiscard]] const ProductVertex& vertex(int i) const { return verts_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const ProductVertex& center() const { return center_; }
    [[nodiscard]] int radius() const { return radius_; }
    [[nodiscard]] std::optional<int> index_of(const ProductVertex& v) const {
        auto it = index_.find(v);
        return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
    }

    [[nodiscard]] std::vector<int> bfs(int source) const {
        std::vector<int> dist(verts_.size(), -1);
        std::deque<int> queue{source};
        dist[static_cast<std::size_t>(source)] = 0;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : adj_[static_cast<std::size_t>(v)])
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    }

private:
    ProductVertex center_;
    int radius_;
    std::vector<ProductVertex> verts_;
    std::map<ProductVertex, int> index_;
    std::vector<std::vector<int>> adj_;
};

struct GeodesyReport {
    bool holds = true;
    std::int64_t pairs_checked = 0;
    std::size_t subgraph_size = 0;
    struct Witness {
        ProductVertex from, to, outside;
        int length;
    };
    std::optional<Witness> witness;  // shortest failing pair
};

/// Every vertex on a geodesic of the truncated product between two members
/// must itself be a member.
inline GeodesyReport check_total_geodesy(const ProductBall& ball, const std::function<bool(const ProductVertex&)>& member) {
    std::vector<int> sub;
    for (int v = 0; v < static_cast<int>(ball.size()); ++v)
        if (member(ball.vertex(v))) sub.push_back(v);
    std::vector<std::vector<int>> dist;
    for (int v : sub) dist.push_back(ball.bfs(v));
    GeodesyReport rep;
    rep.subgraph_size = sub.size();
    for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = a + 1; b < sub.size(); ++b) {
            const int d = dist[a][static_cast<std::size_t>(sub[b])];
            if (d < 0) continue;
            ++rep.pairs_checked;
            if (rep.witness && rep.witness->length <= d) continue;
            for (int w = 0; w < static_cast<int>(ball.size()); ++w) {
                const int da = dist[a][static_cast<std::size_t>(w)], db = dist[b][static_cast<std::size_t>(w)];
                if (da < 0 || db < 0 || da + db != d || member(ball.vertex(w))) continue;
                rep.holds = false;
                rep.witness = GeodesyReport::Witness{ball.vertex(sub[a]), ball.vertex(sub[b]), ball.vertex(w), d};
                break;
            }
        }
    return rep;
}

/// F^k x {pt}: the first k coordinates free, the rest pinned to the centre.
inline GeodesyReport subproduct_total_geodesy(const ProductBall& ball, std::size_t k) {
    const ProductVertex& pin = ball.center();
    return check_total_geodesy(ball, [&](const ProductVertex& v) {
        for (std::size_t i = k; i < v.size(); ++i)
            if (v[i] != pin[i]) return false;
        return true;
    });
}

/// Control: the diagonal of a rank-2 product is not totally geodesic.
inline GeodesyReport diagonal_control(const ProductBall& ball) {
    return check_total_geodesy(ball, [](const ProductVertex& v) {
        for (const Slope& s : v)
            if (s != v.front()) return false;
        return true;
    });
}

/// Edge weights 1 for torus factors and 2 for sphere factors.
struct WeightedFlat {
    std::vector<int> weights;

    [[nodiscard]] std::int64_t distance(const ProductVertex& u, const ProductVertex& v) const {
        if (u.size() != weights.size() || v.size() != weights.size())
            throw std::invalid_argument("vertex rank does not match the weights");
        std::int64_t d = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * farey::distance(u[i], v[i]);
        return d;
    }
};

inline WeightedFlat wp_rescale(const LatticeEmbedding& e, const std::vector<PieceKind>& pieces) {
    if (pieces.size() != e.rank()) throw std::invalid_argument("one piece kind per factor is required");
    WeightedFlat w;
    for (auto k : pieces) w.weights.push_back(k == PieceKind::OneHoledTorus ? 1 : 2);
    return w;
}

}  // namespace pantsflat::flats
