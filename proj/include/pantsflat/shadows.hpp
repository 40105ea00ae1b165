#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pantsflat/flats.hpp"
#include "pantsflat/orbifold.hpp"
#include "pantsflat/pieces.hpp"

// Traces of pants decompositions on the pieces of a handle system, and the
// projection to the product of Farey graphs.
namespace pantsflat::shadows {

using flats::ProductVertex;
using flats::SurfaceDesc;
using orbifold::ObjectKind;
using orbifold::PieceKind;
using orbifold::PieceObject;

struct HandleSystem {
    SurfaceDesc surface;
    std::vector<PieceKind> pieces;
    ProductVertex base;  // stands for "the projection is Q itself"

    [[nodiscard]] std::size_t n() const { return pieces.size(); }
    [[nodiscard]] std::int64_t multicurve_size() const {
        return surface.complexity() - static_cast<std::int64_t>(pieces.size());
    }

    void validate() const {
        const auto top = flats::max_handles(surface);
        const auto count = static_cast<std::int64_t>(pieces.size());
        if (count < 2 || count > top)
            throw std::invalid_argument("a handle system needs between 2 and " + std::to_string(top) + " pieces, got " +
                                        std::to_string(count));
        if (base.size() != pieces.size()) throw std::invalid_argument("base tuple must have one slope per piece");
    }

    /// Every piece on the slope 1/0.
    static HandleSystem with_pieces(SurfaceDesc s, std::vector<PieceKind> kinds) {
        HandleSystem h{s, std::move(kinds), {}};
        h.base.assign(h.pieces.size(), Slope::infinity());
        h.validate();
        return h;
    }
};

/// Per piece, the objects the decomposition leaves there: its own curve when
/// the vertex lies in P_Q, otherwise arcs of crossing curves (and possibly a
/// curve of the decomposition inside the piece).
struct VertexShadow {
    std::vector<std::vector<PieceObject>> traces;
    bool in_pq = false;

    [[nodiscard]] ProductVertex tuple() const {
        if (!in_pq) throw std::logic_error("only vertices of P_Q have a tuple of their own");
        ProductVertex v;
        for (const auto& t : traces) v.push_back(t.front().slope);
        return v;
    }
};

namespace detail {

inline void check_piece(const std::vector<PieceObject>& trace, PieceKind kind, std::size_t piece) {
    for (const auto& a : trace) {
        a.validate();
        if (a.piece != kind)
            throw std::invalid_argument("piece " + std::to_string(piece) + " holds an object of the other piece kind: " +
                                        a.str());
    }
    for (std::size_t i = 0; i < trace.size(); ++i)
        for (std::size_t j = i + 1; j < trace.size(); ++j)
            if (trace[i] != trace[j] && orbifold::intersection_number(trace[i], trace[j]) != 0)
                throw std::invalid_argument("piece " + std::to_string(piece) + " trace is not disjoint: " +
                                            trace[i].str() + " meets " + trace[j].str());
}

}  // namespace detail

/// A vertex of P_Q keeps one curve per piece. Vertices outside P_Q may still
/// show a single curve in every piece (when the replaced curve of Q misses all
/// pieces), so the flag is carried explicitly.
inline void validate(const VertexShadow& v, const HandleSystem& h) {
    if (v.traces.size() != h.n()) throw std::invalid_argument("shadow must have one trace per piece");
    for (std::size_t i = 0; i < h.n(); ++i) detail::check_piece(v.traces[i], h.pieces[i], i);
    if (v.in_pq)
        for (std::size_t i = 0; i < h.n(); ++i)
            if (v.traces[i].size() != 1 || v.traces[i][0].kind != ObjectKind::Curve)
                throw std::invalid_argument("a vertex of P_Q needs exactly one curve in piece " + std::to_string(i));
}

inline VertexShadow in_graph(const HandleSystem& h, const ProductVertex& slopes) {
    if (slopes.size() != h.n()) throw std::invalid_argument("one slope per piece is required");
    VertexShadow v{{}, true};
    for (std::size_t i = 0; i < h.n(); ++i) v.traces.push_back({PieceObject::curve(h.pieces[i], slopes[i])});
    return v;
}

enum class MoveKind { First, Second };

inline const char* to_string(MoveKind k) { return k == MoveKind::First ? "first" : "second"; }
inline int crossings(MoveKind k) { return k == MoveKind::First ? 1 : 2; }

/// What the replaced curve alpha and the new curve beta leave in one piece.
struct Exchange {
    std::size_t piece = 0;
    std::vector<PieceObject> before;
    std::vector<PieceObject> after;
};

struct Move {
    MoveKind kind = MoveKind::First;
    std::vector<Exchange> exchanges;  // active pieces only
};

struct PathShadow {
    HandleSystem system;
    std::vector<VertexShadow> vertices;
    std::vector<Move> moves;

    [[nodiscard]] std::size_t length() const { return moves.size(); }
};

namespace detail {

inline std::vector<PieceObject> sorted(std::vector<PieceObject> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

/// Consecutive shadows differ exactly by the annotated exchanges, and alpha
/// and beta cross at most once (first kind) or twice (second kind) inside the
/// pieces.
inline void validate_step(const VertexShadow& from, const VertexShadow& to, const Move& m, const HandleSystem& h) {
    std::vector<bool> active(h.n(), false);
    std::int64_t inside = 0;
    for (const auto& e : m.exchanges) {
        if (e.piece >= h.n() || active[e.piece]) throw std::invalid_argument("bad or repeated active piece");
        active[e.piece] = true;
        auto rest = detail::sorted(from.traces[e.piece]);
        for (const auto& a : e.before) {
            auto it = std::find(rest.begin(), rest.end(), a);
            if (it == rest.end())
                throw std::invalid_argument("exchanged object " + a.str() + " is not in piece " + std::to_string(e.piece));
            rest.erase(it);
        }
        rest.insert(rest.end(), e.after.begin(), e.after.end());
        if (detail::sorted(rest) != detail::sorted(to.traces[e.piece]))
            throw std::invalid_argument("piece " + std::to_string(e.piece) + " does not follow the annotated move");
        for (const auto& a : e.before)
            for (const auto& b : e.after) inside += orbifold::intersection_number(a, b);
    }
    for (std::size_t i = 0; i < h.n(); ++i)
        if (!active[i] && detail::sorted(from.traces[i]) != detail::sorted(to.traces[i]))
            throw std::invalid_argument("inactive piece " + std::to_string(i) + " changed");
    if (inside > crossings(m.kind))
        throw std::invalid_argument(std::string("a move of the ") + to_string(m.kind) + " kind crosses " +
                                    std::to_string(inside) + " times inside the pieces");
}

inline void validate(const PathShadow& p) {
    p.system.validate();
    if (p.vertices.empty()) throw std::invalid_argument("empty path");
    if (p.moves.size() + 1 != p.vertices.size()) throw std::invalid_argument("need one move per edge");
    for (const auto& v : p.vertices) validate(v, p.system);
    for (std::size_t i = 0; i < p.moves.size(); ++i) validate_step(p.vertices[i], p.vertices[i + 1], p.moves[i], p.system);
}

/// All tuples with one projection per piece; untouched pieces sit at the base.
inline std::set<ProductVertex> project_shadow(const VertexShadow& v, const HandleSystem& h) {
    validate(v, h);
    std::vector<std::vector<Slope>> choices;
    for (std::size_t i = 0; i < h.n(); ++i) {
        const auto proj = pieces::project(v.traces[i]);
        choices.push_back(proj.empty() ? std::vector<Slope>{h.base[i]} : std::vector<Slope>(proj.begin(), proj.end()));
    }
    std::set<ProductVertex> out;
    ProductVertex cur(h.n(), Slope::infinity());
    auto fill = [&](auto&& self, std::size_t i) -> void {
        if (i == h.n()) {
            out.insert(cur);
            return;
        }
        for (const Slope& s : choices[i]) {
            cur[i] = s;
            self(self, i + 1);
        }
    };
    fill(fill, 0);
    return out;
}

/// One step out of P_Q leaves the projection on the starting vertex.
inline bool orthogonality_check(const VertexShadow& v0, const VertexShadow& v1, const Move& m, const HandleSystem& h) {
    validate(v0, h);
    validate(v1, h);
    if (!v0.in_pq) throw std::invalid_argument("the first vertex must lie in P_Q");
    if (v1.in_pq) throw std::invalid_argument("the second vertex must lie outside P_Q");
    validate_step(v0, v1, m, h);
    return project_shadow(v1, h) == std::set<ProductVertex>{v0.tuple()};
}

struct SpecialCouple {
    std::size_t edge = 0;
    std::size_t piece = 0;
    PieceObject seam;
    PieceObject curve;
};

/// Edges of the second kind whose traces meet as a seam and a curve crossing twice.
inline std::vector<SpecialCouple> detect_special_couples(const PathShadow& p) {
    std::vector<SpecialCouple> out;
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        if (p.moves[i].kind != MoveKind::Second) continue;
        for (const auto& e : p.moves[i].exchanges) {
            if (p.system.pieces[e.piece] != PieceKind::FourHoledSphere) continue;
            for (const auto& a : e.before)
                for (const auto& b : e.after) {
                    const PieceObject* s = a.kind == ObjectKind::Seam ? &a : b.kind == ObjectKind::Seam ? &b : nullptr;
                    const PieceObject* c = a.kind == ObjectKind::Curve ? &a : b.kind == ObjectKind::Curve ? &b : nullptr;
                    if (s && c && s != c && pieces::is_special_couple(*s, *c)) out.push_back({i, e.piece, *s, *c});
                }
        }
    }
    return out;
}

struct BoundAudit {
    std::size_t length = 0;
    int best = 0;  // min product distance over projection choices at the two ends
    bool pass = true;
    ProductVertex from, to;  // a pair realizing best
};

/// Instance check of d_Q(omega_0, omega_r) <= r, minimizing over choices.
inline BoundAudit audit_projection_bound(const PathShadow& p) {
    validate(p);
    const auto first = project_shadow(p.vertices.front(), p.system);
    const auto last = project_shadow(p.vertices.back(), p.system);
    BoundAudit a{p.length(), -1, true, {}, {}};
    for (const auto& u : first)
        for (const auto& v : last) {
            const int d = flats::product_distance(u, v);
            if (a.best < 0 || d < a.best) {
                a.best = d;
                a.from = u;
                a.to = v;
            }
        }
    a.pass = a.best <= static_cast<int>(a.length);
    return a;
}

struct Figure2 {
    PathShadow path;
    int min_distance = 0;
    std::vector<int> all_distances;  // over every pair of choices, sorted
    std::vector<SpecialCouple> specials;
    BoundAudit audit;
};

inline Figure2 summarize(PathShadow p) {
    validate(p);
    Figure2 f{std::move(p), 0, {}, {}, {}};
    const auto a = project_shadow(f.path.vertices.front(), f.path.system);
    const auto b = project_shadow(f.path.vertices.back(), f.path.system);
    for (const auto& u : a)
        for (const auto& v : b) f.all_distances.push_back(flats::product_distance(u, v));
    std::sort(f.all_distances.begin(), f.all_distances.end());
    f.min_distance = f.all_distances.front();
    f.specials = detect_special_couples(f.path);
    f.audit = audit_projection_bound(f.path);
    return f;
}

/// Closed genus 7, two four-holed spheres. In the first piece alpha leaves a
/// lone seam of slope 0/1 and beta is the curve 2/1 crossing it twice; the
/// second piece carries two disjoint seams of slopes 1/3 and 1/1 that the move
/// does not touch. Options: drop the second piece's trace, or swap beta for a
/// curve missing the seam (the control).
inline Figure2 figure2_scenario(bool with_second_trace = true, bool control = false) {
    constexpr auto kSphere = PieceKind::FourHoledSphere;
    const auto h = HandleSystem::with_pieces({7, 0}, {kSphere, kSphere});
    const PieceObject seam = PieceObject::seam(Slope(0, 1), 0);
    const PieceObject beta = PieceObject::curve(kSphere, control ? Slope(1, 1) : Slope(2, 1));
    std::vector<PieceObject> second;
    if (with_second_trace) second = {PieceObject::seam(Slope(1, 3), 0), PieceObject::seam(Slope(1, 1), 0)};
    VertexShadow v0{{{seam}, second}, false};
    VertexShadow v1{{{beta}, second}, false};
    const MoveKind kind = control ? MoveKind::First : MoveKind::Second;
    return summarize(PathShadow{h, {v0, v1}, {Move{kind, {Exchange{0, {seam}, {beta}}}}}});
}

struct LFEdge {
    std::size_t edge = 0;
    std::size_t piece = 0;
    int before_side = 0;  // special couples with a curve of the previous vertex
    int after_side = 0;   // special couples with a seam of the next vertex
    bool repeated = false;  // a neighbouring couple reuses beta: the path backtracks
    bool pass = true;
};

/// For each special edge, the other special couples the neighbouring edges
/// form with its seam or its curve in the same piece.
inline std::vector<LFEdge> lemma_LF_probe(const PathShadow& p) {
    validate(p);
    std::vector<LFEdge> out;
    const auto specials = detect_special_couples(p);
    auto exchange_in = [&](std::size_t edge, std::size_t piece) -> const Exchange* {
        for (const auto& e : p.moves[edge].exchanges)
            if (e.piece == piece) return &e;
        return nullptr;
    };
    for (const auto& sc : specials) {
        LFEdge r{sc.edge, sc.piece, 0, 0, false, true};
        std::set<PieceObject> seen_before, seen_after;
        if (sc.edge > 0)
            if (const auto* e = exchange_in(sc.edge - 1, sc.piece))
                for (const auto& g : e->before)
                    if (g.kind == ObjectKind::Curve && pieces::is_special_couple(sc.seam, g) && seen_before.insert(g).second) {
                        ++r.before_side;
                        r.repeated = r.repeated || g.slope == sc.curve.slope;
                    }
        if (sc.edge + 1 < p.moves.size())
            if (const auto* e = exchange_in(sc.edge + 1, sc.piece))
                for (const auto& g : e->after) {
                    if (g.kind == ObjectKind::Seam && g != sc.seam && pieces::is_special_couple(g, sc.curve) &&
                        seen_after.insert(g).second)
                        ++r.after_side;
                    if (g.kind == ObjectKind::Curve && g.slope == sc.curve.slope) r.repeated = true;
                }
        r.pass = r.before_side <= 1 && r.after_side <= 1 && !r.repeated;
        out.push_back(r);
    }
    return out;
}

// Seeded generators ---------------------------------------------------------

namespace detail {

inline PieceKind random_kind(std::mt19937_64& rng) {
    return std::uniform_int_distribution<int>(0, 1)(rng) ? PieceKind::FourHoledSphere : PieceKind::OneHoledTorus;
}

inline HandleSystem random_system(std::mt19937_64& rng, std::size_t n) {
    std::vector<PieceKind> kinds;
    for (std::size_t i = 0; i < n; ++i) kinds.push_back(random_kind(rng));
    // Genus large enough to host any mix of n pieces.
    return HandleSystem::with_pieces({static_cast<std::int64_t>(n) + 2, 0}, kinds);
}

inline Slope candidate_slope(std::mt19937_64& rng, const Slope& u, std::int64_t h) {
    const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
    if (mode <= 1) return u;
    if (mode == 2) return pieces::detail::pick(rng, farey::neighbors(u, std::max(h, u.height())));
    return pieces::detail::pick(rng, pieces::slopes_up_to(h));
}

inline PieceObject random_arc(std::mt19937_64& rng, PieceKind kind, const Slope& s) {
    if (kind == PieceKind::OneHoledTorus) return PieceObject::torus_arc(s);
    const int label = std::uniform_int_distribution<int>(0, 3)(rng);
    return std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? PieceObject::wave(s, label) : PieceObject::seam(s, label);
}

inline bool misses(const PieceObject& a, const std::vector<PieceObject>& trace) {
    for (const auto& b : trace)
        if (a != b && orbifold::intersection_number(a, b) != 0) return false;
    return true;
}

}  // namespace detail

struct OrthogonalityFixture {
    HandleSystem system;
    VertexShadow v0, v1;
    Move move;
};

/// A curve of Q is swapped for a curve beta. Beta's arcs are drawn with random
/// slopes and kept only when the oracle finds them disjoint from the piece's
/// curve. Some fixtures miss every piece.
inline OrthogonalityFixture orthogonality_fixture(std::mt19937_64& rng, std::int64_t h = 8) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
    const HandleSystem sys = detail::random_system(rng, n);
    ProductVertex slopes;
    for (std::size_t i = 0; i < n; ++i) slopes.push_back(pieces::detail::pick(rng, pieces::slopes_up_to(h)));
    const VertexShadow v0 = in_graph(sys, slopes);
    VertexShadow v1 = v0;
    v1.in_pq = false;
    Move m{std::uniform_int_distribution<int>(0, 1)(rng) ? MoveKind::Second : MoveKind::First, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const int arcs = std::uniform_int_distribution<int>(0, 2)(rng);
        Exchange e{i, {}, {}};
        for (int tries = 0; static_cast<int>(e.after.size()) < arcs && tries < 40; ++tries) {
            const PieceObject a = detail::random_arc(rng, sys.pieces[i], detail::candidate_slope(rng, slopes[i], h));
            if (!detail::misses(a, v1.traces[i])) continue;
            v1.traces[i].push_back(a);
            e.after.push_back(a);
        }
        if (!e.after.empty()) m.exchanges.push_back(e);
    }
    return {sys, v0, v1, m};
}

/// Random walks mixing: a flip of a piece's lone curve to a Farey neighbour; a
/// curve of Q swapped for a curve whose arcs miss every piece curve, and back;
/// and a curve inside a sphere piece swapped for a curve crossing it as a
/// special couple together with the companion seam of the same labels.
inline PathShadow random_path(std::mt19937_64& rng, std::size_t length, std::size_t n, std::int64_t h = 8) {
    const HandleSystem sys = detail::random_system(rng, n);
    ProductVertex slopes;
    for (std::size_t i = 0; i < n; ++i) slopes.push_back(pieces::detail::pick(rng, pieces::slopes_up_to(h)));
    PathShadow p{sys, {in_graph(sys, slopes)}, {}};
    std::vector<std::vector<PieceObject>> outside;  // arcs of the curve standing in for Q, per piece
    std::vector<bool> special(n, false);
    constexpr auto kSphere = PieceKind::FourHoledSphere;
    while (p.moves.size() < length) {
        const VertexShadow& cur = p.vertices.back();
        VertexShadow next = cur;
        Move m;
        const int pick = std::uniform_int_distribution<int>(0, 3)(rng);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const auto& here = cur.traces[i];
        if (pick == 0) {
            // Flip the lone curve of piece i.
            if (here.size() != 1 || here[0].kind != ObjectKind::Curve) continue;
            const Slope v = pieces::detail::pick(rng, farey::neighbors(here[0].slope, h));
            const PieceObject c = PieceObject::curve(sys.pieces[i], v);
            next.traces[i] = {c};
            m = {sys.pieces[i] == kSphere ? MoveKind::Second : MoveKind::First, {{i, here, {c}}}};
        } else if (pick == 1) {
            // Leave P_Q, or come back when nothing else has changed.
            if (cur.in_pq) {
                outside.assign(n, {});
                m = {MoveKind::First, {}};
                next.in_pq = false;
                for (std::size_t j = 0; j < n; ++j) {
                    if (std::uniform_int_distribution<int>(0, 1)(rng)) continue;
                    const PieceObject a =
                        detail::random_arc(rng, sys.pieces[j], detail::candidate_slope(rng, cur.traces[j][0].slope, h));
                    if (!detail::misses(a, cur.traces[j])) continue;
                    next.traces[j].push_back(a);
                    outside[j] = {a};
                    m.exchanges.push_back({j, {}, {a}});
                }
            } else {
                if (outside.empty() || std::count(special.begin(), special.end(), true) > 0) continue;
                m = {MoveKind::First, {}};
                next.in_pq = true;
                for (std::size_t j = 0; j < n; ++j)
                    if (!outside[j].empty()) {
                        auto& t = next.traces[j];
                        t.erase(std::find(t.begin(), t.end(), outside[j][0]));
                        m.exchanges.push_back({j, outside[j], {}});
                    }
                outside.clear();
            }
        } else if (pick == 2) {
            // Curve beta of a sphere piece becomes alpha with seams s (special
            // with beta) and s' (slope beta, same labels).
            if (cur.in_pq || sys.pieces[i] != kSphere || special[i] || !outside[i].empty()) continue;
            if (here.size() != 1 || here[0].kind != ObjectKind::Curve) continue;
            const Slope beta = here[0].slope;
            const auto u = pieces::detail::at_determinant(rng, beta, 2, h);
            if (!u) continue;
            const PieceObject s = PieceObject::seam(*u, std::uniform_int_distribution<int>(0, 3)(rng));
            const PieceObject s2 = PieceObject::seam(beta, s.endpoints[0]);
            next.traces[i] = {s, s2};
            special[i] = true;
            m = {MoveKind::Second, {{i, here, {s, s2}}}};
        } else {
            // Back from the two seams to one of the two curves each seam misses.
            if (!special[i]) continue;
            const PieceObject c = PieceObject::curve(kSphere, here[std::uniform_int_distribution<int>(0, 1)(rng)].slope);
            next.traces[i] = {c};
            special[i] = false;
            m = {MoveKind::Second, {{i, here, {c}}}};
        }
        validate(next, sys);
        validate_step(cur, next, m, sys);
        p.vertices.push_back(next);
        p.moves.push_back(m);
    }
    return p;
}

}  // namespace pantsflat::shadows
