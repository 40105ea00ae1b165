#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pantsflat/boundary.hpp"
#include "pantsflat/farey.hpp"
#include "pantsflat/orbifold.hpp"

// Subsurface projection and the seam calculus on complexity-1 pieces.
namespace pantsflat::pieces {

using orbifold::Configuration;
using orbifold::ObjectKind;
using orbifold::PieceKind;
using orbifold::PieceObject;

/// The one curve of the piece missing `a`. In this model a curve, a seam, a
/// torus arc and a wave all miss exactly the curve of their own slope.
inline Slope project(const PieceObject& a) {
    a.validate();
    return a.slope;
}

/// Component-wise projection of a trace, deduplicated.
inline std::set<Slope> project(const std::vector<PieceObject>& trace) {
    std::set<Slope> out;
    for (const auto& a : trace) out.insert(project(a));
    return out;
}

/// Number of boundary labels carrying an end of each seam.
inline int common_boundaries(const PieceObject& s, const PieceObject& t) {
    for (const auto* x : {&s, &t})
        if (x->piece != PieceKind::FourHoledSphere || x->kind != ObjectKind::Seam)
            throw std::invalid_argument("common boundaries are defined for seams of a four-holed sphere");
    return orbifold::law::common_labels(s, t);
}

/// A seam with the same projection as `a`. Waves give their stored seam. A
/// curve of slope u separates the two seams of slope u; with a reference the
/// seam sharing fewer labels with it is taken (the one on the far side when
/// the reference misses the curve), otherwise the one leaving label 0.
inline PieceObject associated_seam(const PieceObject& a, const std::optional<PieceObject>& reference = std::nullopt) {
    a.validate();
    if (a.piece != PieceKind::FourHoledSphere) throw std::invalid_argument("associated seams live in four-holed spheres");
    if (a.kind == ObjectKind::Seam) return a;
    if (a.kind == ObjectKind::Wave) return a.stored_seam();
    const PieceObject near = PieceObject::seam(a.slope, 0);
    const PieceObject far = PieceObject::seam(a.slope, near.endpoints[1] == 1 ? 2 : 1);
    if (!reference || !reference->is_arc()) return near;
    auto shared = [&](const PieceObject& s) {
        int j = 0;
        for (int x : s.endpoints)
            for (int y : reference->endpoints) j += x == y;
        return j;
    };
    return shared(far) < shared(near) ? far : near;
}

struct IntCheck {
    PieceObject seam;
    PieceObject other;
    std::int64_t projected;  // iota(pi(s), x)
    std::int64_t predicted;  // 2 iota(s, x) + j
    bool holds = false;
};

/// Both parts of the seam/projection intersection identity for one pair.
inline IntCheck lemma_int_check(const PieceObject& s, const PieceObject& x) {
    if (s.kind != ObjectKind::Seam || s.piece != PieceKind::FourHoledSphere)
        throw std::invalid_argument("the first object must be a seam of a four-holed sphere");
    if (x.kind == ObjectKind::Wave || x.piece != PieceKind::FourHoledSphere)
        throw std::invalid_argument("the second object must be a seam or a curve of a four-holed sphere");
    const std::int64_t j = x.kind == ObjectKind::Seam ? common_boundaries(s, x) : 0;
    IntCheck r{s, x, 0, 0, false};
    r.projected = orbifold::intersection_number(PieceObject::curve(PieceKind::FourHoledSphere, project(s)), x);
    r.predicted = 2 * orbifold::intersection_number(s, x) + j;
    r.holds = r.projected == r.predicted;
    return r;
}

inline bool is_special_couple(const PieceObject& s, const PieceObject& c) {
    if (s.kind != ObjectKind::Seam || c.kind != ObjectKind::Curve || s.piece != PieceKind::FourHoledSphere ||
        c.piece != PieceKind::FourHoledSphere)
        throw std::invalid_argument("a special couple is a seam and a curve of a four-holed sphere");
    return orbifold::intersection_number(s, c) == 2;
}

/// Distance in the piece's Farey graph. Both piece kinds use the Farey edge
/// rule: iota = 1 on the torus and iota = 2 on the sphere are both |det| = 1.
inline int projection_distance(const Slope& u, const Slope& v, PieceKind) { return farey::distance(u, v); }

/// Tally of one instance suite. Failures carry a readable dump of the fixture.
struct SuiteReport {
    std::string name;
    std::int64_t checked = 0;
    std::int64_t passed = 0;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, std::int64_t>> tallies;  // extra named counts

    [[nodiscard]] bool ok() const { return checked == passed; }

    void record(bool good, const std::string& dump) {
        ++checked;
        if (good) ++passed;
        else if (failures.size() < 20) failures.push_back(dump);
    }
    void count(const std::string& key, std::int64_t by = 1) {
        for (auto& [k, v] : tallies)
            if (k == key) {
                v += by;
                return;
            }
        tallies.emplace_back(key, by);
    }
};

/// All reduced slopes of height <= h, in slope order.
inline std::vector<Slope> slopes_up_to(std::int64_t h) {
    if (h < 1) return {};
    return farey::HeightGraph(h).vertices();
}

/// Every seam of height <= h, once per endpoint pair.
inline std::vector<PieceObject> seams_up_to(std::int64_t h) {
    std::vector<PieceObject> out;
    for (const Slope& s : slopes_up_to(h)) {
        out.push_back(PieceObject::seam(s, 0));
        out.push_back(PieceObject::seam(s, PieceObject::seam(s, 0).endpoints[1] == 1 ? 2 : 1));
    }
    return out;
}

inline std::string dump(const std::vector<PieceObject>& objs) {
    std::string out;
    for (const auto& o : objs) out += (out.empty() ? "" : "; ") + o.str();
    return out;
}

/// Exhaustive seam/seam and seam/curve sweep of the intersection identity.
inline SuiteReport sweep_int(std::int64_t h) {
    SuiteReport rep{"int", 0, 0, {}, {}};
    const auto seams = seams_up_to(h);
    const auto slopes = slopes_up_to(h);
    for (const auto& s : seams) {
        for (const auto& t : seams) {
            if (s == t) continue;
            const auto r = lemma_int_check(s, t);
            rep.record(r.holds, dump({s, t}) + " projected " + std::to_string(r.projected) + " predicted " +
                                    std::to_string(r.predicted));
            rep.count("seam-seam");
        }
        for (const Slope& c : slopes) {
            const auto curve = PieceObject::curve(PieceKind::FourHoledSphere, c);
            const auto r = lemma_int_check(s, curve);
            rep.record(r.holds, dump({s, curve}) + " projected " + std::to_string(r.projected) + " predicted " +
                                    std::to_string(r.predicted));
            rep.count("seam-curve");
        }
    }
    return rep;
}

/// Every pair of distinct torus arcs is tight and has linked ends.
inline SuiteReport sweep_lk(std::int64_t h) {
    SuiteReport rep{"lk", 0, 0, {}, {}};
    const auto slopes = slopes_up_to(h);
    for (std::size_t i = 0; i < slopes.size(); ++i)
        for (std::size_t j = i + 1; j < slopes.size(); ++j) {
            const auto a = PieceObject::torus_arc(slopes[i]);
            const auto b = PieceObject::torus_arc(slopes[j]);
            rep.record(orbifold::tightness_check(a, b) && orbifold::endpoint_linking(a, b), dump({a, b}));
        }
    return rep;
}

namespace detail {

inline Slope pick(std::mt19937_64& rng, const std::vector<Slope>& from) {
    std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
    return from[d(rng)];
}

// A slope v with |det(u, v)| = k, found as k w + m u for a Farey neighbour w of u.
inline std::optional<Slope> at_determinant(std::mt19937_64& rng, const Slope& u, std::int64_t k, std::int64_t h) {
    const auto near = farey::neighbors(u, h);
    for (int attempt = 0; attempt < 32; ++attempt) {
        const Slope w = pick(rng, near);
        std::uniform_int_distribution<std::int64_t> shift(-3, 3);
        const std::int64_t m = shift(rng);
        const std::int64_t x = k * w.p() + m * u.p(), y = k * w.q() + m * u.q();
        if (std::gcd(x, y) != 1) continue;
        const Slope v(x, y);
        if (v.height() <= h && abs_determinant(u, v) == k) return v;
    }
    return std::nullopt;
}

inline int random_label(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(0, 3)(rng); }

inline std::set<Slope> essential_projections(const std::vector<orbifold::BoundaryComponent>& parts) {
    std::set<Slope> out;
    for (const auto& p : parts)
        if (p.object) out.insert(p.object->slope);
    return out;
}

// Some boundary projection within distance 1 of every member's projection.
inline bool has_close_boundary(const Configuration& config, const std::vector<orbifold::BoundaryComponent>& parts) {
    for (const Slope& d : essential_projections(parts)) {
        bool all = true;
        for (const auto& e : config.entries) all = all && farey::distance(d, project(e.object)) <= 1;
        if (all) return true;
    }
    return false;
}

inline std::vector<std::size_t> all_members(const Configuration& c) {
    std::vector<std::size_t> m(c.entries.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    return m;
}

inline std::vector<PieceObject> objects(const Configuration& c) {
    std::vector<PieceObject> out;
    for (const auto& e : c.entries) out.push_back(e.object);
    return out;
}

}  // namespace detail

/// Seeded fixtures for the disjoint seam lemma: a seam s and a curve, wave or
/// seam b missing it (sharing at most one label when b is a seam) have
/// projections at distance <= 1.
inline SuiteReport suite_prs(std::int64_t count, std::uint64_t seed, std::int64_t h = 10) {
    SuiteReport rep{"prs", 0, 0, {}, {}};
    std::mt19937_64 rng(seed);
    const auto slopes = slopes_up_to(h);
    while (rep.checked < count) {
        const PieceObject s = PieceObject::seam(detail::pick(rng, slopes), detail::random_label(rng));
        // Candidate slopes: equal, adjacent, determinant 2 or anything.
        const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
        std::optional<Slope> v;
        if (mode == 0) v = s.slope;
        else if (mode == 1) v = detail::pick(rng, farey::neighbors(s.slope, h));
        else if (mode == 2) v = detail::at_determinant(rng, s.slope, 2, h);
        else v = detail::pick(rng, slopes);
        if (!v) continue;
        const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
        const PieceObject b = kind == 0   ? PieceObject::curve(PieceKind::FourHoledSphere, *v)
                              : kind == 1 ? PieceObject::wave(*v, detail::random_label(rng))
                                          : PieceObject::seam(*v, detail::random_label(rng));
        if (b == s || orbifold::intersection_number(s, b) != 0) continue;
        if (b.kind == ObjectKind::Seam && common_boundaries(s, b) > 1) {
            rep.count("excluded: two common boundaries");
            continue;
        }
        rep.count(std::string("b is a ") + orbifold::to_string(b.kind));
        rep.record(projection_distance(project(s), project(b), s.piece) <= 1, dump({s, b}));
    }
    return rep;
}

/// Elementary-move traces on a one-holed torus: a curve with an arc crossing
/// it once, or two arcs crossing once.
inline Configuration torus_move_fixture(std::mt19937_64& rng, std::int64_t h) {
    const auto slopes = slopes_up_to(h);
    for (;;) {
        const Slope u = detail::pick(rng, slopes);
        if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
            const Slope v = detail::pick(rng, farey::neighbors(u, h));
            return {PieceKind::OneHoledTorus,
                    {{PieceObject::curve(PieceKind::OneHoledTorus, u)}, {PieceObject::torus_arc(v)}}};
        }
        if (auto v = detail::at_determinant(rng, u, 2, h))
            return {PieceKind::OneHoledTorus, {{PieceObject::torus_arc(u)}, {PieceObject::torus_arc(*v)}}};
    }
}

/// Some boundary arc of a neighbourhood of the trace projects within distance
/// 1 of every arc or curve in it.
inline SuiteReport suite_prt(std::int64_t count, std::uint64_t seed, std::int64_t h = 10) {
    SuiteReport rep{"prt", 0, 0, {}, {}};
    std::mt19937_64 rng(seed);
    while (rep.checked < count) {
        const Configuration c = torus_move_fixture(rng, h);
        const auto objs = detail::objects(c);
        bool tight = orbifold::tightness_check(objs[0], objs[1]);
        const auto parts = orbifold::neighborhood_boundary(c, detail::all_members(c));
        const bool two_arcs = objs[0].is_arc() && objs[1].is_arc();
        if (two_arcs) rep.count("arc classes " + std::to_string(detail::essential_projections(parts).size()));
        rep.record(tight && detail::has_close_boundary(c, parts), dump(objs));
    }
    return rep;
}

/// Non-special elementary-move traces on a four-holed sphere: a curve with a
/// seam or a wave crossing it, or two seams crossing once.
inline Configuration sphere_move_fixture(std::mt19937_64& rng, std::int64_t h) {
    const auto slopes = slopes_up_to(h);
    constexpr auto kSphere = PieceKind::FourHoledSphere;
    for (;;) {
        const Slope u = detail::pick(rng, slopes);
        const int mode = std::uniform_int_distribution<int>(0, 2)(rng);
        if (mode == 0) {
            const Slope v = detail::pick(rng, farey::neighbors(u, h));
            return {kSphere, {{PieceObject::curve(kSphere, u)}, {PieceObject::seam(v, detail::random_label(rng))}}};
        }
        if (mode == 1) {
            const Slope v = detail::pick(rng, farey::neighbors(u, h));
            return {kSphere, {{PieceObject::curve(kSphere, u)}, {PieceObject::wave(v, detail::random_label(rng))}}};
        }
        const std::int64_t k = std::uniform_int_distribution<std::int64_t>(2, 4)(rng);
        if (auto v = detail::at_determinant(rng, u, k, h)) {
            const PieceObject s = PieceObject::seam(u, detail::random_label(rng));
            const PieceObject t = PieceObject::seam(*v, detail::random_label(rng));
            if (orbifold::intersection_number(s, t) == 1) return {kSphere, {{s}, {t}}};
        }
    }
}

/// Same shape as the torus suite, on the four-holed sphere.
inline SuiteReport suite_ml(std::int64_t count, std::uint64_t seed, std::int64_t h = 10) {
    SuiteReport rep{"ml", 0, 0, {}, {}};
    std::mt19937_64 rng(seed);
    while (rep.checked < count) {
        const Configuration c = sphere_move_fixture(rng, h);
        const auto objs = detail::objects(c);
        if (objs[0].kind == ObjectKind::Curve && objs[1].kind == ObjectKind::Seam && is_special_couple(objs[1], objs[0]))
            continue;
        const auto parts = orbifold::neighborhood_boundary(c, detail::all_members(c));
        rep.count(std::string(orbifold::to_string(objs[0].kind)) + "-" + orbifold::to_string(objs[1].kind));
        rep.record(orbifold::tightness_check(objs[0], objs[1]) && detail::has_close_boundary(c, parts), dump(objs));
    }
    return rep;
}

struct SpecialFixture {
    PieceObject seam;        // s, crossing beta twice
    PieceObject second;      // s', same labels, missing beta
    PieceObject beta;        // curve of the piece
};

/// A special couple (s, beta) together with the second seam s' of the same
/// trace: beta = v with |det(u, v)| = 2, s' the seam of slope v on s's labels.
inline std::optional<SpecialFixture> special_fixture(std::mt19937_64& rng, std::int64_t h) {
    const Slope u = detail::pick(rng, slopes_up_to(h));
    const auto v = detail::at_determinant(rng, u, 2, h);
    if (!v) return std::nullopt;
    const PieceObject s = PieceObject::seam(u, detail::random_label(rng));
    const PieceObject second = PieceObject::seam(*v, s.endpoints[0]);
    return SpecialFixture{s, second, PieceObject::curve(PieceKind::FourHoledSphere, *v)};
}

/// For a special couple with beta in the piece, beta is a projection of the
/// other strand's trace.
inline SuiteReport suite_sc(std::int64_t count, std::uint64_t seed, std::int64_t h = 10) {
    SuiteReport rep{"sc", 0, 0, {}, {}};
    std::mt19937_64 rng(seed);
    while (rep.checked < count) {
        const auto f = special_fixture(rng, h);
        if (!f) continue;
        const bool shape = is_special_couple(f->seam, f->beta) && f->second.endpoints == f->seam.endpoints &&
                           orbifold::intersection_number(f->second, f->beta) == 0 &&
                           orbifold::intersection_number(f->seam, f->second) == 0;
        const auto proj = project(std::vector<PieceObject>{f->seam, f->second});
        rep.record(shape && proj.count(f->beta.slope) > 0 &&
                       projection_distance(project(f->seam), f->beta.slope, PieceKind::FourHoledSphere) == 2,
                   dump({f->seam, f->second, f->beta}));
    }
    return rep;
}

}  // namespace pantsflat::pieces
