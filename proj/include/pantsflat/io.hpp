#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pantsflat/farey.hpp"
#include "pantsflat/flats.hpp"
#include "pantsflat/orbifold.hpp"
#include "pantsflat/pieces.hpp"
#include "pantsflat/shadows.hpp"

// JSON and DOT renderings. Slopes travel as "p/q" strings.
namespace pantsflat::io {

using nlohmann::json;
using orbifold::ObjectKind;
using orbifold::PieceKind;
using orbifold::PieceObject;

inline json to_json(const Slope& s) { return s.str(); }

inline Slope slope_from(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("slope must be a \"p/q\" string");
    return Slope::parse(j.get<std::string>());
}

/// Paths and product vertices are both slope sequences.
inline json to_json(const std::vector<Slope>& p) {
    json out = json::array();
    for (const auto& s : p) out.push_back(s.str());
    return out;
}

inline const char* piece_name(PieceKind k) { return k == PieceKind::OneHoledTorus ? "torus" : "sphere"; }

inline PieceKind piece_from(const json& j) {
    const auto name = j.get<std::string>();
    if (name == "torus") return PieceKind::OneHoledTorus;
    if (name == "sphere") return PieceKind::FourHoledSphere;
    throw std::invalid_argument("unknown piece kind '" + name + "' (torus or sphere)");
}

/// {"kind": "curve|arc|seam|wave", "slope": "p/q", "endpoints": [a, b]}; the
/// piece comes from the surrounding context.
inline json to_json(const PieceObject& a) {
    json out{{"slope", a.slope.str()}};
    if (a.kind == ObjectKind::Curve) out["kind"] = "curve";
    else if (a.piece == PieceKind::OneHoledTorus) out["kind"] = "arc";
    else {
        out["kind"] = a.kind == ObjectKind::Seam ? "seam" : "wave";
        out["endpoints"] = {a.endpoints[0], a.endpoints[1]};
    }
    return out;
}

inline PieceObject object_from(const json& j, PieceKind piece) {
    const auto kind = j.at("kind").get<std::string>();
    const Slope s = slope_from(j.at("slope"));
    if (kind == "curve") return PieceObject::curve(piece, s);
    if (kind == "arc") {
        if (piece != PieceKind::OneHoledTorus) throw std::invalid_argument("arcs of that kind live on the torus piece");
        return PieceObject::torus_arc(s);
    }
    if (kind != "seam" && kind != "wave") throw std::invalid_argument("unknown object kind '" + kind + "'");
    const auto ends = j.at("endpoints").get<std::vector<int>>();
    if (ends.size() != 2) throw std::invalid_argument("endpoints must be a pair of labels");
    PieceObject a{piece, kind == "seam" ? ObjectKind::Seam : ObjectKind::Wave, s, {ends[0], ends[1]}};
    a.validate();
    return a;
}

inline json to_json(const std::vector<PieceObject>& objs) {
    json out = json::array();
    for (const auto& a : objs) out.push_back(to_json(a));
    return out;
}

inline std::vector<PieceObject> objects_from(const json& j, PieceKind piece) {
    std::vector<PieceObject> out;
    for (const auto& x : j) out.push_back(object_from(x, piece));
    return out;
}

// Shadows ------------------------------------------------------------------

inline json to_json(const shadows::PathShadow& p) {
    json sys{{"genus", p.system.surface.genus},
             {"boundary", p.system.surface.boundary},
             {"pieces", json::array()},
             {"base", to_json(p.system.base)}};
    for (auto k : p.system.pieces) sys["pieces"].push_back(piece_name(k));
    json verts = json::array();
    for (const auto& v : p.vertices) {
        json traces = json::array();
        for (const auto& t : v.traces) traces.push_back(to_json(t));
        verts.push_back({{"in_pq", v.in_pq}, {"traces", traces}});
    }
    json moves = json::array();
    for (const auto& m : p.moves) {
        json ex = json::array();
        for (const auto& e : m.exchanges)
            ex.push_back({{"piece", e.piece}, {"before", to_json(e.before)}, {"after", to_json(e.after)}});
        moves.push_back({{"kind", shadows::to_string(m.kind)}, {"exchanges", ex}});
    }
    return {{"system", sys}, {"vertices", verts}, {"moves", moves}};
}

inline shadows::PathShadow path_from(const json& j) {
    const auto& sys = j.at("system");
    std::vector<PieceKind> kinds;
    for (const auto& k : sys.at("pieces")) kinds.push_back(piece_from(k));
    auto h = shadows::HandleSystem::with_pieces({sys.at("genus").get<std::int64_t>(), sys.value("boundary", std::int64_t{0})},
                                                kinds);
    if (sys.contains("base")) {
        h.base.clear();
        for (const auto& s : sys.at("base")) h.base.push_back(slope_from(s));
        h.validate();
    }
    shadows::PathShadow p{h, {}, {}};
    for (const auto& v : j.at("vertices")) {
        shadows::VertexShadow vs{{}, v.value("in_pq", false)};
        const auto& traces = v.at("traces");
        if (traces.size() != kinds.size()) throw std::invalid_argument("each vertex needs one trace per piece");
        for (std::size_t i = 0; i < kinds.size(); ++i) vs.traces.push_back(objects_from(traces[i], kinds[i]));
        p.vertices.push_back(vs);
    }
    for (const auto& m : j.value("moves", json::array())) {
        const auto kind = m.at("kind").get<std::string>();
        if (kind != "first" && kind != "second") throw std::invalid_argument("move kind must be first or second");
        shadows::Move mv{kind == "first" ? shadows::MoveKind::First : shadows::MoveKind::Second, {}};
        for (const auto& e : m.at("exchanges")) {
            const auto piece = e.at("piece").get<std::size_t>();
            if (piece >= kinds.size()) throw std::invalid_argument("exchange names a missing piece");
            mv.exchanges.push_back(
                {piece, objects_from(e.value("before", json::array()), kinds[piece]),
                 objects_from(e.value("after", json::array()), kinds[piece])});
        }
        p.moves.push_back(mv);
    }
    shadows::validate(p);
    return p;
}

// Reports ------------------------------------------------------------------

inline json to_json(const farey::GeodesicSet& g) {
    json paths = json::array();
    for (const auto& p : g.paths) paths.push_back(to_json(p));
    return {{"from", g.from.str()}, {"to", g.to.str()},           {"length", g.length},
            {"paths", paths},       {"truncated", g.truncated}, {"max_height", g.max_height}};
}

inline json to_json(const farey::Ball& b) {
    json verts = json::array();
    for (const auto& [s, d] : b.distances) verts.push_back({{"slope", s.str()}, {"distance", d}});
    json edges = json::array();
    for (const auto& [a, c] : b.graph.edges) edges.push_back({a.str(), c.str()});
    return {{"center", b.center.str()}, {"radius", b.radius}, {"max_height", b.max_height},
            {"vertices", verts},        {"edges", edges}};
}

inline json to_json(const farey::SubgraphVerdict& v) {
    json out{{"holds", v.holds}};
    if (v.witness_pair) out["witness_pair"] = {v.witness_pair->first.str(), v.witness_pair->second.str()};
    if (v.witness_path) out["witness_path"] = to_json(*v.witness_path);
    return out;
}

inline json to_json(const pieces::SuiteReport& r) {
    json tallies = json::object();
    for (const auto& [k, v] : r.tallies) tallies[k] = v;
    return {{"suite", r.name},        {"checked", r.checked}, {"passed", r.passed},
            {"pass", r.ok()},         {"tallies", tallies},   {"failures", r.failures}};
}

inline json to_json(const shadows::BoundAudit& a) {
    return {{"length", a.length},     {"best", a.best},       {"pass", a.pass},
            {"from", to_json(a.from)}, {"to", to_json(a.to)}, {"evidence", "instance"}};
}

inline json to_json(const shadows::SpecialCouple& s) {
    return {{"edge", s.edge}, {"piece", s.piece}, {"seam", to_json(s.seam)}, {"curve", to_json(s.curve)}};
}

inline json to_json(const shadows::LFEdge& e) {
    return {{"edge", e.edge},           {"piece", e.piece},       {"before_side", e.before_side},
            {"after_side", e.after_side}, {"repeated", e.repeated}, {"pass", e.pass}};
}

inline json to_json(const shadows::Figure2& f) {
    json specials = json::array();
    for (const auto& s : f.specials) specials.push_back(to_json(s));
    return {{"min_distance", f.min_distance}, {"all_distances", f.all_distances}, {"special_couples", specials},
            {"audit", to_json(f.audit)},       {"path", to_json(f.path)}};
}

inline json to_json(const flats::Template& t) {
    return {{"one_holed_tori", t.one_holed_tori},
            {"four_holed_spheres", t.four_holed_spheres},
            {"pants", t.has_pants},
            {"pieces", t.pieces()}};
}

inline json to_json(const flats::FlatCertificate& c) {
    json out{{"rank", c.rank}, {"window", c.window}, {"pairs_checked", c.pairs_checked}, {"pass", c.pass}};
    if (c.witness)
        out["witness"] = {{"x", c.witness->x}, {"y", c.witness->y}, {"distance", c.witness->distance},
                          {"gap", c.witness->gap}};
    return out;
}

inline json to_json(const flats::GeodesyReport& r) {
    json out{{"holds", r.holds}, {"pairs_checked", r.pairs_checked}, {"subgraph_size", r.subgraph_size}};
    if (r.witness)
        out["witness"] = {{"from", to_json(r.witness->from)},
                          {"to", to_json(r.witness->to)},
                          {"outside", to_json(r.witness->outside)},
                          {"length", r.witness->length}};
    return out;
}

inline json to_json(const flats::Line& g, std::int64_t verified_window) {
    json slopes = json::array();
    for (const auto& s : g.slopes) slopes.push_back(s.str());
    return {{"first_index", g.first}, {"slopes", slopes}, {"verified_window", verified_window}};
}

inline flats::Line line_from(const json& j) {
    flats::Line g{j.at("first_index").get<std::int64_t>(), {}};
    for (const auto& s : j.at("slopes")) g.slopes.push_back(slope_from(s));
    return g;
}

// DOT ----------------------------------------------------------------------

inline std::string to_dot(const farey::Subgraph& g, const std::string& name = "farey") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (const auto& s : g.vertices) out << "  \"" << s.str() << "\";\n";
    for (const auto& [a, b] : g.edges) out << "  \"" << a.str() << "\" -- \"" << b.str() << "\";\n";
    out << "}\n";
    return out.str();
}

/// Lattice window [-W, W]^n of a flat, nodes labelled by their image tuple.
inline std::string to_dot(const flats::LatticeEmbedding& e, std::int64_t window) {
    const std::size_t n = e.rank();
    std::vector<std::vector<std::int64_t>> points{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<std::int64_t>> grown;
        for (const auto& p : points)
            for (std::int64_t k = -window; k <= window; ++k) {
                auto q = p;
                q.push_back(k);
                grown.push_back(q);
            }
        points = grown;
    }
    auto name = [](const std::vector<std::int64_t>& x) {
        std::string s = "p";
        for (auto c : x) s += "_" + std::string(c < 0 ? "m" : "") + std::to_string(c < 0 ? -c : c);
        return s;
    };
    std::ostringstream out;
    out << "graph flat {\n";
    for (const auto& x : points) out << "  " << name(x) << " [label=\"" << flats::str(e.at(x)) << "\"];\n";
    for (const auto& x : points)
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] < window) {
                auto y = x;
                ++y[i];
                out << "  " << name(x) << " -- " << name(y) << ";\n";
            }
    out << "}\n";
    return out.str();
}

}  // namespace pantsflat::io
