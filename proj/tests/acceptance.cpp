// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails. Argument: the fixtures directory.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "pantsflat/pantsflat.hpp"

using namespace pantsflat;
using orbifold::PieceKind;
using orbifold::PieceObject;

namespace {

std::filesystem::path fixtures;

nlohmann::json load(const std::string& name) {
    std::ifstream in(fixtures / name);
    if (!in) throw std::runtime_error("missing fixture " + (fixtures / name).string());
    return nlohmann::json::parse(in);
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Check()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
        c = body();
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << " [" << id << "] " << title;
    if (!c.detail.empty()) std::cout << " -- " << c.detail;
    std::cout << " (" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << "s)" << std::endl;
    failures += !c.ok;
}

void report_suite(Check& c, const pieces::SuiteReport& r, std::int64_t at_least) {
    std::string tallies;
    for (const auto& [k, v] : r.tallies) tallies += " " + k + "=" + std::to_string(v);
    c.require(r.checked >= at_least, r.name + ": only " + std::to_string(r.checked) + " instances");
    c.require(r.ok(), r.name + ": " + std::to_string(r.checked - r.passed) + " violations, first: " +
                          (r.failures.empty() ? "" : r.failures.front()));
    if (c.ok) c.detail += (c.detail.empty() ? "" : "; ") + r.name + " " + std::to_string(r.passed) + "/" +
                          std::to_string(r.checked) + tallies;
    for (const auto& f : r.failures) std::cout << "  violation in " << r.name << ": " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    fixtures = argc > 1 ? argv[1] : "tests/fixtures";

    criterion(1, "closed-form Farey distance equals BFS oracle, heights <= 30", [] {
        Check c;
        const farey::HeightGraph small(30), oracle(60), wide(120);
        std::int64_t pairs = 0, mismatches = 0;
        for (int i = 0; i < static_cast<int>(small.size()); ++i) {
            const Slope& a = small.vertex(i);
            const auto d60 = oracle.bfs(*oracle.index_of(a));
            const auto d120 = wide.bfs(*wide.index_of(a));
            for (int j = 0; j < static_cast<int>(small.size()); ++j) {
                const Slope& b = small.vertex(j);
                const int closed = farey::distance(a, b);
                const int o60 = d60[static_cast<std::size_t>(*oracle.index_of(b))];
                const int o120 = d120[static_cast<std::size_t>(*wide.index_of(b))];
                ++pairs;
                if (closed != o60 || o60 != o120) {
                    if (mismatches++ == 0)
                        c.require(false, a.str() + " " + b.str() + ": closed " + std::to_string(closed) + ", oracle " +
                                             std::to_string(o60) + "/" + std::to_string(o120));
                }
            }
        }
        if (c.ok) c.detail = std::to_string(pairs) + " ordered pairs, 0 mismatches";
        return c;
    });

    criterion(2, "[-1,1] interval is convex but not totally geodesic", [] {
        Check c;
        const auto j = load("interval.json");
        const auto ball = farey::make_ball(Slope::parse(j.at("center").get<std::string>()), 3, j.at("height").get<int>());
        const auto sub = farey::interval_subgraph(ball, Slope::parse(j.at("interval")[0].get<std::string>()),
                                                  Slope::parse(j.at("interval")[1].get<std::string>()));
        const auto cv = farey::is_convex(sub, ball);
        const auto tg = farey::is_totally_geodesic(sub, ball);
        c.require(cv.holds, "interval is not convex");
        c.require(!tg.holds, "interval is totally geodesic");
        const farey::Path expect{Slope(-1, 1), Slope::infinity(), Slope(1, 1)};
        c.require(tg.witness_path && *tg.witness_path == expect, "unexpected witness geodesic");
        if (c.ok) c.detail = "witness (-1/1, 1/0, 1/1)";
        return c;
    });

    criterion(3, "curve intersection laws, heights <= 12", [] {
        Check c;
        const auto slopes = pieces::slopes_up_to(12);
        std::int64_t pairs = 0;
        for (const Slope& a : slopes)
            for (const Slope& b : slopes) {
                if (!(a < b)) continue;
                const auto d = abs_determinant(a, b);
                const auto t = orbifold::intersection_number(PieceObject::curve(PieceKind::OneHoledTorus, a),
                                                             PieceObject::curve(PieceKind::OneHoledTorus, b));
                const auto s = orbifold::intersection_number(PieceObject::curve(PieceKind::FourHoledSphere, a),
                                                             PieceObject::curve(PieceKind::FourHoledSphere, b));
                c.require(t == d, "torus " + a.str() + " " + b.str());
                c.require(s == 2 * d, "sphere " + a.str() + " " + b.str());
                ++pairs;
            }
        if (c.ok) c.detail = std::to_string(pairs) + " pairs per piece kind, 0 exceptions";
        return c;
    });

    criterion(4, "seam projection identities, heights <= 10", [] {
        Check c;
        report_suite(c, pieces::sweep_int(10), 1);
        return c;
    });

    criterion(5, "endpoint linking of distinct torus arcs, heights <= 12", [] {
        Check c;
        report_suite(c, pieces::sweep_lk(12), 1);
        return c;
    });

    criterion(6, "disjoint seam, torus, sphere and second-seam suites (500 each, seed 2024)", [] {
        Check c;
        constexpr std::uint64_t seed = 2024;
        report_suite(c, pieces::suite_prs(500, seed), 500);
        report_suite(c, pieces::suite_prt(500, seed), 500);
        report_suite(c, pieces::suite_ml(500, seed), 500);
        report_suite(c, pieces::suite_sc(500, seed), 500);
        return c;
    });

    criterion(7, "two-piece special couple example has projection distance exactly 2", [] {
        Check c;
        const auto f = shadows::figure2_scenario();
        c.require(f.min_distance == 2, "min distance " + std::to_string(f.min_distance));
        c.require(f.all_distances.front() >= 2, "a choice below 2");
        c.require(f.specials.size() == 1, "special couple not detected");
        c.require(shadows::figure2_scenario(false).min_distance == 2, "second piece matters");
        c.require(shadows::figure2_scenario(true, true).min_distance <= 1, "control case above 1");
        const auto from_file = shadows::summarize(io::path_from(load("figure2_path.json")));
        c.require(from_file.min_distance == 2, "fixture disagrees");
        if (c.ok) c.detail = "min 2 over " + std::to_string(f.all_distances.size()) + " choices; control <= 1";
        return c;
    });

    criterion(8, "orthogonality on 200 seeded pairs leaving P_Q", [] {
        Check c;
        std::mt19937_64 rng(8);
        int good = 0;
        for (int i = 0; i < 200; ++i) {
            const auto f = shadows::orthogonality_fixture(rng);
            if (shadows::orthogonality_check(f.v0, f.v1, f.move, f.system)) ++good;
            else c.require(false, "fixture " + std::to_string(i) + ": " + io::to_json(f.v1.traces.front()).dump());
        }
        if (c.ok) c.detail = std::to_string(good) + "/200";
        return c;
    });

    criterion(9, "projection bound on generated path shadows (length <= 8, 2-3 pieces)", [] {
        Check c;
        std::mt19937_64 rng(9);
        int paths = 0, specials = 0;
        for (int i = 0; i < 400; ++i) {
            const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
            const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
            const auto p = shadows::random_path(rng, len, n);
            const auto a = shadows::audit_projection_bound(p);
            c.require(a.pass, "path " + std::to_string(i) + ": best " + std::to_string(a.best) + " > " +
                                  std::to_string(a.length) + "\n" + io::to_json(p).dump());
            specials += static_cast<int>(shadows::detect_special_couples(p).size());
            ++paths;
        }
        const auto fixture = shadows::audit_projection_bound(io::path_from(load("path_shadow.json")));
        c.require(fixture.pass, "shipped path shadow fails the bound");
        const auto fig = shadows::figure2_scenario();
        c.require(!fig.audit.pass && fig.audit.best == 2 && fig.audit.length == 1,
                  "figure-2 edge not reported as non-contractive");
        if (c.ok)
            c.detail = std::to_string(paths) + " paths, " + std::to_string(specials) +
                       " special edges; single special edge reported with best 2 > 1 as expected";
        return c;
    });

    criterion(10, "flats: windows [-5,5]^n for n = 1..3, factor sub-products, genus-7 rank", [] {
        Check c;
        const auto shipped = io::line_from(load("geodesic.json"));
        const auto searched = flats::search_geodesic(6);
        c.require(shipped.first == searched.first && shipped.slopes == searched.slopes,
                  "shipped geodesic differs from the search");
        c.require(!flats::geodesic_defect(shipped, shipped.first, shipped.last()), "shipped line is not geodesic");
        std::int64_t pairs = 0;
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto cert = flats::certify_flat(flats::embedding_from(shipped, n), 5);
            c.require(cert.pass, "certificate fails for n = " + std::to_string(n));
            pairs += cert.pairs_checked;
        }
        std::int64_t geo_pairs = 0;
        for (const auto& center : std::vector<flats::ProductVertex>{{Slope(0, 1), Slope(0, 1)},
                                                                    {Slope(1, 0), Slope(2, 3)},
                                                                    {Slope(-1, 2), Slope(1, 1)}}) {
            const flats::ProductBall ball(center, 3, 5);
            const auto r = flats::subproduct_total_geodesy(ball, 1);
            c.require(r.holds, "factor subgraph not totally geodesic at " + flats::str(center));
            geo_pairs += r.pairs_checked;
        }
        const auto diag = flats::diagonal_control(flats::ProductBall({Slope(0, 1), Slope(0, 1)}, 3, 5));
        c.require(!diag.holds, "diagonal control passed");
        c.require(flats::max_handles({7, 0}) == 9 && flats::decompose_template({7, 0}).pieces() == 9,
                  "genus-7 rank arithmetic");
        if (c.ok)
            c.detail = std::to_string(pairs) + " lattice pairs, " + std::to_string(geo_pairs) +
                       " sub-product pairs; diagonal control fails; genus 7 gives 9";
        return c;
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
