#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pantsflat/pantsflat.hpp"

using namespace pantsflat;
using nlohmann::json;

namespace {

// Raised for bad input; maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "json";
    std::string output;
    bool no_timestamp = false;
};

struct Outcome {
    json report;
    bool pass = true;
    std::optional<std::string> dot;  // set when the command can draw itself
};

Slope parse_slope(const std::string& text) {
    try {
        return Slope::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("malformed slope '" + text + "': " + e.what() + " (\"p/q\" required)");
    }
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path output_path(const std::string& given) {
    std::filesystem::path p(given);
    if (p.is_relative())
        if (const char* dir = std::getenv("PANTSFLAT_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
}

int emit(const std::string& command, const Outcome& o, const Options& opt) {
    std::string body;
    if (opt.format == "dot") {
        if (!o.dot) throw UsageError("command '" + command + "' has no DOT rendering");
        body = *o.dot;
    } else {
        json env{{"command", command}, {"pass", o.pass}, {"result", o.report}};
        if (!opt.no_timestamp) env["generated_at"] = timestamp();
        if (opt.format == "json") body = env.dump(2) + "\n";
        else {
            std::ostringstream text;
            render_text(env, "", text);
            body = text.str();
        }
    }
    if (opt.output.empty()) std::cout << body;
    else {
        const auto path = output_path(opt.output);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path);
        if (!out) throw UsageError("cannot write " + path.string());
        out << body;
    }
    return o.pass ? 0 : 2;
}

json suite_json(const pieces::SuiteReport& r) { return io::to_json(r); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Farey graphs, complexity-one pieces and flats in the pants graph"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--output,-o", opt.output, "Write the report here (relative paths use $PANTSFLAT_OUTPUT_DIR)");
    app.add_flag("--no-timestamp", opt.no_timestamp, "Leave out the generated_at field");

    std::string command;
    std::function<Outcome()> run;

    // farey ------------------------------------------------------------------
    auto* farey_cmd = app.add_subcommand("farey", "Farey graph queries");
    farey_cmd->require_subcommand(1);
    std::string a_text, b_text, center_text = "0/1", file;
    std::int64_t height = 0;
    int radius = 2;

    auto* dist_cmd = farey_cmd->add_subcommand("distance", "Distance between two slopes");
    dist_cmd->add_option("a", a_text)->required();
    dist_cmd->add_option("b", b_text)->required();
    dist_cmd->callback([&] {
        command = "farey distance";
        run = [&] {
            const Slope a = parse_slope(a_text), b = parse_slope(b_text);
            return Outcome{{{"a", a.str()}, {"b", b.str()}, {"distance", farey::distance(a, b)}}, true, std::nullopt};
        };
    });

    auto* geo_cmd = farey_cmd->add_subcommand("geodesics", "All geodesics among slopes of bounded height");
    geo_cmd->add_option("a", a_text)->required();
    geo_cmd->add_option("b", b_text)->required();
    geo_cmd->add_option("--height", height, "Height bound")->required()->check(CLI::PositiveNumber);
    geo_cmd->callback([&] {
        command = "farey geodesics";
        run = [&] {
            const Slope a = parse_slope(a_text), b = parse_slope(b_text);
            if (std::max(a.height(), b.height()) > height) throw UsageError("endpoints exceed the height bound");
            const auto g = farey::geodesics(a, b, height);
            const bool ok = g.length == farey::distance(a, b);
            return Outcome{io::to_json(g), ok, std::nullopt};
        };
    });

    auto* ball_cmd = farey_cmd->add_subcommand("ball", "Height-truncated ball");
    ball_cmd->add_option("center", center_text)->required();
    ball_cmd->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
    ball_cmd->add_option("--height", height)->required()->check(CLI::PositiveNumber);
    ball_cmd->callback([&] {
        command = "farey ball";
        run = [&] {
            const Slope c = parse_slope(center_text);
            if (c.height() > height) throw UsageError("centre exceeds the height bound");
            const auto ball = farey::make_ball(c, radius, height);
            return Outcome{io::to_json(ball), true, io::to_dot(ball.graph, "ball")};
        };
    });

    int ball_radius = 3;
    std::int64_t check_height = 0;
    auto* sub_cmd = farey_cmd->add_subcommand("check-subgraph", "Convexity and total geodesy of a subgraph");
    sub_cmd->add_option("file", file, "Subgraph JSON")->required();
    sub_cmd->add_option("--ball-radius", ball_radius)->check(CLI::NonNegativeNumber);
    sub_cmd->add_option("--height", check_height, "Height bound (default from the file, else 4)");
    sub_cmd->callback([&] {
        command = "farey check-subgraph";
        run = [&] {
            const json j = read_json(file);
            const Slope c = parse_slope(j.value("center", std::string("0/1")));
            const std::int64_t h = check_height > 0 ? check_height : j.value("height", std::int64_t{4});
            const auto ball = farey::make_ball(c, ball_radius, h);
            farey::Subgraph sub;
            if (j.contains("interval")) {
                const auto& iv = j.at("interval");
                sub = farey::interval_subgraph(ball, parse_slope(iv.at(0).get<std::string>()),
                                               parse_slope(iv.at(1).get<std::string>()));
            } else {
                std::set<Slope> verts;
                for (const auto& s : j.at("vertices")) verts.insert(parse_slope(s.get<std::string>()));
                sub = farey::Subgraph::induced(verts);
            }
            farey::SubgraphVerdict tg, cv;
            try {
                tg = farey::is_totally_geodesic(sub, ball);
                cv = farey::is_convex(sub, ball);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            json vs = json::array();
            for (const auto& s : sub.vertices) vs.push_back(s.str());
            json r{{"center", c.str()},        {"ball_radius", ball_radius},          {"height", h},
                   {"vertices", vs},           {"totally_geodesic", io::to_json(tg)}, {"convex", io::to_json(cv)}};
            return Outcome{r, tg.holds && cv.holds, io::to_dot(sub.vertices.empty() ? ball.graph : sub, "subgraph")};
        };
    });

    // lemmas -----------------------------------------------------------------
    auto* lemmas_cmd = app.add_subcommand("lemmas", "Lemma sweeps and instance suites");
    std::string suite;
    std::int64_t lemma_height = 8, count = 500;
    std::uint64_t seed = 1;
    lemmas_cmd->add_option("suite", suite)->required()->check(CLI::IsMember({"int", "lk", "prs", "prt", "ml", "sc"}));
    lemmas_cmd->add_option("--height", lemma_height, "Height bound")->check(CLI::NonNegativeNumber);
    lemmas_cmd->add_option("--count", count, "Fixtures for the generated suites")->check(CLI::PositiveNumber);
    lemmas_cmd->add_option("--seed", seed, "Generator seed");
    lemmas_cmd->callback([&] {
        command = "lemmas " + suite;
        run = [&] {
            pieces::SuiteReport r;
            if (suite == "int") r = pieces::sweep_int(lemma_height);
            else if (suite == "lk") r = pieces::sweep_lk(lemma_height);
            else {
                if (lemma_height < 2) throw UsageError("generated suites need --height of at least 2");
                if (suite == "prs") r = pieces::suite_prs(count, seed, lemma_height);
                else if (suite == "prt") r = pieces::suite_prt(count, seed, lemma_height);
                else if (suite == "ml") r = pieces::suite_ml(count, seed, lemma_height);
                else r = pieces::suite_sc(count, seed, lemma_height);
            }
            json j = suite_json(r);
            j["height"] = lemma_height;
            if (suite != "int" && suite != "lk") j["seed"] = seed;
            return Outcome{j, r.ok(), std::nullopt};
        };
    });

    // scenario ---------------------------------------------------------------
    auto* scen_cmd = app.add_subcommand("scenario", "Projection scenarios and audits");
    scen_cmd->require_subcommand(1);
    bool drop_second = false, control = false;
    auto* fig_cmd = scen_cmd->add_subcommand("figure2", "Two-piece special-couple example");
    fig_cmd->add_flag("--without-second-trace", drop_second, "Leave the second piece empty");
    fig_cmd->add_flag("--control", control, "Use a curve missing the seam instead");
    fig_cmd->callback([&] {
        command = "scenario figure2";
        run = [&] {
            const auto f = shadows::figure2_scenario(!drop_second, control);
            json j = io::to_json(f);
            j["expected_min_distance"] = control ? "at most 1" : "2";
            j["note"] = control ? "control case" : "expected non-contractive projection example";
            return Outcome{j, control ? f.min_distance <= 1 : f.min_distance == 2, std::nullopt};
        };
    });

    std::int64_t orth_count = 200;
    auto* orth_cmd = scen_cmd->add_subcommand("orthogonality", "Random adjacent pairs leaving P_Q");
    orth_cmd->add_option("--count", orth_count)->check(CLI::PositiveNumber);
    orth_cmd->add_option("--seed", seed);
    orth_cmd->callback([&] {
        command = "scenario orthogonality";
        run = [&] {
            std::mt19937_64 rng(seed);
            std::int64_t passed = 0, missed_all = 0;
            json failures = json::array();
            for (std::int64_t i = 0; i < orth_count; ++i) {
                const auto f = shadows::orthogonality_fixture(rng);
                missed_all += f.move.exchanges.empty();
                if (shadows::orthogonality_check(f.v0, f.v1, f.move, f.system)) ++passed;
                else if (failures.size() < 10)
                    failures.push_back(io::to_json(shadows::PathShadow{f.system, {f.v0, f.v1}, {f.move}}));
            }
            json j{{"checked", orth_count}, {"passed", passed}, {"beta_missed_every_piece", missed_all},
                   {"seed", seed},          {"failures", failures}};
            return Outcome{j, passed == orth_count, std::nullopt};
        };
    });

    auto* audit_cmd = scen_cmd->add_subcommand("audit", "Projection bound on a path shadow file");
    audit_cmd->add_option("file", file)->required();
    audit_cmd->callback([&] {
        command = "scenario audit";
        run = [&] {
            shadows::PathShadow p;
            try {
                p = io::path_from(read_json(file));
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception& e) {
                throw UsageError(file + ": " + e.what());
            }
            const auto a = shadows::audit_projection_bound(p);
            json specials = json::array(), lf = json::array();
            for (const auto& s : shadows::detect_special_couples(p)) specials.push_back(io::to_json(s));
            for (const auto& e : shadows::lemma_LF_probe(p)) lf.push_back(io::to_json(e));
            json j{{"audit", io::to_json(a)}, {"special_couples", specials}, {"lf_probe", lf}};
            return Outcome{j, a.pass, std::nullopt};
        };
    });

    // flats ------------------------------------------------------------------
    auto* flats_cmd = app.add_subcommand("flats", "Rank arithmetic and lattice flats");
    flats_cmd->require_subcommand(1);
    std::size_t rank_n = 2;
    std::int64_t window = 3, genus = 0, boundary = 0;
    auto* cert_cmd = flats_cmd->add_subcommand("certify", "Check a Z^n window of the default flat");
    cert_cmd->add_option("--n", rank_n)->check(CLI::Range(1, 4));
    cert_cmd->add_option("--window", window)->check(CLI::Range(1, 6));
    cert_cmd->callback([&] {
        command = "flats certify";
        run = [&] {
            const auto e = flats::default_embedding(rank_n, window);
            const auto c = flats::certify_flat(e, window);
            json lines = json::array();
            for (const auto& g : e.lines) lines.push_back(io::to_json(g, window));
            json j = io::to_json(c);
            j["lines"] = lines;
            return Outcome{j, c.pass, std::nullopt};
        };
    });

    auto* rank_cmd = flats_cmd->add_subcommand("rank", "Handle bound and template for a surface");
    rank_cmd->add_option("--genus", genus)->required()->check(CLI::NonNegativeNumber);
    rank_cmd->add_option("--boundary", boundary)->required()->check(CLI::NonNegativeNumber);
    rank_cmd->callback([&] {
        command = "flats rank";
        run = [&] {
            const flats::SurfaceDesc s{genus, boundary};
            try {
                s.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto top = flats::max_handles(s);
            json j{{"genus", genus},
                   {"boundary", boundary},
                   {"complexity", s.complexity()},
                   {"max_handles", top},
                   {"template", io::to_json(flats::decompose_template(s))},
                   {"handle_multicurve", top >= 2}};
            if (top < 2) j["note"] = "no n-handle multicurve; a single Farey factor";
            return Outcome{j, true, std::nullopt};
        };
    });

    auto* export_cmd = flats_cmd->add_subcommand("export", "Default flat on a window (JSON lines or DOT)");
    export_cmd->add_option("--n", rank_n)->check(CLI::Range(1, 3));
    export_cmd->add_option("--window", window)->check(CLI::Range(1, 6));
    export_cmd->callback([&] {
        command = "flats export";
        run = [&] {
            const auto e = flats::default_embedding(rank_n, window);
            json lines = json::array();
            for (const auto& g : e.lines) lines.push_back(io::to_json(g, window));
            return Outcome{{{"rank", rank_n}, {"window", window}, {"lines", lines}}, true, io::to_dot(e, window)};
        };
    });

    int sub_radius = 3;
    std::size_t sub_k = 1;
    auto* subprod_cmd = flats_cmd->add_subcommand("subproduct", "Total geodesy of a factor subgraph in a product ball");
    subprod_cmd->add_option("--n", rank_n)->check(CLI::Range(1, 3));
    subprod_cmd->add_option("--k", sub_k)->check(CLI::Range(1, 3));
    subprod_cmd->add_option("--radius", sub_radius)->check(CLI::Range(1, 4));
    subprod_cmd->add_option("--height", height)->check(CLI::Range(1, 8));
    subprod_cmd->callback([&] {
        command = "flats subproduct";
        run = [&] {
            if (sub_k > rank_n) throw UsageError("--k cannot exceed --n");
            const flats::ProductBall ball(flats::ProductVertex(rank_n, Slope::integer(0)), sub_radius,
                                          height > 0 ? height : 5);
            const auto r = flats::subproduct_total_geodesy(ball, sub_k);
            json j = io::to_json(r);
            j["ball_size"] = ball.size();
            return Outcome{j, r.holds, std::nullopt};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        return emit(command, run(), opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
