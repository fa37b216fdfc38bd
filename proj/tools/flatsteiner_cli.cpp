// flatsteiner: minimal spanning trees, Steiner minimal trees, and Steiner
// ratios on the plane, on flat cones, and on disphenoid surfaces.
//
// Every run prints one JSON document to stdout that echoes the fully
// resolved job before the result, so a report can be reproduced exactly.
// Exit codes: 0 success, 1 validation error, 2 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatsteiner/json_io.hpp"
#include "flatsteiner/ratio.hpp"
#include "flatsteiner/svg.hpp"

using namespace flatsteiner;
using nlohmann::json;

namespace {

Space parse_space_string(const std::string& text) {
    json j;
    if (text == "plane") {
        j = {{"kind", "plane"}};
    } else if (text.rfind("cone:", 0) == 0) {
        const std::string angle = text.substr(5);
        if (angle.rfind("2pi/", 0) == 0)
            j = {{"kind", "cone"}, {"total_angle", angle}};
        else
            j = {{"kind", "cone"}, {"total_angle", std::strtod(angle.c_str(), nullptr)}};
    } else if (text.rfind("disphenoid:", 0) == 0) {
        json sides = json::array();
        std::stringstream ss(text.substr(11));
        std::string item;
        while (std::getline(ss, item, ','))
            sides.push_back(std::strtod(item.c_str(), nullptr));
        j = {{"kind", "disphenoid"}, {"sides", sides}};
    } else {
        throw std::invalid_argument(
            "space: expected plane, cone:<angle>, cone:2pi/<k>, or disphenoid:a,b,c");
    }
    return space_from_json(j);
}

struct CommonInputs {
    std::string space_text;
    std::string points_text;
    std::string input_path;

    // Resolves --input / --space / --points into a space and point list.
    std::pair<Space, std::vector<SurfacePoint>> resolve(bool need_points) const {
        json space_json, points_json;
        if (!input_path.empty()) {
            std::ifstream in(input_path);
            if (!in) throw std::invalid_argument("input: cannot open " + input_path);
            json doc = json::parse(in);
            if (!doc.contains("space"))
                throw std::invalid_argument("input: missing \"space\"");
            space_json = doc.at("space");
            if (doc.contains("points")) points_json = doc.at("points");
        }
        std::optional<Space> space;
        if (!space_text.empty())
            space = parse_space_string(space_text);
        else if (!space_json.is_null())
            space = space_from_json(space_json);
        else
            throw std::invalid_argument("space: missing (--space or --input)");
        std::vector<SurfacePoint> points;
        if (!points_text.empty())
            points = points_from_json(*space, json::parse(points_text));
        else if (!points_json.is_null())
            points = points_from_json(*space, points_json);
        else if (need_points)
            throw std::invalid_argument("points: missing (--points or --input)");
        return {*space, points};
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FLATSTEINER_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

json points_json_echo(const std::vector<SurfacePoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(point_to_json(p));
    return arr;
}

void emit(const json& jobspec, const json& result) {
    json doc{{"jobspec", jobspec}, {"result", result}};
    std::cout << doc.dump(2) << "\n";
}

void write_svg(const std::string& path, const Space& space, const Tree& tree) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("svg: cannot open " + path);
    render_tree_svg(out, space, tree);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner trees and Steiner ratios on flat surfaces"};
    app.require_subcommand(1);

    CommonInputs inputs;
    double tol = 1e-10;
    std::uint64_t seed = default_seed();
    int restarts = 100;
    int samples = 1000;
    int n_terminals = 3;
    std::string svg_path;
    std::string what = "all";
    bool no_search = false;

    auto add_common = [&](CLI::App* cmd, bool with_points) {
        cmd->add_option("--space", inputs.space_text,
                        "plane | cone:<angle> | cone:2pi/<k> | disphenoid:a,b,c");
        if (with_points)
            cmd->add_option("--points", inputs.points_text, "inline JSON point array");
        cmd->add_option("--input", inputs.input_path, "JSON file with {space, points}");
    };

    auto* dist_cmd = app.add_subcommand("dist", "geodesic distance between two points");
    add_common(dist_cmd, true);

    auto* mst_cmd = app.add_subcommand("mst", "minimal spanning tree");
    add_common(mst_cmd, true);
    mst_cmd->add_option("--svg", svg_path, "write the tree as SVG");

    auto* smt_cmd = app.add_subcommand("smt", "Steiner minimal tree");
    add_common(smt_cmd, true);
    smt_cmd->add_option("--tol", tol, "solver tolerance");
    smt_cmd->add_option("--svg", svg_path, "write the tree as SVG");

    auto* sr_cmd = app.add_subcommand("sr", "Steiner ratio of a configuration");
    add_common(sr_cmd, true);
    sr_cmd->add_option("--tol", tol, "solver tolerance");
    sr_cmd->add_option("--svg", svg_path, "write the tree as SVG");

    auto* search_cmd = app.add_subcommand("search", "randomized search for low ratios");
    add_common(search_cmd, false);
    search_cmd->add_option("--points", inputs.points_text,
                           "configuration to include as a seeded restart");
    search_cmd->add_option("--n", n_terminals, "terminal count")->check(CLI::Range(3, 7));
    search_cmd->add_option("--restarts", restarts, "restart budget");
    search_cmd->add_option("--seed", seed, "RNG seed (default: $FLATSTEINER_SEED or 0)");
    search_cmd->add_option("--tol", tol, "solver tolerance");
    search_cmd->add_option("--svg", svg_path, "write the best tree as SVG");

    auto* verify_cmd = app.add_subcommand("verify", "covering and theorem property suites");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--samples", samples, "samples per property");
    verify_cmd->add_option("--seed", seed, "RNG seed (default: $FLATSTEINER_SEED or 0)");
    verify_cmd->add_option("--what", what, "covering | theorem | all")
        ->check(CLI::IsMember({"covering", "theorem", "all"}));

    auto* repro_cmd = app.add_subcommand("repro", "reproduce the worked examples");
    repro_cmd->add_option("--restarts", restarts, "search restarts for the ratio floors");
    repro_cmd->add_option("--seed", seed, "RNG seed (default: $FLATSTEINER_SEED or 0)");
    repro_cmd->add_flag("--no-search", no_search, "skip the search floors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dist_cmd->parsed()) {
            auto [space, points] = inputs.resolve(true);
            if (points.size() != 2)
                throw std::invalid_argument("points: dist needs exactly 2 points");
            json jobspec{{"command", "dist"},
                         {"space", space_to_json(space)},
                         {"points", points_json_echo(points)}};
            emit(jobspec, {{"distance", round_length(space.distance(points[0], points[1]))}});
        } else if (mst_cmd->parsed()) {
            auto [space, points] = inputs.resolve(true);
            const Tree tree = mst(space, points);
            json jobspec{{"command", "mst"},
                         {"space", space_to_json(space)},
                         {"points", points_json_echo(points)},
                         {"svg", svg_path.empty() ? json() : json(svg_path)}};
            if (!svg_path.empty()) write_svg(svg_path, space, tree);
            emit(jobspec, {{"tree", tree_to_json(tree)},
                           {"length", round_length(tree.total_length)}});
        } else if (smt_cmd->parsed() || sr_cmd->parsed()) {
            auto [space, points] = inputs.resolve(true);
            const auto report = steiner_ratio(space, points, tol);
            json jobspec{{"command", smt_cmd->parsed() ? "smt" : "sr"},
                         {"space", space_to_json(space)},
                         {"points", points_json_echo(points)},
                         {"tol", tol},
                         {"svg", svg_path.empty() ? json() : json(svg_path)}};
            if (!svg_path.empty()) {
                if (!report.tree)
                    throw std::invalid_argument("svg: no tree to render (bound-only smt)");
                write_svg(svg_path, space, *report.tree);
            }
            emit(jobspec, ratio_report_to_json(report, false));
        } else if (search_cmd->parsed()) {
            auto [space, points] = inputs.resolve(false);
            SearchOptions options;
            options.restarts = restarts;
            options.seed = seed;
            options.tol = tol;
            if (!points.empty()) options.seeded_starts.push_back(points);
            const auto report = search_inf(space, n_terminals, options);
            json jobspec{{"command", "search"},
                         {"space", space_to_json(space)},
                         {"n", n_terminals},
                         {"restarts", restarts},
                         {"seed", seed},
                         {"tol", tol},
                         {"svg", svg_path.empty() ? json() : json(svg_path)}};
            if (!points.empty()) jobspec["seeded_points"] = points_json_echo(points);
            if (!svg_path.empty() && report.tree) write_svg(svg_path, space, *report.tree);
            emit(jobspec, ratio_report_to_json(report, true));
        } else if (verify_cmd->parsed()) {
            auto [space, points] = inputs.resolve(false);
            const auto cover = CoveringMap::over(space);
            json jobspec{{"command", "verify"},
                         {"space", space_to_json(space)},
                         {"samples", samples},
                         {"seed", seed},
                         {"what", what}};
            json result;
            bool passed = true;
            if (what == "covering" || what == "all") {
                const auto report = verify_covering(cover, samples, seed);
                result["covering"] = covering_report_to_json(report);
                passed = passed && report.passed;
            }
            if (what == "theorem" || what == "all") {
                const auto report = verify_theorem(cover, samples, seed);
                result["theorem"] = theorem_report_to_json(report);
                passed = passed && report.passed;
            }
            result["passed"] = passed;
            emit(jobspec, result);
            if (!passed) return 2;
        } else if (repro_cmd->parsed()) {
            ReproOptions options;
            options.include_search = !no_search;
            options.search_restarts = restarts;
            options.seed = seed;
            json jobspec{{"command", "repro"},
                         {"restarts", restarts},
                         {"seed", seed},
                         {"search", !no_search}};
            const auto report = repro(options);
            emit(jobspec, repro_report_to_json(report));
            if (!report.all_passed) return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
