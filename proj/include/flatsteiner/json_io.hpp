#pragma once

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatsteiner/covering.hpp"
#include "flatsteiner/ratio.hpp"
#include "flatsteiner/space.hpp"
#include "flatsteiner/tree.hpp"

namespace flatsteiner {

using nlohmann::json;

// Reports carry lengths with 9 significant digits and ratios with 7: below
// solver tolerance, above noise, and stable for byte-identical re-runs.
inline double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

inline double round_length(double x) { return round_sig(x, 9); }
inline double round_ratio(double x) { return round_sig(x, 7); }

// ---------------------------------------------------------------------------
// Space
// ---------------------------------------------------------------------------

inline json space_to_json(const Space& space) {
    switch (space.kind()) {
        case SpaceKind::Plane: return {{"kind", "plane"}};
        case SpaceKind::Cone:
            if (space.cover_sheets())
                return {{"kind", "cone"},
                        {"total_angle", "2pi/" + std::to_string(*space.cover_sheets())}};
            return {{"kind", "cone"}, {"total_angle", space.total_angle()}};
        case SpaceKind::Disphenoid:
            return {{"kind", "disphenoid"},
                    {"sides",
                     {space.geometry().side_a(), space.geometry().side_b(),
                      space.geometry().side_c()}}};
    }
    throw std::logic_error("unreachable");
}

// Accepts an angle as a number or as the token "2pi/k" with integer k; the
// token form selects the exact-covering pathway (a floating angle cannot
// reliably be recognized as 2*pi/k).
inline Space space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("space: expected an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "plane") return Space::plane();
    if (kind == "cone") {
        if (!j.contains("total_angle"))
            throw std::invalid_argument("space: cone needs \"total_angle\"");
        const auto& angle = j.at("total_angle");
        if (angle.is_string()) {
            const std::string s = angle.get<std::string>();
            if (s.rfind("2pi/", 0) != 0)
                throw std::invalid_argument(
                    "space: cone total_angle string must look like \"2pi/k\"");
            const int k = std::atoi(s.c_str() + 4);
            if (k < 1) throw std::invalid_argument("space: invalid k in \"2pi/k\"");
            return Space::cone_sheets(k);
        }
        return Space::cone(angle.get<double>());
    }
    if (kind == "disphenoid") {
        if (!j.contains("sides") || !j.at("sides").is_array() || j.at("sides").size() != 3)
            throw std::invalid_argument("space: disphenoid needs \"sides\" [a,b,c]");
        return Space::disphenoid(j.at("sides")[0].get<double>(),
                                 j.at("sides")[1].get<double>(),
                                 j.at("sides")[2].get<double>());
    }
    throw std::invalid_argument("space: unknown kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

inline json point_to_json(const SurfacePoint& p) {
    switch (p.kind) {
        case SpaceKind::Plane: return json::array({p.x(), p.y()});
        case SpaceKind::Cone: return json::array({p.r(), p.phi()});
        case SpaceKind::Disphenoid:
            return {{"face", p.face}, {"bary", {p.c0, p.c1, p.c2}}};
    }
    throw std::logic_error("unreachable");
}

inline SurfacePoint point_from_json(const Space& space, const json& j) {
    if (space.kind() == SpaceKind::Disphenoid) {
        if (!j.is_object() || !j.contains("face") || !j.contains("bary") ||
            !j.at("bary").is_array() || j.at("bary").size() != 3)
            throw std::invalid_argument(
                "points: disphenoid points need {\"face\": i, \"bary\": [u,v,w]}");
        return SurfacePoint::disphenoid(j.at("face").get<int>(), j.at("bary")[0].get<double>(),
                                        j.at("bary")[1].get<double>(),
                                        j.at("bary")[2].get<double>());
    }
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("points: expected [a, b] pairs");
    const double a = j[0].get<double>(), b = j[1].get<double>();
    return space.kind() == SpaceKind::Plane ? SurfacePoint::plane(a, b)
                                            : SurfacePoint::cone(a, b);
}

inline std::vector<SurfacePoint> points_from_json(const Space& space, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("points: expected an array");
    std::vector<SurfacePoint> pts;
    for (const auto& item : j) pts.push_back(point_from_json(space, item));
    return pts;
}

// ---------------------------------------------------------------------------
// Trees and reports
// ---------------------------------------------------------------------------

inline json tree_to_json(const Tree& tree) {
    json vertices = json::array();
    for (const auto& v : tree.vertices)
        vertices.push_back({{"point", point_to_json(v.point)},
                            {"role", v.role == VertexRole::Terminal ? "terminal" : "steiner"}});
    json edges = json::array();
    for (const auto& [u, v] : tree.edges) edges.push_back({u, v});
    json lengths = json::array();
    for (double l : tree.edge_lengths) lengths.push_back(round_length(l));
    json out{{"vertices", vertices},
             {"edges", edges},
             {"edge_lengths", lengths},
             {"total_length", round_length(tree.total_length)}};
    if (!tree.plane_lift.empty()) {
        json lift = json::array();
        for (const auto& p : tree.plane_lift) lift.push_back({p.x, p.y});
        out["plane_lift"] = lift;
    }
    return out;
}

inline json ratio_report_to_json(const RatioReport& report, bool include_meta) {
    json points = json::array();
    for (const auto& p : report.points) points.push_back(point_to_json(p));
    json out{{"space", space_to_json(report.space)},
             {"points", points},
             {"smt", round_length(report.smt)},
             {"mst", round_length(report.mst)},
             {"sr", round_ratio(report.sr)},
             {"smt_kind", report.smt_is_exact ? "exact" : "upper_bound"}};
    if (report.tree) out["tree"] = tree_to_json(*report.tree);
    if (include_meta) {
        json improvements = json::array();
        for (const auto& [restart, sr] : report.meta.improvements)
            improvements.push_back({restart, round_ratio(sr)});
        out["search"] = {{"seed", report.meta.seed},
                         {"restarts", report.meta.restarts},
                         {"iterations", report.meta.total_iterations},
                         {"best_restart", report.meta.best_restart},
                         {"improvements", improvements}};
    }
    return out;
}

inline json property_check_to_json(const PropertyCheck& check) {
    json witness = json::array();
    for (const auto& p : check.witness) witness.push_back({p.x, p.y});
    return {{"max_violation", check.max_violation},
            {"violations", check.violations},
            {"tolerance", check.tolerance},
            {"witness", witness}};
}

inline json covering_report_to_json(const CoveringReport& report) {
    return {{"samples", report.samples},
            {"seed", report.seed},
            {"nonexpansive", property_check_to_json(report.nonexpansive)},
            {"length_preservation", property_check_to_json(report.length_preservation)},
            {"mst_monotone", property_check_to_json(report.mst_monotone)},
            {"passed", report.passed}};
}

inline json theorem_report_to_json(const TheoremReport& report) {
    json witness = json::array();
    for (const auto& p : report.worst_config) witness.push_back(point_to_json(p));
    return {{"samples", report.samples},
            {"seed", report.seed},
            {"tolerance", report.tolerance},
            {"worst_margin", report.worst_margin},
            {"violations", report.violations},
            {"worst_config", witness},
            {"passed", report.passed}};
}

inline json repro_report_to_json(const ReproReport& report) {
    json rows = json::array();
    for (const auto& row : report.polygon_rows)
        rows.push_back({{"k", row.k},
                        {"theta", round_length(row.theta)},
                        {"mst", round_length(row.mst)},
                        {"star_bound", round_length(row.star_bound)},
                        {"sr_bound", round_ratio(row.sr_bound)},
                        {"ok", row.ok}});
    json floors = json::array();
    for (const auto& row : report.search_floors)
        floors.push_back({{"space", row.space_name},
                          {"best_sr", round_ratio(row.best_sr)},
                          {"restarts", row.restarts},
                          {"seed", row.seed},
                          {"ok", row.ok}});
    return {{"polygon_rows", rows},
            {"polygon_limit", report.limit_value},
            {"cone_3pi",
             {{"smt_bound", round_length(report.cone3pi_smt_bound)},
              {"mst", round_length(report.cone3pi_mst)},
              {"ok", report.cone3pi_ok}}},
            {"plane_equilateral_sr", round_ratio(report.plane_equilateral_sr)},
            {"search_floors", floors},
            {"all_passed", report.all_passed}};
}

}  // namespace flatsteiner
