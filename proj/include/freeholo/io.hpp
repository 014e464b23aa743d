#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "freeholo/arrangement.hpp"
#include "freeholo/holonomy.hpp"
#include "freeholo/levy_engine.hpp"
#include "freeholo/levy_sim.hpp"

namespace freeholo {

using json = nlohmann::json;

/// [num, den]; integers beyond 64 bits are written as decimal strings.
json rational_json(const Rational& q);
/// [xnum, xden, ynum, yden]
json point_json(const Point2& p);

/// Graph JSON. Edge ids are 1-based so that boundaries can list signed ids.
json graph_json(const PlanarGraph& g, const std::vector<EdgeWord>& loop_words = {});
json edge_word_json(const EdgeWord& w);

/// {"alpha": a, "b": b, "atoms": [{"angle": phi, "weight": w}, ...]}
json triplet_json(const CharTriplet& t);
CharTriplet triplet_from_json(const json& j);
/// Inline JSON text or a path to a JSON file.
CharTriplet read_triplet(const std::string& file_or_json);
/// "phi:w,phi:w" atom list.
std::vector<LevyAtom> parse_atoms(const std::string& text);

json moments_json(const MomentSeries& m);

/// {"loop": id, "trace": [re, im], "word": "...", "areas": [...]}
json trace_result_json(int loop_id, cplx trace, const FreeWord& w, const std::vector<double>& areas);

struct RunManifest {
    std::string command;
    json config;
    std::uint64_t seed = 0;
    std::optional<double> wall_ms;  // only recorded on request, so output bytes stay reproducible

    json to_json() const;
};

/// Library versions compiled in.
json version_json();

/// Long-format CSV: manifest as leading '#' lines, then one row per loop.
std::string stats_csv_header();
std::string stats_csv_row(int loop_id, const SimConfig& cfg, const TraceStats& st, std::optional<double> wall_ms);
std::string manifest_comment(const RunManifest& m);

/// Shortest round-trip text for a double.
std::string format_double(double x);

} // namespace freeholo
