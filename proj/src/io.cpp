#include "freeholo/io.hpp"

#include <Eigen/Core>
#include <charconv>
#include <fstream>
#include <sstream>

namespace freeholo {

namespace {

json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("triplet JSON lacks \"") + key + "\"");
    if (!j.at(key).is_number()) throw ParseError(std::string("triplet field \"") + key + "\" is not a number");
    return j.at(key).get<double>();
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

json rational_json(const Rational& q) { return json::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

json point_json(const Point2& p) {
    return json::array({integer_json(p.x.get_num()), integer_json(p.x.get_den()), integer_json(p.y.get_num()),
                        integer_json(p.y.get_den())});
}

json edge_word_json(const EdgeWord& w) {
    json a = json::array();
    for (const auto& l : w.letters()) a.push_back(l.sign * (l.edge + 1));
    return a;
}

json graph_json(const PlanarGraph& g, const std::vector<EdgeWord>& loop_words) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back(point_json(v));
    j["edges"] = json::array();
    for (const auto& e : g.edges()) {
        json pl = json::array();
        for (const auto& p : e.polyline) pl.push_back(point_json(p));
        j["edges"].push_back({{"id", e.id + 1}, {"from", e.from}, {"to", e.to}, {"polyline", pl}});
    }
    j["faces"] = json::array();
    for (const auto& f : g.faces())
        j["faces"].push_back({{"id", f.id + 1},
                              {"boundary", edge_word_json(f.boundary)},
                              {"area", rational_json(f.area)},
                              {"interior_point", point_json(f.interior_point)}});
    j["unbounded_boundary"] = edge_word_json(g.unbounded_boundary());
    if (!loop_words.empty()) {
        j["loops"] = json::array();
        for (const auto& w : loop_words) j["loops"].push_back(edge_word_json(w));
    }
    return j;
}

json triplet_json(const CharTriplet& t) {
    json atoms = json::array();
    for (const auto& a : t.atoms) atoms.push_back({{"angle", a.angle}, {"weight", a.weight}});
    return {{"alpha", t.alpha}, {"b", t.b}, {"atoms", atoms}};
}

CharTriplet triplet_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("triplet JSON must be an object");
    CharTriplet t;
    t.alpha = number(j, "alpha");
    t.b = number(j, "b");
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw ParseError("triplet \"atoms\" must be an array");
        for (const auto& a : j.at("atoms")) t.atoms.push_back({number(a, "angle"), number(a, "weight")});
    }
    t.validate();
    return t;
}

CharTriplet read_triplet(const std::string& file_or_json) {
    std::string text = file_or_json;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(file_or_json);
        if (!in) throw ParseError("cannot open triplet file '" + file_or_json + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("triplet JSON: ") + e.what());
    }
    return triplet_from_json(j);
}

std::vector<LevyAtom> parse_atoms(const std::string& text) {
    std::vector<LevyAtom> atoms;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("atom '" + item + "' must be angle:weight");
        try {
            std::size_t used = 0;
            const std::string a = item.substr(0, colon), w = item.substr(colon + 1);
            LevyAtom atom{std::stod(a, &used), 0.0};
            if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
            atom.weight = std::stod(w, &used);
            if (w.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(w);
            atoms.push_back(atom);
        } catch (const std::logic_error&) {
            throw ParseError("atom '" + item + "' must be angle:weight");
        }
    }
    return atoms;
}

json moments_json(const MomentSeries& m) {
    json a = json::array();
    for (const auto& v : m.m) a.push_back(json::array({v.real(), v.imag()}));
    return {{"t", m.t}, {"moments", a}};
}

json trace_result_json(int loop_id, cplx trace, const FreeWord& w, const std::vector<double>& areas) {
    return {{"loop", loop_id}, {"trace", json::array({trace.real(), trace.imag()})}, {"word", w.str()}, {"areas", areas}};
}

json version_json() {
    return {{"freeholo", "0.1.0"},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"gmp", gmp_version}};
}

json RunManifest::to_json() const {
    json j{{"command", command}, {"config", config}, {"seed", seed}, {"versions", version_json()}};
    j["timing"] = wall_ms ? json({{"wall_ms", *wall_ms}}) : json(nullptr);
    return j;
}

std::string manifest_comment(const RunManifest& m) { return "# manifest " + m.to_json().dump() + "\n"; }

std::string stats_csv_header() {
    return "loop_id,N,samples,mean_re,mean_im,stderr,exact_re,exact_im,sigmas,wall_ms\n";
}

std::string stats_csv_row(int loop_id, const SimConfig& cfg, const TraceStats& st, std::optional<double> wall_ms) {
    std::ostringstream os;
    os << loop_id << ',' << cfg.N << ',' << st.samples << ',' << format_double(st.mean.real()) << ','
       << format_double(st.mean.imag()) << ',' << format_double(st.std_error) << ',' << format_double(st.exact.real())
       << ',' << format_double(st.exact.imag()) << ',' << format_double(st.sigmas) << ','
       << (wall_ms ? format_double(*wall_ms) : std::string()) << '\n';
    return os.str();
}

} // namespace freeholo
