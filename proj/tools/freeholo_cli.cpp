#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "freeholo/io.hpp"

using namespace freeholo;

namespace {

struct Options {
    std::string loops_file;
    std::string triplet;
    std::optional<double> alpha, b;
    std::string atoms;
    double t = 1.0;
    std::size_t order = 8;
    int N = 8;
    long samples = 100;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> tree_seed;
    double dt = 1.0 / 50;
    int trials = 5;
    unsigned n = 2;
    double K = 1.0;
    int threads = 0;
    std::string out;
    std::string format;
    bool timing = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<Loop> read_loops(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open loops file '" + path + "'");
    auto loops = parse_loops(in);
    if (loops.empty()) throw DomainError("no loops");
    return loops;
}

std::vector<Loop> loops_or_default(const Options& o) {
    if (!o.loops_file.empty()) return read_loops(o.loops_file);
    return {parse_loop("(0,0) (1,0) (1,1) (0,1)")};
}

CharTriplet resolve_triplet(const Options& o) {
    if (!o.triplet.empty()) return read_triplet(o.triplet);
    CharTriplet t = CharTriplet::master_field();
    if (o.alpha) t.alpha = *o.alpha;
    if (o.b) t.b = *o.b;
    if (!o.atoms.empty()) t.atoms = parse_atoms(o.atoms);
    t.validate();
    return t;
}

SimConfig sim_config(const Options& o, const CharTriplet& tr) {
    SimConfig cfg;
    cfg.N = o.N;
    cfg.triplet = tr;
    cfg.dt = o.dt;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.validate();
    return cfg;
}

json config_echo(const std::string& command, const Options& o) {
    json c{{"command", command}};
    if (!o.loops_file.empty()) c["loops"] = o.loops_file;
    if (o.tree_seed) c["tree_seed"] = *o.tree_seed;
    if (command == "arrange" || command == "basis" || command == "decompose") return c;
    c["triplet"] = triplet_json(resolve_triplet(o));
    if (command == "moments" || command == "support") c["t"] = o.t;
    if (command == "moments") c["order"] = o.order;
    if (command == "simulate" || command == "compare" || command == "support") {
        c["N"] = o.N;
        c["samples"] = o.samples;
        c["dt"] = o.dt;
    }
    if (command == "bound") {
        c["n"] = o.n;
        c["K"] = o.K;
    }
    if (command == "audit") c["trials"] = o.trials;
    return c;
}

class Runner {
public:
    Runner(std::string command, const Options& o) : command_(std::move(command)), o_(o), start_(Clock::now()) {}

    RunManifest manifest() const {
        RunManifest m{command_, config_echo(command_, o_), o_.seed, std::nullopt};
        if (o_.timing) m.wall_ms = elapsed_ms(start_);
        return m;
    }

    void emit_json(json body) const {
        body["manifest"] = manifest().to_json();
        write(body.dump(2) + "\n");
    }

    void write(const std::string& text) const {
        if (o_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(o_.out, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + o_.out + "'");
        f << text;
    }

    std::string format(const char* fallback) const { return o_.format.empty() ? fallback : o_.format; }

    const Options& opts() const { return o_; }

private:
    std::string command_;
    const Options& o_;
    Clock::time_point start_;
};

void cmd_arrange(const Runner& r) {
    const auto arr = build_arrangement(read_loops(r.opts().loops_file));
    json j = graph_json(arr.graph, arr.loop_words);
    j["euler_characteristic"] = arr.graph.euler_characteristic();
    r.emit_json(j);
}

HolonomyContext context_for(const Options& o, const std::vector<Loop>& loops, const CharTriplet& tr) {
    ContextOptions opt;
    opt.tree_seed = o.tree_seed;
    return build_context(loops, tr, opt);
}

void cmd_basis(const Runner& r) {
    const auto ctx = context_for(r.opts(), read_loops(r.opts().loops_file), CharTriplet::master_field());
    json lassos = json::array();
    const auto& basis = ctx.basis();
    for (int i = 0; i < basis.size(); ++i)
        lassos.push_back({{"generator", i + 1}, {"face", basis.face_order()[i] + 1}, {"area", ctx.areas()[i]},
                          {"edges", edge_word_json(basis.lassos()[i])}});
    json words = json::array();
    for (const auto& w : ctx.loop_words()) words.push_back(w.str());
    json tree = json::array();
    for (int e : ctx.tree().tree_edges()) tree.push_back(e + 1);
    r.emit_json({{"graph", graph_json(ctx.graph())}, {"tree_edges", tree}, {"lassos", lassos}, {"words", words}});
}

void cmd_decompose(const Runner& r) {
    const auto ctx = context_for(r.opts(), read_loops(r.opts().loops_file), CharTriplet::master_field());
    json words = json::array();
    for (std::size_t i = 0; i < ctx.loop_words().size(); ++i)
        words.push_back({{"loop", i + 1}, {"word", ctx.loop_words()[i].str()}});
    r.emit_json({{"generators", ctx.generators()}, {"areas", ctx.areas()}, {"words", words}});
}

void cmd_moments(const Runner& r) {
    const auto& o = r.opts();
    const auto m = moments(resolve_triplet(o), o.t, o.order);
    if (r.format("json") == "csv") {
        std::ostringstream os;
        os << manifest_comment(r.manifest()) << "n,re,im\n";
        for (std::size_t k = 0; k < m.m.size(); ++k)
            os << k << ',' << format_double(m.m[k].real()) << ',' << format_double(m.m[k].imag()) << '\n';
        r.write(os.str());
        return;
    }
    r.emit_json(moments_json(m));
}

void cmd_trace(const Runner& r) {
    const auto& o = r.opts();
    const auto loops = read_loops(o.loops_file);
    const auto ctx = context_for(o, loops, resolve_triplet(o));
    json results = json::array();
    for (std::size_t i = 0; i < loops.size(); ++i) {
        const FreeWord& w = ctx.loop_words()[i];
        results.push_back(trace_result_json(static_cast<int>(i + 1), ctx.trace_of_word(w), w, ctx.areas()));
    }
    r.emit_json({{"results", results}});
}

void cmd_simulate(const Runner& r, std::vector<Loop> loops) {
    const auto& o = r.opts();
    const CharTriplet tr = resolve_triplet(o);
    const auto ctx = context_for(o, loops, tr);
    const SimConfig cfg = sim_config(o, tr);
    std::vector<TraceStats> stats;
    std::vector<double> ms;
    for (const auto& w : ctx.loop_words()) {
        const auto start = Clock::now();
        stats.push_back(mc_compare(ctx, w, cfg));
        ms.push_back(elapsed_ms(start));
    }
    auto wall = [&](std::size_t i) { return o.timing ? std::optional<double>(ms[i]) : std::nullopt; };
    if (r.format("csv") == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < stats.size(); ++i) {
            const auto& s = stats[i];
            json row{{"loop", i + 1},
                     {"N", cfg.N},
                     {"samples", s.samples},
                     {"mean", {s.mean.real(), s.mean.imag()}},
                     {"stderr", s.std_error},
                     {"exact", {s.exact.real(), s.exact.imag()}},
                     {"sigmas", s.sigmas}};
            if (wall(i)) row["wall_ms"] = *wall(i);
            rows.push_back(row);
        }
        r.emit_json({{"stats", rows}});
        return;
    }
    std::string text = manifest_comment(r.manifest()) + stats_csv_header();
    for (std::size_t i = 0; i < stats.size(); ++i) text += stats_csv_row(static_cast<int>(i + 1), cfg, stats[i], wall(i));
    r.write(text);
}

void cmd_bound(const Runner& r) {
    const auto& o = r.opts();
    const CharTriplet tr = resolve_triplet(o);
    json rows = json::array();
    bool all = true;
    const auto loops = read_loops(o.loops_file);
    for (std::size_t i = 0; i < loops.size(); ++i) {
        const auto rep = extension_bound_check(loops[i], o.n, tr, o.K);
        all = all && rep.satisfied;
        rows.push_back({{"loop", i + 1},
                        {"n", rep.n},
                        {"length", rep.length},
                        {"dyadic_length", rep.dyadic_length},
                        {"lhs", rep.lhs},
                        {"rhs", rep.rhs},
                        {"K", rep.K},
                        {"satisfied", rep.satisfied}});
    }
    r.emit_json({{"reports", rows}, {"all_satisfied", all}});
}

void cmd_audit(const Runner& r) {
    const auto& o = r.opts();
    const auto rep = invariance_audit(read_loops(o.loops_file), resolve_triplet(o), o.trials, o.seed);
    json rows = json::array();
    for (std::size_t i = 0; i < rep.baseline.size(); ++i)
        rows.push_back({{"loop", i + 1},
                        {"trace", {rep.baseline[i].real(), rep.baseline[i].imag()}},
                        {"basis_deviation", rep.basis_deviation[i]},
                        {"refinement_deviation", rep.refinement_deviation[i]}});
    r.emit_json({{"loops", rows}, {"variants", rep.variants}, {"worst", rep.worst()}});
}

void cmd_support(const Runner& r) {
    const auto& o = r.opts();
    const CharTriplet tr = resolve_triplet(o);
    const SimConfig cfg = sim_config(o, tr);
    if (tr.atoms.empty()) {
        const auto rep = spectral_support_check(cfg, o.t);
        r.emit_json({{"theta", rep.theta}, {"outlier_fraction", rep.outlier_fraction}, {"eigenvalues", rep.eigenvalues}});
        return;
    }
    // with jumps there is no arc to compare against; report how far the spectrum spreads
    const auto angles = sample_spectrum(cfg, o.t);
    long wide = 0;
    double max_gap = 0.0;
    for (double a : angles) {
        if (std::abs(a) > std::numbers::pi / 2) ++wide;
        max_gap = std::max(max_gap, std::abs(std::polar(1.0, a) - 1.0));
    }
    r.emit_json({{"eigenvalues", angles.size()},
                 {"fraction_beyond_half_pi", angles.empty() ? 0.0 : double(wide) / double(angles.size())},
                 {"max_distance_from_one", max_gap}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free planar holonomy fields: exact traces and U(N) simulation"};
    app.require_subcommand(1);
    Options o;

    auto add_triplet = [&](CLI::App* sub) {
        auto* tf = sub->add_option("--triplet", o.triplet, "triplet JSON file or inline JSON");
        auto* a = sub->add_option("--alpha", o.alpha, "drift");
        auto* b = sub->add_option("--b", o.b, "diffusion coefficient");
        auto* at = sub->add_option("--atoms", o.atoms, "jump atoms \"phi:w,phi:w\"");
        tf->excludes(a)->excludes(b)->excludes(at);
    };
    auto add_loops = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--loops", o.loops_file, "loops file, one loop per line");
        if (required) opt->required();
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_flag("--timing", o.timing, "record wall-clock times in the output");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--N", o.N, "matrix size")->check(CLI::PositiveNumber);
        sub->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
        sub->add_option("--dt", o.dt, "diffusion time step")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    };
    auto seed = [&](CLI::App* sub, const char* what) { sub->add_option("--seed", o.seed, what); };
    auto tree = [&](CLI::App* sub) { sub->add_option("--tree-seed", o.tree_seed, "random spanning tree (default: breadth-first)"); };

    auto* arrange = app.add_subcommand("arrange", "loops file to graph JSON");
    add_loops(arrange, true);
    add_out(arrange);

    auto* basis = app.add_subcommand("basis", "spanning tree, lasso basis and loop words");
    add_loops(basis, true);
    tree(basis);
    add_out(basis);

    auto* decompose = app.add_subcommand("decompose", "words of the loops in the lasso basis");
    add_loops(decompose, true);
    tree(decompose);
    add_out(decompose);

    auto* mom = app.add_subcommand("moments", "moments m_0..m_order of the marginal at time t");
    add_triplet(mom);
    mom->add_option("--t", o.t, "time")->check(CLI::NonNegativeNumber);
    mom->add_option("--order", o.order, "highest moment");
    add_format(mom);
    add_out(mom);

    auto* trace = app.add_subcommand("trace", "exact master-field traces of the loops");
    add_loops(trace, true);
    add_triplet(trace);
    tree(trace);
    add_out(trace);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo traces at finite N");
    add_loops(simulate, true);
    add_triplet(simulate);
    add_sim(simulate);
    seed(simulate, "random seed");
    add_format(simulate);
    add_out(simulate);

    auto* compare = app.add_subcommand("compare", "simulated against exact traces (default: unit square, b = 1)");
    add_loops(compare, false);
    add_triplet(compare);
    add_sim(compare);
    seed(compare, "random seed");
    add_format(compare);
    add_out(compare);

    auto* bound = app.add_subcommand("bound", "dyadic extension bound per loop");
    add_loops(bound, true);
    add_triplet(bound);
    bound->add_option("--n", o.n, "dyadic level")->check(CLI::Range(0u, 30u));
    bound->add_option("--K", o.K, "constant K")->check(CLI::PositiveNumber);
    add_out(bound);

    auto* audit = app.add_subcommand("audit", "traces under other trees, enumerations and refinements");
    add_loops(audit, true);
    add_triplet(audit);
    audit->add_option("--trials", o.trials, "random variants")->check(CLI::PositiveNumber);
    seed(audit, "random seed");
    add_out(audit);

    auto* support = app.add_subcommand("support", "eigenvalue angles of the increment at time t");
    add_triplet(support);
    support->add_option("--t", o.t, "time")->check(CLI::PositiveNumber);
    add_sim(support);
    seed(support, "random seed");
    add_out(support);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        Runner r(name, o);
        if (name == "arrange") cmd_arrange(r);
        else if (name == "basis") cmd_basis(r);
        else if (name == "decompose") cmd_decompose(r);
        else if (name == "moments") cmd_moments(r);
        else if (name == "trace") cmd_trace(r);
        else if (name == "simulate") cmd_simulate(r, read_loops(o.loops_file));
        else if (name == "compare") cmd_simulate(r, loops_or_default(o));
        else if (name == "bound") cmd_bound(r);
        else if (name == "audit") cmd_audit(r);
        else if (name == "support") cmd_support(r);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
