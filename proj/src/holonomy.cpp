#include "freeholo/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace freeholo {

HolonomyContext build_context(const std::vector<Loop>& loops, const CharTriplet& triplet, const ContextOptions& options) {
    if (loops.empty()) throw DomainError("no loops");
    triplet.validate();
    HolonomyContext ctx;
    auto arr = std::make_shared<Arrangement>(build_arrangement(loops, options.extra_segments));
    ctx.arrangement_ = arr;
    ctx.tree_ = std::make_shared<SpanningTree>(options.tree_seed ? SpanningTree::random(arr->graph, *options.tree_seed)
                                                                  : SpanningTree::bfs(arr->graph));
    ctx.basis_ = std::make_shared<LassoBasis>(arr->graph, *ctx.tree_, options.lasso);
    ctx.triplet_ = triplet;
    for (int face : ctx.basis_->face_order()) ctx.areas_.push_back(to_double(arr->graph.faces()[face].area));
    ctx.marginals_ = Marginals::from_levy(triplet, ctx.areas_, options.depth);
    for (const auto& w : arr->loop_words) ctx.loop_words_.push_back(ctx.basis_->decompose(w));
    ctx.max_letters_ = options.max_letters;
    return ctx;
}

FreeWord HolonomyContext::decompose(const Loop& loop) const {
    auto w = graph().embed(loop);
    if (!w) throw DomainError("loop " + loop.str() + " is not drawn in the graph of the context");
    return basis_->decompose(*w);
}

cplx HolonomyContext::trace_of_word(const FreeWord& w) const {
    // f(l1 l2) = f(l2) f(l1): the holonomy is the opposite word in the increments
    const PowerWord op(w.reversed());
    const auto need = required_depth(op, static_cast<std::size_t>(generators()));
    const Marginals deeper = marginals_.has_depth(need) ? Marginals() : marginals_.with_depth(need);
    const Marginals& m = marginals_.has_depth(need) ? marginals_ : deeper;
    try {
        WordMomentEvaluator eval(m, max_letters_);
        return eval(op);
    } catch (const CoreBoundExceeded&) {
        // long words whose generators repeat rarely: the interval recursion stays polynomial
        return word_moment_nc(op, m, std::numeric_limits<std::size_t>::max());
    }
}

cplx master_trace(const HolonomyContext& ctx, const Loop& loop) { return ctx.trace_of_word(ctx.decompose(loop)); }

double word_distance(const HolonomyContext& ctx, const FreeWord& w1, const FreeWord& w2) {
    // h_{l1} h_{l2}^{-1} is the holonomy of the loop l2^{-1} l1
    return l2_distance_from_trace(ctx.trace_of_word(w2.inverse() * w1));
}

double loop_distance(const HolonomyContext& ctx, const Loop& l1, const Loop& l2) {
    return word_distance(ctx, ctx.decompose(l1), ctx.decompose(l2));
}

void check_premise(const CharTriplet& triplet, double K, double max_area, int grid) {
    if (!(K > 0.0)) throw DomainError("K must be positive");
    if (max_area <= 0.0) return;
    for (int i = 1; i <= grid; ++i) {
        const double t = max_area * i / grid;
        const double d = l2_distance_from_trace(first_moment(triplet, t));
        if (d > K * std::sqrt(t) + 1e-12) {
            std::ostringstream os;
            os << "K = " << K << " fails the simple-loop premise at area " << t << " (d = " << d << ")";
            throw DomainError(os.str());
        }
    }
}

BoundReport extension_bound_check(const Loop& loop, unsigned n, const CharTriplet& triplet, double K,
                                  std::size_t max_letters) {
    const Loop approx = dyadic_approx(loop, n);
    ContextOptions opt;
    opt.max_letters = max_letters;
    const HolonomyContext ctx = build_context({loop, approx}, triplet, opt);
    check_premise(triplet, K, to_double(ctx.graph().total_bounded_area()));

    BoundReport r;
    r.n = n;
    r.K = K;
    r.length = loop.length();
    r.dyadic_length = approx.length();
    r.lhs = word_distance(ctx, ctx.loop_words()[0], ctx.loop_words()[1]);
    const double gap = std::max(0.0, r.length - r.dyadic_length);
    r.rhs = K * std::pow(r.length, 0.75) * std::pow(gap, 0.25);
    r.satisfied = r.lhs <= r.rhs + 1e-9;
    return r;
}

double AuditReport::worst() const {
    double w = 0.0;
    for (double d : basis_deviation) w = std::max(w, d);
    for (double d : refinement_deviation) w = std::max(w, d);
    return w;
}

AuditReport invariance_audit(const std::vector<Loop>& loops, const CharTriplet& triplet, int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("trials must be at least 1");
    AuditReport rep;
    const HolonomyContext base = build_context(loops, triplet);
    for (const auto& w : base.loop_words()) rep.baseline.push_back(base.trace_of_word(w));
    rep.basis_deviation.assign(loops.size(), 0.0);
    rep.refinement_deviation.assign(loops.size(), 0.0);

    auto record = [&](const HolonomyContext& ctx, std::vector<double>& dev) {
        for (std::size_t i = 0; i < loops.size(); ++i)
            dev[i] = std::max(dev[i], std::abs(ctx.trace_of_word(ctx.loop_words()[i]) - rep.baseline[i]));
        ++rep.variants;
    };

    const auto& g = base.graph();
    const int k = static_cast<int>(g.faces().size());
    std::mt19937_64 rng(seed);

    // every enumeration when there are few, random ones otherwise
    std::vector<std::vector<int>> orders;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    if (k <= 5) {
        do orders.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        for (int i = 0; i < trials; ++i) {
            std::shuffle(perm.begin(), perm.end(), rng);
            orders.push_back(perm);
        }
    }
    for (const auto& order : orders) {
        ContextOptions opt;
        opt.lasso.face_order = order;
        record(build_context(loops, triplet, opt), rep.basis_deviation);
    }
    for (int i = 0; i < trials; ++i) {
        ContextOptions opt;
        opt.tree_seed = rng();
        opt.lasso.face_order = orders[rng() % orders.size()];
        for (const auto& f : g.faces()) opt.lasso.start_offset.push_back(static_cast<int>(rng() % f.boundary.size()));
        record(build_context(loops, triplet, opt), rep.basis_deviation);
    }
    ContextOptions refine;
    refine.extra_segments = refinement_chords(g);
    record(build_context(loops, triplet, refine), rep.refinement_deviation);
    return rep;
}

} // namespace freeholo
