#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "freeholo/arrangement.hpp"
#include "freeholo/lasso_basis.hpp"
#include "freeholo/levy_engine.hpp"
#include "freeholo/word_moments.hpp"

namespace freeholo {

struct ContextOptions {
    std::optional<std::uint64_t> tree_seed;  // random spanning tree instead of the breadth-first one
    LassoOptions lasso;
    std::vector<std::pair<Point2, Point2>> extra_segments;
    std::size_t depth = 16;
    std::size_t max_letters = 16;
};

/// Graph, tree, facial lasso basis and free increment laws for a family of loops.
///
/// Generator i carries the law of y_{dx(F_i)} with F_i = face face_order[i]. Immutable after
/// construction and cheap to copy.
class HolonomyContext {
public:
    const PlanarGraph& graph() const { return arrangement_->graph; }
    const SpanningTree& tree() const { return *tree_; }
    const LassoBasis& basis() const { return *basis_; }
    const CharTriplet& triplet() const { return triplet_; }
    const Marginals& marginals() const { return marginals_; }
    /// Area of the face carried by each generator.
    const std::vector<double>& areas() const { return areas_; }
    int generators() const { return basis_->size(); }

    /// Words of the loops the context was built from.
    const std::vector<FreeWord>& loop_words() const { return loop_words_; }
    /// Word of any loop drawn on the graph; DomainError when the loop leaves it.
    FreeWord decompose(const Loop& loop) const;

    /// tau of the holonomy of a loop with word w: the reversed word evaluated on the free increments.
    cplx trace_of_word(const FreeWord& w) const;

    friend HolonomyContext build_context(const std::vector<Loop>&, const CharTriplet&, const ContextOptions&);

private:
    std::shared_ptr<const Arrangement> arrangement_;
    std::shared_ptr<const SpanningTree> tree_;
    std::shared_ptr<const LassoBasis> basis_;
    CharTriplet triplet_;
    Marginals marginals_;
    std::vector<double> areas_;
    std::vector<FreeWord> loop_words_;
    std::size_t max_letters_ = 16;
};

HolonomyContext build_context(const std::vector<Loop>& loops, const CharTriplet& triplet, const ContextOptions& options = {});

/// tau(h_l) for a loop drawn on the context graph.
cplx master_trace(const HolonomyContext& ctx, const Loop& loop);

/// L2 distance between the holonomies of two loops drawn on the context graph.
double loop_distance(const HolonomyContext& ctx, const Loop& l1, const Loop& l2);
double word_distance(const HolonomyContext& ctx, const FreeWord& w1, const FreeWord& w2);

struct BoundReport {
    unsigned n = 0;
    double length = 0.0;          // l(l)
    double dyadic_length = 0.0;   // l(D_n(l))
    double lhs = 0.0;
    double rhs = 0.0;
    double K = 0.0;
    bool satisfied = false;
};

/// Throws DomainError naming the first area of the grid (0, max_area] where d(1, y_t) > K sqrt(t).
void check_premise(const CharTriplet& triplet, double K, double max_area, int grid = 400);

/// d(h_l, h_{D_n(l)}) against K l^{3/4} (l - l(D_n))^{1/4}, after certifying K on the area grid.
BoundReport extension_bound_check(const Loop& loop, unsigned n, const CharTriplet& triplet, double K,
                                  std::size_t max_letters = 16);

struct AuditReport {
    std::vector<cplx> baseline;       // canonical master_trace per loop
    std::vector<double> basis_deviation;       // per loop: trees, enumerations, c_F starts
    std::vector<double> refinement_deviation;  // per loop: every face split by a chord
    int variants = 0;
    double worst() const;
};

/// Recomputes every master_trace under random spanning trees, face enumerations (all of them
/// when there are few), c_F starts, and a refinement splitting every face by a chord.
AuditReport invariance_audit(const std::vector<Loop>& loops, const CharTriplet& triplet, int trials, std::uint64_t seed);

} // namespace freeholo
