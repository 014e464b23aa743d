#include "freeholo/lasso_basis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

namespace freeholo {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

SpanningTree::SpanningTree(const PlanarGraph& graph, std::vector<int> edges)
    : tree_edges_(std::move(edges)), in_tree_(graph.edges().size(), false) {
    std::sort(tree_edges_.begin(), tree_edges_.end());
    for (int e : tree_edges_) in_tree_[e] = true;
    const std::size_t n = graph.vertices().size();
    if (tree_edges_.size() + 1 != n) throw DomainError("graph is not connected");

    std::vector<std::vector<EdgeLetter>> adj(n);
    for (int e : tree_edges_) {
        adj[graph.edges()[e].from].push_back({e, 1});
        adj[graph.edges()[e].to].push_back({e, -1});
    }
    from_root_.assign(n, EdgeWord());
    std::vector<bool> seen(n, false);
    std::deque<int> queue{graph.origin()};
    seen[graph.origin()] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const auto& l : adj[v]) {
            const int u = graph.end(l);
            if (seen[u]) continue;
            seen[u] = true;
            from_root_[u] = from_root_[v];
            from_root_[u].push_back(l);
            queue.push_back(u);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw DomainError("graph is not connected");
}

SpanningTree SpanningTree::bfs(const PlanarGraph& graph) {
    const std::size_t n = graph.vertices().size();
    std::vector<bool> seen(n, false);
    std::vector<int> edges;
    std::deque<int> queue{graph.origin()};
    seen[graph.origin()] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const auto& l : graph.rotation(v)) {
            const int u = graph.end(l);
            if (seen[u]) continue;
            seen[u] = true;
            edges.push_back(l.edge);
            queue.push_back(u);
        }
    }
    return SpanningTree(graph, std::move(edges));
}

SpanningTree SpanningTree::random(const PlanarGraph& graph, std::uint64_t seed) {
    std::vector<int> order(graph.edges().size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    UnionFind uf(graph.vertices().size());
    std::vector<int> edges;
    for (int e : order)
        if (uf.unite(graph.edges()[e].from, graph.edges()[e].to)) edges.push_back(e);
    return SpanningTree(graph, std::move(edges));
}

EdgeWord SpanningTree::path(int u, int v) const {
    return (from_root_.at(u).inverse() + from_root_.at(v)).reduced();
}

LassoBasis::LassoBasis(const PlanarGraph& graph, const SpanningTree& tree, const LassoOptions& options)
    : graph_(&graph), tree_(&tree) {
    const int k = static_cast<int>(graph.faces().size());
    face_order_ = options.face_order;
    if (face_order_.empty()) {
        face_order_.resize(k);
        std::iota(face_order_.begin(), face_order_.end(), 0);
    }
    {
        auto sorted = face_order_;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> ids(k);
        std::iota(ids.begin(), ids.end(), 0);
        if (sorted != ids) throw DomainError("face order is not a permutation of the faces");
    }
    if (!options.start_offset.empty() && static_cast<int>(options.start_offset.size()) != k)
        throw DomainError("one start offset per face expected");
    generator_of_face_.assign(k, 0);
    for (int i = 0; i < k; ++i) generator_of_face_[face_order_[i]] = i;

    // facial lassos
    std::vector<EdgeWord> cycle(k);
    for (int f = 0; f < k; ++f) {
        const auto& c = graph.faces()[f].boundary;
        cycle[f] = options.start_offset.empty() ? c : c.rotated(static_cast<std::size_t>(options.start_offset[f]));
    }
    lassos_.resize(k);
    for (int i = 0; i < k; ++i) {
        const EdgeWord& c = cycle[face_order_[i]];
        const int base = graph.start(c.letters().front());
        lassos_[i] = tree.path(graph.origin(), base) + c + tree.path(base, graph.origin());
    }

    // dual tree on non-tree edges, rooted at the unbounded face (index k)
    auto dual = [&](int f) { return f < 0 ? k : f; };
    std::vector<std::vector<std::pair<int, int>>> adj(k + 1);  // (neighbour, edge)
    for (const auto& e : graph.edges()) {
        if (tree.contains(e.id)) continue;
        const int a = dual(graph.face_left_of({e.id, 1})), b = dual(graph.face_left_of({e.id, -1}));
        if (a == b) throw std::logic_error("non-tree edge with one face on both sides");
        adj[a].push_back({b, e.id});
        adj[b].push_back({a, e.id});
    }
    std::vector<int> parent_edge(k + 1, -1), order;
    std::vector<bool> seen(k + 1, false);
    std::deque<int> queue{k};
    seen[k] = true;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        order.push_back(f);
        for (const auto& [g, e] : adj[f]) {
            if (seen[g]) continue;
            seen[g] = true;
            parent_edge[g] = e;
            queue.push_back(g);
        }
    }
    if (static_cast<int>(order.size()) != k + 1) throw std::logic_error("dual graph of non-tree edges is not a tree");

    edge_lasso_.assign(graph.edges().size(), FreeWord(k));
    std::vector<bool> solved(graph.edges().size(), false);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int f = *it;
        if (f == k) continue;
        // c_F = prefix . e_F^s . suffix in non-tree edge lassos; children are already known
        FreeWord prefix(k), suffix(k);
        int sign = 0;
        for (const auto& l : cycle[f].letters()) {
            if (tree.contains(l.edge)) continue;
            if (l.edge == parent_edge[f]) {
                if (sign != 0) throw std::logic_error("parent edge twice on a face boundary");
                sign = l.sign;
                continue;
            }
            if (!solved[l.edge]) throw std::logic_error("dual tree peeling out of order");
            FreeWord img = l.sign > 0 ? edge_lasso_[l.edge] : edge_lasso_[l.edge].inverse();
            (sign == 0 ? prefix : suffix) *= img;
        }
        if (sign == 0) throw std::logic_error("parent edge missing from face boundary");
        FreeWord lam = prefix.inverse() * FreeWord::generator(k, generator_of_face_[f]) * suffix.inverse();
        edge_lasso_[parent_edge[f]] = sign > 0 ? lam : lam.inverse();
        solved[parent_edge[f]] = true;
    }
}

FreeWord LassoBasis::decompose(const EdgeWord& loop) const {
    if (!graph_->is_closed_at_origin(loop)) throw DomainError("word is not a closed path at the origin");
    FreeWord w(size());
    for (const auto& l : loop.letters()) {
        if (tree_->contains(l.edge)) continue;
        w *= l.sign > 0 ? edge_lasso_[l.edge] : edge_lasso_[l.edge].inverse();
    }
    return w;
}

EdgeWord LassoBasis::realize(const FreeWord& w) const {
    EdgeWord out;
    for (const auto& l : w.letters()) out += l.exp > 0 ? lassos_[l.gen] : lassos_[l.gen].inverse();
    return out;
}

} // namespace freeholo
