#include "freeholo/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "freeholo/free_group.hpp"

namespace freeholo {

int PlanarGraph::face_left_of(EdgeLetter l) const { return face_left_[l.sign > 0 ? 0 : 1].at(l.edge); }

long PlanarGraph::euler_characteristic() const {
    return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size()) + static_cast<long>(faces_.size()) + 1;
}

Rational PlanarGraph::total_bounded_area() const {
    Rational a = 0;
    for (const auto& f : faces_) a += f.area;
    return a;
}

std::vector<Point2> PlanarGraph::realize(const EdgeWord& w) const {
    std::vector<Point2> pts;
    if (w.empty()) {
        pts.push_back(vertices_[origin()]);
        return pts;
    }
    pts.push_back(vertices_[start(w.letters().front())]);
    for (const auto& l : w.letters()) {
        const auto& poly = edges_[l.edge].polyline;
        if (l.sign > 0)
            pts.insert(pts.end(), poly.begin() + 1, poly.end());
        else
            pts.insert(pts.end(), poly.rbegin() + 1, poly.rend());
    }
    // closed paths repeat the start point at the end
    if (pts.size() > 1 && pts.back() == pts.front()) pts.pop_back();
    return pts;
}

bool PlanarGraph::is_closed_at_origin(const EdgeWord& w) const {
    int at = origin();
    for (const auto& l : w.letters()) {
        if (l.edge < 0 || l.edge >= static_cast<int>(edges_.size())) return false;
        if (start(l) != at) return false;
        at = end(l);
    }
    return at == origin();
}

std::optional<EdgeWord> PlanarGraph::fine_path_to_word(const std::vector<int>& path) const {
    EdgeWord w;
    int expected = 0;
    FineStep current{-1, 0, 0, 0};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        auto it = fine_steps_.find({path[i], path[i + 1]});
        if (it == fine_steps_.end()) return std::nullopt;
        const FineStep& st = it->second;
        if (expected == 0) {
            if (st.position != 0) return std::nullopt;
            current = st;
        } else if (st.edge != current.edge || st.sign != current.sign || st.position != expected) {
            return std::nullopt;
        }
        expected = st.position + 1;
        if (expected == st.length) {
            w.push_back({st.edge, st.sign});
            expected = 0;
        }
    }
    if (expected != 0) return std::nullopt;
    return w;
}

std::optional<EdgeWord> PlanarGraph::embed(const Loop& loop) const {
    const auto origin_it = fine_index_.find(Point2(0, 0));
    if (origin_it == fine_index_.end()) return std::nullopt;
    std::vector<int> path{origin_it->second};
    const std::size_t n = loop.segment_count();
    for (std::size_t s = 0; s < n; ++s) {
        const Point2& a = loop.segment_start(s);
        const Point2& b = loop.segment_end(s);
        const Point2 d = b - a;
        const Rational len2 = dot(d, d);
        // a vertex off the fine points must be a straight pass-through
        if (s > 0 && !fine_index_.count(a)) {
            const Point2& prev = loop.segment_start(s - 1);
            if (orientation(prev, a, b) != 0 || sgn(dot(a - prev, b - a)) <= 0) return std::nullopt;
        }
        std::vector<std::pair<Rational, int>> on;
        for (std::size_t i = 0; i < fine_points_.size(); ++i) {
            const Point2& p = fine_points_[i];
            if (orientation(a, b, p) != 0) continue;
            Rational t = dot(p - a, d);
            if (sgn(t) <= 0 || t > len2) continue;
            on.emplace_back(t, static_cast<int>(i));
        }
        std::sort(on.begin(), on.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [t, id] : on) path.push_back(id);
    }
    if (path.back() != origin_it->second) return std::nullopt;
    return fine_path_to_word(path);
}

class ArrangementBuilder {
public:
    Arrangement run(const std::vector<Loop>& loops, const std::vector<std::pair<Point2, Point2>>& extras);

private:
    struct Segment {
        Point2 a, b;
    };

    int tail(int h) const { return h % 2 == 0 ? fine_edges_[h / 2].first : fine_edges_[h / 2].second; }
    int head(int h) const { return tail(h ^ 1); }
    Point2 direction(int h) const { return g_.fine_points_[head(h)] - g_.fine_points_[tail(h)]; }
    int next(int h) const {
        const auto& ring = out_[head(h)];
        const int p = ring_pos_[h ^ 1];
        return ring[(p + static_cast<int>(ring.size()) - 1) % static_cast<int>(ring.size())];
    }

    void split_segments();
    void build_rings();
    void trace_fine_faces();
    void build_chains(const std::set<int>& coarse_points);
    void build_faces();
    void probe_faces();

    std::vector<Segment> segs_;
    std::vector<std::vector<int>> seg_points_;  // fine ids along each segment, from a to b
    std::vector<std::pair<int, int>> fine_edges_;
    std::map<std::pair<int, int>, int> fine_edge_id_;
    std::vector<std::vector<int>> out_;
    std::vector<int> ring_pos_;
    std::vector<int> fine_face_;               // per half-edge
    std::vector<std::vector<int>> fine_cycles_;
    std::vector<int> coarse_of_fine_;          // fine point -> coarse vertex or -1
    std::vector<EdgeLetter> letter_of_half_;   // per half-edge
    std::vector<int> position_of_half_;
    int outer_cycle_ = -1;
    PlanarGraph g_;
};

void ArrangementBuilder::split_segments() {
    const std::size_t n = segs_.size();
    std::vector<std::vector<Point2>> on(n);
    for (std::size_t i = 0; i < n; ++i) {
        on[i].push_back(segs_[i].a);
        on[i].push_back(segs_[i].b);
    }
    auto within = [](const Segment& s, const Point2& p) {
        const Point2 d = s.b - s.a;
        const Rational t = dot(p - s.a, d);
        return sgn(t) >= 0 && t <= dot(d, d);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 di = segs_[i].b - segs_[i].a;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2 dj = segs_[j].b - segs_[j].a;
            const Rational den = cross(di, dj);
            const Point2 w = segs_[j].a - segs_[i].a;
            if (sgn(den) != 0) {
                const Rational t = cross(w, dj) / den;
                const Rational u = cross(w, di) / den;
                if (sgn(t) < 0 || t > 1 || sgn(u) < 0 || u > 1) continue;
                Point2 x(segs_[i].a.x + t * di.x, segs_[i].a.y + t * di.y);
                on[i].push_back(x);
                on[j].push_back(x);
            } else if (sgn(cross(di, w)) == 0) {
                // collinear: share endpoints that fall inside the other segment
                for (const Point2* p : {&segs_[j].a, &segs_[j].b})
                    if (within(segs_[i], *p)) on[i].push_back(*p);
                for (const Point2* p : {&segs_[i].a, &segs_[i].b})
                    if (within(segs_[j], *p)) on[j].push_back(*p);
            }
        }
    }
    std::set<Point2> all;
    for (auto& pts : on) all.insert(pts.begin(), pts.end());
    g_.fine_points_.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < g_.fine_points_.size(); ++i) g_.fine_index_[g_.fine_points_[i]] = static_cast<int>(i);

    seg_points_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 d = segs_[i].b - segs_[i].a;
        auto& pts = on[i];
        std::sort(pts.begin(), pts.end(), [&](const Point2& p, const Point2& q) {
            return dot(p - segs_[i].a, d) < dot(q - segs_[i].a, d);
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (const auto& p : pts) seg_points_[i].push_back(g_.fine_index_.at(p));
        for (std::size_t k = 0; k + 1 < seg_points_[i].size(); ++k) {
            int u = seg_points_[i][k], v = seg_points_[i][k + 1];
            auto key = std::minmax(u, v);
            if (!fine_edge_id_.count(key)) {
                fine_edge_id_[key] = static_cast<int>(fine_edges_.size());
                fine_edges_.push_back(key);
            }
        }
    }
}

void ArrangementBuilder::build_rings() {
    out_.assign(g_.fine_points_.size(), {});
    for (int e = 0; e < static_cast<int>(fine_edges_.size()); ++e) {
        out_[fine_edges_[e].first].push_back(2 * e);
        out_[fine_edges_[e].second].push_back(2 * e + 1);
    }
    ring_pos_.assign(2 * fine_edges_.size(), 0);
    for (auto& ring : out_) {
        std::sort(ring.begin(), ring.end(), [&](int h1, int h2) { return angle_less(direction(h1), direction(h2)); });
        for (std::size_t p = 0; p < ring.size(); ++p) ring_pos_[ring[p]] = static_cast<int>(p);
    }
}

void ArrangementBuilder::trace_fine_faces() {
    fine_face_.assign(2 * fine_edges_.size(), -1);
    for (int h0 = 0; h0 < static_cast<int>(fine_face_.size()); ++h0) {
        if (fine_face_[h0] >= 0) continue;
        const int id = static_cast<int>(fine_cycles_.size());
        std::vector<int> cycle;
        for (int h = h0; fine_face_[h] < 0; h = next(h)) {
            fine_face_[h] = id;
            cycle.push_back(h);
        }
        fine_cycles_.push_back(std::move(cycle));
    }
}

void ArrangementBuilder::build_chains(const std::set<int>& coarse_points) {
    // coarse vertex ids: origin first, then lexicographic (fine ids are lexicographic)
    const int origin_fine = g_.fine_index_.at(Point2(0, 0));
    coarse_of_fine_.assign(g_.fine_points_.size(), -1);
    std::vector<int> order{origin_fine};
    for (int p : coarse_points)
        if (p != origin_fine) order.push_back(p);
    for (std::size_t i = 0; i < order.size(); ++i) {
        coarse_of_fine_[order[i]] = static_cast<int>(i);
        g_.vertices_.push_back(g_.fine_points_[order[i]]);
    }

    letter_of_half_.assign(2 * fine_edges_.size(), {-1, 0});
    position_of_half_.assign(2 * fine_edges_.size(), -1);
    g_.rotation_.assign(order.size(), {});
    for (int fine_v : order) {
        for (int h0 : out_[fine_v]) {
            if (letter_of_half_[h0].edge >= 0) continue;
            std::vector<int> chain{h0};
            while (coarse_of_fine_[head(chain.back())] < 0) {
                const int at = head(chain.back());
                const auto& ring = out_[at];
                int cont = ring[0] == (chain.back() ^ 1) ? ring[1] : ring[0];
                chain.push_back(cont);
            }
            GraphEdge e;
            e.id = static_cast<int>(g_.edges_.size());
            e.from = coarse_of_fine_[fine_v];
            e.to = coarse_of_fine_[head(chain.back())];
            e.polyline.push_back(g_.fine_points_[fine_v]);
            const int len = static_cast<int>(chain.size());
            for (int k = 0; k < len; ++k) {
                const int h = chain[k];
                e.polyline.push_back(g_.fine_points_[head(h)]);
                letter_of_half_[h] = {e.id, 1};
                position_of_half_[h] = k;
                letter_of_half_[h ^ 1] = {e.id, -1};
                position_of_half_[h ^ 1] = len - 1 - k;
                g_.fine_steps_[{tail(h), head(h)}] = {e.id, 1, k, len};
                g_.fine_steps_[{head(h), tail(h)}] = {e.id, -1, len - 1 - k, len};
            }
            g_.edges_.push_back(std::move(e));
        }
    }
    for (int fine_v : order)
        for (int h : out_[fine_v]) g_.rotation_[coarse_of_fine_[fine_v]].push_back(letter_of_half_[h]);
}

void ArrangementBuilder::build_faces() {
    // signed areas of the fine face cycles; the unbounded one is the unique nonpositive one
    std::vector<Rational> area(fine_cycles_.size());
    for (std::size_t c = 0; c < fine_cycles_.size(); ++c) {
        Rational a = 0;
        for (int h : fine_cycles_[c]) a += cross(g_.fine_points_[tail(h)], g_.fine_points_[head(h)]);
        area[c] = a / 2;
    }
    outer_cycle_ = static_cast<int>(std::min_element(area.begin(), area.end()) - area.begin());
    for (std::size_t c = 0; c < fine_cycles_.size(); ++c) {
        if (static_cast<int>(c) == outer_cycle_) {
            if (sgn(area[c]) > 0) throw std::logic_error("arrangement: no unbounded face");
        } else if (sgn(area[c]) <= 0) {
            throw std::logic_error("arrangement: graph is not connected");
        }
    }

    auto coarse_word = [&](const std::vector<int>& cycle) {
        std::size_t start = 0;
        while (start < cycle.size() && position_of_half_[cycle[start]] != 0) ++start;
        EdgeWord w;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const int h = cycle[(start + k) % cycle.size()];
            if (position_of_half_[h] == 0) w.push_back(letter_of_half_[h]);
        }
        return w;
    };

    std::vector<int> face_of_cycle(fine_cycles_.size(), -1);
    for (std::size_t c = 0; c < fine_cycles_.size(); ++c) {
        if (static_cast<int>(c) == outer_cycle_) {
            g_.unbounded_ = coarse_word(fine_cycles_[c]);
            continue;
        }
        Face f;
        f.id = static_cast<int>(g_.faces_.size());
        f.area = area[c];
        for (int h : fine_cycles_[c]) f.polygon.push_back(g_.fine_points_[tail(h)]);
        EdgeWord w = coarse_word(fine_cycles_[c]);
        // canonical start: smallest vertex, ties broken by the rotated letter sequence
        const auto& ls = w.letters();
        int best_vertex = -1;
        std::size_t best = 0;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const int v = g_.start(ls[i]);
            if (best_vertex < 0 || g_.vertices_[v] < g_.vertices_[best_vertex] ||
                (v == best_vertex && w.rotated(i).letters() < w.rotated(best).letters())) {
                best_vertex = v;
                best = i;
            }
        }
        f.boundary = w.rotated(best);
        face_of_cycle[c] = f.id;
        g_.faces_.push_back(std::move(f));
    }
    fine_face_ = [&] {
        std::vector<int> ff(fine_face_.size());
        for (std::size_t h = 0; h < ff.size(); ++h) ff[h] = face_of_cycle[fine_face_[h]];
        return ff;
    }();
}

void ArrangementBuilder::probe_faces() {
    std::set<Rational> ys;
    for (const auto& p : g_.fine_points_) ys.insert(p.y);
    std::vector<Rational> yv(ys.begin(), ys.end());
    std::vector<bool> probed(g_.faces_.size(), false);
    std::size_t remaining = g_.faces_.size();
    for (std::size_t k = 0; k + 1 < yv.size() && remaining > 0; ++k) {
        const Rational ystar = (yv[k] + yv[k + 1]) / 2;
        std::vector<std::pair<Rational, int>> crossings;  // x, downward half-edge
        for (int e = 0; e < static_cast<int>(fine_edges_.size()); ++e) {
            const Point2& a = g_.fine_points_[fine_edges_[e].first];
            const Point2& b = g_.fine_points_[fine_edges_[e].second];
            const bool a_low = a.y < b.y;
            const Point2& lo = a_low ? a : b;
            const Point2& hi = a_low ? b : a;
            if (!(lo.y < ystar && ystar < hi.y)) continue;
            Rational x = lo.x + (ystar - lo.y) * (hi.x - lo.x) / (hi.y - lo.y);
            const int down = a_low ? 2 * e + 1 : 2 * e;  // from hi to lo
            crossings.emplace_back(std::move(x), down);
        }
        std::sort(crossings.begin(), crossings.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
            const int f = fine_face_[crossings[i].second];
            if (f < 0 || probed[f]) continue;
            auto& face = g_.faces_[f];
            face.interior_point = Point2((crossings[i].first + crossings[i + 1].first) / 2, ystar);
            face.probe_chord = {Point2(crossings[i].first, ystar), Point2(crossings[i + 1].first, ystar)};
            probed[f] = true;
            --remaining;
        }
    }
    if (remaining != 0) throw std::logic_error("arrangement: a bounded face has no scanline probe");

    // canonical enumeration: lowest, then leftmost probe
    std::vector<int> order(g_.faces_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& pa = g_.faces_[a].interior_point;
        const auto& pb = g_.faces_[b].interior_point;
        if (pa.y != pb.y) return pa.y < pb.y;
        return pa.x < pb.x;
    });
    std::vector<int> new_id(order.size());
    std::vector<Face> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        new_id[order[i]] = static_cast<int>(i);
        sorted.push_back(std::move(g_.faces_[order[i]]));
        sorted.back().id = static_cast<int>(i);
    }
    g_.faces_ = std::move(sorted);
    for (auto& f : fine_face_)
        if (f >= 0) f = new_id[f];

    for (auto& v : g_.face_left_) v.assign(g_.edges_.size(), -1);
    for (std::size_t h = 0; h < fine_face_.size(); ++h) {
        const EdgeLetter l = letter_of_half_[h];
        g_.face_left_[l.sign > 0 ? 0 : 1][l.edge] = fine_face_[h];
    }
}

Arrangement ArrangementBuilder::run(const std::vector<Loop>& loops, const std::vector<std::pair<Point2, Point2>>& extras) {
    if (loops.empty()) throw DomainError("no loops");
    std::vector<std::pair<std::size_t, std::size_t>> loop_range;
    for (const auto& l : loops) {
        const std::size_t begin = segs_.size();
        for (std::size_t s = 0; s < l.segment_count(); ++s) segs_.push_back({l.segment_start(s), l.segment_end(s)});
        loop_range.emplace_back(begin, segs_.size());
    }
    for (const auto& [a, b] : extras) {
        if (a == b) throw DomainError("degenerate extra segment");
        segs_.push_back({a, b});
    }
    split_segments();
    build_rings();
    trace_fine_faces();

    // fine paths of the input loops, and the points where they turn back
    const int origin_fine = g_.fine_index_.at(Point2(0, 0));
    std::vector<std::vector<int>> paths;
    std::set<int> coarse_points{origin_fine};
    for (const auto& [begin, end] : loop_range) {
        std::vector<int> path{origin_fine};
        for (std::size_t s = begin; s < end; ++s) path.insert(path.end(), seg_points_[s].begin() + 1, seg_points_[s].end());
        for (std::size_t k = 1; k + 1 < path.size(); ++k)
            if (path[k - 1] == path[k + 1]) coarse_points.insert(path[k]);
        if (path.size() >= 3 && path[path.size() - 2] == path[1]) coarse_points.insert(origin_fine);
        paths.push_back(std::move(path));
    }
    for (int p = 0; p < static_cast<int>(out_.size()); ++p)
        if (out_[p].size() != 2) coarse_points.insert(p);

    build_chains(coarse_points);
    build_faces();
    probe_faces();

    Arrangement arr;
    for (const auto& path : paths) {
        auto w = g_.fine_path_to_word(path);
        if (!w) throw std::logic_error("arrangement: input loop does not follow graph edges");
        arr.loop_words.push_back(std::move(*w));
    }
    arr.graph = std::move(g_);
    return arr;
}

Arrangement build_arrangement(const std::vector<Loop>& loops, const std::vector<std::pair<Point2, Point2>>& extra_segments) {
    ArrangementBuilder b;
    return b.run(loops, extra_segments);
}

std::vector<std::pair<Point2, Point2>> refinement_chords(const PlanarGraph& graph) {
    std::vector<std::pair<Point2, Point2>> chords;
    for (const auto& f : graph.faces()) chords.push_back(f.probe_chord);
    return chords;
}

} // namespace freeholo
