#include "rpp/metric.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace rpp {

namespace {
constexpr Weight kUnreachable = std::numeric_limits<Weight>::max() / 4;
}

MetricClosure::MetricClosure(const WeightedMultigraph &graph, std::vector<Vertex> terminals)
    : original_n_(graph.vertex_count), terminals_(std::move(terminals)) {
    std::sort(terminals_.begin(), terminals_.end());
    terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
    if (terminals_.empty()) throw std::runtime_error("metric closure: empty terminal set");
    for (Vertex t : terminals_)
        if (t < 0 || t >= original_n_)
            throw std::runtime_error("metric closure: terminal " + std::to_string(t) +
                                     " outside vertex range");

    terminal_index_.assign(original_n_, -1);
    for (size_t i = 0; i < terminals_.size(); ++i) terminal_index_[terminals_[i]] = static_cast<int>(i);

    // Min-weight simple adjacency; loops and heavier parallel edges are
    // irrelevant for shortest paths.
    std::vector<std::vector<std::pair<Vertex, Weight>>> adj(original_n_);
    {
        std::map<std::pair<Vertex, Vertex>, Weight> min_w;
        for (const Edge &e : graph.edges.entries()) {
            if (e.u == e.v) continue;
            auto key = std::minmax(e.u, e.v);
            auto it = min_w.find({key.first, key.second});
            if (it == min_w.end() || e.w < it->second) min_w[{key.first, key.second}] = e.w;
        }
        for (const auto &[uv, w] : min_w) {
            adj[uv.first].push_back({uv.second, w});
            adj[uv.second].push_back({uv.first, w});
        }
        for (auto &a : adj) std::sort(a.begin(), a.end());
    }

    size_t t = terminals_.size();
    dist_.assign(t, std::vector<Weight>(t, kUnreachable));
    pred_.assign(t, {});
    pred_w_.assign(t, {});

    for (size_t s = 0; s < t; ++s) {
        std::vector<Weight> d(original_n_, kUnreachable);
        std::vector<Vertex> pred(original_n_, -1);
        std::vector<Weight> predw(original_n_, 0);
        using Item = std::pair<Weight, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        Vertex src = terminals_[s];
        d[src] = 0;
        pq.push({0, src});
        while (!pq.empty()) {
            auto [dx, x] = pq.top();
            pq.pop();
            if (dx != d[x]) continue;
            for (auto [y, w] : adj[x]) {
                Weight nd = dx + w;
                if (nd < d[y]) {
                    d[y] = nd;
                    pred[y] = x;
                    predw[y] = w;
                    pq.push({nd, y});
                } else if (nd == d[y] && pred[y] != -1 && x < pred[y]) {
                    pred[y] = x;
                    predw[y] = w;
                }
            }
        }
        for (size_t j = 0; j < t; ++j) dist_[s][j] = d[terminals_[j]];
        pred_[s] = std::move(pred);
        pred_w_[s] = std::move(predw);
    }

    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j)
            if (dist_[i][j] >= kUnreachable)
                throw std::runtime_error("metric closure: terminal " +
                                         std::to_string(terminals_[i]) +
                                         " cannot reach terminal " +
                                         std::to_string(terminals_[j]));
}

MetricClosure::MetricClosure(std::vector<Vertex> terminals,
                             std::vector<std::vector<Weight>> dist, int original_vertex_count)
    : original_n_(original_vertex_count), terminals_(std::move(terminals)), dist_(std::move(dist)) {
    if (terminals_.empty()) throw std::runtime_error("metric closure: empty terminal set");
    if (!std::is_sorted(terminals_.begin(), terminals_.end()))
        throw std::runtime_error("metric closure: terminals must be sorted");
    if (dist_.size() != terminals_.size())
        throw std::runtime_error("metric closure: distance matrix size mismatch");
    terminal_index_.assign(original_n_, -1);
    for (size_t i = 0; i < terminals_.size(); ++i) terminal_index_[terminals_[i]] = static_cast<int>(i);
}

bool MetricClosure::is_terminal(Vertex v) const {
    return v >= 0 && v < original_n_ && terminal_index_[v] != -1;
}

int MetricClosure::terminal_index(Vertex v) const {
    if (v < 0 || v >= original_n_) return -1;
    return terminal_index_[v];
}

Weight MetricClosure::distance(Vertex a, Vertex b) const {
    int ia = terminal_index(a), ib = terminal_index(b);
    if (ia < 0 || ib < 0)
        throw std::runtime_error("metric distance queried for non-terminal vertex");
    return dist_[ia][ib];
}

std::vector<std::pair<Vertex, Weight>> MetricClosure::path_steps(Vertex a, Vertex b) const {
    int ia = terminal_index(a);
    if (ia < 0 || terminal_index(b) < 0)
        throw std::runtime_error("metric path queried for non-terminal vertex");
    if (!has_expansion())
        throw std::runtime_error("metric path: closure has no expansion data");
    std::vector<std::pair<Vertex, Weight>> rev;
    Vertex x = b;
    while (x != a) {
        Vertex p = pred_[ia][x];
        if (p == -1) throw std::runtime_error("metric path: unreachable pair");
        rev.push_back({x, pred_w_[ia][x]});
        x = p;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

MetricRpp metric_close(const RppInstance &instance, const std::vector<Vertex> &terminals) {
    for (const Edge &e : instance.required.entries())
        if (std::find(terminals.begin(), terminals.end(), e.u) == terminals.end() ||
            std::find(terminals.begin(), terminals.end(), e.v) == terminals.end())
            throw std::runtime_error("metric closure: required edge endpoint not a terminal");
    MetricRpp m;
    m.closure = std::make_shared<MetricClosure>(instance.graph, terminals);
    m.vertices = m.closure->terminals();
    m.required = instance.required;
    return m;
}

MetricRpp metric_close(const RppInstance &instance) {
    return metric_close(instance, instance.required.vertex_set());
}

ClosedWalk expand_walk(const MetricClosure &metric, const ClosedWalk &walk) {
    ClosedWalk out;
    if (walk.empty()) return out;
    out.vertices.push_back(walk.vertices.front());
    for (size_t i = 0; i < walk.step_weights.size(); ++i) {
        Vertex a = walk.vertices[i], b = walk.vertices[i + 1];
        Weight w = walk.step_weights[i];
        if (a != b && w == metric.distance(a, b)) {
            for (auto [v, sw] : metric.path_steps(a, b)) {
                out.vertices.push_back(v);
                out.step_weights.push_back(sw);
            }
        } else {
            // traversed at its own weight: keep as a direct original edge
            out.vertices.push_back(b);
            out.step_weights.push_back(w);
        }
    }
    return out;
}

bool satisfies_triangle_inequality(const MetricClosure &metric) {
    const auto &ts = metric.terminals();
    for (Vertex a : ts)
        for (Vertex b : ts)
            for (Vertex c : ts)
                if (metric.distance(a, c) > metric.distance(a, b) + metric.distance(b, c))
                    return false;
    return true;
}

}  // namespace rpp
