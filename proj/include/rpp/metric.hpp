#ifndef RPP_METRIC_HPP
#define RPP_METRIC_HPP

#include <memory>
#include <vector>

#include "rpp/graph.hpp"
#include "rpp/instance.hpp"

namespace rpp {

// Complete metric on a terminal set: shortest-path distances between all
// terminal pairs, plus per-source predecessor trees sufficient to expand
// any metric edge back into a walk in the original graph.
//
// Among equal-weight shortest paths, the predecessor tree prefers the
// smallest predecessor id, so path reconstruction is deterministic.
class MetricClosure {
public:
    // Terminals must be nonempty and mutually reachable in the graph;
    // otherwise throws naming two unreachable vertices.
    MetricClosure(const WeightedMultigraph &graph, std::vector<Vertex> terminals);

    // Direct construction from an explicit distance matrix (indexed like
    // the sorted terminal list). No expansion data; path_steps throws.
    // Used for weight-reduced instances.
    MetricClosure(std::vector<Vertex> terminals, std::vector<std::vector<Weight>> dist,
                  int original_vertex_count);

    bool has_expansion() const { return !pred_.empty(); }

    const std::vector<Vertex> &terminals() const { return terminals_; }
    int original_vertex_count() const { return original_n_; }
    bool is_terminal(Vertex v) const;
    int terminal_index(Vertex v) const;  // -1 if not a terminal

    // Distance between two terminals, by original vertex id.
    Weight distance(Vertex a, Vertex b) const;

    // One shortest path a..b in the original graph (original vertex ids,
    // with per-step weights of the traversed original edges).
    std::vector<std::pair<Vertex, Weight>> path_steps(Vertex a, Vertex b) const;

private:
    int original_n_;
    std::vector<Vertex> terminals_;       // sorted original ids
    std::vector<int> terminal_index_;     // per original vertex, -1 if none
    std::vector<std::vector<Weight>> dist_;  // t x t
    // Per terminal source: predecessor vertex and weight of the arriving
    // edge, for every reachable original vertex.
    std::vector<std::vector<Vertex>> pred_;
    std::vector<std::vector<Weight>> pred_w_;
};

// An RPP instance over a metric closure: the graph is the complete graph
// on `vertices` with the closure's distances; required edges carry their
// own weights (>= the metric distance for original edges, equal to it for
// edges introduced by reductions).
struct MetricRpp {
    std::shared_ptr<const MetricClosure> closure;
    std::vector<Vertex> vertices;  // sorted; subset of closure terminals
    EdgeMultiset required;

    Weight dist(Vertex a, Vertex b) const { return closure->distance(a, b); }
    int component_count() const { return connected_components(required).count; }
    std::vector<Vertex> imbalanced() const { return imbalanced_vertices(required); }
};

// Builds the complete metric instance on the given terminal set. All
// required edges must have both endpoints among the terminals (the
// intended call passes V(R)).
MetricRpp metric_close(const RppInstance &instance, const std::vector<Vertex> &terminals);

// Convenience: metric closure on V(R).
MetricRpp metric_close(const RppInstance &instance);

// Expands a closed walk over terminals into a closed walk in the original
// graph with exactly the same weight. Each step of the input walk is
// replaced by one shortest path between its endpoints; steps whose weight
// does not equal the metric distance (required edges traversed at their
// own weight) are kept as direct original edges.
ClosedWalk expand_walk(const MetricClosure &metric, const ClosedWalk &walk);

// Exhaustive triangle-inequality check, O(t^3); used in tests.
bool satisfies_triangle_inequality(const MetricClosure &metric);

}  // namespace rpp

#endif
