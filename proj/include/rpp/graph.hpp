#ifndef RPP_GRAPH_HPP
#define RPP_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rpp {

using Vertex = int;
using Weight = long long;

// One entry of an edge multiset: endpoints u <= v, a weight, and a
// multiplicity. Loops (u == v) are allowed and contribute 2 to the degree
// of their endpoint.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Weight w = 0;
    int mult = 1;

    bool operator==(const Edge &o) const = default;
};

// Multiset of weighted edges. Entries are kept normalized: u <= v, sorted
// by (u, v, w), equal keys merged by adding multiplicities. Parallel
// entries with different weights stay separate.
class EdgeMultiset {
public:
    EdgeMultiset() = default;
    explicit EdgeMultiset(std::vector<Edge> entries);

    void add(Vertex u, Vertex v, Weight w, int mult = 1);
    void add(const Edge &e);

    const std::vector<Edge> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    Weight total_weight() const;
    long long size() const;  // number of edges counting multiplicities

    // Multiset union / difference keyed on (u, v, w).
    EdgeMultiset unite(const EdgeMultiset &other) const;
    EdgeMultiset minus(const EdgeMultiset &other) const;
    bool contains(const EdgeMultiset &sub) const;

    // Sorted set of incident vertices V(R).
    std::vector<Vertex> vertex_set() const;

    bool operator==(const EdgeMultiset &o) const = default;

private:
    void normalize();
    std::vector<Edge> entries_;
};

// Weighted multigraph with dense 0-based vertex ids.
struct WeightedMultigraph {
    int vertex_count = 0;
    EdgeMultiset edges;
};

struct Components {
    std::vector<Vertex> vertices;  // incident vertices, sorted
    std::vector<int> component;    // component id per vertices[i]
    int count = 0;

    int id_of(Vertex v) const;  // -1 if v is not incident to any edge
};

// Connected components of the edge-induced graph. Vertices not incident
// to any edge do not appear.
Components connected_components(const EdgeMultiset &edges);

// Vertices of odd degree in the edge-induced graph, sorted ascending.
// A loop contributes 2 to the degree of its endpoint.
std::vector<Vertex> imbalanced_vertices(const EdgeMultiset &edges);

// Block-cut tree of a connected edge-induced graph. Every edge lies in
// exactly one block; loops are folded into a block containing their
// endpoint, so a vertex is a cut vertex iff it lies in >= 2 blocks.
struct BlockCutTree {
    std::vector<std::vector<Vertex>> blocks;           // vertex sets, sorted
    std::vector<std::vector<Edge>> block_edges;        // edge instances (mult 1)
    std::vector<Vertex> cut_vertices;                  // sorted

    bool is_cut_vertex(Vertex v) const;
    // Ids of blocks containing v.
    std::vector<int> blocks_containing(Vertex v) const;
};

// Throws std::runtime_error if the edge-induced graph is disconnected.
BlockCutTree block_cut_tree(const EdgeMultiset &edges);

// Closed walk v0, e1, v1, ..., ek, vk with v0 == vk. Edges are recorded
// as per-step weights; a step from vertices[i] to vertices[i+1] traverses
// an edge of weight step_weights[i].
struct ClosedWalk {
    std::vector<Vertex> vertices;      // empty, or size k+1 with front == back
    std::vector<Weight> step_weights;  // size k

    Weight weight() const;
    long long length() const { return static_cast<long long>(step_weights.size()); }
    bool empty() const { return vertices.empty(); }

    // Re-collects the traversed edges as a multiset.
    EdgeMultiset edges() const;
};

// Euler tour of a balanced, connected edge multiset (Hierholzer).
// Tie-breaking: the tour starts at the smallest incident vertex and always
// leaves over the unused edge with the smallest (neighbor, weight) pair.
// Throws std::runtime_error naming a violating vertex or component if the
// input is imbalanced or disconnected.
ClosedWalk euler_tour(const EdgeMultiset &edges);

}  // namespace rpp

#endif
