#include "rpp/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace rpp {

EdgeMultiset::EdgeMultiset(std::vector<Edge> entries) : entries_(std::move(entries)) {
    for (auto &e : entries_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.w < 0) throw std::runtime_error("negative edge weight");
        if (e.mult < 1) throw std::runtime_error("edge multiplicity must be positive");
    }
    normalize();
}

void EdgeMultiset::add(Vertex u, Vertex v, Weight w, int mult) {
    add(Edge{u, v, w, mult});
}

void EdgeMultiset::add(const Edge &e) {
    Edge x = e;
    if (x.u > x.v) std::swap(x.u, x.v);
    if (x.w < 0) throw std::runtime_error("negative edge weight");
    if (x.mult < 1) throw std::runtime_error("edge multiplicity must be positive");
    entries_.push_back(x);
    normalize();
}

void EdgeMultiset::normalize() {
    auto key_less = [](const Edge &a, const Edge &b) {
        return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    };
    std::sort(entries_.begin(), entries_.end(), key_less);
    std::vector<Edge> merged;
    for (const Edge &e : entries_) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v &&
            merged.back().w == e.w) {
            merged.back().mult += e.mult;
        } else {
            merged.push_back(e);
        }
    }
    entries_ = std::move(merged);
}

Weight EdgeMultiset::total_weight() const {
    Weight s = 0;
    for (const Edge &e : entries_) s += e.w * e.mult;
    return s;
}

long long EdgeMultiset::size() const {
    long long s = 0;
    for (const Edge &e : entries_) s += e.mult;
    return s;
}

EdgeMultiset EdgeMultiset::unite(const EdgeMultiset &other) const {
    std::vector<Edge> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return EdgeMultiset(std::move(all));
}

EdgeMultiset EdgeMultiset::minus(const EdgeMultiset &other) const {
    std::map<std::tuple<Vertex, Vertex, Weight>, int> counts;
    for (const Edge &e : entries_) counts[{e.u, e.v, e.w}] += e.mult;
    for (const Edge &e : other.entries_) counts[{e.u, e.v, e.w}] -= e.mult;
    std::vector<Edge> rest;
    for (const auto &[k, m] : counts)
        if (m > 0) rest.push_back(Edge{std::get<0>(k), std::get<1>(k), std::get<2>(k), m});
    return EdgeMultiset(std::move(rest));
}

bool EdgeMultiset::contains(const EdgeMultiset &sub) const {
    std::map<std::tuple<Vertex, Vertex, Weight>, int> counts;
    for (const Edge &e : entries_) counts[{e.u, e.v, e.w}] += e.mult;
    for (const Edge &e : sub.entries_) {
        auto it = counts.find({e.u, e.v, e.w});
        if (it == counts.end() || it->second < e.mult) return false;
    }
    return true;
}

std::vector<Vertex> EdgeMultiset::vertex_set() const {
    std::vector<Vertex> vs;
    for (const Edge &e : entries_) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

int Components::id_of(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return component[it - vertices.begin()];
}

namespace {

// Adjacency over the incident vertices of an edge multiset, with edge
// instances expanded by multiplicity. Instance order follows the
// normalized entry order, giving deterministic tie-breaking.
struct Adjacency {
    std::vector<Vertex> vertices;  // sorted incident vertices
    struct Arc {
        int to;        // index into vertices
        Weight w;
        int instance;  // id of the edge instance
    };
    std::vector<std::vector<Arc>> adj;       // per vertex index
    std::vector<Edge> instances;             // mult == 1 each

    int index_of(Vertex v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        return static_cast<int>(it - vertices.begin());
    }
};

Adjacency build_adjacency(const EdgeMultiset &edges) {
    Adjacency a;
    a.vertices = edges.vertex_set();
    a.adj.resize(a.vertices.size());
    for (const Edge &e : edges.entries()) {
        for (int k = 0; k < e.mult; ++k) {
            int id = static_cast<int>(a.instances.size());
            a.instances.push_back(Edge{e.u, e.v, e.w, 1});
            int iu = a.index_of(e.u), iv = a.index_of(e.v);
            a.adj[iu].push_back({iv, e.w, id});
            if (iu != iv) a.adj[iv].push_back({iu, e.w, id});
        }
    }
    for (auto &arcs : a.adj)
        std::sort(arcs.begin(), arcs.end(), [&](const Adjacency::Arc &x, const Adjacency::Arc &y) {
            return std::tie(x.to, x.w, x.instance) < std::tie(y.to, y.w, y.instance);
        });
    return a;
}

}  // namespace

Components connected_components(const EdgeMultiset &edges) {
    Adjacency a = build_adjacency(edges);
    Components c;
    c.vertices = a.vertices;
    c.component.assign(a.vertices.size(), -1);
    int next = 0;
    std::vector<int> stack;
    for (size_t s = 0; s < a.vertices.size(); ++s) {
        if (c.component[s] != -1) continue;
        c.component[s] = next;
        stack.push_back(static_cast<int>(s));
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto &arc : a.adj[x])
                if (c.component[arc.to] == -1) {
                    c.component[arc.to] = next;
                    stack.push_back(arc.to);
                }
        }
        ++next;
    }
    c.count = next;
    return c;
}

std::vector<Vertex> imbalanced_vertices(const EdgeMultiset &edges) {
    std::map<Vertex, long long> degree;
    for (const Edge &e : edges.entries()) {
        if (e.u == e.v) {
            degree[e.u] += 2LL * e.mult;
        } else {
            degree[e.u] += e.mult;
            degree[e.v] += e.mult;
        }
    }
    std::vector<Vertex> odd;
    for (const auto &[v, d] : degree)
        if (d % 2 != 0) odd.push_back(v);
    return odd;
}

bool BlockCutTree::is_cut_vertex(Vertex v) const {
    return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
}

std::vector<int> BlockCutTree::blocks_containing(Vertex v) const {
    std::vector<int> ids;
    for (size_t i = 0; i < blocks.size(); ++i)
        if (std::binary_search(blocks[i].begin(), blocks[i].end(), v))
            ids.push_back(static_cast<int>(i));
    return ids;
}

BlockCutTree block_cut_tree(const EdgeMultiset &edges) {
    Components comps = connected_components(edges);
    if (comps.count > 1)
        throw std::runtime_error("block_cut_tree: input is disconnected (" +
                                 std::to_string(comps.count) + " components)");

    Adjacency a = build_adjacency(edges);
    int n = static_cast<int>(a.vertices.size());

    BlockCutTree t;
    if (n == 0) return t;

    // Iterative Tarjan biconnected components over non-loop edge instances.
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> is_cut(n, 0);
    std::vector<int> edge_stack;  // instance ids
    std::vector<char> instance_used(a.instances.size(), 0);

    struct Frame {
        int v;
        int parent_instance;
        size_t arc_idx;
        int children;
    };
    int timer = 0;
    std::vector<Frame> st;
    int root = 0;
    disc[root] = low[root] = timer++;
    st.push_back({root, -1, 0, 0});

    auto pop_block = [&](int until_instance) {
        std::vector<Edge> insts;
        while (true) {
            int id = edge_stack.back();
            edge_stack.pop_back();
            insts.push_back(a.instances[id]);
            if (id == until_instance) break;
        }
        t.block_edges.push_back(std::move(insts));
    };

    while (!st.empty()) {
        Frame &f = st.back();
        int vi = f.v;
        bool descended = false;
        while (f.arc_idx < a.adj[vi].size()) {
            const auto &arc = a.adj[vi][f.arc_idx];
            ++f.arc_idx;
            if (arc.to == vi) continue;                       // loops handled later
            if (arc.instance == f.parent_instance) continue;  // tree edge back up
            if (instance_used[arc.instance]) continue;
            instance_used[arc.instance] = 1;
            if (disc[arc.to] == -1) {
                edge_stack.push_back(arc.instance);
                ++f.children;
                disc[arc.to] = low[arc.to] = timer++;
                st.push_back({arc.to, arc.instance, 0, 0});
                descended = true;
                break;
            } else {
                edge_stack.push_back(arc.instance);
                low[vi] = std::min(low[vi], disc[arc.to]);
            }
        }
        if (descended) continue;
        // finished vi
        st.pop_back();
        if (!st.empty()) {
            Frame &pf = st.back();
            low[pf.v] = std::min(low[pf.v], low[vi]);
            if (low[vi] >= disc[pf.v]) pop_block(f.parent_instance);
        }
    }
    if (!edge_stack.empty()) {
        // remaining edges form the root's last block
        std::vector<Edge> insts;
        for (int id : edge_stack) insts.push_back(a.instances[id]);
        edge_stack.clear();
        t.block_edges.push_back(std::move(insts));
    }

    // Derive vertex sets; fold loops into a block containing their endpoint.
    for (auto &insts : t.block_edges) {
        std::vector<Vertex> vs;
        for (const Edge &e : insts) {
            vs.push_back(e.u);
            vs.push_back(e.v);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        t.blocks.push_back(std::move(vs));
    }
    // Loops: attach each loop instance to the first block containing its
    // endpoint; a lone vertex with only loops forms its own block.
    for (size_t id = 0; id < a.instances.size(); ++id) {
        const Edge &e = a.instances[id];
        if (e.u != e.v) continue;
        int target = -1;
        for (size_t b = 0; b < t.blocks.size(); ++b)
            if (std::binary_search(t.blocks[b].begin(), t.blocks[b].end(), e.u)) {
                target = static_cast<int>(b);
                break;
            }
        if (target == -1) {
            t.blocks.push_back({e.u});
            t.block_edges.push_back({e});
        } else {
            t.block_edges[target].push_back(e);
        }
    }

    // A vertex is a cut vertex iff it belongs to >= 2 blocks.
    std::map<Vertex, int> block_count;
    for (const auto &b : t.blocks)
        for (Vertex v : b) ++block_count[v];
    for (const auto &[v, cnt] : block_count)
        if (cnt >= 2) t.cut_vertices.push_back(v);
    return t;
}

Weight ClosedWalk::weight() const {
    Weight s = 0;
    for (Weight w : step_weights) s += w;
    return s;
}

EdgeMultiset ClosedWalk::edges() const {
    std::vector<Edge> es;
    for (size_t i = 0; i < step_weights.size(); ++i)
        es.push_back(Edge{vertices[i], vertices[i + 1], step_weights[i], 1});
    return EdgeMultiset(std::move(es));
}

ClosedWalk euler_tour(const EdgeMultiset &edges) {
    ClosedWalk walk;
    if (edges.empty()) return walk;

    std::vector<Vertex> odd = imbalanced_vertices(edges);
    if (!odd.empty())
        throw std::runtime_error("euler_tour: vertex " + std::to_string(odd.front()) +
                                 " has odd degree");
    Components comps = connected_components(edges);
    if (comps.count > 1)
        throw std::runtime_error("euler_tour: input is disconnected (" +
                                 std::to_string(comps.count) + " components); vertex " +
                                 std::to_string(comps.vertices.front()) +
                                 " is separated from vertex " +
                                 std::to_string(comps.vertices[std::find(comps.component.begin(),
                                                                         comps.component.end(), 1) -
                                                              comps.component.begin()]));

    Adjacency a = build_adjacency(edges);
    std::vector<char> used(a.instances.size(), 0);
    std::vector<size_t> next_arc(a.vertices.size(), 0);

    // Hierholzer: maintain a vertex stack, splice cycles as they close.
    std::vector<int> stack = {0};
    std::vector<int> tour_idx;            // vertex indices in reverse
    std::vector<int> tour_instances;      // edge instance per step, reverse
    std::vector<int> edge_trail;          // instance taken to reach stack top
    edge_trail.push_back(-1);
    while (!stack.empty()) {
        int x = stack.back();
        size_t &i = next_arc[x];
        while (i < a.adj[x].size() && used[a.adj[x][i].instance]) ++i;
        if (i == a.adj[x].size()) {
            tour_idx.push_back(x);
            if (edge_trail.back() != -1) tour_instances.push_back(edge_trail.back());
            stack.pop_back();
            edge_trail.pop_back();
        } else {
            const auto &arc = a.adj[x][i];
            used[arc.instance] = 1;
            stack.push_back(arc.to);
            edge_trail.push_back(arc.instance);
        }
    }
    std::reverse(tour_idx.begin(), tour_idx.end());
    std::reverse(tour_instances.begin(), tour_instances.end());

    for (int idx : tour_idx) walk.vertices.push_back(a.vertices[idx]);
    for (int inst : tour_instances) walk.step_weights.push_back(a.instances[inst].w);
    return walk;
}

}  // namespace rpp
