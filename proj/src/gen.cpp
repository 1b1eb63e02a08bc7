#include "rpp/gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace rpp {

namespace {

struct Points {
    std::vector<long long> x, y;

    Weight dist(int i, int j) const {
        double dx = double(x[i] - x[j]), dy = double(y[i] - y[j]);
        return static_cast<Weight>(std::llround(std::sqrt(dx * dx + dy * dy)));
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// n random grid points, d-nearest-neighbor edges, then cheapest patch
// edges until connected.
std::vector<Edge> geometric_base(int n, int d, std::mt19937_64 &rng, Points &pts) {
    std::uniform_int_distribution<long long> coord(0, 1000);
    pts.x.resize(n);
    pts.y.resize(n);
    for (int i = 0; i < n; ++i) {
        pts.x[i] = coord(rng);
        pts.y[i] = coord(rng);
    }

    std::set<std::pair<int, int>> keys;
    UnionFind uf(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        auto closer = [&](int a, int b) {
            Weight da = a == i ? -1 : pts.dist(i, a), db = b == i ? -1 : pts.dist(i, b);
            return std::tie(da, a) < std::tie(db, b);
        };
        int k = std::min(d + 1, n);  // +1 because i itself sorts first
        std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);
        for (int t = 0; t < k; ++t) {
            int j = order[t];
            if (j == i) continue;
            keys.insert(std::minmax(i, j));
            uf.unite(i, j);
        }
    }
    // connectivity patch: cheapest links between components, Kruskal-style
    while (true) {
        bool connected = true;
        for (int i = 1; i < n && connected; ++i)
            if (uf.find(i) != uf.find(0)) connected = false;
        if (connected) break;
        std::map<std::pair<int, int>, std::tuple<Weight, int, int>> best;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int a = uf.find(i), b = uf.find(j);
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                Weight w = pts.dist(i, j);
                auto it = best.find({a, b});
                if (it == best.end() || w < std::get<0>(it->second))
                    best[{a, b}] = {w, i, j};
            }
        std::vector<std::tuple<Weight, int, int>> links;
        for (const auto &[k, l] : best) links.push_back(l);
        std::sort(links.begin(), links.end());
        for (auto [w, i, j] : links)
            if (uf.unite(i, j)) keys.insert(std::minmax(i, j));
    }

    std::vector<Edge> edges;
    edges.reserve(keys.size());
    for (auto [u, v] : keys) edges.push_back(Edge{u, v, pts.dist(u, v), 1});
    return edges;
}

}  // namespace

RppInstance gen_geometric(int n, int d, int required_percent, std::uint64_t seed,
                          const std::string &name) {
    if (n < 2 || d < 1) throw std::runtime_error("gen: need n >= 2 and d >= 1");
    if (required_percent < 0 || required_percent > 100)
        throw std::runtime_error("gen: required percentage must be in 0..100");
    std::mt19937_64 rng(seed);
    Points pts;
    std::vector<Edge> edges = geometric_base(n, d, rng, pts);

    std::uniform_int_distribution<int> pct(0, 99);
    std::vector<Edge> required;
    for (const Edge &e : edges)
        if (pct(rng) < required_percent) required.push_back(e);

    RppInstance inst;
    inst.name = name;
    inst.graph.vertex_count = n;
    inst.graph.edges = EdgeMultiset(std::move(edges));
    inst.required = EdgeMultiset(std::move(required));
    return inst;
}

RppInstance gen_trails(int n, int trails, int trail_length, std::uint64_t seed,
                       const std::string &name) {
    if (n < 2 || trails < 1 || trail_length < 1)
        throw std::runtime_error("gen: need n >= 2, trails >= 1, trail length >= 1");
    std::mt19937_64 rng(seed);
    Points pts;
    std::vector<Edge> edges = geometric_base(n, 3, rng, pts);

    std::vector<std::vector<std::pair<int, size_t>>> adj(n);  // (neighbor, edge index)
    for (size_t k = 0; k < edges.size(); ++k) {
        adj[edges[k].u].push_back({edges[k].v, k});
        adj[edges[k].v].push_back({edges[k].u, k});
    }

    std::vector<char> is_required(edges.size(), 0);
    std::vector<char> visited(n, 0);
    std::vector<int> visited_list;
    std::uniform_int_distribution<int> pick_vertex(0, n - 1);
    for (int t = 0; t < trails; ++t) {
        // later trails depart from the network built so far, keeping the
        // required subgraph connected
        int cur = -1;
        std::vector<int> starts;
        for (int v : visited_list)
            for (auto [to, k] : adj[v])
                if (!is_required[k]) {
                    starts.push_back(v);
                    break;
                }
        if (starts.empty())
            cur = pick_vertex(rng);
        else
            cur = starts[std::uniform_int_distribution<size_t>(0, starts.size() - 1)(rng)];
        if (!visited[cur]) {
            visited[cur] = 1;
            visited_list.push_back(cur);
        }
        for (int step = 0; step < trail_length; ++step) {
            std::vector<std::pair<int, size_t>> options;
            for (auto [to, k] : adj[cur])
                if (!is_required[k]) options.push_back({to, k});
            if (options.empty()) {
                // deadhead through an already-plowed street to reach new ones
                auto [to, k] = adj[cur][std::uniform_int_distribution<size_t>(
                    0, adj[cur].size() - 1)(rng)];
                cur = to;
                continue;
            }
            auto [to, k] = options[std::uniform_int_distribution<size_t>(
                0, options.size() - 1)(rng)];
            is_required[k] = 1;
            cur = to;
            if (!visited[cur]) {
                visited[cur] = 1;
                visited_list.push_back(cur);
            }
        }
    }

    // Streets are plowed in both directions: pair up odd-degree junctions
    // and duplicate the required edges along a cheapest required path
    // between them, until only the route endpoints stay odd.
    std::vector<int> copies(edges.size(), 0);
    for (size_t k = 0; k < edges.size(); ++k) copies[k] = is_required[k] ? 1 : 0;
    auto odd_vertices = [&]() {
        std::vector<long long> deg(n, 0);
        for (size_t k = 0; k < edges.size(); ++k) {
            deg[edges[k].u] += copies[k];
            deg[edges[k].v] += copies[k];
        }
        std::vector<int> odd;
        for (int v = 0; v < n; ++v)
            if (deg[v] % 2) odd.push_back(v);
        return odd;
    };
    // Dijkstra over required edges only, from s to the nearest other odd
    // vertex; returns the edge indices of that path.
    auto repair_path = [&](int s, const std::vector<char> &is_odd) {
        const Weight inf = std::numeric_limits<Weight>::max();
        std::vector<Weight> dist(n, inf);
        std::vector<size_t> via(n, edges.size());
        std::vector<int> from(n, -1);
        std::priority_queue<std::pair<Weight, int>, std::vector<std::pair<Weight, int>>,
                            std::greater<>> pq;
        dist[s] = 0;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (d != dist[v]) continue;
            for (auto [to, k] : adj[v]) {
                if (!copies[k]) continue;
                Weight nd = d + edges[k].w;
                if (nd < dist[to]) {
                    dist[to] = nd;
                    via[to] = k;
                    from[to] = v;
                    pq.push({nd, to});
                }
            }
        }
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (v != s && is_odd[v] && dist[v] < inf && (best < 0 || dist[v] < dist[best]))
                best = v;
        std::vector<size_t> path;
        for (int v = best; v >= 0 && v != s; v = from[v]) path.push_back(via[v]);
        return path;
    };
    std::vector<int> odd = odd_vertices();
    while (static_cast<int>(odd.size()) > 2 * trails) {
        std::vector<char> is_odd(n, 0);
        for (int v : odd) is_odd[v] = 1;
        std::vector<size_t> path = repair_path(odd.front(), is_odd);
        if (path.empty()) break;
        for (size_t k : path) ++copies[k];
        odd = odd_vertices();
    }

    std::vector<Edge> required;
    for (size_t k = 0; k < edges.size(); ++k) {
        if (copies[k] > 1) edges[k].mult = copies[k];  // one lane per traversal
        if (copies[k]) {
            Edge e = edges[k];
            e.mult = copies[k];
            required.push_back(e);
        }
    }

    RppInstance inst;
    inst.name = name;
    inst.graph.vertex_count = n;
    inst.graph.edges = EdgeMultiset(std::move(edges));
    inst.required = EdgeMultiset(std::move(required));
    return inst;
}

}  // namespace rpp
