#include "rpp/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rpp {

namespace {

// Maximum weighted matching in a general graph, O(n^3): primal-dual
// blossom algorithm over an explicit adjacency matrix. Vertices are
// 1-indexed; ids above n denote contracted blossoms. Weights must be
// non-negative; w == 0 means "no edge".
class WeightedBlossom {
public:
    explicit WeightedBlossom(int n)
        : n_(n),
          cap_(2 * n + 1),
          g_(cap_ + 1, std::vector<Arc>(cap_ + 1)),
          lab_(cap_ + 1, 0),
          match_(cap_ + 1, 0),
          slack_(cap_ + 1, 0),
          st_(cap_ + 1, 0),
          pa_(cap_ + 1, 0),
          s_(cap_ + 1, -1),
          vis_(cap_ + 1, 0),
          flower_(cap_ + 1),
          flower_from_(cap_ + 1, std::vector<int>(n_ + 1, 0)) {
        for (int u = 0; u <= cap_; ++u)
            for (int v = 0; v <= cap_; ++v) g_[u][v] = Arc{u, v, 0};
    }

    void set_weight(int u, int v, Weight w) {
        g_[u][v].w = w;
        g_[v][u].w = w;
    }

    // Returns the mate array (1-indexed, 0 = unmatched).
    std::vector<int> solve() {
        n_x_ = n_;
        std::fill(pa_.begin(), pa_.end(), 0);
        for (int u = 0; u <= n_; ++u) {
            st_[u] = u;
            flower_[u].clear();
        }
        Weight w_max = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) {
                flower_from_[u][v] = (u == v ? u : 0);
                w_max = std::max(w_max, g_[u][v].w);
            }
        for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
        while (phase()) {
        }
        return std::vector<int>(match_.begin() + 1, match_.begin() + n_ + 1);
    }

private:
    struct Arc {
        int u = 0, v = 0;
        Weight w = 0;
    };

    Weight delta(const Arc &e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || delta(g_[u][x]) < delta(g_[slack_[x]][x])) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int i : flower_[x]) q_push(i);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int i : flower_[x]) set_st(i, b);
    }

    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                                  flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) return;
        Arc e = g_[u][v];
        int xr = flower_from_[u][e.u];
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++tick_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis_[u] == tick_) return u;
            vis_[u] = tick_;
            u = st_[match_[u]];
            if (u) u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) ++b;
        if (b > n_x_) ++n_x_;
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
        for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; ++x)
                if (g_[b][x].w == 0 || delta(g_[xs][x]) < delta(g_[b][x])) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from_[xs][x]) flower_from_[b][x] = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int i : flower_[b]) set_st(i, i);
        int xr = flower_from_[b][g_[b][pa_[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i], xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
            int xs = flower_[b][i];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Arc &e) {
        int u = st_[e.u], v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            s_[nu] = 0;
            q_push(nu);
        } else if (s_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool phase() {
        std::fill(s_.begin() + 1, s_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                s_[x] = 0;
                q_push(x);
            }
        if (q_.empty()) return false;
        for (;;) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (s_[st_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v)
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
            }
            Weight d = std::numeric_limits<Weight>::max();
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x]) {
                    if (s_[x] == -1)
                        d = std::min(d, delta(g_[slack_[x]][x]));
                    else if (s_[x] == 0)
                        d = std::min(d, delta(g_[slack_[x]][x]) / 2);
                }
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d) return false;
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b) {
                    if (s_[b] == 0)
                        lab_[b] += d * 2;
                    else if (s_[b] == 1)
                        lab_[b] -= d * 2;
                }
            q_.clear();
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    delta(g_[slack_[x]][x]) == 0)
                    if (on_found_edge(g_[slack_[x]][x])) return true;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
        }
    }

    int n_, cap_, n_x_ = 0, tick_ = 0;
    std::vector<std::vector<Arc>> g_;
    std::vector<Weight> lab_;
    std::vector<int> match_, slack_, st_, pa_, s_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> q_;
};

}  // namespace

Matching min_weight_perfect_matching(const std::vector<Vertex> &vertices,
                                     const CostOracle &cost) {
    if (vertices.size() % 2 != 0)
        throw std::runtime_error("perfect matching requires an even number of vertices");
    Matching m;
    if (vertices.empty()) return m;
    std::vector<Vertex> vs = vertices;
    std::sort(vs.begin(), vs.end());
    int n = static_cast<int>(vs.size());
    if (n == 2) {
        m.pairs = {{vs[0], vs[1]}};
        m.total_weight = cost(vs[0], vs[1]);
        return m;
    }

    // Minimize by maximizing big - cost on the complete graph; big is
    // large enough that maximum weight forces a perfect matching.
    Weight max_cost = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) max_cost = std::max(max_cost, cost(vs[i], vs[j]));
    Weight big = max_cost * n + 1;

    WeightedBlossom blossom(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            blossom.set_weight(i + 1, j + 1, big - cost(vs[i], vs[j]));
    std::vector<int> mate = blossom.solve();

    for (int i = 0; i < n; ++i) {
        if (mate[i] == 0)
            throw std::runtime_error("blossom matching failed to produce a perfect matching");
        int j = mate[i] - 1;
        if (j > i) {
            m.pairs.push_back({vs[i], vs[j]});
            m.total_weight += cost(vs[i], vs[j]);
        }
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    return m;
}

Matching greedy_matching(std::vector<Vertex> vertices) {
    return greedy_matching(std::move(vertices), [](Vertex, Vertex) { return Weight{0}; });
}

Matching greedy_matching(std::vector<Vertex> vertices, const CostOracle &cost) {
    if (vertices.size() % 2 != 0)
        throw std::runtime_error("perfect matching requires an even number of vertices");
    std::sort(vertices.begin(), vertices.end());
    Matching m;
    for (size_t i = 0; i + 1 < vertices.size(); i += 2) {
        m.pairs.push_back({vertices[i], vertices[i + 1]});
        m.total_weight += cost(vertices[i], vertices[i + 1]);
    }
    return m;
}

}  // namespace rpp
