#include "rpp/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rpp/matching.hpp"
#include "rpp/weightred.hpp"

namespace rpp {

EdgeMultiset connecting_set(const MetricRpp &instance) {
    Components comps = connected_components(instance.required);
    EdgeMultiset t;
    if (comps.count <= 1) return t;

    // cheapest realizing vertex pair for every component pair
    struct Link {
        Weight w;
        int ci, cj;
        Vertex u, v;
    };
    std::map<std::pair<int, int>, Link> best;
    size_t n = comps.vertices.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            int ci = comps.component[i], cj = comps.component[j];
            if (ci == cj) continue;
            if (ci > cj) std::swap(ci, cj);
            Vertex u = comps.vertices[i], v = comps.vertices[j];
            Weight w = instance.dist(u, v);
            auto it = best.find({ci, cj});
            if (it == best.end() || w < it->second.w)
                best[{ci, cj}] = Link{w, ci, cj, std::min(u, v), std::max(u, v)};
        }

    std::vector<Link> links;
    links.reserve(best.size());
    for (const auto &[k, l] : best) links.push_back(l);
    std::sort(links.begin(), links.end(), [](const Link &a, const Link &b) {
        return std::tie(a.w, a.ci, a.cj) < std::tie(b.w, b.ci, b.cj);
    });

    // Kruskal over the contracted components
    std::vector<int> parent(comps.count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Link &l : links) {
        int a = find(l.ci), b = find(l.cj);
        if (a == b) continue;
        parent[a] = b;
        t.add(l.u, l.v, l.w);
    }
    return t;
}

EdgeMultiset balancing_matching(const MetricRpp &instance) {
    std::vector<Vertex> odd = imbalanced_vertices(instance.required);
    EdgeMultiset m;
    if (odd.empty()) return m;
    Matching match = min_weight_perfect_matching(
        odd, [&](Vertex x, Vertex y) { return instance.dist(x, y); });
    for (auto [x, y] : match.pairs) m.add(x, y, instance.dist(x, y));
    return m;
}

EulerianExtension approx_32(const MetricRpp &instance) {
    EulerianExtension s;
    if (instance.required.empty()) return s;
    EdgeMultiset t = connecting_set(instance);
    EdgeMultiset combined = instance.required.unite(t);
    std::vector<Vertex> odd = imbalanced_vertices(combined);
    EdgeMultiset m;
    if (!odd.empty()) {
        Matching match = min_weight_perfect_matching(
            odd, [&](Vertex x, Vertex y) { return instance.dist(x, y); });
        for (auto [x, y] : match.pairs) m.add(x, y, instance.dist(x, y));
    }
    s.edges = t.unite(m);
    return s;
}

VerifyResult verify_ee(const MetricRpp &instance, const EdgeMultiset &s) {
    VerifyResult r;
    for (const Edge &e : s.entries())
        for (Vertex x : {e.u, e.v})
            if (!std::binary_search(instance.vertices.begin(), instance.vertices.end(), x)) {
                r.message = "extension uses vertex " + std::to_string(x) +
                            " outside the instance";
                return r;
            }
    EdgeMultiset combined = instance.required.unite(s);
    if (combined.empty()) {
        r.ok = true;
        return r;
    }
    std::vector<Vertex> odd = imbalanced_vertices(combined);
    if (!odd.empty()) {
        r.message = "vertex " + std::to_string(odd.front()) + " has odd degree";
        return r;
    }
    Components comps = connected_components(combined);
    if (comps.count > 1) {
        Vertex a = comps.vertices.front();
        Vertex b = -1;
        for (size_t i = 0; i < comps.vertices.size(); ++i)
            if (comps.component[i] != comps.component[0]) {
                b = comps.vertices[i];
                break;
            }
        r.message = "vertices " + std::to_string(a) + " and " + std::to_string(b) +
                    " are in different components";
        return r;
    }
    r.ok = true;
    return r;
}

ClosedWalk ee_to_tour(const MetricRpp &instance, const EulerianExtension &s) {
    VerifyResult v = verify_ee(instance, s.edges);
    if (!v.ok) throw std::runtime_error("invalid Eulerian extension: " + v.message);
    return euler_tour(instance.required.unite(s.edges));
}

EulerianExtension tour_to_ee(const MetricRpp &instance, const ClosedWalk &walk) {
    if (!walk.empty() && walk.vertices.front() != walk.vertices.back())
        throw std::runtime_error("tour_to_ee: walk is not closed");
    EdgeMultiset traversed = walk.edges();
    if (!traversed.contains(instance.required)) {
        for (const Edge &e : instance.required.entries()) {
            EdgeMultiset one;
            one.add(e.u, e.v, e.w, e.mult);
            if (!traversed.contains(one))
                throw std::runtime_error("tour_to_ee: walk misses required edge {" +
                                         std::to_string(e.u) + "," + std::to_string(e.v) +
                                         "} of weight " + std::to_string(e.w));
        }
        throw std::runtime_error("tour_to_ee: walk does not cover the required edges");
    }
    EulerianExtension s;
    s.edges = traversed.minus(instance.required);
    return s;
}

namespace {

bool edges_less(const std::vector<Edge> &a, const std::vector<Edge> &b) {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](const Edge &x, const Edge &y) {
            return std::tie(x.u, x.v, x.w, x.mult) < std::tie(y.u, y.v, y.w, y.mult);
        });
}

struct ExactSearch {
    const MetricRpp &inst;
    std::vector<Vertex> vr;
    std::vector<std::pair<Vertex, Vertex>> pairs;  // u < v, lexicographic
    std::vector<Weight> pair_w;
    std::vector<int> last_touch;   // per vr index, last pair index touching it
    std::vector<int> base_parity;  // degree parity of R per vr index
    long long budget;

    std::vector<int> mult;    // chosen multiplicity per pair
    std::vector<int> parity;  // current parity per vr index
    bool have_best = false;
    Weight best_w = 0;
    long long best_cnt = 0;
    std::vector<Edge> best_edges;

    int index_of(Vertex v) const {
        return static_cast<int>(std::lower_bound(vr.begin(), vr.end(), v) - vr.begin());
    }

    void consider() {
        for (int p : parity)
            if (p) return;
        // collect
        std::vector<Edge> es;
        Weight w = 0;
        long long cnt = 0;
        for (size_t i = 0; i < pairs.size(); ++i)
            if (mult[i]) {
                es.push_back(Edge{pairs[i].first, pairs[i].second, pair_w[i], mult[i]});
                w += pair_w[i] * mult[i];
                cnt += mult[i];
            }
        EdgeMultiset s(es);
        EdgeMultiset combined = inst.required.unite(s);
        if (connected_components(combined).count > 1) return;
        if (have_best) {
            if (w > best_w) return;
            if (w == best_w && cnt > best_cnt) return;
            if (w == best_w && cnt == best_cnt && !edges_less(es, best_edges)) return;
        }
        have_best = true;
        best_w = w;
        best_cnt = cnt;
        best_edges = std::move(es);
    }

    void search(size_t i, long long used, Weight w) {
        if (have_best && w > best_w) return;
        // parity feasibility
        long long odd = 0;
        for (size_t k = 0; k < vr.size(); ++k)
            if (parity[k]) {
                if (last_touch[k] < static_cast<int>(i)) return;  // can never be fixed
                ++odd;
            }
        if ((odd + 1) / 2 > budget - used) return;
        if (i == pairs.size() || used == budget) {
            consider();
            return;
        }
        int iu = index_of(pairs[i].first), iv = index_of(pairs[i].second);
        for (int m = 0; m <= 2 && used + m <= budget; ++m) {
            mult[i] = m;
            bool toggles = (m % 2 == 1);
            if (toggles) {
                parity[iu] ^= 1;
                parity[iv] ^= 1;
            }
            search(i + 1, used + m, w + pair_w[i] * m);
            if (toggles) {
                parity[iu] ^= 1;
                parity[iv] ^= 1;
            }
        }
        mult[i] = 0;
    }
};

}  // namespace

EulerianExtension exact_small(const MetricRpp &instance, long long edge_budget) {
    EulerianExtension result;
    if (instance.required.empty()) return result;

    std::vector<Vertex> vr = instance.required.vertex_set();
    long long b = static_cast<long long>(imbalanced_vertices(instance.required).size());
    long long c = connected_components(instance.required).count;
    long long budget = edge_budget >= 0 ? edge_budget : b / 2 + 2 * (c - 1);

    if (vr.size() > 8 || budget > 10)
        throw std::runtime_error(
            "exact_small: instance beyond desk scale (" + std::to_string(vr.size()) +
            " required vertices, edge budget " + std::to_string(budget) +
            "); refusing rather than approximating");

    ExactSearch es{instance};
    es.vr = vr;
    es.budget = budget;
    for (size_t i = 0; i < vr.size(); ++i)
        for (size_t j = i + 1; j < vr.size(); ++j) {
            es.pairs.push_back({vr[i], vr[j]});
            es.pair_w.push_back(instance.dist(vr[i], vr[j]));
        }
    es.last_touch.assign(vr.size(), -1);
    for (size_t p = 0; p < es.pairs.size(); ++p) {
        es.last_touch[es.index_of(es.pairs[p].first)] = static_cast<int>(p);
        es.last_touch[es.index_of(es.pairs[p].second)] = static_cast<int>(p);
    }
    es.base_parity.assign(vr.size(), 0);
    for (const Edge &e : instance.required.entries()) {
        if (e.u == e.v) continue;
        es.base_parity[es.index_of(e.u)] ^= e.mult & 1;
        es.base_parity[es.index_of(e.v)] ^= e.mult & 1;
    }
    es.parity = es.base_parity;
    es.mult.assign(es.pairs.size(), 0);

    es.search(0, 0, 0);
    if (!es.have_best)
        throw std::runtime_error("exact_small: no Eulerian extension within edge budget " +
                                 std::to_string(budget));
    result.edges = EdgeMultiset(es.best_edges);
    return result;
}

Weight lower_bound(const MetricRpp &instance) {
    Weight wr = instance.required.total_weight();
    Weight wm = balancing_matching(instance).total_weight();
    Weight wt = connecting_set(instance).total_weight();
    return wr + std::max({wm, wt, (wm + wt) / 2});
}

namespace {

// Expands a metric-level tour into the original graph while consuming
// required edges directly: every step first tries to account for a still
// unseen copy of a required edge (traversed as itself); all other steps
// are deadheading and get replaced by a shortest original-graph path.
ClosedWalk expand_required_aware(const MetricClosure &closure, const EdgeMultiset &required,
                                 const ClosedWalk &tour) {
    ClosedWalk out;
    if (tour.empty()) return out;
    std::map<std::tuple<Vertex, Vertex, Weight>, int> remaining;
    for (const Edge &e : required.entries()) remaining[{e.u, e.v, e.w}] += e.mult;

    out.vertices.push_back(tour.vertices.front());
    for (size_t i = 0; i < tour.step_weights.size(); ++i) {
        Vertex a = tour.vertices[i], b = tour.vertices[i + 1];
        Weight w = tour.step_weights[i];
        auto key = std::make_tuple(std::min(a, b), std::max(a, b), w);
        auto it = remaining.find(key);
        if (it != remaining.end() && it->second > 0) {
            --it->second;
            out.vertices.push_back(b);
            out.step_weights.push_back(w);
        } else if (a != b && w == closure.distance(a, b)) {
            for (auto [v, sw] : closure.path_steps(a, b)) {
                out.vertices.push_back(v);
                out.step_weights.push_back(sw);
            }
        } else {
            out.vertices.push_back(b);
            out.step_weights.push_back(w);
        }
    }
    return out;
}

}  // namespace

ClosedWalk lift_solution(const MetricRpp &original, const KernelTrace &trace,
                         const EulerianExtension &kernel_solution) {
    MetricRpp kernel = replay_trace(original, trace);

    // With weight quantization the solver saw reduced weights; deadheading
    // edges are re-weighted to the true metric distances either way.
    EdgeMultiset s;
    for (const Edge &e : kernel_solution.edges.entries())
        s.add(e.u, e.v, original.dist(e.u, e.v), e.mult);

    VerifyResult v = verify_ee(kernel, s);
    if (!v.ok) throw std::runtime_error("lift: kernel solution rejected: " + v.message);

    EdgeMultiset total = s.unite(trace.added_matching());
    ClosedWalk tour = euler_tour(original.required.unite(total));
    if (original.closure->has_expansion())
        return expand_required_aware(*original.closure, original.required, tour);
    return tour;
}

ClosedWalk lift_solution(const MetricRpp &original, const KernelTrace &trace,
                         const ClosedWalk &kernel_tour) {
    MetricRpp kernel = replay_trace(original, trace);
    if (trace.weight_quantum())
        kernel = apply_weight_reduction(kernel, trace.eps2, nullptr);
    EulerianExtension s = tour_to_ee(kernel, kernel_tour);
    return lift_solution(original, trace, s);
}

DispatchResult easy_dispatch(const MetricRpp &instance, const Rational &eps) {
    DispatchResult r;
    EdgeMultiset t = connecting_set(instance);
    EdgeMultiset m = balancing_matching(instance);
    Weight wr = instance.required.total_weight();
    Weight wt = t.total_weight();
    Weight wm = m.total_weight();

    if (!(eps * (wr + wm)).less_than(wt)) {
        // connectivity is cheap: double T and add the matching
        r.case_id = 1;
        EulerianExtension s;
        EdgeMultiset doubled;
        for (const Edge &e : t.entries()) doubled.add(e.u, e.v, e.w, 2 * e.mult);
        s.edges = doubled.unite(m);
        r.tour = ee_to_tour(instance, s);
        return r;
    }
    if (!(eps * (wr + wt)).less_than(wm)) {
        // balance is cheap: add the whole matching, then kernelize
        r.case_id = 2;
        KernelTrace pre;
        pre.eps = eps;
        MetricRpp balanced = rule_add_matching(instance, wm, &pre);
        KernelResult kr = kernelize(balanced, eps);
        kr.trace.steps.insert(kr.trace.steps.begin(), pre.steps.begin(), pre.steps.end());
        r.reduced = std::move(kr);
        return r;
    }
    // fallback: exact reduction only (cycle stripping + vertex deletion)
    r.case_id = 3;
    KernelResult kr;
    kr.trace.eps = eps;
    kr.trace.eps1 = eps;
    kr.trace.eps2 = Rational(0, 1);
    kr.trace.gamma = Rational(0, 1);
    MetricRpp cur = rule_strip_cycles(instance, &kr.trace);
    kr.kernel = rule_delete_nonrequired(cur, &kr.trace);
    r.reduced = std::move(kr);
    return r;
}

}  // namespace rpp
