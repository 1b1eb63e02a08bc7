#include "rpp/kernelize.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rpp/matching.hpp"
#include "rpp/solver.hpp"
#include "rpp/weightred.hpp"

namespace rpp {

EdgeMultiset KernelTrace::added_matching() const {
    EdgeMultiset m;
    for (const TraceStep &s : steps)
        if (s.kind == TraceStep::Kind::AddedMatching) m = m.unite(s.added);
    return m;
}

std::optional<Rational> KernelTrace::weight_quantum() const {
    for (const TraceStep &s : steps)
        if (s.kind == TraceStep::Kind::WeightQuantum) return s.quantum;
    return std::nullopt;
}

namespace {

// Edge instances of a multiset expanded by multiplicity, with sorted
// adjacency for deterministic traversal order.
struct InstanceAdjacency {
    std::vector<Vertex> vertices;  // sorted incident vertices
    std::vector<Edge> instances;   // mult == 1 each
    struct Arc {
        int to;  // index into vertices
        Weight w;
        int instance;
    };
    std::vector<std::vector<Arc>> adj;

    int index_of(Vertex v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        return static_cast<int>(it - vertices.begin());
    }
};

InstanceAdjacency build_instances(const EdgeMultiset &edges) {
    InstanceAdjacency a;
    a.vertices = edges.vertex_set();
    a.adj.resize(a.vertices.size());
    for (const Edge &e : edges.entries())
        for (int k = 0; k < e.mult; ++k) {
            int id = static_cast<int>(a.instances.size());
            a.instances.push_back(Edge{e.u, e.v, e.w, 1});
            int iu = a.index_of(e.u), iv = a.index_of(e.v);
            a.adj[iu].push_back({iv, e.w, id});
            if (iu != iv) a.adj[iv].push_back({iu, e.w, id});
        }
    for (auto &arcs : a.adj)
        std::sort(arcs.begin(), arcs.end(),
                  [](const InstanceAdjacency::Arc &x, const InstanceAdjacency::Arc &y) {
                      return std::tie(x.to, x.w, x.instance) < std::tie(y.to, y.w, y.instance);
                  });
    return a;
}

// Tree instances of a depth-first spanning forest, ascending-id order.
std::vector<Edge> dfs_spanning_tree(const InstanceAdjacency &a) {
    std::vector<Edge> tree;
    std::vector<char> visited(a.vertices.size(), 0);
    std::vector<int> stack;
    for (size_t s = 0; s < a.vertices.size(); ++s) {
        if (visited[s]) continue;
        visited[s] = 1;
        stack.push_back(static_cast<int>(s));
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto &arc : a.adj[x])
                if (!visited[arc.to]) {
                    visited[arc.to] = 1;
                    tree.push_back(a.instances[arc.instance]);
                    stack.push_back(arc.to);
                }
        }
    }
    return tree;
}

// Finds one cycle (as an edge multiset) in the instance graph, or nothing
// if it is a forest. Loops and parallel copies count as cycles.
std::optional<EdgeMultiset> find_cycle(const EdgeMultiset &edges) {
    InstanceAdjacency a = build_instances(edges);
    int n = static_cast<int>(a.vertices.size());
    std::vector<char> visited(n, 0);
    std::vector<int> path_pos(n, -1);

    struct Frame {
        int v;
        int parent_instance;
        size_t arc_idx;
    };
    for (int s = 0; s < n; ++s) {
        if (visited[s]) continue;
        std::vector<Frame> st;
        std::vector<int> path_instances;  // arriving instance per frame, -1 for root
        visited[s] = 1;
        path_pos[s] = 0;
        st.push_back({s, -1, 0});
        path_instances.push_back(-1);
        while (!st.empty()) {
            Frame &f = st.back();
            bool descended = false;
            while (f.arc_idx < a.adj[f.v].size()) {
                const auto &arc = a.adj[f.v][f.arc_idx];
                ++f.arc_idx;
                if (arc.instance == f.parent_instance) continue;
                if (!visited[arc.to]) {
                    visited[arc.to] = 1;
                    path_pos[arc.to] = static_cast<int>(st.size());
                    st.push_back({arc.to, arc.instance, 0});
                    path_instances.push_back(arc.instance);
                    descended = true;
                    break;
                }
                if (path_pos[arc.to] != -1) {
                    // back edge (or loop / parallel copy): close the cycle
                    std::vector<Edge> cyc;
                    for (size_t i = path_pos[arc.to] + 1; i < path_instances.size(); ++i)
                        cyc.push_back(a.instances[path_instances[i]]);
                    cyc.push_back(a.instances[arc.instance]);
                    return EdgeMultiset(std::move(cyc));
                }
            }
            if (descended) continue;
            path_pos[f.v] = -1;
            st.pop_back();
            path_instances.pop_back();
        }
    }
    return std::nullopt;
}

std::vector<EdgeMultiset> split_components(const EdgeMultiset &edges, const Components &comps) {
    std::vector<std::vector<Edge>> parts(comps.count);
    for (const Edge &e : edges.entries()) parts[comps.id_of(e.u)].push_back(e);
    std::vector<EdgeMultiset> out;
    out.reserve(comps.count);
    for (auto &p : parts) out.push_back(EdgeMultiset(std::move(p)));
    return out;
}

EdgeMultiset component_of_vertex(const EdgeMultiset &edges, const Components &comps, Vertex v) {
    int id = comps.id_of(v);
    std::vector<Edge> part;
    for (const Edge &e : edges.entries())
        if (comps.id_of(e.u) == id) part.push_back(e);
    return EdgeMultiset(std::move(part));
}

// One case (a) step: remove all edges incident to v, restore neighbor
// parities with a greedy matching at metric distances.
EdgeMultiset extract_case_a(const MetricClosure &closure, const EdgeMultiset &required, Vertex v,
                            KernelTrace *trace) {
    EdgeMultiset r_v;
    std::map<Vertex, long long> incidence;
    for (const Edge &e : required.entries()) {
        if (e.u != v && e.v != v) continue;
        r_v.add(e);
        if (e.u == e.v) continue;  // loop at v touches no neighbor
        incidence[e.u == v ? e.v : e.u] += e.mult;
    }
    std::vector<Vertex> odd;
    for (const auto &[x, cnt] : incidence)
        if (cnt % 2 != 0) odd.push_back(x);
    Matching m_v = greedy_matching(odd, [&](Vertex x, Vertex y) { return closure.distance(x, y); });
    EdgeMultiset added;
    for (auto [x, y] : m_v.pairs) added.add(x, y, closure.distance(x, y));
    if (trace) {
        TraceStep s;
        s.kind = TraceStep::Kind::ExtractionA;
        s.vertex = v;
        s.removed = r_v;
        s.added = added;
        trace->steps.push_back(std::move(s));
    }
    return required.minus(r_v).unite(added);
}

// One case (b) step for a cut vertex v lying in exactly the two given
// blocks: reroute one edge from each block around v.
EdgeMultiset extract_case_b(const MetricClosure &closure, const EdgeMultiset &required, Vertex v,
                            const BlockCutTree &bct, const std::vector<int> &block_ids,
                            KernelTrace *trace) {
    Vertex picked[2] = {-1, -1};
    for (int k = 0; k < 2; ++k) {
        Vertex best = -1;
        for (const Edge &e : bct.block_edges[block_ids[k]]) {
            if (e.u == e.v) continue;
            Vertex other;
            if (e.u == v)
                other = e.v;
            else if (e.v == v)
                other = e.u;
            else
                continue;
            if (best == -1 || other < best) best = other;
        }
        if (best == -1)
            throw std::runtime_error("extract: block of vertex " + std::to_string(v) +
                                     " has no non-loop edge at it");
        picked[k] = best;
    }
    Vertex a = picked[0], b = picked[1];

    EdgeMultiset removed;
    for (Vertex x : {a, b}) {
        // cheapest copy of {x, v}
        const Edge *pick = nullptr;
        for (const Edge &e : required.entries())
            if (std::minmax(e.u, e.v) == std::minmax(x, v)) {
                pick = &e;
                break;  // entries sorted by weight, first match is cheapest
            }
        if (!pick) throw std::runtime_error("extract: missing required edge for case (b)");
        removed.add(pick->u, pick->v, pick->w, 1);
    }
    EdgeMultiset added;
    added.add(a, b, closure.distance(a, b));
    if (trace) {
        TraceStep s;
        s.kind = TraceStep::Kind::ExtractionB;
        s.vertex = v;
        s.removed = removed;
        s.added = added;
        trace->steps.push_back(std::move(s));
    }
    return required.minus(removed).unite(added);
}

EdgeMultiset extract_impl(const MetricClosure &closure, const EdgeMultiset &required, Vertex v,
                          KernelTrace *trace) {
    Components comps = connected_components(required);
    if (comps.id_of(v) == -1)
        throw std::runtime_error("extract: vertex " + std::to_string(v) +
                                 " is not incident to required edges");
    {
        std::vector<Vertex> odd = imbalanced_vertices(required);
        if (std::binary_search(odd.begin(), odd.end(), v))
            throw std::runtime_error("extract: vertex " + std::to_string(v) + " is imbalanced");
    }
    {
        int id = comps.id_of(v), sz = 0;
        for (size_t i = 0; i < comps.vertices.size(); ++i)
            if (comps.component[i] == id) ++sz;
        if (sz < 3)
            throw std::runtime_error("extract: component of vertex " + std::to_string(v) +
                                     " has fewer than 3 vertices");
    }

    EdgeMultiset cur = required;
    bool first = true;
    while (true) {
        Components cc = connected_components(cur);
        if (cc.id_of(v) == -1) return cur;  // v fully extracted
        EdgeMultiset comp = component_of_vertex(cur, cc, v);
        BlockCutTree bct = block_cut_tree(comp);
        std::vector<int> ids = bct.blocks_containing(v);
        if (ids.size() == 1) {
            return extract_case_a(closure, cur, v, trace);
        } else if (ids.size() == 2) {
            if (!first)
                throw std::runtime_error("extract: vertex " + std::to_string(v) +
                                         " still a two-block cut vertex after rerouting");
            cur = extract_case_b(closure, cur, v, bct, ids, trace);
            first = false;
        } else {
            throw std::runtime_error("extract: vertex " + std::to_string(v) + " lies in " +
                                     std::to_string(ids.size()) + " blocks");
        }
    }
}

}  // namespace

EdgeMultiset extract_vertex(const MetricRpp &instance, Vertex v, KernelTrace *trace) {
    return extract_impl(*instance.closure, instance.required, v, trace);
}

MetricRpp rule_delete_nonrequired(const MetricRpp &instance, KernelTrace *trace) {
    MetricRpp out = instance;
    std::vector<Vertex> keep = instance.required.vertex_set();
    std::vector<Vertex> deleted;
    std::set_difference(instance.vertices.begin(), instance.vertices.end(), keep.begin(),
                        keep.end(), std::back_inserter(deleted));
    out.vertices = std::move(keep);
    if (trace && !deleted.empty()) {
        TraceStep s;
        s.kind = TraceStep::Kind::DeletedVertices;
        s.vertices = std::move(deleted);
        trace->steps.push_back(std::move(s));
    }
    return out;
}

MetricRpp rule_strip_cycles(const MetricRpp &instance, KernelTrace *trace) {
    Components comps = connected_components(instance.required);
    std::vector<EdgeMultiset> parts = split_components(instance.required, comps);

    EdgeMultiset result;
    for (EdgeMultiset &part : parts) {
        std::vector<Vertex> vs = part.vertex_set();
        if (vs.size() == 1) {
            // loop-only component: keep one copy of the cheapest loop
            const Edge &keep = part.entries().front();
            EdgeMultiset kept;
            kept.add(keep.u, keep.v, keep.w, 1);
            for (const Edge &e : part.entries()) {
                int extra = e.mult - (e == part.entries().front() ? 1 : 0);
                for (int k = 0; k < extra; ++k) {
                    if (trace) {
                        TraceStep s;
                        s.kind = TraceStep::Kind::StrippedCycle;
                        s.removed.add(e.u, e.v, e.w, 1);
                        trace->steps.push_back(std::move(s));
                    }
                }
            }
            result = result.unite(kept);
            continue;
        }
        InstanceAdjacency a = build_instances(part);
        EdgeMultiset tree(dfs_spanning_tree(a));
        EdgeMultiset rest = part.minus(tree);
        while (auto cyc = find_cycle(rest)) {
            if (trace) {
                TraceStep s;
                s.kind = TraceStep::Kind::StrippedCycle;
                s.removed = *cyc;
                trace->steps.push_back(std::move(s));
            }
            rest = rest.minus(*cyc);
        }
        result = result.unite(tree).unite(rest);
    }
    MetricRpp out = instance;
    out.required = std::move(result);
    return out;
}

MetricRpp rule_extract_balanced(const MetricRpp &instance, const Rational &gamma,
                                KernelTrace *trace) {
    MetricRpp out = instance;

    // Representative sets: per component, greedily keep vertices pairwise
    // farther apart than gamma, scanning ascending ids.
    std::set<Vertex> keep;
    {
        Components comps = connected_components(out.required);
        std::vector<std::vector<Vertex>> by_comp(comps.count);
        for (size_t i = 0; i < comps.vertices.size(); ++i)
            by_comp[comps.component[i]].push_back(comps.vertices[i]);
        for (const auto &cv : by_comp) {
            std::vector<Vertex> chosen;
            for (Vertex u : cv) {
                bool far = true;
                for (Vertex w : chosen)
                    if (!gamma.less_than(out.dist(u, w))) {
                        far = false;
                        break;
                    }
                if (far) chosen.push_back(u);
            }
            keep.insert(chosen.begin(), chosen.end());
        }
    }

    // Extract any balanced non-representative vertex that qualifies; the
    // scan restarts from the smallest id after each extraction.
    bool changed = true;
    while (changed) {
        changed = false;
        Components comps = connected_components(out.required);
        std::vector<Vertex> odd = imbalanced_vertices(out.required);
        std::vector<int> comp_size(comps.count, 0);
        for (int id : comps.component) ++comp_size[id];
        std::map<int, BlockCutTree> bct_cache;
        for (size_t i = 0; i < comps.vertices.size(); ++i) {
            Vertex v = comps.vertices[i];
            if (keep.count(v)) continue;
            if (std::binary_search(odd.begin(), odd.end(), v)) continue;
            int id = comps.component[i];
            if (comp_size[id] < 3) continue;
            auto it = bct_cache.find(id);
            if (it == bct_cache.end())
                it = bct_cache.emplace(id, block_cut_tree(component_of_vertex(out.required, comps, v)))
                         .first;
            size_t nblocks = it->second.blocks_containing(v).size();
            if (nblocks > 2) continue;
            out.required = extract_impl(*out.closure, out.required, v, trace);
            changed = true;
            break;
        }
    }
    return out;
}

MetricRpp rule_add_matching(const MetricRpp &instance, Weight delta, KernelTrace *trace) {
    std::vector<Vertex> odd = imbalanced_vertices(instance.required);
    if (odd.empty() || delta <= 0) return instance;
    Matching m = min_weight_perfect_matching(
        odd, [&](Vertex x, Vertex y) { return instance.dist(x, y); });

    std::vector<std::pair<Vertex, Vertex>> order = m.pairs;
    std::stable_sort(order.begin(), order.end(),
                     [&](const auto &p, const auto &q) {
                         return instance.dist(p.first, p.second) < instance.dist(q.first, q.second);
                     });
    EdgeMultiset added;
    Weight spent = 0;
    for (auto [x, y] : order) {
        Weight w = instance.dist(x, y);
        if (spent + w > delta) break;
        spent += w;
        added.add(x, y, w);
    }
    if (added.empty()) return instance;
    MetricRpp out = instance;
    out.required = out.required.unite(added);
    if (trace) {
        TraceStep s;
        s.kind = TraceStep::Kind::AddedMatching;
        s.added = added;
        trace->steps.push_back(std::move(s));
    }
    return out;
}

KernelResult kernelize(const MetricRpp &instance, const Rational &eps,
                       const KernelOptions &options) {
    if (eps.is_infinite() || eps.is_zero())
        throw std::runtime_error("kernelize: epsilon must be positive and finite");

    KernelResult res;
    res.trace.eps = eps;
    if (options.weight_reduce) {
        res.trace.eps1 = eps / 2;
        res.trace.eps2 = eps / 2;
    } else {
        res.trace.eps1 = eps;
        res.trace.eps2 = Rational(0, 1);
    }

    if (instance.required.empty()) {
        res.kernel = instance;
        res.kernel.vertices.clear();
        res.trace.gamma = Rational::infinity();
        return res;
    }

    int c = instance.component_count();
    if (c == 1) {
        res.trace.gamma = Rational::infinity();
    } else if (options.gamma_bound) {
        res.trace.gamma = (res.trace.eps1 * *options.gamma_bound) / (4LL * c - 4);
    } else {
        Weight base = options.gamma_lower_bound ? lower_bound(instance)
                                                : instance.required.total_weight();
        res.trace.gamma = res.trace.eps1 * base / (4LL * c - 4);
    }

    MetricRpp cur = rule_extract_balanced(instance, res.trace.gamma, &res.trace);
    cur = rule_strip_cycles(cur, &res.trace);
    cur = rule_delete_nonrequired(cur, &res.trace);

    if (options.weight_reduce && !res.trace.eps2.is_zero()) {
        Rational q;
        cur = apply_weight_reduction(cur, res.trace.eps2, &q);
        TraceStep s;
        s.kind = TraceStep::Kind::WeightQuantum;
        s.quantum = q;
        res.trace.steps.push_back(std::move(s));
    }

    res.kernel = std::move(cur);
    return res;
}

MetricRpp replay_trace(const MetricRpp &instance, const KernelTrace &trace) {
    MetricRpp cur = instance;
    for (const TraceStep &s : trace.steps) {
        switch (s.kind) {
            case TraceStep::Kind::DeletedVertices: {
                std::vector<Vertex> kept;
                std::set_difference(cur.vertices.begin(), cur.vertices.end(), s.vertices.begin(),
                                    s.vertices.end(), std::back_inserter(kept));
                cur.vertices = std::move(kept);
                break;
            }
            case TraceStep::Kind::StrippedCycle:
                cur.required = cur.required.minus(s.removed);
                break;
            case TraceStep::Kind::ExtractionA:
            case TraceStep::Kind::ExtractionB:
                cur.required = cur.required.minus(s.removed).unite(s.added);
                break;
            case TraceStep::Kind::AddedMatching:
                cur.required = cur.required.unite(s.added);
                break;
            case TraceStep::Kind::WeightQuantum:
                break;  // weights, not structure
        }
    }
    return cur;
}

namespace {

const char *step_name(TraceStep::Kind k) {
    switch (k) {
        case TraceStep::Kind::DeletedVertices: return "delete-vertices";
        case TraceStep::Kind::StrippedCycle: return "strip-cycle";
        case TraceStep::Kind::ExtractionA: return "extract-a";
        case TraceStep::Kind::ExtractionB: return "extract-b";
        case TraceStep::Kind::AddedMatching: return "add-matching";
        case TraceStep::Kind::WeightQuantum: return "weight-quantum";
    }
    return "?";
}

void write_edge_list(std::ostream &os, const EdgeMultiset &m) {
    os << m.entries().size();
    for (const Edge &e : m.entries()) os << ' ' << e.u << ' ' << e.v << ' ' << e.w << ' ' << e.mult;
}

EdgeMultiset read_edge_list(std::istringstream &is, const std::string &what) {
    size_t n;
    if (!(is >> n)) throw std::runtime_error("trace: missing edge count after '" + what + "'");
    std::vector<Edge> es;
    es.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        Edge e;
        if (!(is >> e.u >> e.v >> e.w >> e.mult))
            throw std::runtime_error("trace: truncated edge list after '" + what + "'");
        es.push_back(e);
    }
    return EdgeMultiset(std::move(es));
}

}  // namespace

std::string serialize_trace(const KernelTrace &trace) {
    std::ostringstream os;
    os << "rpp-trace 1\n";
    os << "eps " << trace.eps.str() << "\n";
    os << "eps1 " << trace.eps1.str() << "\n";
    os << "eps2 " << trace.eps2.str() << "\n";
    os << "gamma " << trace.gamma.str() << "\n";
    for (const TraceStep &s : trace.steps) {
        os << "step " << step_name(s.kind);
        switch (s.kind) {
            case TraceStep::Kind::DeletedVertices:
                os << ' ' << s.vertices.size();
                for (Vertex v : s.vertices) os << ' ' << v;
                break;
            case TraceStep::Kind::StrippedCycle:
                os << " removed ";
                write_edge_list(os, s.removed);
                break;
            case TraceStep::Kind::ExtractionA:
            case TraceStep::Kind::ExtractionB:
                os << ' ' << s.vertex << " removed ";
                write_edge_list(os, s.removed);
                os << " added ";
                write_edge_list(os, s.added);
                break;
            case TraceStep::Kind::AddedMatching:
                os << " added ";
                write_edge_list(os, s.added);
                break;
            case TraceStep::Kind::WeightQuantum:
                os << ' ' << s.quantum.str();
                break;
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

KernelTrace parse_trace(std::istream &in) {
    KernelTrace t;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string &msg) {
        throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + msg);
    };

    if (!std::getline(in, line)) throw std::runtime_error("trace: empty input");
    ++lineno;
    if (line != "rpp-trace 1") fail("expected header 'rpp-trace 1'");

    bool saw_end = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key == "end") {
            saw_end = true;
            break;
        }
        if (key == "eps" || key == "eps1" || key == "eps2" || key == "gamma") {
            std::string val;
            if (!(is >> val)) fail("missing value for " + key);
            Rational r = Rational::parse(val);
            if (key == "eps") t.eps = r;
            else if (key == "eps1") t.eps1 = r;
            else if (key == "eps2") t.eps2 = r;
            else t.gamma = r;
            continue;
        }
        if (key != "step") fail("unknown directive '" + key + "'");
        std::string name;
        is >> name;
        TraceStep s;
        std::string tag;
        if (name == "delete-vertices") {
            s.kind = TraceStep::Kind::DeletedVertices;
            size_t n;
            if (!(is >> n)) fail("missing vertex count");
            for (size_t i = 0; i < n; ++i) {
                Vertex v;
                if (!(is >> v)) fail("truncated vertex list");
                s.vertices.push_back(v);
            }
        } else if (name == "strip-cycle") {
            s.kind = TraceStep::Kind::StrippedCycle;
            is >> tag;
            if (tag != "removed") fail("expected 'removed'");
            s.removed = read_edge_list(is, "removed");
        } else if (name == "extract-a" || name == "extract-b") {
            s.kind = name == "extract-a" ? TraceStep::Kind::ExtractionA
                                         : TraceStep::Kind::ExtractionB;
            if (!(is >> s.vertex)) fail("missing extraction vertex");
            is >> tag;
            if (tag != "removed") fail("expected 'removed'");
            s.removed = read_edge_list(is, "removed");
            is >> tag;
            if (tag != "added") fail("expected 'added'");
            s.added = read_edge_list(is, "added");
        } else if (name == "add-matching") {
            s.kind = TraceStep::Kind::AddedMatching;
            is >> tag;
            if (tag != "added") fail("expected 'added'");
            s.added = read_edge_list(is, "added");
        } else if (name == "weight-quantum") {
            s.kind = TraceStep::Kind::WeightQuantum;
            std::string val;
            if (!(is >> val)) fail("missing quantum");
            s.quantum = Rational::parse(val);
        } else {
            fail("unknown step '" + name + "'");
        }
        t.steps.push_back(std::move(s));
    }
    if (!saw_end) throw std::runtime_error("trace: missing 'end' line");
    return t;
}

}  // namespace rpp
