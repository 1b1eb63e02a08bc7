// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rpp/gen.hpp"
#include "rpp/io.hpp"
#include "rpp/kernelize.hpp"
#include "rpp/metric.hpp"
#include "rpp/solver.hpp"
#include "rpp/weightred.hpp"

using namespace rpp;

namespace {

int failures = 0;

void report(const char *name, bool ok, const std::string &detail = "") {
    std::printf("%-52s %s%s%s\n", name, ok ? "PASS" : "FAIL", detail.empty() ? "" : "  ",
                detail.c_str());
    if (!ok) ++failures;
}

// random connected instance: <= 7 vertices, <= 9 required edges, weights <= 10
RppInstance random_small(std::mt19937 &rng) {
    std::uniform_int_distribution<int> nv(2, 7), extra(0, 5), vw(1, 10), pct(0, 99);
    int n = nv(rng);
    RppInstance inst;
    inst.graph.vertex_count = n;
    std::vector<Edge> all, req;
    for (int v = 1; v < n; ++v)
        all.push_back(Edge{std::uniform_int_distribution<int>(0, v - 1)(rng), v, vw(rng), 1});
    int k = extra(rng);
    for (int i = 0; i < k; ++i) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        all.push_back(Edge{u, v, vw(rng), 1});
    }
    for (const Edge &e : all)
        if (static_cast<int>(req.size()) < 9 && pct(rng) < 60) req.push_back(e);
    if (req.empty()) req.push_back(all.front());
    inst.graph.edges = EdgeMultiset(all);
    inst.required = EdgeMultiset(req);
    return inst;
}

Weight tour_weight_opt(const MetricRpp &m) {
    return m.required.total_weight() + exact_small(m).edges.total_weight();
}

// (1+eps) * opt >= value, exactly in rationals
bool within_factor(Weight value, Weight opt, const Rational &eps) {
    __int128 lhs = static_cast<__int128>(value) * eps.den();
    __int128 rhs = static_cast<__int128>(opt) * (eps.den() + eps.num());
    return lhs <= rhs;
}

struct Suites {
    std::vector<RppInstance> alba, berlin, ur;
    std::map<std::string, int> alba_p;  // instance name -> density percent

    std::vector<const RppInstance *> all() const {
        std::vector<const RppInstance *> out;
        for (const auto &i : alba) out.push_back(&i);
        for (const auto &i : berlin) out.push_back(&i);
        for (const auto &i : ur) out.push_back(&i);
        return out;
    }
};

Suites build_suites() {
    Suites s;
    for (int p : {30, 50, 70})
        for (std::uint64_t seed : {1, 2, 3}) {
            std::string name =
                "alba-" + std::to_string(p) + "-" + std::to_string(seed);
            s.alba.push_back(gen_geometric(116, 3, p, seed, name));
            s.alba_p[name] = p;
        }
    s.berlin.push_back(gen_trails(2593, 3, 95, 11, "berlin-1"));
    s.berlin.push_back(gen_trails(5097, 3, 120, 12, "berlin-2"));
    for (std::uint64_t seed : {21, 22, 23, 24})
        s.ur.push_back(gen_trails(116, 2, 25, seed, "ur-" + std::to_string(seed)));
    return s;
}

bool size_bounds_hold(const MetricRpp &input, const KernelResult &kr, std::string *why) {
    long long b = static_cast<long long>(input.imbalanced().size());
    long long c = input.component_count();
    auto bounded = [&](long long value, long long base, long long coef) {
        __int128 lhs = static_cast<__int128>(value - base) * kr.trace.eps1.num();
        __int128 rhs = static_cast<__int128>(coef) * (c - 1) * kr.trace.eps1.den();
        return lhs <= rhs;
    };
    if (!bounded(static_cast<long long>(kr.kernel.vertices.size()), 2 * b + 2 * c, 16)) {
        *why = "vertex bound";
        return false;
    }
    if (!bounded(kr.kernel.required.size(), 4 * b + 4 * c, 32)) {
        *why = "edge bound";
        return false;
    }
    if (kr.kernel.required.empty()) return true;
    Components comps = connected_components(kr.kernel.required);
    std::vector<long long> edges_in(comps.count, 0), verts_in(comps.count, 0);
    for (const Edge &e : kr.kernel.required.entries()) edges_in[comps.id_of(e.u)] += e.mult;
    for (int id : comps.component) ++verts_in[id];
    for (int i = 0; i < comps.count; ++i)
        if (edges_in[i] > std::max(1LL, 2 * verts_in[i] - 2)) {
            *why = "per-component bound";
            return false;
        }
    return true;
}

void criterion_oracle_guarantee(const std::vector<RppInstance> &corpus) {
    auto start = std::chrono::steady_clock::now();
    int violations = 0, checked = 0;
    for (const RppInstance &inst : corpus) {
        MetricRpp m = metric_close(inst);
        Weight opt = tour_weight_opt(m);
        for (Rational eps : {Rational(1, 10), Rational(1, 2), Rational(1, 1)}) {
            KernelResult kr = kernelize(m, eps);
            ClosedWalk lifted = lift_solution(m, kr.trace, exact_small(kr.kernel));
            ++checked;
            if (!lifted.edges().contains(m.required) || !within_factor(lifted.weight(), opt, eps))
                ++violations;
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    report("1 oracle 1+eps guarantee", violations == 0 && ms < 120000,
           std::to_string(checked) + " checks, " + std::to_string(violations) +
               " violations, " + std::to_string(ms) + " ms");
}

void criterion_lossless_c1(const std::vector<RppInstance> &corpus, const Suites &suites) {
    int violations = 0, checked = 0;
    auto check = [&](const RppInstance &inst) {
        MetricRpp m = metric_close(inst);
        if (m.component_count() != 1) return;
        ++checked;
        Weight direct = m.required.total_weight() + approx_32(m).edges.total_weight();
        KernelResult kr = kernelize(m, Rational(1, 10));
        ClosedWalk lifted = lift_solution(m, kr.trace, approx_32(kr.kernel));
        if (lifted.weight() != direct) ++violations;
    };
    for (const RppInstance &inst : corpus) check(inst);
    for (const RppInstance &inst : suites.ur) check(inst);
    for (const RppInstance &inst : suites.berlin) check(inst);
    report("2 lossless one-component kernelization", checked >= 30 && violations == 0,
           std::to_string(checked) + " instances, " + std::to_string(violations) +
               " violations");
}

void criterion_size_bounds(const std::vector<RppInstance> &corpus, const Suites &suites) {
    int violations = 0, checked = 0;
    std::string why;
    auto check = [&](const RppInstance &inst) {
        MetricRpp m = metric_close(inst);
        for (Rational eps : {Rational(1, 10), Rational(1, 2)}) {
            ++checked;
            KernelResult kr = kernelize(m, eps);
            if (!size_bounds_hold(m, kr, &why)) ++violations;
        }
    };
    for (const RppInstance &inst : corpus) check(inst);
    for (const RppInstance *inst : suites.all()) check(*inst);
    report("3 kernel size bounds", violations == 0,
           std::to_string(checked) + " kernels, " + std::to_string(violations) +
               " violations" + (violations ? " (" + why + ")" : ""));
}

void criterion_benchmark_tables(const Suites &suites) {
    BenchOptions options;
    options.eps = Rational(1, 10);
    bool ok = true;
    std::string detail;

    std::map<int, std::vector<double>> ratios_by_p;
    for (const RppInstance &inst : suites.alba) {
        BenchRecord rec = bench_instance(inst, options);
        if (rec.failed || 100 * rec.w_kernel_tour > 102 * rec.w_tour) {
            ok = false;
            detail = "alba weight ratio " + rec.name;
        }
        ratios_by_p[suites.alba_p.at(rec.name)].push_back(double(rec.v_kernel) / double(rec.vr));
    }
    const std::map<int, double> target = {{30, 1.00}, {50, 0.992}, {70, 0.794}};
    for (const auto &[p, rs] : ratios_by_p) {
        double mean = 0;
        for (double r : rs) mean += r;
        mean /= double(rs.size());
        if (std::abs(mean - target.at(p)) > 0.10) {
            ok = false;
            detail = "alba shrink mean p=" + std::to_string(p);
        }
    }
    for (const RppInstance &inst : suites.berlin) {
        BenchRecord rec = bench_instance(inst, options);
        if (rec.failed || 10 * rec.v_kernel > 3 * rec.vr ||
            200 * (rec.w_kernel_tour > rec.w_tour ? rec.w_kernel_tour - rec.w_tour
                                                  : rec.w_tour - rec.w_kernel_tour) >
                rec.w_tour) {
            ok = false;
            detail = "berlin " + rec.name;
        }
    }
    for (const RppInstance &inst : suites.ur) {
        MetricRpp m = metric_close(inst);
        // one component: the optimum is w(R) plus the minimum matching
        Weight opt = m.required.total_weight() + balancing_matching(m).total_weight();
        options.optima[inst.name] = opt;
        BenchRecord rec = bench_instance(inst, options);
        if (rec.failed || 100 * rec.w_kernel_tour > 108 * opt) {
            ok = false;
            detail = "ur " + rec.name;
        }
    }
    report("4 benchmark table reproduction (eps=0.1)", ok, detail);
}

void criterion_approx_guarantee(const std::vector<RppInstance> &corpus, const Suites &suites) {
    int violations = 0;
    for (const RppInstance &inst : corpus) {
        MetricRpp m = metric_close(inst);
        Weight w = m.required.total_weight() + approx_32(m).edges.total_weight();
        if (2 * w > 3 * tour_weight_opt(m) || w < lower_bound(m)) ++violations;
    }
    for (const RppInstance *inst : suites.all()) {
        MetricRpp m = metric_close(*inst);
        Weight w = m.required.total_weight() + approx_32(m).edges.total_weight();
        if (w < lower_bound(m)) ++violations;
    }
    report("5 approximation within 3/2 and above lower bound", violations == 0,
           std::to_string(violations) + " violations");
}

void criterion_structural_lemmas(const std::vector<RppInstance> &corpus) {
    int violations = 0;
    std::string why;
    for (const RppInstance &inst : corpus) {
        MetricRpp m = metric_close(inst);
        EdgeMultiset d = exact_small(m).edges;
        EdgeMultiset t = connecting_set(m);
        EdgeMultiset match = balancing_matching(m);
        long long b = static_cast<long long>(m.imbalanced().size());
        long long c = m.component_count();

        auto fail = [&](const char *reason) {
            ++violations;
            why = reason;
        };
        std::vector<Vertex> vr = m.required.vertex_set();
        std::map<Vertex, long long> deg;
        for (const Edge &e : d.entries()) {
            if (!std::binary_search(vr.begin(), vr.end(), e.u) ||
                !std::binary_search(vr.begin(), vr.end(), e.v))
                fail("extension leaves V(R)");
            deg[e.u] += e.mult;
            deg[e.v] += e.mult;
        }
        std::vector<Vertex> odd = m.imbalanced();
        long long balanced_touched = 0;
        for (const auto &[v, k] : deg) {
            bool is_odd = std::binary_search(odd.begin(), odd.end(), v);
            if (k > 2) fail("degree above two");
            if (is_odd && k != 1) fail("imbalanced degree not one");
            if (!is_odd && k != 2) fail("balanced degree not two");
            if (!is_odd) ++balanced_touched;
        }
        if (balanced_touched > std::max(0LL, 2 * c - 2)) fail("too many balanced touched");
        if (match.size() != b / 2) fail("matching cardinality");
        if (t.size() != c - 1) fail("connector cardinality");
        if (d.size() > b / 2 + 2 * (c - 1)) fail("extension cardinality");
        if (match.total_weight() > d.total_weight()) fail("matching above optimum");
        if (t.total_weight() > d.total_weight()) fail("connector above optimum");
        if (d.total_weight() > match.total_weight() + 2 * t.total_weight())
            fail("optimum above matching plus connectors");
    }
    report("6 structural properties of edge-minimizing optima", violations == 0,
           std::to_string(violations) + " violations" + (violations ? " (" + why + ")" : ""));
}

void criterion_weight_reduction(const std::vector<RppInstance> &corpus) {
    std::mt19937 rng(505);
    int violations = 0;
    std::uniform_int_distribution<Weight> vw(0, 100000);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 15)(rng);
        std::vector<Weight> w(n);
        Weight beta = 0;
        for (Weight &x : w) beta = std::max(beta, x = vw(rng));
        if (beta == 0) beta = 1;
        long long n_cap = std::uniform_int_distribution<long long>(1, 40)(rng);
        Rational eps(std::uniform_int_distribution<long long>(1, 20)(rng),
                     std::uniform_int_distribution<long long>(1, 20)(rng));
        WeightReduction r = reduce_weights(w, beta, n_cap, eps);
        for (size_t i = 0; i < w.size(); ++i) {
            if ((eps * r.reduced[i]).greater_than(n_cap)) ++violations;
            if ((r.q * Rational(r.reduced[i], 1)).greater_than(w[i])) ++violations;
            if (!(r.q * Rational(r.reduced[i] + 1, 1)).greater_than(w[i])) ++violations;
        }
    }
    // end-to-end: solving the quantized instance keeps the 1+eps guarantee
    int end_to_end = 0;
    Rational eps(1, 2);
    for (const RppInstance &inst : corpus) {
        if (end_to_end >= 100) break;
        MetricRpp m = metric_close(inst);
        ++end_to_end;
        Weight opt = tour_weight_opt(m);
        Rational q;
        MetricRpp reduced = apply_weight_reduction(m, eps, &q);
        Weight repriced = m.required.total_weight();
        EulerianExtension red_opt = exact_small(reduced);
        for (const Edge &e : red_opt.edges.entries())
            repriced += m.dist(e.u, e.v) * e.mult;
        if (repriced < opt || !within_factor(repriced, opt, eps)) ++violations;
    }
    report("7 weight quantization guarantees", violations == 0,
           std::to_string(violations) + " violations");
}

void criterion_performance() {
    RppInstance inst = gen_trails(5097, 3, 120, 12, "berlin-2");
    auto t0 = std::chrono::steady_clock::now();
    MetricRpp m = metric_close(inst);
    auto t1 = std::chrono::steady_clock::now();
    KernelResult kr = kernelize(m, Rational(1, 10));
    auto t2 = std::chrono::steady_clock::now();
    EulerianExtension s = approx_32(kr.kernel);
    ClosedWalk lifted = lift_solution(m, kr.trace, s);
    auto t3 = std::chrono::steady_clock::now();
    auto ms = [](auto a, auto b) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    long long total = ms(t0, t3), kernel_ms = ms(t1, t2);
    bool ok = total < 30000 && kernel_ms < 2000 && lifted.edges().contains(m.required);
    report("8 large-instance performance", ok,
           "pipeline " + std::to_string(total) + " ms, kernelization " +
               std::to_string(kernel_ms) + " ms");
}

}  // namespace

int main() {
    std::mt19937 rng(271828);
    std::vector<RppInstance> corpus;
    for (int i = 0; i < 220; ++i) corpus.push_back(random_small(rng));
    Suites suites = build_suites();

    criterion_oracle_guarantee(corpus);
    criterion_lossless_c1(corpus, suites);
    criterion_size_bounds(corpus, suites);
    criterion_benchmark_tables(suites);
    criterion_approx_guarantee(corpus, suites);
    criterion_structural_lemmas(corpus);
    criterion_weight_reduction(corpus);
    criterion_performance();

    return failures;
}
