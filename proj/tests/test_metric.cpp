#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rpp/metric.hpp"

using namespace rpp;

namespace {

RppInstance path_instance() {
    // 0 -1- 1 -1- 2
    RppInstance inst;
    inst.graph.vertex_count = 3;
    inst.graph.edges.add(0, 1, 1);
    inst.graph.edges.add(1, 2, 1);
    return inst;
}

RppInstance random_connected_instance(std::mt19937 &rng, int max_n = 8) {
    std::uniform_int_distribution<int> nv(2, max_n), extra(0, 6), vw(1, 10);
    int n = nv(rng);
    std::uniform_int_distribution<int> vx(0, n - 1);
    RppInstance inst;
    inst.graph.vertex_count = n;
    for (int v = 1; v < n; ++v)
        inst.graph.edges.add(std::uniform_int_distribution<int>(0, v - 1)(rng), v, vw(rng));
    int k = extra(rng);
    for (int i = 0; i < k; ++i) inst.graph.edges.add(vx(rng), vx(rng), vw(rng));
    return inst;
}

}  // namespace

TEST_CASE("metric closure of a path") {
    RppInstance inst = path_instance();
    MetricClosure closure(inst.graph, {0, 2});
    CHECK(closure.distance(0, 2) == 2);
    CHECK(closure.distance(0, 0) == 0);
    auto steps = closure.path_steps(0, 2);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].first == 1);
    CHECK(steps[1].first == 2);
    CHECK(steps[0].second + steps[1].second == 2);
}

TEST_CASE("already metric graphs close to themselves") {
    SUBCASE("complete graph with metric weights") {
        RppInstance inst;
        inst.graph.vertex_count = 3;
        inst.graph.edges.add(0, 1, 2);
        inst.graph.edges.add(1, 2, 2);
        inst.graph.edges.add(0, 2, 3);
        MetricClosure closure(inst.graph, {0, 1, 2});
        CHECK(closure.distance(0, 1) == 2);
        CHECK(closure.distance(1, 2) == 2);
        CHECK(closure.distance(0, 2) == 3);
    }
    SUBCASE("complete graph with weights 1 and 2") {
        RppInstance inst;
        inst.graph.vertex_count = 4;
        std::mt19937 rng(42);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                inst.graph.edges.add(i, j, 1 + static_cast<Weight>(rng() % 2));
        MetricClosure closure(inst.graph, {0, 1, 2, 3});
        for (const Edge &e : inst.graph.edges.entries())
            CHECK(closure.distance(e.u, e.v) == e.w);
        CHECK(satisfies_triangle_inequality(closure));
    }
}

TEST_CASE("unreachable terminals are rejected by name") {
    RppInstance inst;
    inst.graph.vertex_count = 4;
    inst.graph.edges.add(0, 1, 1);
    inst.graph.edges.add(2, 3, 1);
    CHECK_THROWS_WITH_AS(MetricClosure(inst.graph, {0, 2}), doctest::Contains("cannot reach"),
                         std::runtime_error);
}

TEST_CASE("expand_walk") {
    RppInstance inst = path_instance();
    MetricClosure closure(inst.graph, {0, 2});
    SUBCASE("metric step expands to the shortest path") {
        ClosedWalk metric_walk;
        metric_walk.vertices = {0, 2, 0};
        metric_walk.step_weights = {2, 2};
        ClosedWalk w = expand_walk(closure, metric_walk);
        CHECK(w.vertices == std::vector<Vertex>{0, 1, 2, 1, 0});
        CHECK(w.weight() == 4);
    }
    SUBCASE("walk of original edges stays unchanged") {
        MetricClosure all(inst.graph, {0, 1, 2});
        ClosedWalk walk;
        walk.vertices = {0, 1, 2, 1, 0};
        walk.step_weights = {1, 1, 1, 1};
        ClosedWalk w = expand_walk(all, walk);
        CHECK(w.vertices == walk.vertices);
        CHECK(w.weight() == walk.weight());
    }
    SUBCASE("empty walk") { CHECK(expand_walk(closure, ClosedWalk{}).empty()); }
}

TEST_CASE("metric instance keeps required edges at their own weight") {
    RppInstance inst = path_instance();
    inst.graph.edges.add(0, 2, 9);  // heavier than the metric distance 2
    inst.required.add(0, 2, 9);
    MetricRpp m = metric_close(inst);
    CHECK(m.dist(0, 2) == 2);
    CHECK(m.required.entries().front().w == 9);
}

TEST_CASE("random graphs: expansion preserves weight exactly") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        RppInstance inst = random_connected_instance(rng);
        int n = inst.graph.vertex_count;
        std::vector<Vertex> terminals(n);
        for (int i = 0; i < n; ++i) terminals[i] = i;
        MetricClosure closure(inst.graph, terminals);
        CHECK(satisfies_triangle_inequality(closure));

        // random closed terminal walk over metric edges
        std::uniform_int_distribution<int> vx(0, n - 1), len(1, 6);
        ClosedWalk walk;
        walk.vertices.push_back(vx(rng));
        int k = len(rng);
        for (int i = 0; i < k; ++i) {
            Vertex next = vx(rng);
            walk.step_weights.push_back(closure.distance(walk.vertices.back(), next));
            walk.vertices.push_back(next);
        }
        walk.step_weights.push_back(closure.distance(walk.vertices.back(), walk.vertices.front()));
        walk.vertices.push_back(walk.vertices.front());

        ClosedWalk expanded = expand_walk(closure, walk);
        CHECK(expanded.weight() == walk.weight());
        CHECK(expanded.vertices.front() == expanded.vertices.back());
        // every expanded step is an original edge of at most its weight
        for (size_t i = 0; i < expanded.step_weights.size(); ++i) {
            Vertex a = expanded.vertices[i], b = expanded.vertices[i + 1];
            if (a == b) continue;
            CHECK(closure.distance(a, b) <= expanded.step_weights[i]);
        }
    }
}

TEST_CASE("idempotence: closing a closure changes no distance") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        RppInstance inst = random_connected_instance(rng, 7);
        int n = inst.graph.vertex_count;
        std::vector<Vertex> terminals(n);
        for (int i = 0; i < n; ++i) terminals[i] = i;
        MetricClosure closure(inst.graph, terminals);

        RppInstance complete;
        complete.graph.vertex_count = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                complete.graph.edges.add(i, j, closure.distance(i, j));
        MetricClosure again(complete.graph, terminals);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(again.distance(i, j) == closure.distance(i, j));
    }
}

TEST_CASE("explicit-matrix closures refuse path expansion") {
    std::vector<std::vector<Weight>> dist = {{0, 4}, {4, 0}};
    MetricClosure closure({0, 1}, dist, 2);
    CHECK(!closure.has_expansion());
    CHECK(closure.distance(0, 1) == 4);
    CHECK_THROWS_WITH_AS(closure.path_steps(0, 1), doctest::Contains("expansion"),
                         std::runtime_error);
}
