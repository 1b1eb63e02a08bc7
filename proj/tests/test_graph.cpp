#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "rpp/graph.hpp"

using namespace rpp;

namespace {

EdgeMultiset triangle(Vertex a, Vertex b, Vertex c, Weight w = 1) {
    EdgeMultiset m;
    m.add(a, b, w);
    m.add(b, c, w);
    m.add(a, c, w);
    return m;
}

// random multiset over up to 8 vertices
EdgeMultiset random_multiset(std::mt19937 &rng, int max_edges = 12) {
    std::uniform_int_distribution<int> nv(1, 8), ne(0, max_edges), vw(1, 10), vm(1, 2);
    int n = nv(rng);
    std::uniform_int_distribution<int> vx(0, n - 1);
    EdgeMultiset m;
    int k = ne(rng);
    for (int i = 0; i < k; ++i) m.add(vx(rng), vx(rng), vw(rng), vm(rng));
    return m;
}

// random connected balanced multiset: spanning tree + extras, doubled
EdgeMultiset random_balanced_connected(std::mt19937 &rng) {
    std::uniform_int_distribution<int> nv(2, 7), extra(0, 4), vw(1, 9);
    int n = nv(rng);
    std::uniform_int_distribution<int> vx(0, n - 1);
    EdgeMultiset m;
    for (int v = 1; v < n; ++v)
        m.add(std::uniform_int_distribution<int>(0, v - 1)(rng), v, vw(rng));
    int k = extra(rng);
    for (int i = 0; i < k; ++i) m.add(vx(rng), vx(rng), vw(rng));
    EdgeMultiset doubled;
    for (const Edge &e : m.entries()) doubled.add(e.u, e.v, e.w, 2 * e.mult);
    return doubled;
}

}  // namespace

TEST_CASE("edge multiset normalization and algebra") {
    EdgeMultiset m;
    m.add(3, 1, 5);
    m.add(1, 3, 5);
    m.add(1, 3, 7);
    CHECK(m.entries().size() == 2);
    CHECK(m.entries()[0].mult == 2);
    CHECK(m.size() == 3);
    CHECK(m.total_weight() == 17);

    EdgeMultiset other;
    other.add(1, 3, 5);
    EdgeMultiset diff = m.minus(other);
    CHECK(diff.size() == 2);
    CHECK(m.contains(other));
    CHECK(!other.contains(m));
    CHECK(m.unite(other).size() == 4);

    CHECK_THROWS(m.add(0, 1, -1));
    CHECK_THROWS(m.add(0, 1, 1, 0));
}

TEST_CASE("connected components") {
    SUBCASE("four disjoint triangles") {
        EdgeMultiset m = triangle(0, 1, 2);
        m = m.unite(triangle(3, 4, 5)).unite(triangle(6, 7, 8)).unite(triangle(9, 10, 11));
        CHECK(connected_components(m).count == 4);
    }
    SUBCASE("empty multiset") { CHECK(connected_components(EdgeMultiset{}).count == 0); }
    SUBCASE("single loop") {
        EdgeMultiset m;
        m.add(0, 0, 3);
        Components c = connected_components(m);
        CHECK(c.count == 1);
        CHECK(c.vertices == std::vector<Vertex>{0});
        CHECK(c.id_of(0) == 0);
        CHECK(c.id_of(5) == -1);
    }
}

TEST_CASE("imbalanced vertices") {
    SUBCASE("single edge") {
        EdgeMultiset m;
        m.add(0, 1, 1);
        CHECK(imbalanced_vertices(m) == std::vector<Vertex>{0, 1});
    }
    SUBCASE("triangle is balanced") { CHECK(imbalanced_vertices(triangle(0, 1, 2)).empty()); }
    SUBCASE("path endpoints") {
        EdgeMultiset m;
        m.add(0, 1, 1);
        m.add(1, 2, 1);
        m.add(2, 3, 1);
        CHECK(imbalanced_vertices(m) == std::vector<Vertex>{0, 3});
    }
    SUBCASE("loop counts twice") {
        EdgeMultiset m;
        m.add(0, 0, 1);
        CHECK(imbalanced_vertices(m).empty());
    }
}

TEST_CASE("block-cut tree") {
    SUBCASE("path") {
        EdgeMultiset m;
        m.add(0, 1, 1);
        m.add(1, 2, 1);
        BlockCutTree t = block_cut_tree(m);
        CHECK(t.blocks.size() == 2);
        CHECK(t.cut_vertices == std::vector<Vertex>{1});
        CHECK(t.is_cut_vertex(1));
        CHECK(!t.is_cut_vertex(0));
        CHECK(t.blocks_containing(1).size() == 2);
    }
    SUBCASE("triangle") {
        BlockCutTree t = block_cut_tree(triangle(0, 1, 2));
        CHECK(t.blocks.size() == 1);
        CHECK(t.cut_vertices.empty());
    }
    SUBCASE("bowtie") {
        EdgeMultiset m = triangle(0, 1, 2).unite(triangle(2, 3, 4));
        BlockCutTree t = block_cut_tree(m);
        CHECK(t.blocks.size() == 2);
        CHECK(t.cut_vertices == std::vector<Vertex>{2});
    }
    SUBCASE("disconnected input rejected") {
        EdgeMultiset m;
        m.add(0, 1, 1);
        m.add(2, 3, 1);
        CHECK_THROWS(block_cut_tree(m));
    }
    SUBCASE("loop folds into the block of its endpoint") {
        EdgeMultiset m = triangle(0, 1, 2);
        m.add(1, 1, 4);
        BlockCutTree t = block_cut_tree(m);
        CHECK(t.blocks.size() == 1);
        CHECK(t.cut_vertices.empty());
    }
}

TEST_CASE("euler tour") {
    SUBCASE("two parallel edges") {
        EdgeMultiset m;
        m.add(0, 1, 2, 2);
        ClosedWalk w = euler_tour(m);
        CHECK(w.vertices == std::vector<Vertex>{0, 1, 0});
        CHECK(w.weight() == 4);
    }
    SUBCASE("triangle") {
        ClosedWalk w = euler_tour(triangle(0, 1, 2));
        CHECK(w.length() == 3);
        CHECK(w.vertices.front() == w.vertices.back());
        CHECK(w.edges() == triangle(0, 1, 2));
    }
    SUBCASE("doubled path") {
        EdgeMultiset m;
        m.add(0, 1, 1, 2);
        m.add(1, 2, 1, 2);
        ClosedWalk w = euler_tour(m);
        CHECK(w.length() == 4);
        CHECK(w.edges() == m);
    }
    SUBCASE("imbalanced rejected with vertex name") {
        EdgeMultiset m;
        m.add(0, 1, 1);
        CHECK_THROWS_WITH_AS(euler_tour(m), doctest::Contains("vertex 0"), std::runtime_error);
    }
    SUBCASE("disconnected rejected") {
        EdgeMultiset m;
        m.add(0, 1, 1, 2);
        m.add(2, 3, 1, 2);
        CHECK_THROWS_WITH_AS(euler_tour(m), doctest::Contains("disconnected"),
                             std::runtime_error);
    }
    SUBCASE("empty input gives empty walk") { CHECK(euler_tour(EdgeMultiset{}).empty()); }
}

TEST_CASE("handshake: odd-degree vertex count is even") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
        EdgeMultiset m = random_multiset(rng);
        CHECK(imbalanced_vertices(m).size() % 2 == 0);
    }
}

TEST_CASE("euler tour re-collects the input multiset exactly") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 300; ++trial) {
        EdgeMultiset m = random_balanced_connected(rng);
        ClosedWalk w = euler_tour(m);
        CHECK(w.edges() == m);
        CHECK(w.weight() == m.total_weight());
        CHECK(w.vertices.front() == w.vertices.back());
    }
}

TEST_CASE("blocks partition the edges") {
    std::mt19937 rng(777);
    int done = 0;
    for (int trial = 0; trial < 600 && done < 200; ++trial) {
        EdgeMultiset m = random_multiset(rng);
        if (m.empty() || connected_components(m).count != 1) continue;
        ++done;
        BlockCutTree t = block_cut_tree(m);
        long long total = 0;
        for (const auto &es : t.block_edges) total += static_cast<long long>(es.size());
        CHECK(total == m.size());
        // every block edge really comes from the multiset
        EdgeMultiset reunion;
        for (const auto &es : t.block_edges)
            for (const Edge &e : es) reunion.add(e);
        CHECK(reunion == m);
    }
    CHECK(done == 200);
}
