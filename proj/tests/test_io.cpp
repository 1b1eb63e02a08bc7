#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rpp/io.hpp"

using namespace rpp;

TEST_CASE("edge-list parsing") {
    SUBCASE("minimal instance") {
        std::istringstream in("# tiny\nv 2\ne 0 1 7 1 1\n");
        RppInstance inst = parse_edgelist(in, "tiny");
        CHECK(inst.graph.vertex_count == 2);
        CHECK(inst.graph.edges.size() == 1);
        CHECK(inst.required.size() == 1);
        CHECK(inst.required.entries().front().w == 7);
        inst.validate();
    }
    SUBCASE("write then parse is the identity") {
        RppInstance inst;
        inst.graph.vertex_count = 4;
        inst.graph.edges.add(0, 1, 3, 2);
        inst.graph.edges.add(1, 2, 5);
        inst.graph.edges.add(2, 3, 1);
        inst.required.add(0, 1, 3, 2);
        inst.required.add(2, 3, 1);
        std::string text = write_edgelist(inst);
        std::istringstream in(text);
        RppInstance back = parse_edgelist(in);
        CHECK(back.graph.vertex_count == inst.graph.vertex_count);
        CHECK(back.graph.edges == inst.graph.edges);
        CHECK(back.required == inst.required);
        CHECK(write_edgelist(back) == text);
    }
    SUBCASE("malformed inputs are rejected with line numbers") {
        auto parse = [](const std::string &text) {
            std::istringstream in(text);
            return parse_edgelist(in, "bad");
        };
        CHECK_THROWS_WITH_AS(parse("v 2\ne 0 1 7 1\n"), doctest::Contains("bad:2"),
                             std::runtime_error);
        CHECK_THROWS(parse("v 2\nv 3\n"));                 // duplicate header
        CHECK_THROWS(parse("v 2\ne 0 1 -3 0 1\n"));        // negative weight
        CHECK_THROWS(parse("v 2\ne 0 1 3 0 0\n"));         // zero multiplicity
        CHECK_THROWS(parse("e 0 1 3 0 1\n"));              // edge before header
        CHECK_THROWS(parse("v 2\nx 0 1\n"));               // unknown tag
        CHECK_THROWS(parse("v 2\ne 0 2 3 0 1\n"));         // vertex out of range
    }
}

TEST_CASE("benchmark dialect parsing") {
    const std::string sample =
        "NOMBRE : SAMPLE1\n"
        "COMENTARIO : two components\n"
        "VERTICES : 4\n"
        "ARISTAS_REQ : 2\n"
        "ARISTAS_NOREQ : 1\n"
        "LISTA_ARISTAS_REQ :\n"
        "(1,2) coste 5\n"
        "(3,4) coste 5\n"
        "LISTA_ARISTAS_NOREQ :\n"
        "(2,3) coste 10\n";
    SUBCASE("sample instance") {
        std::istringstream in(sample);
        RppInstance inst = parse_corberan(in, "sample");
        CHECK(inst.graph.vertex_count == 4);
        CHECK(inst.required.size() == 2);
        CHECK(inst.graph.edges.size() == 3);
        // 1-based input becomes 0-based
        CHECK(inst.required.entries().front().u == 0);
        CHECK(inst.component_count() == 2);
        inst.validate();
    }
    SUBCASE("round-trips through the edge-list format") {
        std::istringstream in(sample);
        RppInstance inst = parse_corberan(in);
        std::istringstream relisted(write_edgelist(inst));
        RppInstance back = parse_edgelist(relisted);
        CHECK(back.graph.edges == inst.graph.edges);
        CHECK(back.required == inst.required);
    }
    SUBCASE("empty required section means no components") {
        std::istringstream in("VERTICES : 2\nLISTA_ARISTAS_NOREQ :\n(1,2) coste 3\n");
        RppInstance inst = parse_corberan(in);
        CHECK(inst.required.empty());
        CHECK(inst.component_count() == 0);
    }
    SUBCASE("unknown headers warn instead of failing") {
        std::istringstream in("FOO : 1\nVERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,2) coste 3\n");
        std::vector<std::string> warnings;
        RppInstance inst = parse_corberan(in, "warned", &warnings);
        CHECK(inst.required.size() == 1);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings.front().find("FOO") != std::string::npos);
    }
    SUBCASE("malformed edge lines name the line") {
        std::istringstream in("VERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,2) coste\n");
        CHECK_THROWS_WITH_AS(parse_corberan(in, "bad"), doctest::Contains("bad:3"),
                             std::runtime_error);
    }
    SUBCASE("vertices out of range are rejected") {
        std::istringstream in("VERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,5) coste 3\n");
        CHECK_THROWS(parse_corberan(in));
    }
}

TEST_CASE("solution round trip") {
    ClosedWalk walk;
    walk.vertices = {0, 1, 2, 0};
    walk.step_weights = {1, 2, 3};
    std::string text = write_solution(walk);
    CHECK(text.rfind("rpp-solution 1", 0) == 0);
    std::istringstream in(text);
    ClosedWalk back = parse_solution(in);
    CHECK(back.vertices == walk.vertices);
    CHECK(back.step_weights == walk.step_weights);
    CHECK(back.weight() == 6);

    std::istringstream bad("rpp-solution 2\n");
    CHECK_THROWS(parse_solution(bad));
}

TEST_CASE("optima sidecar files") {
    std::istringstream in("# comment\nalpha 120\nbeta 7\n");
    std::map<std::string, Weight> opt = parse_optima(in);
    CHECK(opt.size() == 2);
    CHECK(opt.at("alpha") == 120);
    CHECK(opt.at("beta") == 7);
}

TEST_CASE("benchmarking") {
    RppInstance inst;
    inst.name = "cyc4";
    inst.graph.vertex_count = 4;
    for (int i = 0; i < 4; ++i) {
        inst.graph.edges.add(i, (i + 1) % 4, 1);
        inst.required.add(i, (i + 1) % 4, 1);
    }
    BenchOptions options;
    options.eps = Rational(1, 10);
    SUBCASE("single instance record") {
        BenchRecord rec = bench_instance(inst, options);
        CHECK(!rec.failed);
        CHECK(rec.name == "cyc4");
        CHECK(rec.v == 4);
        CHECK(rec.vr == 4);
        CHECK(rec.r == 4);
        CHECK(rec.b == 0);
        CHECK(rec.c == 1);
        CHECK(rec.w_tour == 4);
        CHECK(rec.v_kernel == 2);
        CHECK(rec.w_kernel_tour == 4);  // one component lifts losslessly
        std::string row = bench_csv_row(rec);
        CHECK(row.rfind("cyc4,4,4,4,", 0) == 0);
        CHECK(row.find("1.0000") != std::string::npos);
    }
    SUBCASE("known optima fill the last column") {
        options.optima["cyc4"] = 4;
        BenchRecord rec = bench_instance(inst, options);
        REQUIRE(rec.optimum.has_value());
        std::string row = bench_csv_row(rec);
        CHECK(row.substr(row.size() - 7) == ",1.0000");
    }
    SUBCASE("directory run renders header, rows and quartiles") {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "rpp_io_test_bench";
        fs::remove_all(dir);
        fs::create_directories(dir);
        {
            std::ofstream a(dir / "a.txt");
            a << write_edgelist(inst);
            std::ofstream b(dir / "b.txt");
            b << "VERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,2) coste 3\n";
        }
        std::string csv = run_bench(dir.string(), options);
        std::istringstream lines(csv);
        std::string line;
        std::getline(lines, line);
        CHECK(line == bench_csv_header());
        std::getline(lines, line);
        CHECK(line.rfind("a,", 0) == 0);
        std::getline(lines, line);
        CHECK(line.rfind("b,", 0) == 0);
        std::getline(lines, line);
        CHECK(line.rfind("# quartiles", 0) == 0);

        // deterministic apart from the timing column
        std::string again = run_bench(dir.string(), options);
        auto strip_ms = [](std::string text) {
            std::istringstream in(text);
            std::ostringstream out;
            std::string l;
            while (std::getline(in, l)) {
                if (!l.empty() && l[0] != '#' && l.find(',') != std::string::npos) {
                    // ms is the 11th field
                    std::vector<std::string> f;
                    std::istringstream ls(l);
                    std::string tok;
                    while (std::getline(ls, tok, ',')) f.push_back(tok);
                    if (f.size() > 10) f[10] = "ms";
                    for (size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
                    out << '\n';
                } else {
                    out << l << '\n';
                }
            }
            return out.str();
        };
        CHECK(strip_ms(csv) == strip_ms(again));
        fs::remove_all(dir);
    }
    SUBCASE("empty directory yields just the header") {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "rpp_io_test_empty";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::string csv = run_bench(dir.string(), options);
        CHECK(csv == bench_csv_header() + "\n");
        fs::remove_all(dir);
    }
}
