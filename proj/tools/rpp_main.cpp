#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"

#include "rpp/gen.hpp"
#include "rpp/io.hpp"
#include "rpp/kernelize.hpp"
#include "rpp/metric.hpp"
#include "rpp/solver.hpp"
#include "rpp/weightred.hpp"

namespace {

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// A kernel instance rendered as a standalone edge list: the complete
// metric graph on the kernel vertices plus the required edges, over the
// original vertex numbering.
rpp::RppInstance kernel_to_instance(const rpp::MetricRpp &kernel, const std::string &name) {
    rpp::RppInstance out;
    out.name = name;
    out.graph.vertex_count = kernel.closure->original_vertex_count();
    std::vector<rpp::Edge> edges;
    for (size_t i = 0; i < kernel.vertices.size(); ++i)
        for (size_t j = i + 1; j < kernel.vertices.size(); ++j) {
            rpp::Vertex u = kernel.vertices[i], v = kernel.vertices[j];
            edges.push_back(rpp::Edge{u, v, kernel.dist(u, v), 1});
        }
    for (const rpp::Edge &e : kernel.required.entries()) edges.push_back(e);
    out.graph.edges = rpp::EdgeMultiset(std::move(edges));
    out.required = kernel.required;
    return out;
}

void cmd_stats(const std::string &input) {
    rpp::RppInstance inst = rpp::load_instance(input);
    std::cout << "name " << inst.name << "\n"
              << "vertices " << inst.graph.vertex_count << "\n"
              << "edges " << inst.graph.edges.size() << "\n"
              << "required-vertices " << inst.required.vertex_set().size() << "\n"
              << "required-edges " << inst.required.size() << "\n"
              << "required-weight " << inst.required.total_weight() << "\n"
              << "imbalanced " << inst.imbalanced_count() << "\n"
              << "components " << inst.component_count() << "\n";
}

void cmd_kernelize(const std::string &input, const std::string &eps_text, bool weight_reduce,
                   const std::string &gamma_bound, const std::string &kernel_out,
                   const std::string &trace_out) {
    rpp::RppInstance inst = rpp::load_instance(input);
    rpp::Rational eps = rpp::Rational::parse(eps_text);
    rpp::KernelOptions opts;
    opts.weight_reduce = weight_reduce;
    if (gamma_bound == "max")
        opts.gamma_lower_bound = true;
    else if (!gamma_bound.empty())
        opts.gamma_bound = rpp::Rational::parse(gamma_bound);

    if (inst.required.empty()) {
        rpp::RppInstance empty;
        empty.name = inst.name + "-kernel";
        empty.graph.vertex_count = inst.graph.vertex_count;
        write_file(kernel_out, rpp::write_edgelist(empty));
        rpp::KernelTrace trace;
        trace.eps = eps;
        trace.eps1 = eps;
        trace.eps2 = rpp::Rational(0, 1);
        trace.gamma = rpp::Rational::infinity();
        write_file(trace_out, rpp::serialize_trace(trace));
        std::cout << "kernel vertices 0 required 0\n";
        return;
    }

    rpp::MetricRpp metric = rpp::metric_close(inst);
    rpp::KernelResult kr = rpp::kernelize(metric, eps, opts);
    write_file(kernel_out, rpp::write_edgelist(kernel_to_instance(kr.kernel, inst.name + "-kernel")));
    write_file(trace_out, rpp::serialize_trace(kr.trace));
    std::cout << "kernel vertices " << kr.kernel.vertices.size() << " required "
              << kr.kernel.required.size() << "\n";
}

void cmd_solve(const std::string &input, const std::string &method,
               const std::string &solution_out) {
    rpp::RppInstance inst = rpp::load_instance(input);
    rpp::ClosedWalk walk;
    if (!inst.required.empty()) {
        rpp::MetricRpp metric = rpp::metric_close(inst);
        rpp::EulerianExtension s =
            method == "exact" ? rpp::exact_small(metric) : rpp::approx_32(metric);
        walk = rpp::lift_solution(metric, rpp::KernelTrace{}, s);
    }
    std::cout << "weight " << walk.weight() << "\n";
    if (!solution_out.empty())
        write_file(solution_out, rpp::write_solution(walk));
    else
        std::cout << rpp::write_solution(walk);
}

void cmd_lift(const std::string &input, const std::string &trace_path,
              const std::string &solution_path, const std::string &solution_out) {
    rpp::RppInstance inst = rpp::load_instance(input);
    std::ifstream tf(trace_path);
    if (!tf) throw std::runtime_error("cannot open " + trace_path);
    rpp::KernelTrace trace = rpp::parse_trace(tf);
    std::ifstream sf(solution_path);
    if (!sf) throw std::runtime_error("cannot open " + solution_path);
    rpp::ClosedWalk kernel_tour = rpp::parse_solution(sf);

    rpp::ClosedWalk lifted;
    if (!inst.required.empty() || !kernel_tour.empty()) {
        rpp::MetricRpp metric = rpp::metric_close(inst);
        lifted = rpp::lift_solution(metric, trace, kernel_tour);
    }
    std::cout << "weight " << lifted.weight() << "\n";
    if (!solution_out.empty())
        write_file(solution_out, rpp::write_solution(lifted));
    else
        std::cout << rpp::write_solution(lifted);
}

void cmd_verify(const std::string &input, const std::string &solution_path) {
    rpp::RppInstance inst = rpp::load_instance(input);
    std::ifstream sf(solution_path);
    if (!sf) throw std::runtime_error("cannot open " + solution_path);
    rpp::ClosedWalk walk = rpp::parse_solution(sf);

    if (!walk.empty() && walk.vertices.front() != walk.vertices.back())
        throw std::runtime_error("violation: walk is not closed");
    std::map<std::tuple<rpp::Vertex, rpp::Vertex, rpp::Weight>, int> avail;
    for (const rpp::Edge &e : inst.graph.edges.entries()) avail[{e.u, e.v, e.w}] = e.mult;
    for (size_t i = 0; i < walk.step_weights.size(); ++i) {
        rpp::Vertex a = walk.vertices[i], b = walk.vertices[i + 1];
        if (a > b) std::swap(a, b);
        if (!avail.count({a, b, walk.step_weights[i]}))
            throw std::runtime_error("violation: step " + std::to_string(i) + " uses edge {" +
                                     std::to_string(a) + "," + std::to_string(b) +
                                     "} of weight " + std::to_string(walk.step_weights[i]) +
                                     " absent from the graph");
    }
    if (!walk.edges().contains(inst.required))
        throw std::runtime_error("violation: tour does not cover the required edges");
    std::cout << "pass: closed tour of weight " << walk.weight() << " covers all "
              << inst.required.size() << " required edges\n";
}

void cmd_bench(const std::string &dir, const std::string &eps_text, bool weight_reduce,
               const std::string &optima_path, const std::string &csv_out) {
    rpp::BenchOptions opts;
    opts.eps = rpp::Rational::parse(eps_text);
    opts.weight_reduce = weight_reduce;
    if (!optima_path.empty()) {
        std::ifstream of(optima_path);
        if (!of) throw std::runtime_error("cannot open " + optima_path);
        opts.optima = rpp::parse_optima(of);
    }
    std::string csv = rpp::run_bench(dir, opts);
    if (!csv_out.empty())
        write_file(csv_out, csv);
    else
        std::cout << csv;
}

void cmd_gen(const std::string &kind, const std::string &out, int n, int d, int percent,
             int trails, int trail_length, std::uint64_t seed, std::string name) {
    if (name.empty()) name = kind;
    rpp::RppInstance inst;
    if (kind == "geometric")
        inst = rpp::gen_geometric(n, d, percent, seed, name);
    else if (kind == "trails")
        inst = rpp::gen_trails(n, trails, trail_length, seed, name);
    else
        throw std::runtime_error("unknown generator kind '" + kind + "'");
    write_file(out, rpp::write_edgelist(inst));
    std::cout << "wrote " << out << ": " << inst.graph.vertex_count << " vertices, "
              << inst.graph.edges.size() << " edges, " << inst.required.size()
              << " required\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"rural postman problem kernelization toolkit"};
    app.require_subcommand(1);

    std::string input, output, trace_path, solution_path, eps_text = "1/10";
    std::string method = "approx32", gamma_bound, dir, csv_out, optima_path;
    std::string kind = "geometric", name;
    bool weight_reduce = false;
    int n = 100, d = 6, percent = 50, trails = 3, trail_length = 50;
    std::uint64_t seed = 1;

    auto *stats = app.add_subcommand("stats", "print instance statistics");
    stats->add_option("-i,--input", input, "instance file")->required();

    auto *kern = app.add_subcommand("kernelize", "reduce an instance to its kernel");
    kern->add_option("-i,--input", input, "instance file")->required();
    kern->add_option("-o,--output", output, "kernel output file")->required();
    kern->add_option("-t,--trace", trace_path, "trace output file")->required();
    kern->add_option("--eps", eps_text, "approximation loss budget (rational)");
    kern->add_flag("--weight-reduce", weight_reduce, "quantize kernel weights (splits eps)");
    kern->add_option("--gamma-bound", gamma_bound,
                     "'max' for the matching/connector lower bound, or an explicit value");

    auto *solve = app.add_subcommand("solve", "compute a tour");
    solve->add_option("-i,--input", input, "instance file")->required();
    solve->add_option("-m,--method", method, "approx32 or exact")
        ->check(CLI::IsMember({"approx32", "exact"}));
    solve->add_option("-o,--output", output, "solution output file (default stdout)");

    auto *lift = app.add_subcommand("lift", "lift a kernel solution to the input instance");
    lift->add_option("-i,--input", input, "original instance file")->required();
    lift->add_option("-t,--trace", trace_path, "trace file from kernelize")->required();
    lift->add_option("-s,--solution", solution_path, "kernel solution file")->required();
    lift->add_option("-o,--output", output, "lifted solution output file (default stdout)");

    auto *verify = app.add_subcommand("verify", "check a solution against an instance");
    verify->add_option("-i,--input", input, "instance file")->required();
    verify->add_option("-s,--solution", solution_path, "solution file")->required();

    auto *bench = app.add_subcommand("bench", "kernelize a directory of instances");
    bench->add_option("--dir", dir, "instance directory")->required();
    bench->add_option("--eps", eps_text, "approximation loss budget (rational)");
    bench->add_option("--csv", csv_out, "CSV output file (default stdout)");
    bench->add_option("--optima", optima_path, "sidecar file of known optimal weights");
    bench->add_flag("--weight-reduce", weight_reduce, "quantize kernel weights");

    auto *gen = app.add_subcommand("gen", "generate a synthetic instance");
    gen->add_option("--kind", kind, "geometric or trails")
        ->check(CLI::IsMember({"geometric", "trails"}));
    gen->add_option("-o,--output", output, "output file")->required();
    gen->add_option("-n", n, "number of vertices");
    gen->add_option("-d", d, "nearest neighbors per vertex");
    gen->add_option("-p,--percent", percent, "required-edge percentage");
    gen->add_option("--trails", trails, "number of required trails");
    gen->add_option("--trail-length", trail_length, "edges per trail");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--name", name, "instance name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*stats) cmd_stats(input);
        if (*kern) cmd_kernelize(input, eps_text, weight_reduce, gamma_bound, output, trace_path);
        if (*solve) cmd_solve(input, method, output);
        if (*lift) cmd_lift(input, trace_path, solution_path, output);
        if (*verify) cmd_verify(input, solution_path);
        if (*bench) cmd_bench(dir, eps_text, weight_reduce, optima_path, csv_out);
        if (*gen) cmd_gen(kind, output, n, d, percent, trails, trail_length, seed, name);
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
