#ifndef RPP_IO_HPP
#define RPP_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rpp/instance.hpp"
#include "rpp/rational.hpp"

namespace rpp {

// Canonical edge-list format:
//   # comment lines
//   v <vertex count>
//   e <u> <v> <weight> <required 0|1> <multiplicity>
// 0-based ids, decimal integers, fields space-separated. parse(write(x))
// is the identity once edges are in canonical (u, v, w, required) order.
RppInstance parse_edgelist(std::istream &in, const std::string &name = "");
std::string write_edgelist(const RppInstance &instance);

// Benchmark text dialect: header lines `KEY : value` (VERTICES is
// mandatory, unknown keys are warnings), then sections
// LISTA_ARISTAS_REQ / LISTA_ARISTAS_NOREQ with lines `(u,v) coste w`,
// 1-based ids. Warnings are appended to *warnings when given.
RppInstance parse_corberan(std::istream &in, const std::string &name = "",
                           std::vector<std::string> *warnings = nullptr);

// Reads a file in either format, keyed off the leading character.
RppInstance load_instance(const std::string &path);

struct BenchRecord {
    std::string name;
    bool failed = false;
    std::string error;
    long long v = 0, vr = 0, r = 0, b = 0, c = 0;
    Weight w_tour = 0;
    long long v_kernel = 0, r_kernel = 0;
    Weight w_kernel_tour = 0;
    long long ms = 0;  // kernelization only, metric closure excluded
    std::optional<Weight> optimum;
};

struct BenchOptions {
    Rational eps;
    bool weight_reduce = false;
    // optional map instance name -> known optimal tour weight
    std::map<std::string, Weight> optima;
};

BenchRecord bench_instance(const RppInstance &instance, const BenchOptions &options);

// Processes every regular file in the directory (sorted by name) and
// renders the CSV, one row per instance, with quartile summary lines of
// the kernel ratios appended as comments.
std::string run_bench(const std::string &directory, const BenchOptions &options);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord &rec);

// Sidecar optima file: lines `<instance name> <weight>`.
std::map<std::string, Weight> parse_optima(std::istream &in);

// Solution file: a closed walk with its per-step weights.
//   rpp-solution 1
//   weight <w>
//   vertices <k+1> v0 ... vk
//   steps <k> w1 ... wk
std::string write_solution(const ClosedWalk &walk);
ClosedWalk parse_solution(std::istream &in);

}  // namespace rpp

#endif
