#include "rpp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rpp/kernelize.hpp"
#include "rpp/metric.hpp"
#include "rpp/solver.hpp"

namespace rpp {

namespace {

[[noreturn]] void parse_fail(const std::string &name, int lineno, const std::string &msg) {
    throw std::runtime_error((name.empty() ? std::string("input") : name) + ":" +
                             std::to_string(lineno) + ": " + msg);
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

RppInstance parse_edgelist(std::istream &in, const std::string &name) {
    RppInstance inst;
    inst.name = name;
    std::vector<Edge> graph_edges, required_edges;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream is(t);
        std::string tag;
        is >> tag;
        if (tag == "v") {
            if (have_header) parse_fail(name, lineno, "duplicate vertex-count header");
            if (!(is >> inst.graph.vertex_count) || inst.graph.vertex_count < 0)
                parse_fail(name, lineno, "bad vertex count");
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) parse_fail(name, lineno, "edge before vertex-count header");
            long long u, v, w, req, mult;
            if (!(is >> u >> v >> w >> req >> mult))
                parse_fail(name, lineno, "edge line needs 5 fields: u v w required mult");
            if (u < 0 || v < 0 || u >= inst.graph.vertex_count || v >= inst.graph.vertex_count)
                parse_fail(name, lineno, "vertex id out of range");
            if (w < 0) parse_fail(name, lineno, "negative weight");
            if (mult < 1) parse_fail(name, lineno, "multiplicity must be at least 1");
            if (req != 0 && req != 1) parse_fail(name, lineno, "required flag must be 0 or 1");
            Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v), w, static_cast<int>(mult)};
            graph_edges.push_back(e);
            if (req) required_edges.push_back(e);
        } else {
            parse_fail(name, lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) parse_fail(name, lineno, "missing vertex-count header");
    inst.graph.edges = EdgeMultiset(std::move(graph_edges));
    inst.required = EdgeMultiset(std::move(required_edges));
    inst.validate();
    return inst;
}

std::string write_edgelist(const RppInstance &instance) {
    std::ostringstream os;
    os << "v " << instance.graph.vertex_count << "\n";
    // per (u, v, w) key, split into a non-required and a required entry
    std::map<std::tuple<Vertex, Vertex, Weight>, int> req;
    for (const Edge &e : instance.required.entries()) req[{e.u, e.v, e.w}] += e.mult;
    for (const Edge &e : instance.graph.edges.entries()) {
        auto it = req.find({e.u, e.v, e.w});
        int r = it == req.end() ? 0 : it->second;
        int plain = e.mult - r;
        if (plain < 0)
            throw std::runtime_error("write_edgelist: required multiplicity exceeds the graph's");
        if (plain > 0)
            os << "e " << e.u << ' ' << e.v << ' ' << e.w << " 0 " << plain << "\n";
        if (r > 0) os << "e " << e.u << ' ' << e.v << ' ' << e.w << " 1 " << r << "\n";
    }
    return os.str();
}

RppInstance parse_corberan(std::istream &in, const std::string &name,
                           std::vector<std::string> *warnings) {
    RppInstance inst;
    inst.name = name;
    std::vector<Edge> graph_edges, required_edges;
    int n = -1;
    enum class Section { None, Req, NoReq } section = Section::None;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] != '(') {
            auto colon = t.find(':');
            std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
            std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
            if (key.find("LISTA_ARISTAS_NOREQ") != std::string::npos) {
                section = Section::NoReq;
            } else if (key.find("LISTA_ARISTAS_REQ") != std::string::npos) {
                section = Section::Req;
            } else if (key.find("VERTICES") != std::string::npos) {
                try {
                    n = std::stoi(value);
                } catch (const std::exception &) {
                    parse_fail(name, lineno, "bad vertex count '" + value + "'");
                }
                if (n < 0) parse_fail(name, lineno, "negative vertex count");
            } else if (key.find("ARISTAS") != std::string::npos ||
                       key.find("NOMBRE") != std::string::npos ||
                       key.find("COMENTARIO") != std::string::npos) {
                // known informational headers (edge counts, instance name)
            } else if (warnings) {
                warnings->push_back((name.empty() ? "input" : name) + ":" +
                                    std::to_string(lineno) + ": unrecognized header '" + key +
                                    "'");
            }
            continue;
        }
        if (section == Section::None)
            parse_fail(name, lineno, "edge line outside of an edge-list section");
        if (n < 0) parse_fail(name, lineno, "edge list before VERTICES header");
        std::string cleaned = t;
        for (char &ch : cleaned)
            if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
        std::istringstream is(cleaned);
        long long u, v;
        if (!(is >> u >> v)) parse_fail(name, lineno, "cannot read edge endpoints");
        // skip words like "coste" until the weight
        Weight w = -1;
        std::string tok;
        while (is >> tok) {
            try {
                size_t pos = 0;
                long long x = std::stoll(tok, &pos);
                if (pos == tok.size()) {
                    w = x;
                    break;
                }
            } catch (const std::exception &) {
            }
        }
        if (w < 0) parse_fail(name, lineno, "cannot read edge weight");
        if (u < 1 || v < 1 || u > n || v > n)
            parse_fail(name, lineno, "vertex id out of range 1.." + std::to_string(n));
        Edge e{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w, 1};
        graph_edges.push_back(e);
        if (section == Section::Req) required_edges.push_back(e);
    }
    if (n < 0) parse_fail(name, lineno, "missing VERTICES header");
    inst.graph.vertex_count = n;
    inst.graph.edges = EdgeMultiset(std::move(graph_edges));
    inst.required = EdgeMultiset(std::move(required_edges));
    inst.validate();
    return inst;
}

RppInstance load_instance(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string name = std::filesystem::path(path).stem().string();
    // peek the first meaningful character to pick the dialect
    std::string line;
    std::streampos start = in.tellg();
    char first = 0;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        first = t[0];
        if (first != '#') break;
    }
    in.clear();
    in.seekg(start);
    if (first == 'v' || first == '#' || first == 0) return parse_edgelist(in, name);
    return parse_corberan(in, name);
}

BenchRecord bench_instance(const RppInstance &instance, const BenchOptions &options) {
    BenchRecord rec;
    rec.name = instance.name;
    try {
        rec.v = instance.graph.vertex_count;
        rec.vr = static_cast<long long>(instance.required.vertex_set().size());
        rec.r = instance.required.size();
        rec.b = instance.imbalanced_count();
        rec.c = instance.component_count();
        auto it = options.optima.find(instance.name);
        if (it != options.optima.end()) rec.optimum = it->second;
        if (instance.required.empty()) return rec;

        MetricRpp metric = metric_close(instance);
        EulerianExtension direct = approx_32(metric);
        rec.w_tour = instance.required.total_weight() + direct.edges.total_weight();

        KernelOptions kopt;
        kopt.weight_reduce = options.weight_reduce;
        auto t0 = std::chrono::steady_clock::now();
        KernelResult kr = kernelize(metric, options.eps, kopt);
        auto t1 = std::chrono::steady_clock::now();
        rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

        rec.v_kernel = static_cast<long long>(kr.kernel.vertices.size());
        rec.r_kernel = kr.kernel.required.size();

        EulerianExtension ks = approx_32(kr.kernel);
        ClosedWalk lifted = lift_solution(metric, kr.trace, ks);
        rec.w_kernel_tour = lifted.weight();
    } catch (const std::exception &ex) {
        rec.failed = true;
        rec.error = ex.what();
    }
    return rec;
}

namespace {

std::string ratio(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

std::vector<double> quartiles(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    auto at = [&](double q) {
        if (xs.empty()) return 0.0;
        double pos = q * (xs.size() - 1);
        size_t lo = static_cast<size_t>(pos);
        size_t hi = std::min(lo + 1, xs.size() - 1);
        double frac = pos - lo;
        return xs[lo] * (1 - frac) + xs[hi] * frac;
    };
    return {at(0.0), at(0.25), at(0.5), at(0.75), at(1.0)};
}

}  // namespace

std::string bench_csv_header() { return "name,V,VR,R,b,c,wW,Vk,Rk,wWk,ms,rV,rVR,rR,rW,rOpt"; }

std::string bench_csv_row(const BenchRecord &rec) {
    std::ostringstream os;
    if (rec.failed) {
        std::string msg = rec.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        os << rec.name << ",ERROR(" << msg << ")";
        return os.str();
    }
    os << rec.name << ',' << rec.v << ',' << rec.vr << ',' << rec.r << ',' << rec.b << ','
       << rec.c << ',' << rec.w_tour << ',' << rec.v_kernel << ',' << rec.r_kernel << ','
       << rec.w_kernel_tour << ',' << rec.ms;
    os << ',' << (rec.v ? ratio(double(rec.v_kernel) / rec.v) : std::string("0.0000"));
    os << ',' << (rec.vr ? ratio(double(rec.v_kernel) / rec.vr) : std::string("0.0000"));
    os << ',' << (rec.r ? ratio(double(rec.r_kernel) / rec.r) : std::string("0.0000"));
    os << ',' << (rec.w_tour ? ratio(double(rec.w_kernel_tour) / rec.w_tour)
                             : std::string("0.0000"));
    os << ',';
    if (rec.optimum && *rec.optimum > 0) os << ratio(double(rec.w_kernel_tour) / *rec.optimum);
    return os.str();
}

std::string run_bench(const std::string &directory, const BenchOptions &options) {
    std::vector<std::string> files;
    for (const auto &entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::ostringstream os;
    os << bench_csv_header() << "\n";
    std::vector<double> rvr, rw;
    for (const std::string &path : files) {
        BenchRecord rec;
        try {
            RppInstance inst = load_instance(path);
            rec = bench_instance(inst, options);
        } catch (const std::exception &ex) {
            rec.name = std::filesystem::path(path).stem().string();
            rec.failed = true;
            rec.error = ex.what();
        }
        os << bench_csv_row(rec) << "\n";
        if (!rec.failed && rec.vr > 0 && rec.w_tour > 0) {
            rvr.push_back(double(rec.v_kernel) / rec.vr);
            rw.push_back(double(rec.w_kernel_tour) / rec.w_tour);
        }
    }
    for (auto [label, data] : {std::pair<const char *, std::vector<double> *>{"rVR", &rvr},
                               {"rW", &rw}}) {
        if (data->empty()) continue;
        os << "# quartiles " << label;
        for (double q : quartiles(*data)) os << ' ' << ratio(q);
        os << "\n";
    }
    return os.str();
}

std::map<std::string, Weight> parse_optima(std::istream &in) {
    std::map<std::string, Weight> m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream is(t);
        std::string name;
        Weight w;
        if (!(is >> name >> w)) parse_fail("optima", lineno, "expected '<name> <weight>'");
        m[name] = w;
    }
    return m;
}

std::string write_solution(const ClosedWalk &walk) {
    std::ostringstream os;
    os << "rpp-solution 1\n";
    os << "weight " << walk.weight() << "\n";
    os << "vertices " << walk.vertices.size();
    for (Vertex v : walk.vertices) os << ' ' << v;
    os << "\nsteps " << walk.step_weights.size();
    for (Weight w : walk.step_weights) os << ' ' << w;
    os << "\n";
    return os.str();
}

ClosedWalk parse_solution(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "rpp-solution 1")
        throw std::runtime_error("solution: expected header 'rpp-solution 1'");
    ClosedWalk walk;
    Weight declared = -1;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream is(t);
        std::string key;
        is >> key;
        if (key == "weight") {
            if (!(is >> declared)) throw std::runtime_error("solution: bad weight line");
        } else if (key == "vertices") {
            size_t n;
            if (!(is >> n)) throw std::runtime_error("solution: bad vertices line");
            walk.vertices.resize(n);
            for (size_t i = 0; i < n; ++i)
                if (!(is >> walk.vertices[i]))
                    throw std::runtime_error("solution: truncated vertex list");
        } else if (key == "steps") {
            size_t n;
            if (!(is >> n)) throw std::runtime_error("solution: bad steps line");
            walk.step_weights.resize(n);
            for (size_t i = 0; i < n; ++i)
                if (!(is >> walk.step_weights[i]))
                    throw std::runtime_error("solution: truncated step list");
        } else {
            throw std::runtime_error("solution: unknown line '" + key + "'");
        }
    }
    if (!walk.empty() && walk.vertices.size() != walk.step_weights.size() + 1)
        throw std::runtime_error("solution: vertex/step count mismatch");
    if (declared >= 0 && walk.weight() != declared)
        throw std::runtime_error("solution: declared weight " + std::to_string(declared) +
                                 " does not match steps (" + std::to_string(walk.weight()) + ")");
    return walk;
}

}  // namespace rpp
