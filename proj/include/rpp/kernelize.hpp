#ifndef RPP_KERNELIZE_HPP
#define RPP_KERNELIZE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpp/metric.hpp"
#include "rpp/rational.hpp"

namespace rpp {

// One reduction event. Replaying the steps in order on the input instance
// reproduces the kernel exactly.
struct TraceStep {
    enum class Kind {
        DeletedVertices,  // vertices not incident to required edges
        StrippedCycle,    // a required cycle removed from R
        ExtractionA,      // balanced non-cut vertex: R_v removed, matching added
        ExtractionB,      // two-block cut vertex: {a,v},{b,v} replaced by {a,b}
        AddedMatching,    // M* added to R
        WeightQuantum,    // weights divided by q and floored
    };
    Kind kind;
    Vertex vertex = -1;            // extraction vertex, if any
    std::vector<Vertex> vertices;  // deleted vertices
    EdgeMultiset removed;
    EdgeMultiset added;
    Rational quantum;
};

struct KernelTrace {
    Rational eps, eps1, eps2;
    Rational gamma;  // infinite when c == 1
    std::vector<TraceStep> steps;

    // Union of all AddedMatching steps (the M* edges a lifted solution
    // must traverse as deadheading edges).
    EdgeMultiset added_matching() const;
    std::optional<Rational> weight_quantum() const;
};

struct KernelOptions {
    // Default split: eps1 = eps, eps2 = 0, weight reduction off.
    // weight_reduce switches to eps1 = eps2 = eps/2 and quantizes the
    // kernel weights afterwards.
    bool weight_reduce = false;
    // Replace omega(R) in the gamma numerator by the solution lower
    // bound max{w(R)+w(M), w(R)+w(T), w(R)+(w(M)+w(T))/2}.
    bool gamma_lower_bound = false;
    // Externally supplied bound used in place of w(R); wins over
    // gamma_lower_bound when set.
    std::optional<Rational> gamma_bound;
};

struct KernelResult {
    MetricRpp kernel;
    KernelTrace trace;
};

// Rule 1: restrict the vertex set to V(R). Requires metric weights, which
// the MetricRpp representation guarantees.
MetricRpp rule_delete_nonrequired(const MetricRpp &instance, KernelTrace *trace = nullptr);

// Rule 2: per component, keep a DFS spanning tree and strip all cycles
// from the leftover required edges. Afterwards every k-vertex component
// has at most max{1, 2k-2} required edges.
MetricRpp rule_strip_cycles(const MetricRpp &instance, KernelTrace *trace = nullptr);

// Extraction of one balanced vertex (Definition: case (a) for non-cut
// vertices, case (b) for two-block cut vertices). Returns the new
// required multiset; throws naming the violated clause if v is not
// extractable.
EdgeMultiset extract_vertex(const MetricRpp &instance, Vertex v, KernelTrace *trace = nullptr);

// Rule 3: build the representative sets B_i greedily (ascending vertex
// id, admit a vertex iff its distance to every admitted one exceeds
// gamma), then extract eligible vertices outside B until none remains.
MetricRpp rule_extract_balanced(const MetricRpp &instance, const Rational &gamma,
                                KernelTrace *trace = nullptr);

// Rule 4: add the cheapest-first prefix of the minimum-weight balancing
// matching M whose total weight stays within delta.
MetricRpp rule_add_matching(const MetricRpp &instance, Weight delta,
                            KernelTrace *trace = nullptr);

// Full pipeline: extract-balanced(gamma) -> strip-cycles -> delete
// non-required -> optional weight reduction. gamma = eps1 * w(R) / (4c-4),
// infinite when c == 1.
KernelResult kernelize(const MetricRpp &instance, const Rational &eps,
                       const KernelOptions &options = {});

// Applies the trace forward to reproduce the kernel (ignoring any weight
// quantum step, which does not affect solution structure).
MetricRpp replay_trace(const MetricRpp &instance, const KernelTrace &trace);

// Line-oriented, versioned trace format.
std::string serialize_trace(const KernelTrace &trace);
KernelTrace parse_trace(std::istream &in);

}  // namespace rpp

#endif
