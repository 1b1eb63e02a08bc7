#ifndef RPP_SOLVER_HPP
#define RPP_SOLVER_HPP

#include <optional>
#include <string>

#include "rpp/kernelize.hpp"
#include "rpp/metric.hpp"

namespace rpp {

// Edge multiset S such that required + S is connected and balanced; in
// weight bijection with tours: w(tour) = w(R) + w(S).
struct EulerianExtension {
    EdgeMultiset edges;
};

struct VerifyResult {
    bool ok = false;
    std::string message;  // names a violating vertex or component pair
};

// Minimum-weight set of c-1 edges connecting the components of the
// required graph (minimum spanning tree of the contracted components,
// each tree edge realized by its cheapest endpoint pair).
EdgeMultiset connecting_set(const MetricRpp &instance);

// Minimum-weight perfect matching on the imbalanced vertices, at metric
// distances; b/2 edges.
EdgeMultiset balancing_matching(const MetricRpp &instance);

// 3/2-approximation: connect with T, then repair the parities of the
// resulting graph with an exact minimum-weight matching.
EulerianExtension approx_32(const MetricRpp &instance);

// Checks connectivity and balance of required + S. Never throws.
VerifyResult verify_ee(const MetricRpp &instance, const EdgeMultiset &s);

// Euler tour of required + S; weight is exactly w(R) + w(S).
ClosedWalk ee_to_tour(const MetricRpp &instance, const EulerianExtension &s);

// Inverse direction: S = E(W) minus R. Throws naming a required edge the
// walk misses.
EulerianExtension tour_to_ee(const MetricRpp &instance, const ClosedWalk &walk);

// Exhaustive branch-and-bound over edge multisets on V(R) x V(R) pairs
// (multiplicity at most 2 per pair) within the given edge budget;
// edge_budget < 0 selects the default b/2 + 2(c-1). Returns the
// lexicographically least minimizer of (weight, edge count, edge list).
// Refuses instances beyond desk scale instead of approximating.
EulerianExtension exact_small(const MetricRpp &instance, long long edge_budget = -1);

// max{w(R)+w(M), w(R)+w(T), w(R)+floor((w(M)+w(T))/2)}; never exceeds the
// optimal tour weight.
Weight lower_bound(const MetricRpp &instance);

// Lifts a kernel solution back to a tour of the metric-closed input: the
// kernel extension is valid on the input as-is, trace matching edges are
// re-added, and metric edges are expanded to original-graph walks when
// the closure carries expansion data.
ClosedWalk lift_solution(const MetricRpp &original, const KernelTrace &trace,
                         const EulerianExtension &kernel_solution);
ClosedWalk lift_solution(const MetricRpp &original, const KernelTrace &trace,
                         const ClosedWalk &kernel_tour);

// Special-case dispatch: (1) cheap connectivity: tour from T+T+M;
// (2) cheap balance: add the full matching, then kernelize; (3) fallback
// exact reduction by cycle stripping and vertex deletion only.
struct DispatchResult {
    int case_id = 0;  // 1, 2, or 3
    std::optional<ClosedWalk> tour;         // case 1
    std::optional<KernelResult> reduced;    // cases 2 and 3
};
DispatchResult easy_dispatch(const MetricRpp &instance, const Rational &eps);

}  // namespace rpp

#endif
