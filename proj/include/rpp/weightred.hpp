#ifndef RPP_WEIGHTRED_HPP
#define RPP_WEIGHTRED_HPP

#include <utility>
#include <vector>

#include "rpp/metric.hpp"
#include "rpp/rational.hpp"

namespace rpp {

// Lossy weight quantization: every weight is divided by the quantum
// q = eps * beta / n_cap and floored. Any solution of at most n_cap edges
// and weight at most beta keeps its approximation factor up to +eps*beta
// when solved under the reduced weights.
struct WeightReduction {
    Rational q;
    std::vector<Weight> reduced;
    Weight beta = 0;
    long long n_cap = 0;
    Rational eps;
};

// Requires every weight <= beta, n_cap >= 1, eps positive and finite.
// Guarantees max(reduced) <= n_cap / eps.
WeightReduction reduce_weights(const std::vector<Weight> &weights, Weight beta, long long n_cap,
                               const Rational &eps);

// Parameters for quantizing a kernel: beta = w(R) + w(T) and
// n_cap = |R| + b/2 + 2c - 2, where T is the minimum connecting set.
std::pair<Weight, long long> psaks_weight_params(const MetricRpp &kernel);

// Quantizes all pairwise distances and required-edge weights of a kernel,
// returning an instance over a reduced distance matrix (without path
// expansion data). The quantum used is reported through quantum_out.
MetricRpp apply_weight_reduction(const MetricRpp &kernel, const Rational &eps,
                                 Rational *quantum_out);

}  // namespace rpp

#endif
