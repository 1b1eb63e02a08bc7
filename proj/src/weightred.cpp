#include "rpp/weightred.hpp"

#include <stdexcept>

#include "rpp/solver.hpp"

namespace rpp {

WeightReduction reduce_weights(const std::vector<Weight> &weights, Weight beta, long long n_cap,
                               const Rational &eps) {
    if (n_cap <= 0) throw std::runtime_error("weight reduction: edge cap must be positive");
    if (eps.is_zero() || eps.is_infinite())
        throw std::runtime_error("weight reduction: epsilon must be positive and finite");
    for (Weight w : weights)
        if (w > beta)
            throw std::runtime_error("weight reduction: weight " + std::to_string(w) +
                                     " exceeds the cap " + std::to_string(beta));
    WeightReduction r;
    r.beta = beta;
    r.n_cap = n_cap;
    r.eps = eps;
    r.q = eps * beta / n_cap;
    r.reduced.reserve(weights.size());
    for (Weight w : weights)
        r.reduced.push_back(r.q.is_zero() ? 0 : floor_div(w, r.q));
    return r;
}

std::pair<Weight, long long> psaks_weight_params(const MetricRpp &kernel) {
    Weight beta = kernel.required.total_weight() + connecting_set(kernel).total_weight();
    long long b = static_cast<long long>(kernel.imbalanced().size());
    long long c = kernel.required.empty() ? 1 : kernel.component_count();
    long long n_cap = kernel.required.size() + b / 2 + 2 * c - 2;
    return {beta, n_cap};
}

MetricRpp apply_weight_reduction(const MetricRpp &kernel, const Rational &eps,
                                 Rational *quantum_out) {
    auto [beta, n_cap] = psaks_weight_params(kernel);

    std::vector<Weight> flat;
    size_t n = kernel.vertices.size();
    flat.reserve(n * n + kernel.required.entries().size());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            flat.push_back(kernel.dist(kernel.vertices[i], kernel.vertices[j]));
    for (const Edge &e : kernel.required.entries()) flat.push_back(e.w);

    WeightReduction r = reduce_weights(flat, beta, n_cap, eps);
    if (quantum_out) *quantum_out = r.q;

    std::vector<std::vector<Weight>> dist(n, std::vector<Weight>(n));
    size_t k = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) dist[i][j] = r.reduced[k++];

    MetricRpp out;
    out.closure = std::make_shared<MetricClosure>(kernel.vertices, std::move(dist),
                                                  kernel.closure->original_vertex_count());
    out.vertices = kernel.vertices;
    std::vector<Edge> req;
    for (const Edge &e : kernel.required.entries())
        req.push_back(Edge{e.u, e.v, r.reduced[k++], e.mult});
    out.required = EdgeMultiset(std::move(req));
    return out;
}

}  // namespace rpp
