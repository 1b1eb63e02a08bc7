#ifndef RPP_MATCHING_HPP
#define RPP_MATCHING_HPP

#include <functional>
#include <vector>

#include "rpp/graph.hpp"

namespace rpp {

struct Matching {
    // Unordered pairs, stored (min, max) and sorted.
    std::vector<std::pair<Vertex, Vertex>> pairs;
    Weight total_weight = 0;
};

using CostOracle = std::function<Weight(Vertex, Vertex)>;

// Exact minimum-weight perfect matching on an even-cardinality vertex set
// with a symmetric, finite cost oracle. Throws on odd cardinality.
// The weight is canonical; the matching itself is the deterministic
// output of the underlying blossom algorithm.
Matching min_weight_perfect_matching(const std::vector<Vertex> &vertices,
                                     const CostOracle &cost);

// Perfect matching pairing consecutive vertices in ascending id order.
// No optimality claim; any perfect matching is valid where this is used.
Matching greedy_matching(std::vector<Vertex> vertices);
Matching greedy_matching(std::vector<Vertex> vertices, const CostOracle &cost);

}  // namespace rpp

#endif
