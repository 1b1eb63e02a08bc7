#ifndef RPP_INSTANCE_HPP
#define RPP_INSTANCE_HPP

#include <string>

#include "rpp/graph.hpp"

namespace rpp {

// An RPP instance: a weighted multigraph plus the multiset of required
// edges. Every required edge must exist in the graph with at least its
// multiplicity.
struct RppInstance {
    WeightedMultigraph graph;
    EdgeMultiset required;
    std::string name;

    // Derived statistics.
    int component_count() const { return connected_components(required).count; }
    int imbalanced_count() const {
        return static_cast<int>(imbalanced_vertices(required).size());
    }

    // Throws if a required edge is missing from the graph.
    void validate() const;
};

}  // namespace rpp

#endif
