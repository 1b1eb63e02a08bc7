#ifndef RPP_GEN_HPP
#define RPP_GEN_HPP

#include <cstdint>
#include <string>

#include "rpp/instance.hpp"

namespace rpp {

// Random geometric instance: n points drawn uniformly from a
// 1000 x 1000 grid, each connected to its d nearest neighbors with
// rounded Euclidean weights; extra cheapest edges patch the graph
// connected; every edge is required independently with probability p
// (a rational in [0, 1], expressed as percent to stay integer-exact).
RppInstance gen_geometric(int n, int d, int required_percent, std::uint64_t seed,
                          const std::string &name);

// Sparse street-network-like base graph (as above, d = 3) whose required
// edges form a few long trails: each trail is a non-edge-repeating random
// walk of the given length. Yields few imbalanced vertices and a small
// number of required components, like municipal sweeping districts.
RppInstance gen_trails(int n, int trails, int trail_length, std::uint64_t seed,
                       const std::string &name);

}  // namespace rpp

#endif
