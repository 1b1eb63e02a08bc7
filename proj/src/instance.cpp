#include "rpp/instance.hpp"

#include <stdexcept>
#include <string>

namespace rpp {

void RppInstance::validate() const {
    for (const Edge &e : required.entries()) {
        if (e.u < 0 || e.v >= graph.vertex_count)
            throw std::runtime_error("required edge {" + std::to_string(e.u) + "," +
                                     std::to_string(e.v) + "} outside vertex range");
    }
    for (const Edge &e : graph.edges.entries())
        if (e.u < 0 || e.v >= graph.vertex_count)
            throw std::runtime_error("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     "} outside vertex range");
    if (!graph.edges.contains(required))
        throw std::runtime_error("instance " + (name.empty() ? "?" : name) +
                                 ": a required edge is missing from the graph");
}

}  // namespace rpp
