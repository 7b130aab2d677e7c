#ifndef VORTEXLAB_SYM_HPP
#define VORTEXLAB_SYM_HPP

#include <string>
#include <vector>

#include "vortexlab/sphere.hpp"
#include "vortexlab/zero_config.hpp"

namespace vortexlab {

// A point of Sym^d(S^2): an unordered d-tuple of sphere points.
struct SymPoint {
    std::vector<SpherePoint> points;

    int size() const { return static_cast<int>(points.size()); }

    std::string to_json() const;
    static SymPoint from_json(const std::string& text);
};

// iota_d: pad a zero configuration of degree <= d with copies of infinity.
SymPoint iota(const ZeroConfig& config, int d);

SymPoint sym_point_from_positions(const std::vector<Complex>& positions);

// Minimum over bijections of the summed chordal distances, computed by
// min-cost bipartite matching.  Metrizes the quotient topology of
// Sym^d(S^2): symmetric, zero iff equal as multisets, triangle inequality.
double sym_distance(const SymPoint& a, const SymPoint& b);

} // namespace vortexlab

#endif
