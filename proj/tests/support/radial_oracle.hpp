#ifndef VORTEXLAB_TESTS_RADIAL_ORACLE_HPP
#define VORTEXLAB_TESTS_RADIAL_ORACLE_HPP

#include <vector>

namespace vortexlab::testing {

// Independent oracle for rotationally symmetric vortices: the radial
// profile h(r) = log|f|^2 of the degree-d vortex at the origin solves
//
//     h'' + h'/r = e^h - 1,    h(r) = 2 d log r + a + o(1)  near 0,
//
// integrated by RK4 with the free constant `a` found by bisection
// (shooting on the separatrix between h -> +inf and h -> -inf).
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> h;
    double a = 0; // limit of h - 2 d log r at the origin

    double at(double radius) const; // linear interpolation
};

RadialProfile solve_radial_vortex(int degree, double r_max = 16.0);

} // namespace vortexlab::testing

#endif
