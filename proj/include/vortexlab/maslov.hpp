#ifndef VORTEXLAB_MASLOV_HPP
#define VORTEXLAB_MASLOV_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vortexlab/vortex.hpp"

namespace vortexlab {

// Closed loop of unitary matrices, cyclically indexed: the restriction of a
// regular symplectic transport to unitary values, where the Salamon-Zehnder
// map is the complex determinant.
struct SymplecticLoop {
    std::vector<Eigen::MatrixXcd> samples;

    int dim() const { return samples.empty() ? 0 : int(samples.front().rows()); }
    int size() const { return static_cast<int>(samples.size()); }

    // N >= 8n, unitarity within 1e-9, consecutive samples within 0.5
    void validate() const;

    std::string to_json() const;
    static SymplecticLoop from_json(const std::string& text);
};

// Built-in closed-form samplers.
SymplecticLoop power_loop(int d, int n);                    // z -> z^d Id_n
SymplecticLoop diagonal_loop(const std::vector<int>& powers); // z -> diag(z^{d_i})

// 2 x (winding number of det o Phi around 0), computed by summing phase
// increments; always even.
int maslov_index(const SymplecticLoop& loop);

// 2 x winding of the phase of f on the circle |z| = radius; equals
// 2 deg(sol) once the circle encloses all zeros.
int vortex_boundary_maslov(const VortexSolution& sol, double radius);

struct IndexData {
    int dim_M = 2;        // even
    int dim_G = 1;
    int chern_pairing = 0; // <c_1^G(M,omega), [W]>
};

// dim M - 2 dim G + 2 <c_1^G(M,omega),[W]>
int fredholm_index(const IndexData& data);

} // namespace vortexlab

#endif
