#ifndef VORTEXLAB_VORTEX_HPP
#define VORTEXLAB_VORTEX_HPP

#include <iosfwd>
#include <string>
#include <utility>

#include "vortexlab/grid.hpp"
#include "vortexlab/zero_config.hpp"

namespace vortexlab {

// Ginzburg-Landau vortices on the plane: G = S^1 acting on C by
// multiplication, momentum map mu(z) = (i/2)(1 - |z|^2).  In the
// trivialization A = Phi ds + Psi dt with Phi = i*phi, Psi = i*psi the
// vortex equations read
//
//     d_s f + i phi f + i (d_t f + i psi f) = 0,
//     d_s psi - d_t phi + (1 - |f|^2)/2     = 0,
//
// and the energy density is
//
//     e_w = ( |d_s f + i phi f|^2 + |d_t f + i psi f|^2
//             + (d_s psi - d_t phi)^2 + (1 - |f|^2)^2/4 ) / 2.
//
// Internally the solver uses the substitution h = log|f|^2, which turns the
// system into the scalar equation  Lap h = e^h - 1  with a 4*pi*n delta
// source at each zero of multiplicity n.  Splitting h = h0 + w with
//
//     h0(z) = sum_j n_j log( rho_j^2 / (sigma^2 + rho_j^2) ),  rho_j = |z-z_j|
//
// carries the singular sources analytically, leaving the smooth problem
//
//     Lap w = e^{h0+w} - 1 + sum_j 4 n_j sigma^2 / (sigma^2 + rho_j^2)^2,
//     w|_bdry = 0
//
// on the disk |z| <= R, discretized with a compact fourth-order nine-point
// stencil and solved by damped Newton with a multigrid-preconditioned
// conjugate-gradient linear solver.  The regularization scale sigma sets
// the amplitude of the w = 0 truncation tail, sigma^2 |h0(R)|/2 per unit
// degree; see SolverParams::source_scale.

struct SolverParams {
    double domain_radius = 12.0;
    int grid_points_per_axis = 1024;
    double newton_tolerance = 1e-10; // sup norm of the nonlinear residual
    int max_newton_iterations = 30;
    double damping = 1.0; // initial Newton step fraction, in (0,1]

    double residual_tolerance = 1e-4; // post-solve gate on both equations
    double boundary_tolerance = 1e-2; // outer-ring defect of |f|
    double source_scale = 0.5;        // regularization scale sigma in h0

    // domain_radius = max(12, 8 + max|z_j|), then grown in 0.5 steps until
    // the predicted outer-ring defect of |f| is below boundary_tolerance/2
    static SolverParams defaults_for(const ZeroConfig& config);

    void validate(const ZeroConfig& config) const;
};

struct VortexSolution {
    ZeroConfig config;
    SolverParams params;
    GridSpec grid;

    RealField h;   // log |f|^2, clamped below at log(DBL_MIN)
    ComplexField f;
    RealField phi; // Phi = i*phi
    RealField psi; // Psi = i*psi
    RealField energy_density;
    double energy = 0.0;
    int newton_iterations = 0;

    double sup_abs_f() const;
    double min_abs_f() const;
    // outermost ring of disk cells, ring width = 2 grid cells
    double outer_ring_min_abs_f() const;
};

VortexSolution solve_vortex(const ZeroConfig& config, const SolverParams& params);

// Winding numbers of f/|f| on probe circles around the detected zeros of f.
ZeroConfig local_degrees(const VortexSolution& sol, double probe_radius);

// Midpoint-rule integral of e_w over r < |z| <= R (intersected with the
// computational disk); half-open so that disjoint annuli add exactly.
double annulus_energy(const VortexSolution& sol, double r, double R);

// Least-squares slope of log(max_{|z|=r} e_w) against log r.
double decay_exponent(const VortexSolution& sol, double r_lo, double r_hi);

struct ResidualReport {
    double first_eq_sup = 0.0;
    double second_eq_sup = 0.0;
};

// Sup of the discrete residuals of the two vortex equations over interior
// cells: |z| <= R - 1 and at distance >= 1 from every zero.
ResidualReport residual_report(const VortexSolution& sol);

void write_solution_csv(const VortexSolution& sol, std::ostream& out);
std::string solution_summary_json(const VortexSolution& sol);

} // namespace vortexlab

#endif
