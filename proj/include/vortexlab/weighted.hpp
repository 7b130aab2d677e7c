#ifndef VORTEXLAB_WEIGHTED_HPP
#define VORTEXLAB_WEIGHTED_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vortexlab {

// Parameters of the weighted spaces L^{k,p}_lambda / W^{k,p}_lambda.
struct WeightParams {
    double p = 4.0;      // > 1
    double lambda = 0.5;
    int n = 2;           // ambient dimension (grids are 2d)
    int k = 0;           // derivative order, <= 1 on grids

    void validate() const;
};

enum class NormFlavor { PLambda, LkpLambda, WkpLambda };

// Scalar or vector-valued function sampled on a square (optionally
// disk-masked) grid.
struct GridFunction {
    GridSpec grid;
    bool disk = false;
    std::vector<RealField> components;

    void validate() const;
    BoolField domain_mask() const;

    void write_csv(std::ostream& out) const;
    static GridFunction read_csv(std::istream& in);
};

// ||<.>^lambda f||_p and the L^{k,p}_lambda / W^{k,p}_lambda sums over
// derivative orders (<x> = sqrt(1+|x|^2)).
double weighted_norm(const GridFunction& f, const WeightParams& w,
                     NormFlavor flavor);

// Monomial membership z^k in L^{1,p}_{lambda-1-d}: k < d - lambda + 1 - 2/p.
bool poly_in_weighted_space(int monomial_degree, int d, const WeightParams& w);

struct HardyReport {
    double lhs = 0, rhs = 0;
    double constant = 0; // p/(lambda + n/p)
    double y_inf = 0;    // outer-ring mean
    bool ok = false;
};

// ||(u-y_inf)|.|^lambda||_p <= p/(lambda+n/p) ||Du |.|^{lambda+1}||_p,
// checked by quadrature with multiplicative slack on the right side.
HardyReport hardy_check(const GridFunction& u, const WeightParams& w,
                        double quadrature_slack = 0.05);

struct DbarMonomial {
    int degree = 0;
    bool in_domain = false;
    double dbar_residual = 0; // max |discrete dbar z^k| over the grid
};

struct DbarKernelReport {
    int d = 0;
    std::vector<DbarMonomial> monomials; // k = 0 .. d+1
    int real_kernel_dimensions = 0;      // 2(d+1)
    int expected_index = 0;              // 2 + 2d
    bool cokernel_trivial = true;
    bool ok = false;

    std::string to_json() const;
};

// Kernel accounting for dbar on C rho_0 p_d + L^{1,p}_{lambda-1-d}: the
// monomials 1, z, ..., z^d lie in the domain and are annihilated by the
// discrete dbar; z^{d+1} is excluded.  Accounts for the full index 2+2d
// since the cokernel is trivial for d >= 0.
DbarKernelReport dbar_kernel_check(int d, const WeightParams& w,
                                   const GridSpec& grid);

} // namespace vortexlab

#endif
