#ifndef VORTEXLAB_GRID_HPP
#define VORTEXLAB_GRID_HPP

#include <Eigen/Core>
#include <complex>

namespace vortexlab {

using Complex = std::complex<double>;
using RealField = Eigen::ArrayXXd;
using ComplexField = Eigen::ArrayXXcd;
using BoolField = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Uniform cell-centered grid on the square [-R,R]^2.  Index (i,j) maps to
// the cell midpoint x(i) + i*y(j); no node ever sits on the origin or on
// the circle |z| = R, so log-singular sources and the disk boundary are
// always sampled strictly off-center.
struct GridSpec {
    double radius = 12.0;
    int n = 1024;

    double spacing() const { return 2.0 * radius / n; }
    double x(int i) const { return -radius + (i + 0.5) * spacing(); }
    double y(int j) const { return -radius + (j + 0.5) * spacing(); }
    Complex point(int i, int j) const { return {x(i), y(j)}; }

    // true at cells whose midpoint lies in the open disk |z| < R
    BoolField disk_mask() const;

    RealField radii() const;
    ComplexField points() const;
};

// Midpoint-rule integral of f over the masked cells.
double integrate(const GridSpec& g, const RealField& f, const BoolField& mask);
double integrate(const GridSpec& g, const RealField& f);

// Bilinear interpolation at z; z must lie at least half a cell inside the
// grid square.
double interpolate(const GridSpec& g, const RealField& f, Complex z);
Complex interpolate(const GridSpec& g, const ComplexField& f, Complex z);

// Centered first differences, one-sided at the array edge.
RealField diff_x(const GridSpec& g, const RealField& f);
RealField diff_y(const GridSpec& g, const RealField& f);
ComplexField diff_x(const GridSpec& g, const ComplexField& f);
ComplexField diff_y(const GridSpec& g, const ComplexField& f);

// Fourth-order centered first differences (5-point stencil), falling back
// to the second-order formulas within two cells of the array edge.
RealField diff4_x(const GridSpec& g, const RealField& f);
RealField diff4_y(const GridSpec& g, const RealField& f);
ComplexField diff4_x(const GridSpec& g, const ComplexField& f);
ComplexField diff4_y(const GridSpec& g, const ComplexField& f);

} // namespace vortexlab

#endif
