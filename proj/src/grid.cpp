#include "vortexlab/grid.hpp"

#include <cassert>
#include <cmath>

namespace vortexlab {

BoolField GridSpec::disk_mask() const {
    BoolField m(n, n);
    const double r2 = radius * radius;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = x(i) * x(i) + y(j) * y(j) < r2;
    return m;
}

RealField GridSpec::radii() const {
    RealField r(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            r(i, j) = std::hypot(x(i), y(j));
    return r;
}

ComplexField GridSpec::points() const {
    ComplexField z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            z(i, j) = point(i, j);
    return z;
}

double integrate(const GridSpec& g, const RealField& f, const BoolField& mask) {
    const double cell = g.spacing() * g.spacing();
    return cell * mask.select(f, 0.0).sum();
}

double integrate(const GridSpec& g, const RealField& f) {
    return g.spacing() * g.spacing() * f.sum();
}

namespace {

template <typename Field>
typename Field::Scalar interp(const GridSpec& g, const Field& f, Complex z) {
    const double h = g.spacing();
    double u = (z.real() + g.radius) / h - 0.5;
    double v = (z.imag() + g.radius) / h - 0.5;
    int i = static_cast<int>(std::floor(u));
    int j = static_cast<int>(std::floor(v));
    i = std::max(0, std::min(i, g.n - 2));
    j = std::max(0, std::min(j, g.n - 2));
    const double a = u - i, b = v - j;
    return (1 - a) * (1 - b) * f(i, j) + a * (1 - b) * f(i + 1, j) +
           (1 - a) * b * f(i, j + 1) + a * b * f(i + 1, j + 1);
}

template <typename Field>
Field dx(const GridSpec& g, const Field& f) {
    const int n = g.n;
    Field d(n, n);
    const double inv2h = 1.0 / (2.0 * g.spacing());
    d.block(1, 0, n - 2, n) =
        (f.block(2, 0, n - 2, n) - f.block(0, 0, n - 2, n)) * inv2h;
    d.row(0) = (f.row(1) - f.row(0)) * (2.0 * inv2h);
    d.row(n - 1) = (f.row(n - 1) - f.row(n - 2)) * (2.0 * inv2h);
    return d;
}

template <typename Field>
Field dy(const GridSpec& g, const Field& f) {
    const int n = g.n;
    Field d(n, n);
    const double inv2h = 1.0 / (2.0 * g.spacing());
    d.block(0, 1, n, n - 2) =
        (f.block(0, 2, n, n - 2) - f.block(0, 0, n, n - 2)) * inv2h;
    d.col(0) = (f.col(1) - f.col(0)) * (2.0 * inv2h);
    d.col(n - 1) = (f.col(n - 1) - f.col(n - 2)) * (2.0 * inv2h);
    return d;
}

template <typename Field>
Field dx4(const GridSpec& g, const Field& f) {
    const int n = g.n;
    Field d = dx(g, f);
    const double c = 1.0 / (12.0 * g.spacing());
    d.block(2, 0, n - 4, n) = (f.block(0, 0, n - 4, n) -
                               8.0 * f.block(1, 0, n - 4, n) +
                               8.0 * f.block(3, 0, n - 4, n) -
                               f.block(4, 0, n - 4, n)) *
                              c;
    return d;
}

template <typename Field>
Field dy4(const GridSpec& g, const Field& f) {
    const int n = g.n;
    Field d = dy(g, f);
    const double c = 1.0 / (12.0 * g.spacing());
    d.block(0, 2, n, n - 4) = (f.block(0, 0, n, n - 4) -
                               8.0 * f.block(0, 1, n, n - 4) +
                               8.0 * f.block(0, 3, n, n - 4) -
                               f.block(0, 4, n, n - 4)) *
                              c;
    return d;
}

} // namespace

double interpolate(const GridSpec& g, const RealField& f, Complex z) {
    return interp(g, f, z);
}

Complex interpolate(const GridSpec& g, const ComplexField& f, Complex z) {
    return interp(g, f, z);
}

RealField diff_x(const GridSpec& g, const RealField& f) { return dx(g, f); }
RealField diff_y(const GridSpec& g, const RealField& f) { return dy(g, f); }
ComplexField diff_x(const GridSpec& g, const ComplexField& f) { return dx(g, f); }
ComplexField diff_y(const GridSpec& g, const ComplexField& f) { return dy(g, f); }

RealField diff4_x(const GridSpec& g, const RealField& f) { return dx4(g, f); }
RealField diff4_y(const GridSpec& g, const RealField& f) { return dy4(g, f); }
ComplexField diff4_x(const GridSpec& g, const ComplexField& f) { return dx4(g, f); }
ComplexField diff4_y(const GridSpec& g, const ComplexField& f) { return dy4(g, f); }

} // namespace vortexlab
