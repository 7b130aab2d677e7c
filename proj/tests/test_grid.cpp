#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "vortexlab/grid.hpp"

using namespace vortexlab;

TEST_CASE("cell-centered grid avoids the origin and the circle") {
    GridSpec g{12.0, 1024};
    for (int i = 0; i < g.n; ++i) {
        CHECK(std::abs(g.x(i)) > 1e-12);
        CHECK(std::abs(std::abs(g.x(i)) - g.radius) > 1e-12);
    }
}

TEST_CASE("midpoint quadrature: disk area") {
    GridSpec g{10.0, 512};
    const RealField one = RealField::Constant(g.n, g.n, 1.0);
    const double area = integrate(g, one, g.disk_mask());
    CHECK(area == doctest::Approx(std::numbers::pi * 100.0).epsilon(1e-3));
}

TEST_CASE("bilinear interpolation is exact on bilinear functions") {
    GridSpec g{2.0, 64};
    RealField f(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            f(i, j) = 2.0 + 3.0 * g.x(i) - 1.5 * g.y(j) + 0.25 * g.x(i) * g.y(j);
    for (Complex z : {Complex(0.3, -0.7), Complex(-1.2, 0.05), Complex(0, 0)}) {
        const double expected =
            2.0 + 3.0 * z.real() - 1.5 * z.imag() + 0.25 * z.real() * z.imag();
        CHECK(interpolate(g, f, z) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("difference stencils differentiate polynomials") {
    GridSpec g{1.0, 32};
    RealField f(g.n, g.n), expected(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            f(i, j) = x * x * x - 2.0 * x;
            expected(i, j) = 3.0 * x * x - 2.0;
        }
    const RealField d2 = diff_x(g, f);
    const RealField d4 = diff4_x(g, f);
    const double h = g.spacing();
    // interior rows only; edges fall back to one-sided formulas
    for (int j = 4; j < g.n - 4; ++j)
        for (int i = 4; i < g.n - 4; ++i) {
            CHECK(std::abs(d2(i, j) - expected(i, j)) <= 1.01 * h * h); // h^2 x
            CHECK(std::abs(d4(i, j) - expected(i, j)) <= 1e-12); // exact on cubics
        }
}
