#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "support/radial_oracle.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/vortex.hpp"

using namespace vortexlab;
namespace vt = vortexlab::testing;

namespace {

constexpr double kPi = std::numbers::pi;

SolverParams test_params(const ZeroConfig& cfg, int grid = 512) {
    SolverParams p = SolverParams::defaults_for(cfg);
    p.grid_points_per_axis = grid;
    return p;
}

// shared solutions, solved once
const VortexSolution& one_vortex() {
    static VortexSolution sol = [] {
        ZeroConfig cfg;
        cfg.zeros = {{{0, 0}, 1}};
        return solve_vortex(cfg, test_params(cfg));
    }();
    return sol;
}

const VortexSolution& four_vortex() {
    static VortexSolution sol = [] {
        ZeroConfig cfg;
        cfg.zeros = {{{0, 0}, 4}};
        return solve_vortex(cfg, test_params(cfg));
    }();
    return sol;
}

const VortexSolution& example_vortex() { // degrees 1 and 2 at the paper's points
    static VortexSolution sol = [] {
        ZeroConfig cfg;
        cfg.zeros = {{{-2, -1}, 1}, {{3, 4}, 2}};
        return solve_vortex(cfg, test_params(cfg));
    }();
    return sol;
}

// synthetic solution carrying only the fields a test needs
VortexSolution synthetic_solution(int n, double radius) {
    VortexSolution sol;
    sol.grid = GridSpec{radius, n};
    sol.params.domain_radius = radius;
    sol.params.grid_points_per_axis = n;
    return sol;
}

} // namespace

TEST_CASE("configuration validation") {
    ZeroConfig bad;
    bad.zeros = {{{0, 0}, 1}, {{0, 0}, 2}};
    CHECK_THROWS_AS(bad.validate(), InvalidInput); // merge before calling
    ZeroConfig neg;
    neg.zeros = {{{1, 0}, 0}};
    CHECK_THROWS_AS(neg.validate(), InvalidInput);

    ZeroConfig far;
    far.zeros = {{{10, 0}, 1}};
    SolverParams p = test_params(far);
    p.domain_radius = 11.0;
    CHECK_THROWS_AS(solve_vortex(far, p), DomainTooSmall);
}

TEST_CASE("vacuum solution") {
    ZeroConfig vac;
    const VortexSolution sol = solve_vortex(vac, test_params(vac, 128));
    CHECK(sol.energy == 0.0);
    CHECK(sol.f.abs().maxCoeff() == 1.0);
    CHECK(sol.f.abs().minCoeff() == 1.0);
    CHECK(sol.phi.abs().maxCoeff() == 0.0);
    CHECK(sol.psi.abs().maxCoeff() == 0.0);
    const ResidualReport rep = residual_report(sol);
    CHECK(rep.first_eq_sup <= 1e-14);
    CHECK(rep.second_eq_sup <= 1e-14);
    CHECK(annulus_energy(sol, 1.0, 5.0) == 0.0);
    CHECK_THROWS_AS(decay_exponent(sol, 4.0, 9.0), InsufficientRange);
}

TEST_CASE("single vortex: energy pi, image bounds") {
    const VortexSolution& sol = one_vortex();
    CHECK(sol.energy / kPi == doctest::Approx(1.0).epsilon(0.02));
    CHECK(sol.sup_abs_f() < 1.0);
    CHECK(sol.min_abs_f() < 0.05);
    CHECK(sol.outer_ring_min_abs_f() >= 1.0 - sol.params.boundary_tolerance);
    // the image fills [0,1): every level is attained up to grid resolution
    for (double r = 0.05; r < 0.96; r += 0.1) {
        double closest = 1.0;
        const RealField absf = sol.f.abs();
        for (int j = 0; j < sol.grid.n; ++j)
            for (int i = 0; i < sol.grid.n; ++i)
                closest = std::min(closest, std::abs(absf(i, j) - r));
        CHECK(closest <= 0.02);
    }
}

TEST_CASE("degree-4 vortex matches the radial shooting oracle") {
    const vt::RadialProfile oracle = vt::solve_radial_vortex(4);
    const VortexSolution& sol = four_vortex();
    const GridSpec& g = sol.grid;
    double worst = 0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double r = std::hypot(g.x(i), g.y(j));
            if (r < 1.0 || r > 0.5 * sol.params.domain_radius) continue;
            worst = std::max(worst, std::abs(sol.h(i, j) - oracle.at(r)));
        }
    CHECK(worst <= 1e-3);
    CHECK(sol.energy / kPi == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("two-cluster configuration carries energy 3 pi") {
    const VortexSolution& sol = example_vortex();
    CHECK(sol.energy / kPi == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("local degrees recover prescribed zeros") {
    SUBCASE("triple zero at the origin") {
        ZeroConfig cfg;
        cfg.zeros = {{{0, 0}, 3}};
        const VortexSolution sol = solve_vortex(cfg, test_params(cfg));
        const ZeroConfig rec = local_degrees(sol, 1.0);
        REQUIRE(rec.zeros.size() == 1);
        CHECK(rec.zeros[0].multiplicity == 3);
        CHECK(std::abs(rec.zeros[0].position) < 0.02);
    }
    SUBCASE("spec example configuration, total degree 3") {
        const ZeroConfig rec = local_degrees(example_vortex(), 1.0);
        CHECK(rec.degree() == 3);
        CHECK(same_config(rec, example_vortex().config, 0.02));
    }
    SUBCASE("synthetic field z/<z>") {
        VortexSolution sol = synthetic_solution(256, 6.0);
        sol.f = ComplexField(256, 256);
        for (int j = 0; j < 256; ++j)
            for (int i = 0; i < 256; ++i) {
                const Complex z = sol.grid.point(i, j);
                sol.f(i, j) = z / std::sqrt(1.0 + std::norm(z));
            }
        const ZeroConfig rec = local_degrees(sol, 1.0);
        REQUIRE(rec.zeros.size() == 1);
        CHECK(rec.zeros[0].multiplicity == 1);
        CHECK(std::abs(rec.zeros[0].position) < 0.02);
    }
    SUBCASE("probe radius guards") {
        CHECK_THROWS_AS(local_degrees(example_vortex(), 4.0), InvalidInput);
    }
}

TEST_CASE("annulus energy: exhaustion, additivity, concentration") {
    const VortexSolution& sol = one_vortex();
    const double R = sol.params.domain_radius;
    CHECK(annulus_energy(sol, 0.0, R) ==
          doctest::Approx(sol.energy).epsilon(1e-12));
    const double split = annulus_energy(sol, 1.0, 3.0) +
                         annulus_energy(sol, 3.0, 7.0);
    CHECK(split == doctest::Approx(annulus_energy(sol, 1.0, 7.0)).epsilon(1e-12));
    // energy concentration: a = 4, eps = 1/2, outer radius infinite
    const double inner = annulus_energy(sol, 8.0, R);
    const double whole = annulus_energy(sol, 2.0, R);
    CHECK(inner <= 4.0 * std::pow(4.0, -1.5) * whole);
    CHECK_THROWS_AS(annulus_energy(sol, 3.0, 2.0), InvalidInput);
}

TEST_CASE("decay exponent") {
    SUBCASE("synthetic |z|^-4 density") {
        VortexSolution sol = synthetic_solution(512, 16.0);
        sol.energy_density = RealField(512, 512);
        for (int j = 0; j < 512; ++j)
            for (int i = 0; i < 512; ++i) {
                const double r2 = std::norm(sol.grid.point(i, j));
                sol.energy_density(i, j) = 1.0 / (r2 * r2);
            }
        const double slope = decay_exponent(sol, 2.0, 12.0);
        CHECK(slope == doctest::Approx(-4.0).epsilon(0.0125));
    }
    SUBCASE("solver output decays faster than the |z|^{-4+eps} bound") {
        ZeroConfig cfg;
        cfg.zeros = {{{0, 0}, 1}};
        SolverParams p = test_params(cfg);
        p.domain_radius = 13.0; // fit range (4,10) needs 0.8 R >= 10
        const VortexSolution sol = solve_vortex(cfg, p);
        CHECK(decay_exponent(sol, 4.0, 10.0) <= -3.5);
    }
    SUBCASE("range guards") {
        CHECK_THROWS_AS(decay_exponent(one_vortex(), 0.5, 9.0),
                        InsufficientRange);
        CHECK_THROWS_AS(decay_exponent(one_vortex(), 4.0, 100.0),
                        InsufficientRange);
    }
}

TEST_CASE("residual report") {
    ZeroConfig cfg;
    cfg.zeros = {{{0, 0}, 2}};
    const VortexSolution sol = solve_vortex(cfg, test_params(cfg));
    const ResidualReport rep = residual_report(sol);
    CHECK(rep.first_eq_sup <= 1e-4);
    CHECK(rep.second_eq_sup <= 1e-4);

    // negative control: scaling f breaks the curvature equation
    VortexSolution corrupted = sol;
    corrupted.f = sol.f * Complex(1.1, 0.0);
    const ResidualReport bad = residual_report(corrupted);
    CHECK(bad.second_eq_sup >= 0.05);
}

TEST_CASE("translation equivariance") {
    ZeroConfig base;
    base.zeros = {{{0, 0}, 1}};
    const SolverParams p = test_params(base);
    const VortexSolution sol0 = solve_vortex(base, p);

    const Complex shift(8.0 * sol0.grid.spacing(), -0.3); // generic offset
    ZeroConfig moved = base.translated(shift);
    SolverParams pm = p;
    pm.domain_radius = p.domain_radius; // same disk; zero stays well inside
    const VortexSolution sol1 = solve_vortex(moved, pm);

    double worst = 0;
    for (double r = 0.5; r <= 6.0; r += 0.7)
        for (int k = 0; k < 16; ++k) {
            const Complex z = std::polar(r, 2.0 * kPi * k / 16.0);
            const Complex a = interpolate(sol0.grid, sol0.f, z);
            const Complex b = interpolate(sol1.grid, sol1.f, z + shift);
            worst = std::max(worst, std::abs(a - b));
        }
    CHECK(worst <= 1e-3);
}

TEST_CASE("argument principle identity on random separated configs") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 2; ++trial) {
        ZeroConfig cfg;
        while (cfg.degree() < 3) {
            const Complex z{u(rng), u(rng)};
            bool ok = true;
            for (const auto& zr : cfg.zeros)
                if (std::abs(zr.position - z) < 2.0) ok = false;
            if (ok) cfg.zeros.push_back({z, 1 + int(cfg.zeros.empty())});
        }
        const VortexSolution sol = solve_vortex(cfg, test_params(cfg));
        CHECK(same_config(local_degrees(sol, 0.9), cfg, 0.02));
    }
}

TEST_CASE("solver failure paths") {
    ZeroConfig cfg;
    cfg.zeros = {{{0, 0}, 2}};
    SolverParams p = test_params(cfg, 256);
    p.max_newton_iterations = 1;
    CHECK_THROWS_AS(solve_vortex(cfg, p), NonConvergence);

    // grids too coarse for the residual contract are rejected
    ZeroConfig quad;
    quad.zeros = {{{0, 0}, 4}};
    SolverParams coarse = test_params(quad, 64);
    CHECK_THROWS_AS(solve_vortex(quad, coarse), NonConvergence);
}

TEST_CASE("deterministic independent of the thread cap") {
    ZeroConfig cfg;
    cfg.zeros = {{{0.5, 0.5}, 1}};
    SolverParams p = test_params(cfg, 256);
    p.residual_tolerance = 1.0; // coarse grid, gate off
    Eigen::setNbThreads(1);
    const VortexSolution a = solve_vortex(cfg, p);
    Eigen::setNbThreads(4);
    const VortexSolution b = solve_vortex(cfg, p);
    Eigen::setNbThreads(1);
    CHECK((a.h - b.h).abs().maxCoeff() == 0.0);
    CHECK((a.f - b.f).abs().maxCoeff() == 0.0);
}

TEST_CASE("exports") {
    const VortexSolution& sol = one_vortex();
    const std::string summary = solution_summary_json(sol);
    CHECK(summary.find("\"degree\": 1") != std::string::npos);
    CHECK(summary.find("energy_over_pi") != std::string::npos);

    // round trip of the zero-config JSON schema
    const ZeroConfig back = ZeroConfig::from_json(sol.config.to_json());
    CHECK(same_config(back, sol.config, 0.0));

    std::ostringstream csv;
    VortexSolution small = synthetic_solution(8, 2.0);
    small.h = RealField::Zero(8, 8);
    small.f = ComplexField::Constant(8, 8, Complex(1, 0));
    small.phi = RealField::Zero(8, 8);
    small.psi = RealField::Zero(8, 8);
    small.energy_density = RealField::Zero(8, 8);
    write_solution_csv(small, csv);
    CHECK(csv.str().rfind("x,y,h,re_f,im_f,phi,psi,e_w\n", 0) == 0);
}
