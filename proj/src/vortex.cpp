#include "vortexlab/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogFloor = -708.0; // ~ log(DBL_MIN)

// ---------------------------------------------------------------------------
// analytic source terms of the scalar reduction

struct SourceTerms {
    RealField h0; // sum_j n_j log(rho_j^2 / (1+rho_j^2)); -inf at the zeros
    RealField S;  // sum_j 4 n_j / (1+rho_j^2)^2
};

SourceTerms source_terms(const ZeroConfig& config, const GridSpec& g,
                         double sigma) {
    const int n = g.n;
    const double s2 = sigma * sigma;
    SourceTerms t{RealField::Zero(n, n), RealField::Zero(n, n)};
    for (const auto& zr : config.zeros) {
        const double nj = zr.multiplicity;
        const double zs = zr.position.real(), zt = zr.position.imag();
        for (int j = 0; j < n; ++j) {
            const double dt = g.y(j) - zt;
            for (int i = 0; i < n; ++i) {
                const double ds = g.x(i) - zs;
                const double r2 = ds * ds + dt * dt;
                t.h0(i, j) += nj * (std::log(std::max(r2, 1e-300)) -
                                    std::log(s2 + r2));
                t.S(i, j) += 4.0 * nj * s2 / ((s2 + r2) * (s2 + r2));
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// masked 5-point operators

RealField laplacian(const GridSpec& g, const BoolField& mask, const RealField& x) {
    const int n = g.n;
    const double ih2 = 1.0 / (g.spacing() * g.spacing());
    RealField y = -4.0 * x;
    y.block(0, 0, n - 1, n) += x.block(1, 0, n - 1, n);
    y.block(1, 0, n - 1, n) += x.block(0, 0, n - 1, n);
    y.block(0, 0, n, n - 1) += x.block(0, 1, n, n - 1);
    y.block(0, 1, n, n - 1) += x.block(0, 0, n, n - 1);
    return mask.select(y * ih2, 0.0);
}

// Compact nine-point Laplacian: Lap9 = Lap + (h^2/12) Lap^2 + O(h^4) on
// smooth fields; together with the right-hand-side correction below it
// yields a fourth-order solution of the scalar equation.
RealField laplacian9(const GridSpec& g, const BoolField& mask, const RealField& x) {
    const int n = g.n;
    const double c6 = 1.0 / (6.0 * g.spacing() * g.spacing());
    RealField y = -20.0 * x;
    y.block(0, 0, n - 1, n) += 4.0 * x.block(1, 0, n - 1, n);
    y.block(1, 0, n - 1, n) += 4.0 * x.block(0, 0, n - 1, n);
    y.block(0, 0, n, n - 1) += 4.0 * x.block(0, 1, n, n - 1);
    y.block(0, 1, n, n - 1) += 4.0 * x.block(0, 0, n, n - 1);
    y.block(0, 0, n - 1, n - 1) += x.block(1, 1, n - 1, n - 1);
    y.block(1, 1, n - 1, n - 1) += x.block(0, 0, n - 1, n - 1);
    y.block(1, 0, n - 1, n - 1) += x.block(0, 1, n - 1, n - 1);
    y.block(0, 1, n - 1, n - 1) += x.block(1, 0, n - 1, n - 1);
    return mask.select(y * c6, 0.0);
}

// One multigrid level of the Newton operator  A = -Lap9 + diag(c).
struct Level {
    GridSpec g;
    BoolField mask;
    RealField c;
    RealField diag; // 20/(6h^2) + c
};

RealField apply_op(const Level& L, const RealField& x) {
    const int n = L.g.n;
    const double c6 = 1.0 / (6.0 * L.g.spacing() * L.g.spacing());
    RealField y = L.diag * x;
    y.block(0, 0, n - 1, n) -= 4.0 * c6 * x.block(1, 0, n - 1, n);
    y.block(1, 0, n - 1, n) -= 4.0 * c6 * x.block(0, 0, n - 1, n);
    y.block(0, 0, n, n - 1) -= 4.0 * c6 * x.block(0, 1, n, n - 1);
    y.block(0, 1, n, n - 1) -= 4.0 * c6 * x.block(0, 0, n, n - 1);
    y.block(0, 0, n - 1, n - 1) -= c6 * x.block(1, 1, n - 1, n - 1);
    y.block(1, 1, n - 1, n - 1) -= c6 * x.block(0, 0, n - 1, n - 1);
    y.block(1, 0, n - 1, n - 1) -= c6 * x.block(0, 1, n - 1, n - 1);
    y.block(0, 1, n - 1, n - 1) -= c6 * x.block(1, 0, n - 1, n - 1);
    return L.mask.select(y, 0.0);
}

void jacobi_sweeps(const Level& L, RealField& x, const RealField& b, int sweeps) {
    const double omega = 0.8;
    for (int s = 0; s < sweeps; ++s) {
        RealField r = b - apply_op(L, x);
        x += omega * L.mask.select(r / L.diag, 0.0);
    }
}

RealField restrict_to(const Level& coarse, const RealField& fine) {
    const int nc = coarse.g.n;
    const auto even = Eigen::seq(0, 2 * nc - 2, 2);
    const auto odd = Eigen::seq(1, 2 * nc - 1, 2);
    RealField r = 0.25 * (fine(even, even) + fine(odd, even) + fine(even, odd) +
                          fine(odd, odd));
    return coarse.mask.select(r, 0.0);
}

void prolong_add(const Level& fine, const RealField& ec, RealField& x) {
    const int nc = ec.rows();
    const auto even = Eigen::seq(0, 2 * nc - 2, 2);
    const auto odd = Eigen::seq(1, 2 * nc - 1, 2);
    RealField add(fine.g.n, fine.g.n);
    add(even, even) = ec;
    add(odd, even) = ec;
    add(even, odd) = ec;
    add(odd, odd) = ec;
    x += fine.mask.select(add, 0.0);
}

// Plain CG for the coarsest level.
void coarse_solve(const Level& L, RealField& x, const RealField& b) {
    x.setZero();
    RealField r = L.mask.select(b, 0.0);
    RealField p = r;
    double rr = (r * r).sum();
    const double stop = std::max(rr * 1e-24, 1e-300);
    for (int it = 0; it < 4000 && rr > stop; ++it) {
        RealField Ap = apply_op(L, p);
        const double alpha = rr / (p * Ap).sum();
        x += alpha * p;
        r -= alpha * Ap;
        const double rr_new = (r * r).sum();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
}

void vcycle(const std::vector<Level>& levels, size_t l, RealField& x,
            const RealField& b) {
    const Level& L = levels[l];
    if (l + 1 == levels.size()) {
        coarse_solve(L, x, b);
        return;
    }
    jacobi_sweeps(L, x, b, 2);
    RealField r = b - apply_op(L, x);
    RealField rc = restrict_to(levels[l + 1], r);
    RealField ec = RealField::Zero(levels[l + 1].g.n, levels[l + 1].g.n);
    vcycle(levels, l + 1, ec, rc);
    prolong_add(L, ec, x);
    jacobi_sweeps(L, x, b, 2);
}

// Multigrid-preconditioned CG.  Returns true if the relative residual
// dropped below rel_tol.
bool mgpcg(const std::vector<Level>& levels, const RealField& b, RealField& x,
           double rel_tol, int max_it) {
    const Level& L = levels[0];
    x = RealField::Zero(L.g.n, L.g.n);
    RealField r = L.mask.select(b, 0.0);
    const double b2 = (r * r).sum();
    if (b2 == 0.0) return true;
    RealField z = RealField::Zero(L.g.n, L.g.n);
    vcycle(levels, 0, z, r);
    RealField p = z;
    double rz = (r * z).sum();
    for (int it = 0; it < max_it; ++it) {
        RealField Ap = apply_op(L, p);
        const double alpha = rz / (p * Ap).sum();
        x += alpha * p;
        r -= alpha * Ap;
        if ((r * r).sum() <= rel_tol * rel_tol * b2) return true;
        z.setZero();
        vcycle(levels, 0, z, r);
        const double rz_new = (r * z).sum();
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    return false;
}

std::vector<Level> build_levels(const GridSpec& g) {
    std::vector<Level> levels;
    GridSpec spec = g;
    while (true) {
        Level L;
        L.g = spec;
        L.mask = spec.disk_mask();
        levels.push_back(std::move(L));
        if (spec.n % 2 != 0 || spec.n / 2 < 24) break;
        spec.n /= 2;
    }
    return levels;
}

void set_coefficient(std::vector<Level>& levels, const RealField& c_fine) {
    levels[0].c = levels[0].mask.select(c_fine, 0.0);
    for (size_t l = 1; l < levels.size(); ++l)
        levels[l].c = restrict_to(levels[l], levels[l - 1].c);
    for (auto& L : levels) {
        const double c6 = 1.0 / (6.0 * L.g.spacing() * L.g.spacing());
        L.diag = 20.0 * c6 + L.c;
    }
}

// ---------------------------------------------------------------------------
// damped Newton for  Lap w = e^{h0+w} - 1 + S,  w = 0 off the disk

struct NewtonOutcome {
    RealField w;
    int iterations = 0;
    bool converged = false;
};

NewtonOutcome newton_on_grid(const ZeroConfig& config, const SolverParams& p,
                             const GridSpec& g, RealField w, double tol,
                             int max_iter) {
    std::vector<Level> levels = build_levels(g);
    const BoolField& mask = levels[0].mask;
    const SourceTerms src = source_terms(config, g, p.source_scale);
    const BoolField all = BoolField::Constant(g.n, g.n, true);
    const double h2_12 = g.spacing() * g.spacing() / 12.0;

    // Mehrstellen residual: Lap9 w - F - (h^2/12) Lap5 F with
    // F = e^{h0+w} - 1 + S; ghost values outside the disk use w = 0
    auto residual = [&](const RealField& wv) -> RealField {
        RealField rhs = (src.h0 + wv).exp() - 1.0 + src.S;
        rhs += h2_12 * laplacian(g, all, rhs);
        return laplacian9(g, mask, wv) - mask.select(rhs, 0.0);
    };

    w = mask.select(w, 0.0);
    NewtonOutcome out;
    RealField G = residual(w);
    double res = G.abs().maxCoeff();
    for (int it = 0; it < max_iter; ++it) {
        if (res <= tol) {
            out.w = w;
            out.iterations = it;
            out.converged = true;
            return out;
        }
        set_coefficient(levels, (src.h0 + w).exp());
        RealField delta;
        mgpcg(levels, G, delta, 1e-10, 200);

        double alpha = p.damping;
        bool accepted = false;
        for (int k = 0; k < 8; ++k) {
            RealField w_try = mask.select(w + alpha * delta, 0.0);
            RealField G_try = residual(w_try);
            const double res_try = G_try.abs().maxCoeff();
            if (res_try < res) {
                w = std::move(w_try);
                G = std::move(G_try);
                res = res_try;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
        out.iterations = it + 1;
    }
    out.w = w;
    out.converged = res <= tol;
    return out;
}

// ---------------------------------------------------------------------------
// field reconstruction

void reconstruct_fields(const ZeroConfig& config, const GridSpec& g,
                        double sigma, const RealField& w, const RealField& h0,
                        VortexSolution& sol) {
    const int n = g.n;
    const double s2 = sigma * sigma;

    // f = e^{w/2} prod_j ztilde_j^{n_j} (s^2+rho_j^2)^{-n_j/2}; smooth
    // across the zeros, |f| < 1.  The log-singular parts of the connection
    // cancel analytically, leaving only first derivatives of w.
    ComplexField f = (w / 2.0).exp().cast<Complex>();
    RealField phi = -0.5 * diff4_y(g, w);
    RealField psi = 0.5 * diff4_x(g, w);
    for (const auto& zr : config.zeros) {
        const int m = zr.multiplicity;
        const double zs = zr.position.real(), zt = zr.position.imag();
        for (int j = 0; j < n; ++j) {
            const double dt = g.y(j) - zt;
            for (int i = 0; i < n; ++i) {
                const double ds = g.x(i) - zs;
                const double r2 = ds * ds + dt * dt;
                const Complex zt_pow = std::pow(Complex(ds, dt), m);
                f(i, j) *= zt_pow * std::pow(s2 + r2, -0.5 * m);
                phi(i, j) += m * dt / (s2 + r2);
                psi(i, j) -= m * ds / (s2 + r2);
            }
        }
    }

    sol.f = std::move(f);
    sol.phi = std::move(phi);
    sol.psi = std::move(psi);
    sol.h = (h0 + w).max(kLogFloor);

    // second-order stencils here: the energy converges like h^2 under grid
    // refinement, dominating the small w = 0 truncation tail
    const ComplexField vs =
        diff_x(g, sol.f) + Complex(0, 1) * sol.phi.cast<Complex>() * sol.f;
    const ComplexField vt =
        diff_y(g, sol.f) + Complex(0, 1) * sol.psi.cast<Complex>() * sol.f;
    const RealField f12 = diff_x(g, sol.psi) - diff_y(g, sol.phi);
    const RealField mu = 0.5 * (1.0 - sol.f.abs2());
    sol.energy_density =
        0.5 * (vs.abs2() + vt.abs2() + f12.square() + mu.square());
    sol.energy = integrate(g, sol.energy_density, g.disk_mask());
}

BoolField interior_mask(const VortexSolution& sol) {
    const GridSpec& g = sol.grid;
    BoolField m = g.disk_mask();
    const double rin = sol.params.domain_radius - 1.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            if (!m(i, j)) continue;
            const Complex z = g.point(i, j);
            if (std::abs(z) > rin) {
                m(i, j) = false;
                continue;
            }
            for (const auto& zr : sol.config.zeros)
                if (std::abs(z - zr.position) < 1.0) {
                    m(i, j) = false;
                    break;
                }
        }
    return m;
}

} // namespace

// ---------------------------------------------------------------------------

SolverParams SolverParams::defaults_for(const ZeroConfig& config) {
    SolverParams p;
    p.domain_radius = std::max(12.0, 8.0 + config.max_abs());
    // grow the disk until the w = 0 truncation keeps the outer ring of |f|
    // within half the boundary tolerance of 1
    const double s2 = p.source_scale * p.source_scale;
    auto ring_defect = [&](double R) {
        double worst = 0.0;
        for (int k = 0; k < 256; ++k) {
            const Complex z = std::polar(R - 0.25, 2.0 * kPi * k / 256.0);
            double h0 = 0.0;
            for (const auto& zr : config.zeros) {
                const double r2 = std::norm(z - zr.position);
                h0 += zr.multiplicity * (std::log(r2) - std::log(s2 + r2));
            }
            worst = std::max(worst, -0.5 * h0);
        }
        return worst;
    };
    if (config.degree() > 0)
        while (ring_defect(p.domain_radius) > 0.5 * p.boundary_tolerance)
            p.domain_radius += 0.5;
    return p;
}

void SolverParams::validate(const ZeroConfig& config) const {
    if (grid_points_per_axis < 16)
        throw InvalidInput("grid_points_per_axis must be >= 16");
    if (domain_radius <= 0 || !std::isfinite(domain_radius))
        throw InvalidInput("domain_radius must be positive");
    if (newton_tolerance <= 0 || residual_tolerance <= 0)
        throw InvalidInput("tolerances must be positive");
    if (max_newton_iterations < 1)
        throw InvalidInput("max_newton_iterations must be >= 1");
    if (damping <= 0 || damping > 1)
        throw InvalidInput("damping must lie in (0,1]");
    if (source_scale <= 0 || source_scale > 2.0)
        throw InvalidInput("source_scale must lie in (0,2]");
    if (domain_radius < config.max_abs() + 4.0)
        throw DomainTooSmall("a zero lies within 4 mass lengths of the boundary");
}

double VortexSolution::sup_abs_f() const {
    const BoolField m = grid.disk_mask();
    return m.select(f.abs(), 0.0).maxCoeff();
}

double VortexSolution::min_abs_f() const {
    const BoolField m = grid.disk_mask();
    return m.select(f.abs(), 2.0).minCoeff();
}

double VortexSolution::outer_ring_min_abs_f() const {
    const GridSpec& g = grid;
    const double rin = g.radius - 2.0 * g.spacing();
    double best = 2.0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double r = std::abs(g.point(i, j));
            if (r >= rin && r < g.radius) best = std::min(best, std::abs(f(i, j)));
        }
    return best;
}

VortexSolution solve_vortex(const ZeroConfig& config, const SolverParams& params) {
    config.validate();
    params.validate(config);

    VortexSolution sol;
    sol.config = config;
    sol.params = params;
    sol.grid = GridSpec{params.domain_radius, params.grid_points_per_axis};

    if (config.degree() == 0) { // vacuum, no Newton needed
        const int n = sol.grid.n;
        sol.h = RealField::Zero(n, n);
        sol.f = ComplexField::Constant(n, n, Complex(1.0, 0.0));
        sol.phi = RealField::Zero(n, n);
        sol.psi = RealField::Zero(n, n);
        sol.energy_density = RealField::Zero(n, n);
        sol.energy = 0.0;
        return sol;
    }

    // nested iteration: solve on a coarsened grid first, then refine
    std::vector<GridSpec> grids{sol.grid};
    while (grids.back().n % 2 == 0 && grids.back().n / 2 >= 96)
        grids.push_back(GridSpec{params.domain_radius, grids.back().n / 2});
    std::reverse(grids.begin(), grids.end());

    RealField w = RealField::Zero(grids.front().n, grids.front().n);
    int total_iterations = 0;
    for (size_t k = 0; k < grids.size(); ++k) {
        const GridSpec& g = grids[k];
        if (k > 0) { // bilinear prolongation of the previous level
            const GridSpec& gc = grids[k - 1];
            RealField wf(g.n, g.n);
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i)
                    wf(i, j) = interpolate(gc, w, g.point(i, j));
            w = std::move(wf);
        }
        const bool finest = (k + 1 == grids.size());
        const double tol =
            finest ? params.newton_tolerance : std::max(params.newton_tolerance, 1e-8);
        NewtonOutcome out =
            newton_on_grid(config, params, g, std::move(w), tol,
                           params.max_newton_iterations);
        if (finest && !out.converged)
            throw NonConvergence("Newton did not reach the requested tolerance");
        w = std::move(out.w);
        total_iterations += out.iterations;
    }
    sol.newton_iterations = total_iterations;

    const SourceTerms src = source_terms(config, sol.grid, params.source_scale);
    reconstruct_fields(config, sol.grid, params.source_scale, w, src.h0, sol);

    const ResidualReport rep = residual_report(sol);
    if (rep.first_eq_sup > params.residual_tolerance ||
        rep.second_eq_sup > params.residual_tolerance)
        throw NonConvergence(
            "vortex-equation residuals exceed residual_tolerance; the grid is "
            "too coarse for this configuration");
    return sol;
}

ResidualReport residual_report(const VortexSolution& sol) {
    const GridSpec& g = sol.grid;
    const ComplexField dfx = diff4_x(g, sol.f);
    const ComplexField dfy = diff4_y(g, sol.f);
    const Complex I(0, 1);
    const ComplexField r1 = dfx + I * sol.phi.cast<Complex>() * sol.f + I * dfy -
                            sol.psi.cast<Complex>() * sol.f;
    const RealField r2 = diff4_x(g, sol.psi) - diff4_y(g, sol.phi) +
                         0.5 * (1.0 - sol.f.abs2());
    const BoolField m = interior_mask(sol);
    ResidualReport rep;
    rep.first_eq_sup = m.select(r1.abs(), 0.0).maxCoeff();
    rep.second_eq_sup = m.select(r2.abs(), 0.0).maxCoeff();
    return rep;
}

ZeroConfig local_degrees(const VortexSolution& sol, double probe_radius) {
    const GridSpec& g = sol.grid;
    if (probe_radius <= 0) throw InvalidInput("probe_radius must be positive");

    // connected components of {|f| < 0.2} seed the probe circles
    const RealField absf = sol.f.abs();
    const BoolField disk = g.disk_mask();
    Eigen::ArrayXXi comp = Eigen::ArrayXXi::Constant(g.n, g.n, -1);
    std::vector<std::pair<int, int>> seeds; // argmin |f| per component
    int ncomp = 0;
    std::vector<std::pair<int, int>> stack;
    for (int j0 = 0; j0 < g.n; ++j0)
        for (int i0 = 0; i0 < g.n; ++i0) {
            if (comp(i0, j0) != -1 || !disk(i0, j0) || absf(i0, j0) >= 0.2)
                continue;
            const int id = ncomp++;
            std::pair<int, int> best{i0, j0};
            stack.push_back({i0, j0});
            comp(i0, j0) = id;
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                if (absf(i, j) < absf(best.first, best.second)) best = {i, j};
                const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int a = i + di[k], b = j + dj[k];
                    if (a < 0 || b < 0 || a >= g.n || b >= g.n) continue;
                    if (comp(a, b) != -1 || !disk(a, b) || absf(a, b) >= 0.2)
                        continue;
                    comp(a, b) = id;
                    stack.push_back({a, b});
                }
            }
            seeds.push_back(best);
        }

    std::vector<Complex> centers;
    for (auto [i, j] : seeds) centers.push_back(g.point(i, j));

    for (size_t a = 0; a < centers.size(); ++a) {
        if (std::abs(centers[a]) + probe_radius > g.radius - 2 * g.spacing())
            throw InvalidInput("probe circle leaves the computational disk");
        for (size_t b = a + 1; b < centers.size(); ++b)
            if (probe_radius >= 0.5 * std::abs(centers[a] - centers[b]))
                throw InvalidInput(
                    "probe_radius exceeds half the zero separation");
    }

    ZeroConfig result;
    for (const Complex c : centers) {
        int samples = std::max(256, int(8.0 * kPi * probe_radius / g.spacing()));
        int winding = 0;
        Complex moment;
        for (;; samples *= 2) {
            if (samples > (1 << 16))
                throw AmbiguousZero("winding did not stabilize on probe circle");
            std::vector<Complex> fv(samples);
            std::vector<Complex> zv(samples);
            double max_abs = 0;
            for (int k = 0; k < samples; ++k) {
                zv[k] = c + std::polar(probe_radius, 2.0 * kPi * k / samples);
                fv[k] = interpolate(g, sol.f, zv[k]);
                max_abs = std::max(max_abs, std::abs(fv[k]));
                if (std::abs(fv[k]) < 1e-12)
                    throw AmbiguousZero("|f| vanishes on the probe circle");
            }
            if (max_abs <= 0.5)
                throw AmbiguousZero(
                    "|f| does not rise above 0.5 on the probe circle; probe "
                    "too large or zeros unresolved");
            double total = 0;
            Complex mom = 0;
            bool coarse = false;
            for (int k = 0; k < samples; ++k) {
                const Complex ratio = fv[(k + 1) % samples] / fv[k];
                const double dphase = std::arg(ratio);
                if (std::abs(dphase) >= kPi / 2) {
                    coarse = true;
                    break;
                }
                total += dphase;
                const Complex zmid = 0.5 * (zv[k] + zv[(k + 1) % samples]);
                mom += zmid * std::log(ratio);
            }
            if (coarse) continue;
            const double w = total / (2.0 * kPi);
            winding = int(std::lround(w));
            if (std::abs(w - winding) > 0.05)
                throw AmbiguousZero("non-integer winding on probe circle");
            moment = mom / (Complex(0, 1) * 2.0 * kPi);
            break;
        }
        if (winding == 0) continue;
        result.zeros.push_back({moment / double(winding), winding});
    }
    std::sort(result.zeros.begin(), result.zeros.end(),
              [](const Zero& a, const Zero& b) {
                  return a.position.real() != b.position.real()
                             ? a.position.real() < b.position.real()
                             : a.position.imag() < b.position.imag();
              });
    return result;
}

double annulus_energy(const VortexSolution& sol, double r, double R) {
    if (r < 0 || R <= r) throw InvalidInput("need 0 <= r < R");
    if (R > sol.params.domain_radius + 1e-12)
        throw InvalidInput("outer radius exceeds the domain");
    const GridSpec& g = sol.grid;
    const double cell = g.spacing() * g.spacing();
    double sum = 0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double rho = std::abs(g.point(i, j));
            if (rho > r && rho <= R && rho < g.radius)
                sum += sol.energy_density(i, j);
        }
    return cell * sum;
}

double decay_exponent(const VortexSolution& sol, double r_lo, double r_hi) {
    if (!(1.0 <= r_lo && r_lo < r_hi &&
          r_hi <= 0.8 * sol.params.domain_radius + 1e-12))
        throw InsufficientRange("need 1 <= r_lo < r_hi <= 0.8 R");
    const int nr = 32;
    std::vector<double> lx(nr), ly(nr);
    for (int k = 0; k < nr; ++k) {
        const double r =
            r_lo * std::pow(r_hi / r_lo, double(k) / (nr - 1));
        double peak = 0;
        for (int s = 0; s < 256; ++s) {
            const Complex z = std::polar(r, 2.0 * kPi * s / 256.0);
            peak = std::max(peak,
                            interpolate(sol.grid, sol.energy_density, z));
        }
        if (peak < 1e-280)
            throw InsufficientRange("energy density vanishes on the fit range");
        lx[k] = std::log(r);
        ly[k] = std::log(peak);
    }
    double mx = 0, my = 0;
    for (int k = 0; k < nr; ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= nr;
    my /= nr;
    double sxx = 0, sxy = 0;
    for (int k = 0; k < nr; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    return sxy / sxx;
}

void write_solution_csv(const VortexSolution& sol, std::ostream& out) {
    const GridSpec& g = sol.grid;
    out << "x,y,h,re_f,im_f,phi,psi,e_w\n";
    char line[256];
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            std::snprintf(line, sizeof line,
                          "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", g.x(i),
                          g.y(j), sol.h(i, j), sol.f(i, j).real(),
                          sol.f(i, j).imag(), sol.phi(i, j), sol.psi(i, j),
                          sol.energy_density(i, j));
            out << line;
        }
}

std::string solution_summary_json(const VortexSolution& sol) {
    const ResidualReport rep = residual_report(sol);
    nlohmann::ordered_json j;
    j["degree"] = sol.config.degree();
    j["energy"] = sol.energy;
    j["energy_over_pi"] = sol.energy / kPi;
    j["residuals"] = {{"first_eq", rep.first_eq_sup},
                      {"second_eq", rep.second_eq_sup}};
    j["sup_abs_f"] = sol.sup_abs_f();
    j["outer_ring_min_abs_f"] = sol.outer_ring_min_abs_f();
    if (sol.config.degree() > 0) {
        try {
            j["decay_slope"] = decay_exponent(
                sol, 4.0, 0.8 * sol.params.domain_radius);
        } catch (const InsufficientRange&) {
            j["decay_slope"] = nullptr;
        }
    } else {
        j["decay_slope"] = nullptr;
    }
    j["params"] = {{"domain_radius", sol.params.domain_radius},
                   {"grid_points_per_axis", sol.params.grid_points_per_axis},
                   {"newton_tolerance", sol.params.newton_tolerance},
                   {"max_newton_iterations", sol.params.max_newton_iterations},
                   {"damping", sol.params.damping},
                   {"residual_tolerance", sol.params.residual_tolerance},
                   {"boundary_tolerance", sol.params.boundary_tolerance}};
    j["newton_iterations"] = sol.newton_iterations;
    return j.dump(2);
}

} // namespace vortexlab
