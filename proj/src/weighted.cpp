#include "vortexlab/weighted.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

RealField weight_pow(const GridSpec& g, double expo, bool japanese_bracket) {
    RealField w(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j);
            w(i, j) = japanese_bracket ? std::pow(1.0 + r2, 0.5 * expo)
                                       : std::pow(r2, 0.5 * expo);
        }
    return w;
}

double lp_quadrature(const GridSpec& g, const BoolField& mask,
                     const RealField& magnitude, const RealField& weight,
                     double p) {
    const RealField integrand = (magnitude * weight).pow(p);
    return std::pow(integrate(g, integrand, mask), 1.0 / p);
}

RealField magnitude(const std::vector<RealField>& comps) {
    RealField m = comps.front().square();
    for (size_t c = 1; c < comps.size(); ++c) m += comps[c].square();
    return m.sqrt();
}

} // namespace

void WeightParams::validate() const {
    if (p <= 1.0) throw InvalidInput("weighted norms need p > 1");
    if (n < 1) throw InvalidInput("dimension must be positive");
    if (k < 0) throw InvalidInput("derivative order must be >= 0");
}

void GridFunction::validate() const {
    if (components.empty()) throw InvalidInput("grid function without components");
    for (const auto& c : components)
        if (c.rows() != grid.n || c.cols() != grid.n)
            throw InvalidInput("component shape does not match the grid");
}

BoolField GridFunction::domain_mask() const {
    if (disk) return grid.disk_mask();
    return BoolField::Constant(grid.n, grid.n, true);
}

double weighted_norm(const GridFunction& f, const WeightParams& w,
                     NormFlavor flavor) {
    f.validate();
    w.validate();
    if (w.n != 2)
        throw InvalidInput("grid quadrature is two-dimensional; set n = 2");
    const BoolField mask = f.domain_mask();

    if (flavor == NormFlavor::PLambda)
        return lp_quadrature(f.grid, mask, magnitude(f.components),
                             weight_pow(f.grid, w.lambda, true), w.p);

    if (w.k > 1) throw UnsupportedOrder("grid derivatives support k <= 1 only");
    double total = lp_quadrature(
        f.grid, mask, magnitude(f.components),
        weight_pow(f.grid, w.lambda, true), w.p);
    if (w.k == 1) {
        const double order1_weight =
            flavor == NormFlavor::LkpLambda ? w.lambda + 1.0 : w.lambda;
        const RealField wt = weight_pow(f.grid, order1_weight, true);
        std::vector<RealField> dx, dy;
        for (const auto& c : f.components) {
            dx.push_back(diff_x(f.grid, c));
            dy.push_back(diff_y(f.grid, c));
        }
        total += lp_quadrature(f.grid, mask, magnitude(dx), wt, w.p);
        total += lp_quadrature(f.grid, mask, magnitude(dy), wt, w.p);
    }
    return total;
}

bool poly_in_weighted_space(int monomial_degree, int d, const WeightParams& w) {
    w.validate();
    return monomial_degree < d - w.lambda + 1.0 - 2.0 / w.p;
}

HardyReport hardy_check(const GridFunction& u, const WeightParams& w,
                        double quadrature_slack) {
    u.validate();
    w.validate();
    if (u.components.size() != 1)
        throw InvalidInput("the Hardy check applies to scalar functions");
    if (w.n != 2)
        throw InvalidInput("grid quadrature is two-dimensional; set n = 2");
    if (!(w.p > w.n) || !(w.lambda > -double(w.n) / w.p))
        throw DivergentWeight("Hardy inequality needs p > n and lambda > -n/p");

    const GridSpec& g = u.grid;
    const RealField& uu = u.components.front();
    const BoolField mask = u.domain_mask();

    // outer-ring mean estimates the limit value at infinity
    const double h = g.spacing();
    double ring_sum = 0;
    int ring_count = 0;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            bool in_ring;
            if (u.disk) {
                const double r = std::hypot(g.x(i), g.y(j));
                in_ring = r < g.radius && r >= g.radius - 2.0 * h;
            } else {
                in_ring = i < 2 || j < 2 || i >= g.n - 2 || j >= g.n - 2;
            }
            if (in_ring) {
                ring_sum += uu(i, j);
                ++ring_count;
            }
        }
    HardyReport rep;
    rep.y_inf = ring_sum / ring_count;
    rep.constant = w.p / (w.lambda + double(w.n) / w.p);

    const RealField centered = (uu - rep.y_inf).abs();
    rep.lhs = lp_quadrature(g, mask, centered, weight_pow(g, w.lambda, false),
                            w.p);
    const RealField dx = diff_x(g, uu), dy = diff_y(g, uu);
    const RealField du = (dx.square() + dy.square()).sqrt();
    rep.rhs = rep.constant * lp_quadrature(g, mask, du,
                                           weight_pow(g, w.lambda + 1.0, false),
                                           w.p);
    rep.ok = rep.lhs <= rep.rhs * (1.0 + quadrature_slack) + 1e-14;
    return rep;
}

namespace {

// Richardson-extrapolated centered dbar: exact (up to rounding) on
// holomorphic monomials z^k for k <= 4, and on zbar.
double max_dbar_residual(const GridSpec& g, int power) {
    ComplexField u(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            u(i, j) = std::pow(g.point(i, j), power);
    const double h = g.spacing();
    double worst = 0;
    for (int j = 2; j < g.n - 2; ++j)
        for (int i = 2; i < g.n - 2; ++i) {
            auto dbar = [&](int s) {
                const Complex ds = (u(i + s, j) - u(i - s, j)) / (2.0 * s * h);
                const Complex dt = (u(i, j + s) - u(i, j - s)) / (2.0 * s * h);
                return 0.5 * (ds + Complex(0, 1) * dt);
            };
            const Complex r = (4.0 * dbar(1) - dbar(2)) / 3.0;
            worst = std::max(worst, std::abs(r));
        }
    return worst;
}

} // namespace

DbarKernelReport dbar_kernel_check(int d, const WeightParams& w,
                                   const GridSpec& grid) {
    w.validate();
    if (d < 0)
        throw InvalidInput(
            "kernel accounting is implemented for d >= 0; the d < 0 cokernel "
            "pairs against conjugate polynomials and is not discretized");
    if (!(1.0 - 2.0 / w.p < w.lambda && w.lambda < 2.0 - 2.0 / w.p))
        throw InvalidInput("kernel accounting needs 1 - 2/p < lambda < 2 - 2/p");
    if (grid.n < 16) throw InvalidInput("kernel-check grid too coarse");

    DbarKernelReport rep;
    rep.d = d;
    rep.expected_index = 2 + 2 * d;
    rep.cokernel_trivial = true;
    bool ok = true;
    for (int k = 0; k <= d + 1; ++k) {
        DbarMonomial mono;
        mono.degree = k;
        // z^k lies in the domain C rho_0 p_d + L^{1,p}_{lambda-1-d} iff
        // k < d (+ the explicitly adjoined z^d itself)
        mono.in_domain = poly_in_weighted_space(k, d, w) || k == d;
        mono.dbar_residual = max_dbar_residual(grid, k);
        const bool expected = k <= d;
        if (mono.in_domain != expected) ok = false;
        if (expected && mono.dbar_residual > 1e-10) ok = false;
        rep.monomials.push_back(mono);
    }
    rep.real_kernel_dimensions = 2 * (d + 1);
    if (rep.real_kernel_dimensions != rep.expected_index) ok = false;
    rep.ok = ok;
    return rep;
}

std::string DbarKernelReport::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["monomials"] = nlohmann::ordered_json::array();
    for (const auto& m : monomials)
        j["monomials"].push_back({{"degree", m.degree},
                                  {"in_domain", m.in_domain},
                                  {"dbar_residual", m.dbar_residual}});
    j["real_kernel_dimensions"] = real_kernel_dimensions;
    j["expected_index"] = expected_index;
    j["cokernel_trivial"] = cokernel_trivial;
    j["ok"] = ok;
    return j.dump(2);
}

void GridFunction::write_csv(std::ostream& out) const {
    validate();
    out << "# vortexlab gridfunction radius=" << grid.radius << " n=" << grid.n
        << " disk=" << (disk ? 1 : 0) << " components=" << components.size()
        << "\n";
    out << "x,y";
    for (size_t c = 0; c < components.size(); ++c) out << ",c" << c;
    out << "\n";
    char buf[64];
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", grid.x(i), grid.y(j));
            out << buf;
            for (const auto& comp : components) {
                std::snprintf(buf, sizeof buf, ",%.17g", comp(i, j));
                out << buf;
            }
            out << "\n";
        }
}

GridFunction GridFunction::read_csv(std::istream& in) {
    std::string header;
    std::getline(in, header);
    GridFunction f;
    int ncomp = 1;
    {
        std::istringstream hs(header);
        std::string token;
        while (hs >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = token.substr(0, eq);
            const std::string val = token.substr(eq + 1);
            if (key == "radius") f.grid.radius = std::stod(val);
            if (key == "n") f.grid.n = std::stoi(val);
            if (key == "disk") f.disk = val == "1";
            if (key == "components") ncomp = std::stoi(val);
        }
    }
    if (f.grid.n < 2) throw InvalidInput("bad grid-function CSV header");
    std::string line;
    std::getline(in, line); // column names
    f.components.assign(ncomp, RealField::Zero(f.grid.n, f.grid.n));
    for (int j = 0; j < f.grid.n; ++j)
        for (int i = 0; i < f.grid.n; ++i) {
            if (!std::getline(in, line))
                throw InvalidInput("grid-function CSV truncated");
            std::istringstream ls(line);
            std::string cell;
            std::getline(ls, cell, ','); // x
            std::getline(ls, cell, ','); // y
            for (int c = 0; c < ncomp; ++c) {
                if (!std::getline(ls, cell, ','))
                    throw InvalidInput("grid-function CSV row too short");
                f.components[c](i, j) = std::stod(cell);
            }
        }
    return f;
}

} // namespace vortexlab
