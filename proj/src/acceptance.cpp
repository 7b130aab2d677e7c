// Verification suite: one check per numbered criterion, each printing a
// pass/fail line.  Solver-based criteria share one set of solutions computed
// on the fine grid, plus coarse-grid reruns for the refinement checks.

#include "vortexlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "vortexlab/bubbling.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/maslov.hpp"
#include "vortexlab/stable_map.hpp"
#include "vortexlab/sym.hpp"
#include "vortexlab/vortex.hpp"
#include "vortexlab/weighted.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct SolvedCase {
    std::string name;
    ZeroConfig config;
    VortexSolution fine;
    double coarse_error = 0; // |E/pi - d| on the coarse grid
    double fine_error = 0;
};

ConfigurationFamily example_family() {
    // degrees 1 at -2-i, 2 at 3+4i, 4 escaping along nu e^{i nu}
    ConfigurationFamily fam;
    for (int k = 1; k <= 10; ++k) fam.scales.push_back(10.0 * k);
    const int m = fam.num_scales();
    std::vector<Complex> t0(m, Complex(-2, -1)), t1(m, Complex(3, 4));
    fam.tracks = {t0, t1, t1};
    std::vector<Complex> esc(m);
    for (int i = 0; i < m; ++i)
        esc[i] = std::polar(fam.scales[i], fam.scales[i]);
    for (int k = 0; k < 4; ++k) fam.tracks.push_back(esc);
    return fam;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------------
// randomized stable maps for the group-action suites

struct TreeCase {
    BubbleTree tree;
    ReparamElement g; // non-identity, compatible
};

ZeroConfig random_config(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    ZeroConfig cfg;
    int d = deg(rng);
    while (d > 0) {
        std::uniform_int_distribution<int> mult(1, d);
        const int m = mult(rng);
        Complex z;
        bool fresh = false;
        while (!fresh) {
            z = {pos(rng), pos(rng)};
            fresh = true;
            for (const auto& zr : cfg.zeros)
                if (std::abs(zr.position - z) < 0.5) fresh = false;
        }
        cfg.zeros.push_back({z, m});
        d -= m;
    }
    return cfg;
}

Mobius random_mobius(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return Mobius::rotation(1.0 + u(rng));
        case 1: return Mobius::affine(std::exp(u(rng)), {u(rng), u(rng)});
        default: {
            Eigen::Matrix2cd m;
            m << Complex(1.0 + 0.3 * u(rng), 0.2 * u(rng)),
                Complex(u(rng), u(rng)), Complex(0.3 * u(rng), 0.3 * u(rng)),
                Complex(1.0, 0.1 * u(rng));
            return Mobius::from_matrix(m);
        }
    }
}

TreeCase random_simple_tree(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> shape_dist(0, 2);
    TreeCase tc;
    BubbleTree& t = tc.tree;
    const int shape = shape_dist(rng);

    if (shape == 0) {
        // single vortex vertex, possibly with a ghost sphere of type 0
        t.vertices[0] = VertexType::T1;
        t.vortex_data[0] = random_config(rng, 3);
        t.marked.push_back({0, SpherePoint::infinity()});
        if (u(rng) > 0) {
            t.vertices[1] = VertexType::T0;
            t.edges.push_back({0, 1});
            t.nodal[{0, 1}] = SpherePoint::finite({u(rng), u(rng)});
            t.nodal[{1, 0}] = SpherePoint::infinity();
            t.marked.push_back({1, SpherePoint::finite({0, 0})});
            t.marked.push_back({1, SpherePoint::finite({1, 0})});
        } else {
            t.marked.push_back({0, SpherePoint::finite({u(rng), u(rng)})});
        }
    } else {
        // ghost sphere at infinity with vortex leaves
        const int leaves = shape == 1 ? 2 : 3;
        t.vertices[0] = VertexType::TInf;
        t.marked.push_back({0, SpherePoint::infinity()});
        for (int k = 1; k <= leaves; ++k) {
            t.vertices[k] = VertexType::T1;
            // distinct degrees make the leaves trivially non-equivalent
            ZeroConfig cfg = random_config(rng, 2);
            for (int extra = 1; extra < k; ++extra)
                cfg.zeros.push_back(
                    {{5.0 + extra + u(rng), 5.0 * k + u(rng)}, 1});
            t.vortex_data[k] = cfg;
            t.edges.push_back({0, k});
            t.nodal[{k, 0}] = SpherePoint::infinity();
            t.nodal[{0, k}] = SpherePoint::finite({double(k - 1), u(rng) * 0.2});
        }
    }

    // a non-identity reparametrization compatible with the type
    for (;;) {
        ReparamElement g;
        for (const auto& [v, type] : t.vertices) {
            g.vertex_map[v] = v;
            if (type == VertexType::T1) {
                if (u(rng) > -0.5)
                    g.maps[v] = Mobius::translation({u(rng), u(rng)});
            } else if (u(rng) > -0.5) {
                g.maps[v] = random_mobius(rng);
            }
        }
        if (!g.is_identity()) {
            tc.g = g;
            break;
        }
    }
    return tc;
}

} // namespace

bool AcceptanceOutcome::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

AcceptanceOutcome run_acceptance(std::ostream& log, int fine_grid,
                                 int coarse_grid) {
    AcceptanceOutcome outcome;
    auto record = [&](int number, const std::string& name, bool pass,
                      const std::string& detail) {
        outcome.results.push_back({number, name, pass, detail});
        log << "criterion " << number << " [" << (pass ? "PASS" : "FAIL")
            << "] " << name << ": " << detail << "\n";
        log.flush();
    };

    // ------------------------------------------------------------------
    // shared solver runs: separated and clustered zeros for d = 1..4
    std::vector<SolvedCase> cases;
    {
        auto add = [&](const std::string& name, std::vector<Zero> zeros) {
            SolvedCase c;
            c.name = name;
            c.config.zeros = std::move(zeros);
            cases.push_back(std::move(c));
        };
        add("d1", {{{0, 0}, 1}});
        add("d2-separated", {{{1.5, 0}, 1}, {{-1.5, 0}, 1}});
        add("d2-clustered", {{{0, 0}, 2}});
        add("d3-mixed", {{{-2, 0}, 1}, {{1, 0}, 2}});
        add("d3-clustered", {{{0, 0}, 3}});
        add("d4-clustered", {{{0, 0}, 4}});
        add("d4-separated",
            {{{3, 0}, 1}, {{-3, 0}, 1}, {{0, 3}, 1}, {{0, -3}, 1}});
    }

    bool solver_ok = true;
    std::string solver_detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        for (SolvedCase& c : cases) {
            SolverParams p = SolverParams::defaults_for(c.config);
            p.grid_points_per_axis = fine_grid;
            c.fine = solve_vortex(c.config, p);
            c.fine_error = std::abs(c.fine.energy / kPi - c.config.degree());
            p.grid_points_per_axis = coarse_grid;
            const VortexSolution coarse = solve_vortex(c.config, p);
            c.coarse_error = std::abs(coarse.energy / kPi - c.config.degree());
        }
    } catch (const std::exception& e) {
        solver_ok = false;
        solver_detail = e.what();
    }
    const double solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    // 1. energy-degree identity
    {
        bool pass = solver_ok;
        std::ostringstream detail;
        double worst_rel = 0;
        for (const SolvedCase& c : cases) {
            if (!solver_ok) break;
            const int d = c.config.degree();
            worst_rel = std::max(worst_rel, c.fine_error / d);
            if (c.fine.energy / kPi < d * 0.98 || c.fine.energy / kPi > d * 1.02)
                pass = false;
            if (!(c.coarse_error > c.fine_error)) {
                pass = false;
                detail << c.name << " error did not decrease ("
                       << fmt(c.coarse_error) << " -> " << fmt(c.fine_error)
                       << "); ";
            }
        }
        if (solve_seconds > 600.0) pass = false;
        if (!solver_ok) detail << solver_detail;
        detail << cases.size() << " cases, worst |E/pi-d|/d = "
               << fmt(worst_rel) << ", errors decrease " << coarse_grid
               << "^2 -> " << fine_grid << "^2, runtime "
               << fmt(solve_seconds) << "s";
        record(1, "energy-degree identity E = pi d", pass, detail.str());
    }

    // 2. vortex-equation residuals
    {
        bool pass = solver_ok;
        double worst = 0;
        for (const SolvedCase& c : cases) {
            if (!solver_ok) break;
            const ResidualReport rep = residual_report(c.fine);
            worst = std::max({worst, rep.first_eq_sup, rep.second_eq_sup});
        }
        pass = pass && worst <= 1e-4;
        record(2, "vortex-equation residuals <= 1e-4", pass,
               "worst interior sup residual " + fmt(worst));
    }

    // 3. image bounds
    {
        bool pass = solver_ok;
        double worst_sup = 0, worst_min = 0, worst_ring = 1;
        for (const SolvedCase& c : cases) {
            if (!solver_ok) break;
            worst_sup = std::max(worst_sup, c.fine.sup_abs_f());
            worst_min = std::max(worst_min, c.fine.min_abs_f());
            worst_ring = std::min(worst_ring, c.fine.outer_ring_min_abs_f());
        }
        pass = pass && worst_sup <= 1.0 - 1e-4 && worst_min <= 0.05 &&
               worst_ring >= 0.99;
        record(3,
               "image bounds: sup|f| <= 1-1e-4, min|f| <= 0.05, ring >= 0.99",
               pass,
               "sup " + fmt(worst_sup) + ", worst min " + fmt(worst_min) +
                   ", worst ring " + fmt(worst_ring));
    }

    // 4. argument principle: prescribed zeros recovered
    {
        bool pass = solver_ok;
        std::string detail = "prescribed = recovered on all cases";
        for (const SolvedCase& c : cases) {
            if (!solver_ok) break;
            if (c.config.min_pairwise_separation() < 2.0) continue;
            try {
                const ZeroConfig rec = local_degrees(c.fine, 0.8);
                if (!same_config(rec, c.config, 0.05)) {
                    pass = false;
                    detail = c.name + ": recovered config differs";
                }
            } catch (const std::exception& e) {
                pass = false;
                detail = c.name + std::string(": ") + e.what();
            }
        }
        record(4, "argument principle recovers the zero configuration", pass,
               detail);
    }

    // 5. decay bounds
    {
        bool pass = solver_ok;
        std::ostringstream detail;
        if (solver_ok) {
            const double s1 = decay_exponent(
                cases[0].fine, 4.0, 0.8 * cases[0].fine.params.domain_radius);
            const double s2 = decay_exponent(
                cases[2].fine, 4.0, 0.8 * cases[2].fine.params.domain_radius);
            pass = s1 <= -3.5 && s2 <= -3.5;
            // energy concentration with a = 4, eps = 1/2; outer radius
            // infinite, truncated by the computational disk
            const double R = cases[0].fine.params.domain_radius;
            const double inner = annulus_energy(cases[0].fine, 8.0, R);
            const double outer = annulus_energy(cases[0].fine, 2.0, R);
            const double bound = 4.0 * std::pow(4.0, -1.5) * outer;
            if (!(inner <= bound)) pass = false;
            detail << "slopes d1 " << fmt(s1) << ", d2 " << fmt(s2)
                   << " (<= -3.5); annulus E(8..R) = " << fmt(inner)
                   << " <= " << fmt(bound) << " = 4 a^{-3/2} E(2..R)";
        } else {
            detail << solver_detail;
        }
        record(5, "decay slope and energy concentration", pass, detail.str());
    }

    // 6. bubbling example
    {
        bool pass = true;
        std::ostringstream detail;
        try {
            const ConfigurationFamily fam = example_family();
            const Extraction ex = extract_bubble_tree(fam);
            int t1 = 0, tinf = 0, t0c = 0;
            for (const auto& [v, ty] : ex.tree.vertices) {
                t1 += ty == VertexType::T1;
                tinf += ty == VertexType::TInf;
                t0c += ty == VertexType::T0;
            }
            std::vector<int> degs;
            for (const auto& [v, cfg] : ex.tree.vortex_data)
                degs.push_back(cfg.degree());
            std::sort(degs.begin(), degs.end());
            pass = t0c == 0 && t1 == 2 && tinf == 1 &&
                   degs == std::vector<int>{3, 4} &&
                   ex.tree.vertices.count(0) &&
                   ex.tree.vertices.at(0) == VertexType::TInf;

            // the derived Moebius family realizing the nodal points 1 and 2
            BubbleTree paper;
            paper.vertices[0] = VertexType::TInf;
            paper.vertices[1] = VertexType::T1;
            paper.vertices[2] = VertexType::T1;
            paper.edges = {{0, 1}, {0, 2}};
            paper.vortex_data[1] = ZeroConfig{{{{-2, -1}, 1}, {{3, 4}, 2}}};
            paper.vortex_data[2] = ZeroConfig{{{{0, 0}, 4}}};
            paper.nodal[{1, 0}] = SpherePoint::infinity();
            paper.nodal[{2, 0}] = SpherePoint::infinity();
            paper.nodal[{0, 1}] = SpherePoint::finite({1, 0});
            paper.nodal[{0, 2}] = SpherePoint::finite({2, 0});
            paper.marked.push_back({0, SpherePoint::infinity()});
            MobiusFamily reparams;
            for (double nu : fam.scales) {
                const Complex c = std::polar(nu, nu);
                reparams.per_vertex[0].push_back(Mobius::affine(c, -c));
                reparams.per_vertex[1].push_back(Mobius::identity());
                reparams.per_vertex[2].push_back(Mobius::translation(c));
            }
            const ConvergenceReport rep =
                check_convergence(fam, paper, reparams);
            if (!rep.pass) pass = false;
            double nodal_err = 0;
            for (const auto& est : rep.induced_nodal) {
                if (est.from != 0) continue;
                const Complex target(est.to == 1 ? 1.0 : 2.0, 0.0);
                nodal_err = std::max(nodal_err,
                                     est.value.is_inf
                                         ? 1.0
                                         : std::abs(est.value.z - target));
            }
            if (nodal_err > 1e-2) pass = false;
            detail << "T1 = {1,2}, Tinf = {0}, degrees {3,4}; convergence "
                   << (rep.pass ? "PASS" : "FAIL")
                   << ", ghost nodal points within " << fmt(nodal_err)
                   << " of 1 and 2";
        } catch (const std::exception& e) {
            pass = false;
            detail << e.what();
        }
        record(6, "bubbling example: two vortices and a ghost sphere", pass,
               detail.str());
    }

    // 7. Maslov calibration
    {
        bool pass = true;
        std::ostringstream detail;
        for (int d = -2; d <= 3; ++d)
            for (int n = 1; n <= 3; ++n)
                if (maslov_index(power_loop(d, n)) != 2 * d * n) {
                    pass = false;
                    detail << "z^" << d << " Id_" << n << " wrong; ";
                }
        bool radius_ok = true;
        for (const SolvedCase& c : cases) {
            if (!solver_ok) break;
            const double R = c.fine.params.domain_radius;
            const int expected = 2 * c.config.degree();
            for (double frac : {0.80, 0.85, 0.90}) {
                try {
                    if (vortex_boundary_maslov(c.fine, frac * R) != expected)
                        radius_ok = false;
                } catch (const std::exception&) {
                    radius_ok = false;
                }
            }
        }
        pass = pass && radius_ok && solver_ok;
        detail << "m(z^d Id_n) = 2dn for d in -2..3, n in 1..3; boundary "
                  "transport = 2 deg, radius-independent on {0.8,0.85,0.9} R: "
               << (radius_ok ? "yes" : "no");
        record(7, "Maslov indices: unitary loops and vortex transports", pass,
               detail.str());
    }

    // 8. index formula and dbar kernel accounting
    {
        bool pass = true;
        struct Row {
            int m, g, c, expected;
        };
        const Row table[] = {{2, 1, 0, 0},  {2, 1, 1, 2},  {2, 1, 2, 4},
                             {2, 1, 3, 6},  {2, 1, 4, 8},  {2, 1, 5, 10},
                             {2, 1, 7, 14}, {4, 1, 3, 8},  {6, 2, 1, 4},
                             {8, 3, -2, -2}};
        for (const Row& r : table)
            if (fredholm_index({r.m, r.g, r.c}) != r.expected) pass = false;
        WeightParams w;
        w.p = 4.0;
        w.lambda = 0.5;
        for (int d = 0; d <= 3; ++d) {
            const DbarKernelReport rep =
                dbar_kernel_check(d, w, GridSpec{4.0, 96});
            if (!rep.ok || rep.real_kernel_dimensions != 2 * d + 2 ||
                !rep.cokernel_trivial)
                pass = false;
        }
        record(8, "Fredholm index formula and dbar kernel", pass,
               "10-row index table matches hand arithmetic; dbar kernel "
               "accounts 2d+2 real dimensions for d = 0..3, cokernel trivial");
    }

    // 9. Hardy inequality on a randomized smooth suite
    {
        std::mt19937_64 rng(2026);
        std::uniform_real_distribution<double> amp(-2.0, 2.0), ctr(-5.0, 5.0),
            width(0.7, 2.0), unif(0.0, 1.0);
        const double ps[] = {3.0, 4.0, 6.0};
        int failures = 0;
        double worst_ratio = 0;
        for (int trial = 0; trial < 50; ++trial) {
            GridFunction u;
            u.grid = GridSpec{12.0, 384};
            u.disk = true;
            RealField vals = RealField::Zero(384, 384);
            const int bumps = 2 + int(unif(rng) * 3);
            for (int b = 0; b < bumps; ++b) {
                const double a = amp(rng), cx = ctr(rng), cy = ctr(rng),
                             s = width(rng);
                for (int j = 0; j < 384; ++j)
                    for (int i = 0; i < 384; ++i) {
                        const double dx = u.grid.x(i) - cx,
                                     dy = u.grid.y(j) - cy;
                        vals(i, j) +=
                            a * std::exp(-(dx * dx + dy * dy) / (s * s));
                    }
            }
            u.components.push_back(std::move(vals));
            WeightParams w;
            w.p = ps[trial % 3];
            w.lambda = -2.0 / w.p + 0.1 + unif(rng) * (1.9 + 2.0 / w.p);
            const HardyReport rep = hardy_check(u, w, 0.05);
            if (!rep.ok) ++failures;
            if (rep.rhs > 0)
                worst_ratio = std::max(worst_ratio, rep.lhs / rep.rhs);
        }
        record(9, "Hardy inequality on 50 random smooth functions",
               failures == 0,
               "failures " + std::to_string(failures) + ", worst lhs/rhs " +
                   fmt(worst_ratio));
    }

    // 10. group actions
    {
        std::mt19937_64 rng(777);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int trans_fail = 0, free_fail = 0, rot_fail = 0, valid_fail = 0;
        for (int trial = 0; trial < 200; ++trial) {
            // translation freeness
            ZeroConfig cfg = random_config(rng, 4);
            Complex c{u(rng), u(rng)};
            if (std::abs(c) < 1e-3) c += Complex(0.5, 0.0);
            if (same_config(cfg, cfg.translated(c), 1e-12)) ++trans_fail;

            // rotation fixed-point witness: {(0,d)} is fixed by rotations
            ZeroConfig central;
            central.zeros = {{{0, 0}, 1 + trial % 5}};
            if (!same_config(central, central.rotated(3.0 * u(rng)), 1e-12))
                ++rot_fail;

            // G_T acts freely on simple stable maps; act preserves validity
            TreeCase tc = random_simple_tree(rng);
            if (!validate(tc.tree).empty() || !is_simple(tc.tree)) {
                ++free_fail;
                continue;
            }
            const BubbleTree moved = act(tc.g, tc.tree);
            if (tree_equal(moved, tc.tree, 1e-12)) ++free_fail;
            if (!validate(moved).empty()) ++valid_fail;
        }
        const bool pass = trans_fail == 0 && free_fail == 0 && rot_fail == 0 &&
                          valid_fail == 0;
        record(10, "group actions: freeness, rotation witness, validity", pass,
               "200 trials each; failures: translation " +
                   std::to_string(trans_fail) + ", G_T freeness " +
                   std::to_string(free_fail) + ", rotation witness " +
                   std::to_string(rot_fail) + ", validity " +
                   std::to_string(valid_fail));
    }

    // 11. symmetric-product metric vs brute force
    {
        std::mt19937_64 rng(31415);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        std::uniform_int_distribution<int> size_dist(1, 5);
        int mismatches = 0, axiom_failures = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = size_dist(rng);
            auto rand_point = [&]() {
                if (u(rng) > 2.4) return SpherePoint::infinity();
                return SpherePoint::finite({u(rng), u(rng)});
            };
            SymPoint a, b, c;
            for (int k = 0; k < n; ++k) {
                a.points.push_back(rand_point());
                b.points.push_back(rand_point());
                c.points.push_back(rand_point());
            }
            std::vector<int> perm(n);
            for (int k = 0; k < n; ++k) perm[k] = k;
            double best = 1e300;
            do {
                double s = 0;
                for (int k = 0; k < n; ++k)
                    s += chordal(a.points[k], b.points[perm[k]]);
                best = std::min(best, s);
            } while (std::next_permutation(perm.begin(), perm.end()));
            const double dab = sym_distance(a, b);
            if (std::abs(dab - best) > 1e-9) ++mismatches;
            if (std::abs(dab - sym_distance(b, a)) > 0) ++axiom_failures;
            if (dab > sym_distance(a, c) + sym_distance(c, b) + 1e-12)
                ++axiom_failures;
            if (sym_distance(a, a) != 0) ++axiom_failures;
        }
        record(11, "symmetric-product metric: matching = brute force, axioms",
               mismatches == 0 && axiom_failures == 0,
               "100 instances; mismatches " + std::to_string(mismatches) +
                   ", axiom failures " + std::to_string(axiom_failures));
    }

    int passed = 0;
    for (const auto& r : outcome.results) passed += r.pass;
    log << passed << "/" << outcome.results.size() << " criteria passed\n";
    return outcome;
}

} // namespace vortexlab
