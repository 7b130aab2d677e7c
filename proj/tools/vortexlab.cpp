// Command-line front end for the vortex laboratory: solves Ginzburg-Landau
// vortex equations for prescribed zeros, extracts limit bubble trees from
// degenerating zero families, and evaluates Maslov/Fredholm indices and
// weighted-norm checks.
//
// Exit codes: 0 success, 2 input validation, 3 solver failure, 4 extraction
// ambiguity.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <Eigen/Core>

#include "CLI11.hpp"

#include "vortexlab/acceptance.hpp"
#include "vortexlab/bubbling.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/maslov.hpp"
#include "vortexlab/sym.hpp"
#include "vortexlab/vortex.hpp"
#include "vortexlab/weighted.hpp"

namespace fs = std::filesystem;
using namespace vortexlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitAmbiguous = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

struct SolveArgs {
    std::string zeros_path;
    std::string out_dir = ".";
    int grid = 0;
    double radius = 0;
    double rtol = 0;
};

VortexSolution solve_from_args(const SolveArgs& a) {
    const ZeroConfig config = ZeroConfig::from_json(read_file(a.zeros_path));
    SolverParams params = SolverParams::defaults_for(config);
    if (a.grid > 0) params.grid_points_per_axis = a.grid;
    if (a.radius > 0) params.domain_radius = a.radius;
    if (a.rtol > 0) params.residual_tolerance = a.rtol;
    return solve_vortex(config, params);
}

int cmd_solve(const SolveArgs& a) {
    const VortexSolution sol = solve_from_args(a);
    const fs::path dir(a.out_dir);
    std::ostringstream csv;
    write_solution_csv(sol, csv);
    write_file(dir / "solution.csv", csv.str());
    write_file(dir / "summary.json", solution_summary_json(sol) + "\n");
    std::cout << solution_summary_json(sol) << "\n";
    return kExitOk;
}

int cmd_degrees(const SolveArgs& a, double probe_radius) {
    const VortexSolution sol = solve_from_args(a);
    const ZeroConfig recovered = local_degrees(sol, probe_radius);
    const fs::path dir(a.out_dir);
    write_file(dir / "degrees.json", recovered.to_json() + "\n");
    std::cout << recovered.to_json() << "\n";
    return kExitOk;
}

int cmd_tree(const std::string& family_path, const std::string& out_dir) {
    const ConfigurationFamily family =
        ConfigurationFamily::from_json(read_file(family_path));
    Extraction ex = extract_bubble_tree(family);
    const ConvergenceReport rep = check_convergence(family, ex.tree, ex.reparams);
    const fs::path dir(out_dir);
    write_file(dir / "tree.json", ex.tree.to_json() + "\n");
    write_file(dir / "reparams.json", ex.reparams.to_json() + "\n");
    write_file(dir / "extraction_report.json", ex.report.to_json() + "\n");
    write_file(dir / "convergence_report.json", rep.to_json() + "\n");
    std::cout << ex.tree.to_json() << "\n" << rep.to_text();
    return kExitOk;
}

int cmd_check(const std::string& family_path, const std::string& tree_path,
              const std::string& reparams_path, const std::string& out_dir,
              double tolerance) {
    const ConfigurationFamily family =
        ConfigurationFamily::from_json(read_file(family_path));
    const BubbleTree tree = BubbleTree::from_json(read_file(tree_path));
    const MobiusFamily reparams = MobiusFamily::from_json(read_file(reparams_path));
    const ConvergenceReport rep =
        check_convergence(family, tree, reparams, tolerance);
    write_file(fs::path(out_dir) / "convergence_report.json", rep.to_json() + "\n");
    std::cout << rep.to_text();
    return kExitOk;
}

int cmd_maslov(const std::string& family, int d, int n,
               const std::string& powers_csv, const std::string& loop_path) {
    SymplecticLoop loop;
    if (!loop_path.empty()) {
        loop = SymplecticLoop::from_json(read_file(loop_path));
    } else if (family == "zd-id") {
        loop = power_loop(d, n);
    } else if (family == "diag") {
        std::vector<int> powers;
        std::stringstream ss(powers_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) powers.push_back(std::stoi(tok));
        loop = diagonal_loop(powers);
    } else {
        throw InvalidInput("unknown loop family: " + family);
    }
    std::cout << maslov_index(loop) << "\n";
    return kExitOk;
}

int cmd_hardy(const std::string& fn, double p, double lambda, double radius,
              int n) {
    GridFunction u;
    u.grid = GridSpec{radius, n};
    u.disk = true;
    RealField vals(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double r2 =
                u.grid.x(i) * u.grid.x(i) + u.grid.y(j) * u.grid.y(j);
            if (fn == "const")
                vals(i, j) = 1.0;
            else if (fn == "bracket-2")
                vals(i, j) = 1.0 / (1.0 + r2);
            else if (fn == "x-bracket-3")
                vals(i, j) = u.grid.x(i) / std::pow(1.0 + r2, 1.5);
            else if (fn == "gauss")
                vals(i, j) = std::exp(-r2);
            else
                throw InvalidInput("unknown test function: " + fn);
        }
    u.components.push_back(std::move(vals));
    WeightParams w;
    w.p = p;
    w.lambda = lambda;
    const HardyReport rep = hardy_check(u, w);
    std::cout << "{\"lhs\":" << rep.lhs << ",\"rhs\":" << rep.rhs
              << ",\"constant\":" << rep.constant
              << ",\"ok\":" << (rep.ok ? "true" : "false") << "}\n";
    return rep.ok ? kExitOk : 1;
}

int cmd_kernel(int d, double p, double lambda, double radius, int n) {
    WeightParams w;
    w.p = p;
    w.lambda = lambda;
    const DbarKernelReport rep = dbar_kernel_check(d, w, GridSpec{radius, n});
    std::cout << rep.to_json() << "\n";
    return rep.ok ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("VORTEXLAB_THREADS"))
        Eigen::setNbThreads(std::max(1, std::atoi(threads)));
    else
        Eigen::setNbThreads(1);

    CLI::App app{"vortexlab: Ginzburg-Landau vortices, bubble trees, and "
                 "index computations on the plane"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    double probe_radius = 1.0;

    auto add_solver_options = [&](CLI::App* cmd) {
        cmd->add_option("--zeros", solve_args.zeros_path,
                        "zero-configuration JSON file")
            ->required();
        cmd->add_option("--out", solve_args.out_dir, "output directory");
        cmd->add_option("--grid", solve_args.grid, "grid points per axis");
        cmd->add_option("--radius", solve_args.radius, "domain radius");
        cmd->add_option("--rtol", solve_args.rtol,
                        "residual tolerance for the post-solve gate");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the vortex equations");
    add_solver_options(solve);

    CLI::App* degrees =
        app.add_subcommand("degrees", "solve and recover local degrees");
    add_solver_options(degrees);
    degrees->add_option("--probe", probe_radius, "probe circle radius");

    std::string family_path, tree_path, reparams_path, out_dir = ".";
    double check_tol = 1e-3;
    CLI::App* tree =
        app.add_subcommand("tree", "extract the limit bubble tree of a family");
    tree->add_option("--family", family_path, "configuration-family JSON")
        ->required();
    tree->add_option("--out", out_dir, "output directory");

    CLI::App* check = app.add_subcommand(
        "check", "check convergence of a family to a stable map");
    check->add_option("--family", family_path, "configuration-family JSON")
        ->required();
    check->add_option("--tree", tree_path, "bubble-tree JSON")->required();
    check->add_option("--reparams", reparams_path, "reparametrization JSON")
        ->required();
    check->add_option("--out", out_dir, "output directory");
    check->add_option("--tol", check_tol, "convergence tolerance");

    std::string loop_family = "zd-id", powers_csv, loop_path;
    int md = 1, mn = 1;
    CLI::App* maslov =
        app.add_subcommand("maslov", "Maslov index of a unitary loop");
    maslov->add_option("--family", loop_family, "zd-id | diag");
    maslov->add_option("--d", md, "power for the zd-id family");
    maslov->add_option("--n", mn, "matrix dimension");
    maslov->add_option("--powers", powers_csv, "comma powers for diag family");
    maslov->add_option("--loop", loop_path, "loop JSON file");

    int dim_m = 2, dim_g = 1, chern = 0;
    CLI::App* index =
        app.add_subcommand("index", "evaluate the Fredholm index formula");
    index->add_option("--dimM", dim_m, "dim M (even)");
    index->add_option("--dimG", dim_g, "dim G");
    index->add_option("--chern", chern, "equivariant Chern pairing");

    std::string hardy_fn = "const";
    double hp = 4.0, hlambda = 0.5, hradius = 12.0;
    int hn = 512;
    CLI::App* hardy =
        app.add_subcommand("hardy", "numerical Hardy-inequality check");
    hardy->add_option("--fn", hardy_fn,
                      "const | bracket-2 | x-bracket-3 | gauss");
    hardy->add_option("--p", hp, "integrability exponent");
    hardy->add_option("--lambda", hlambda, "weight exponent");
    hardy->add_option("--gridradius", hradius, "grid radius");
    hardy->add_option("--gridn", hn, "grid points per axis");

    int kd = 0;
    double kp = 4.0, klambda = 0.5, kradius = 4.0;
    int kn = 96;
    CLI::App* kernel = app.add_subcommand(
        "kernel", "dbar kernel accounting on weighted spaces");
    kernel->add_option("--d", kd, "degree");
    kernel->add_option("--p", kp, "integrability exponent");
    kernel->add_option("--lambda", klambda, "weight exponent");
    kernel->add_option("--gridradius", kradius, "grid radius");
    kernel->add_option("--gridn", kn, "grid points per axis");

    int fine = 1024, coarse = 512;
    CLI::App* selftest =
        app.add_subcommand("selftest", "run the full verification suite");
    selftest->add_option("--grid", fine, "fine grid for the solver criteria");
    selftest->add_option("--coarse", coarse, "coarse grid for refinement checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (degrees->parsed()) return cmd_degrees(solve_args, probe_radius);
        if (tree->parsed()) return cmd_tree(family_path, out_dir);
        if (check->parsed())
            return cmd_check(family_path, tree_path, reparams_path, out_dir,
                             check_tol);
        if (maslov->parsed())
            return cmd_maslov(loop_family, md, mn, powers_csv, loop_path);
        if (index->parsed()) {
            std::cout << fredholm_index({dim_m, dim_g, chern}) << "\n";
            return kExitOk;
        }
        if (hardy->parsed()) return cmd_hardy(hardy_fn, hp, hlambda, hradius, hn);
        if (kernel->parsed()) return cmd_kernel(kd, kp, klambda, kradius, kn);
        if (selftest->parsed()) {
            const AcceptanceOutcome outcome = run_acceptance(std::cout, fine, coarse);
            return outcome.all_pass() ? kExitOk : 1;
        }
    } catch (const AmbiguousExponents& e) {
        std::cerr << "ambiguous: " << e.what() << "\n";
        return kExitAmbiguous;
    } catch (const NonConvergence& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
