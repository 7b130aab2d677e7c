#include "vortexlab/maslov.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

// winding of a cyclic sequence of nonzero complex numbers; each increment
// must stay below pi/2 in magnitude
double phase_winding(const std::vector<Complex>& v) {
    double total = 0;
    const int n = static_cast<int>(v.size());
    for (int k = 0; k < n; ++k) {
        if (std::abs(v[k]) == 0.0)
            throw WindingAmbiguous("zero value in the winding sequence");
        const double d = std::arg(v[(k + 1) % n] / v[k]);
        if (std::abs(d) >= kPi / 2)
            throw WindingAmbiguous(
                "phase increment of magnitude >= pi/2 between samples; the "
                "loop is sampled too coarsely");
        total += d;
    }
    return total / (2.0 * kPi);
}

int rounded_winding(double w) {
    const int r = static_cast<int>(std::lround(w));
    if (std::abs(w - r) > 0.05)
        throw WindingAmbiguous("winding is not close to an integer");
    return r;
}

} // namespace

void SymplecticLoop::validate() const {
    if (samples.empty()) throw InvalidInput("empty loop");
    const int n = dim();
    if (size() < 8 * n)
        throw InvalidInput("a loop of n x n matrices needs at least 8n samples");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& u : samples) {
        if (u.rows() != n || u.cols() != n)
            throw InvalidInput("loop samples have inconsistent dimensions");
        if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-9)
            throw InvalidInput("loop sample is not unitary within 1e-9");
    }
    for (int k = 0; k < size(); ++k) {
        const auto& a = samples[k];
        const auto& b = samples[(k + 1) % size()];
        if ((b - a).norm() > 0.5)
            throw InvalidInput(
                "consecutive samples further than 0.5 apart; winding would be "
                "ambiguous");
    }
}

SymplecticLoop power_loop(int d, int n) {
    std::vector<int> powers(n, d);
    return diagonal_loop(powers);
}

SymplecticLoop diagonal_loop(const std::vector<int>& powers) {
    const int n = static_cast<int>(powers.size());
    if (n < 1) throw InvalidInput("diagonal loop needs at least one power");
    int max_abs = 1, sum_abs = 1;
    for (int p : powers) {
        max_abs = std::max(max_abs, std::abs(p));
        sum_abs += std::abs(p);
    }
    const int N = std::max({8 * n, 64, 16 * n * max_abs, 16 * sum_abs});
    SymplecticLoop loop;
    loop.samples.reserve(N);
    for (int k = 0; k < N; ++k) {
        const double t = 2.0 * kPi * k / N;
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) u(i, i) = std::polar(1.0, powers[i] * t);
        loop.samples.push_back(std::move(u));
    }
    return loop;
}

int maslov_index(const SymplecticLoop& loop) {
    loop.validate();
    std::vector<Complex> dets;
    dets.reserve(loop.size());
    for (const auto& u : loop.samples) dets.push_back(u.determinant());
    return 2 * rounded_winding(phase_winding(dets));
}

int vortex_boundary_maslov(const VortexSolution& sol, double radius) {
    const double R = sol.params.domain_radius;
    if (radius < 0.8 * R)
        throw InvalidInput("boundary transport needs radius >= 0.8 R");
    if (radius > R - 2.0 * sol.grid.spacing())
        throw InvalidInput("circle leaves the computational grid");
    const int N = std::max(1024, int(8.0 * kPi * radius / sol.grid.spacing()));
    std::vector<Complex> vals(N);
    for (int k = 0; k < N; ++k) {
        const Complex z = std::polar(radius, 2.0 * kPi * k / N);
        vals[k] = interpolate(sol.grid, sol.f, z);
        if (std::abs(vals[k]) < 0.9)
            throw FieldNotUnimodular(
                "|f| dips below 0.9 on the transport circle");
    }
    return 2 * rounded_winding(phase_winding(vals));
}

int fredholm_index(const IndexData& data) {
    if (data.dim_M % 2 != 0 || data.dim_M <= 0)
        throw InvalidInput("dim M must be even and positive");
    if (data.dim_G <= 0) throw InvalidInput("dim G must be positive");
    return data.dim_M - 2 * data.dim_G + 2 * data.chern_pairing;
}

std::string SymplecticLoop::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = dim();
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto& u : samples) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int r = 0; r < u.rows(); ++r)
            for (int c = 0; c < u.cols(); ++c)
                row.push_back({{"re", u(r, c).real()}, {"im", u(r, c).imag()}});
        j["samples"].push_back(row);
    }
    return j.dump();
}

SymplecticLoop SymplecticLoop::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad loop JSON: ") + e.what());
    }
    const int n = j.at("n").get<int>();
    SymplecticLoop loop;
    for (const auto& row : j.at("samples")) {
        if (static_cast<int>(row.size()) != n * n)
            throw InvalidInput("loop sample with wrong entry count");
        Eigen::MatrixXcd u(n, n);
        int idx = 0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                u(r, c) = Complex(row[idx].at("re").get<double>(),
                                  row[idx].at("im").get<double>());
                ++idx;
            }
        loop.samples.push_back(std::move(u));
    }
    return loop;
}

} // namespace vortexlab
