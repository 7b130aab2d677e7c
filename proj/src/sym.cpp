#include "vortexlab/sym.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

// O(n^3) Hungarian algorithm with potentials; deterministic scan order.
double min_cost_matching(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    if (n == 0) return 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (int j = 1; j <= n; ++j) total += cost(p[j] - 1, j - 1);
    return total;
}

bool lex_less(const std::vector<SpherePoint>& a,
              const std::vector<SpherePoint>& b) {
    for (size_t k = 0; k < a.size(); ++k) {
        if (sphere_less(a[k], b[k])) return true;
        if (sphere_less(b[k], a[k])) return false;
    }
    return false;
}

} // namespace

SymPoint iota(const ZeroConfig& config, int d) {
    config.validate();
    if (config.degree() > d)
        throw DegreeExceeded("config degree exceeds the symmetric-product size");
    SymPoint s;
    for (Complex z : config.flatten()) s.points.push_back(SpherePoint::finite(z));
    s.points.resize(d, SpherePoint::infinity());
    return s;
}

SymPoint sym_point_from_positions(const std::vector<Complex>& positions) {
    SymPoint s;
    for (Complex z : positions) s.points.push_back(SpherePoint::finite(z));
    return s;
}

double sym_distance(const SymPoint& a, const SymPoint& b) {
    if (a.size() != b.size())
        throw SizeMismatch("symmetric-product points of different size");
    const int n = a.size();
    if (n == 0) return 0.0;

    // canonical argument order makes the result exactly symmetric
    std::vector<SpherePoint> pa = a.points, pb = b.points;
    std::sort(pa.begin(), pa.end(), sphere_less);
    std::sort(pb.begin(), pb.end(), sphere_less);
    if (lex_less(pb, pa)) std::swap(pa, pb);

    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost(i, j) = chordal(pa[i], pb[j]);
    return min_cost_matching(cost);
}

std::string SymPoint::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = size();
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        if (p.is_inf)
            j["points"].push_back("inf");
        else
            j["points"].push_back({{"re", p.z.real()}, {"im", p.z.imag()}});
    }
    return j.dump();
}

SymPoint SymPoint::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad sym-point JSON: ") + e.what());
    }
    SymPoint s;
    for (const auto& e : j.at("points")) {
        if (e.is_string() && e.get<std::string>() == "inf")
            s.points.push_back(SpherePoint::infinity());
        else
            s.points.push_back(SpherePoint::finite(
                {e.at("re").get<double>(), e.at("im").get<double>()}));
    }
    if (j.contains("d") && j["d"].get<int>() != s.size())
        throw InvalidInput("sym-point JSON: d does not match the point count");
    return s;
}

} // namespace vortexlab
