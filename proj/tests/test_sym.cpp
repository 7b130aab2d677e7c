#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "vortexlab/errors.hpp"
#include "vortexlab/sym.hpp"

using namespace vortexlab;

namespace {

SpherePoint pt(double re, double im) { return SpherePoint::finite({re, im}); }

// brute-force matching oracle: minimum over all permutations
double brute_force_distance(const SymPoint& a, const SymPoint& b) {
    const int n = a.size();
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = k;
    double best = 1e300;
    do {
        double s = 0;
        for (int k = 0; k < n; ++k) s += chordal(a.points[k], b.points[perm[k]]);
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

SymPoint random_sym_point(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    SymPoint s;
    for (int k = 0; k < n; ++k) {
        if (u(rng) > 2.4)
            s.points.push_back(SpherePoint::infinity());
        else
            s.points.push_back(pt(u(rng), u(rng)));
    }
    return s;
}

} // namespace

TEST_CASE("iota pads with infinity") {
    ZeroConfig empty;
    const SymPoint padded = iota(empty, 2);
    REQUIRE(padded.size() == 2);
    CHECK(padded.points[0].is_inf);
    CHECK(padded.points[1].is_inf);

    ZeroConfig two;
    two.zeros = {{{1, 0}, 1}, {{2, 0}, 1}};
    const SymPoint exact = iota(two, 2);
    CHECK(!exact.points[0].is_inf);
    CHECK(exact.points[0].z == Complex(1, 0));
    CHECK(exact.points[1].z == Complex(2, 0));

    ZeroConfig triple;
    triple.zeros = {{{0, 0}, 3}};
    const SymPoint seven = iota(triple, 7);
    REQUIRE(seven.size() == 7);
    int finite = 0, inf = 0;
    for (const auto& p : seven.points) (p.is_inf ? inf : finite)++;
    CHECK(finite == 3);
    CHECK(inf == 4);

    CHECK_THROWS_AS(iota(triple, 2), DegreeExceeded);
}

TEST_CASE("chordal distance closed forms") {
    CHECK(chordal(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
    const double nu = 3.7;
    const SpherePoint moving = pt(nu * std::cos(nu), nu * std::sin(nu));
    CHECK(chordal(moving, SpherePoint::infinity()) ==
          doctest::Approx(2.0 / std::sqrt(1.0 + nu * nu)).epsilon(1e-14));
}

TEST_CASE("sym_distance equals the spec examples") {
    SymPoint a, b;
    a.points = {pt(1, 0), pt(2, 0)};
    b.points = {pt(2, 0), pt(1, 0)};
    CHECK(sym_distance(a, b) == 0.0);

    const double nu = 5.0;
    SymPoint esc, inf;
    esc.points = {pt(nu * std::cos(nu), nu * std::sin(nu))};
    inf.points = {SpherePoint::infinity()};
    CHECK(sym_distance(esc, inf) ==
          doctest::Approx(2.0 / std::sqrt(1.0 + nu * nu)).epsilon(1e-14));

    SymPoint wrong;
    wrong.points = {pt(0, 0)};
    CHECK_THROWS_AS(sym_distance(a, wrong), SizeMismatch);
}

TEST_CASE("matching equals the brute-force permutation minimum") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const SymPoint a = random_sym_point(rng, 4);
        const SymPoint b = random_sym_point(rng, 4);
        CHECK(sym_distance(a, b) ==
              doctest::Approx(brute_force_distance(a, b)).epsilon(1e-11));
    }
}

TEST_CASE("metric axioms") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 5;
        const SymPoint a = random_sym_point(rng, n);
        const SymPoint b = random_sym_point(rng, n);
        const SymPoint c = random_sym_point(rng, n);
        CHECK(sym_distance(a, b) == sym_distance(b, a)); // exact symmetry
        CHECK(sym_distance(a, a) == 0.0);
        CHECK(sym_distance(a, b) <=
              sym_distance(a, c) + sym_distance(c, b) + 1e-12);
        if (sym_distance(a, b) < 1e-13) {
            // zero distance only for equal multisets
            auto less = [](const SpherePoint& p, const SpherePoint& q) {
                return sphere_less(p, q);
            };
            auto pa = a.points, pb = b.points;
            std::sort(pa.begin(), pa.end(), less);
            std::sort(pb.begin(), pb.end(), less);
            for (int k = 0; k < n; ++k)
                CHECK(chordal(pa[k], pb[k]) < 1e-12);
        }
    }
}

TEST_CASE("injectivity of iota on fixed-degree configurations") {
    ZeroConfig c1, c2;
    c1.zeros = {{{0, 0}, 2}, {{1, 1}, 1}};
    c2.zeros = {{{0, 0}, 1}, {{1, 1}, 2}};
    CHECK(sym_distance(iota(c1, 5), iota(c1, 5)) == 0.0);
    CHECK(sym_distance(iota(c1, 5), iota(c2, 5)) > 1e-3);
}

// membership in the subbasis sets V_U^{d0} (U a chordal ball) is stable
// under perturbations smaller than the distance to the boundary of U
TEST_CASE("topology consistency on an explicit subbasis set") {
    const SpherePoint center = pt(1, 0);
    const double radius = 0.7; // chordal ball
    auto membership = [&](const SymPoint& m, int d0) {
        int inside = 0;
        for (const auto& p : m.points) {
            const double dist = chordal(p, center);
            if (std::abs(dist - radius) < 1e-12) return false; // on boundary
            if (dist < radius) ++inside;
        }
        return inside == d0;
    };
    SymPoint m;
    m.points = {pt(1.05, 0.02), pt(0.9, -0.05), pt(5, 5),
                SpherePoint::infinity()};
    REQUIRE(membership(m, 2));
    // margin: smallest gap between a point and the boundary of U
    double margin = 1e300;
    for (const auto& p : m.points)
        margin = std::min(margin, std::abs(chordal(p, center) - radius));
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        SymPoint moved = m;
        for (auto& p : moved.points) {
            if (p.is_inf) continue; // chordal balls around 1 stay away
            // perturb within the chordal margin (euclidean shift bounded by
            // the chordal one near these points)
            const double scale = 0.3 * margin;
            p.z += Complex(scale * u(rng), scale * u(rng));
        }
        CHECK(sym_distance(moved, m) < margin);
        CHECK(membership(moved, 2));
    }
}

TEST_CASE("sym point JSON round trip") {
    ZeroConfig c;
    c.zeros = {{{0.5, -0.25}, 2}};
    const SymPoint s = iota(c, 4);
    const SymPoint back = SymPoint::from_json(s.to_json());
    REQUIRE(back.size() == s.size());
    CHECK(sym_distance(back, s) == 0.0);
}
