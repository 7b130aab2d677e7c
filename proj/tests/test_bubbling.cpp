#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "vortexlab/bubbling.hpp"
#include "vortexlab/errors.hpp"

using namespace vortexlab;

namespace {

std::vector<double> default_scales() {
    std::vector<double> s;
    for (int k = 1; k <= 10; ++k) s.push_back(10.0 * k);
    return s;
}

ConfigurationFamily stationary_family() {
    ConfigurationFamily f;
    f.scales = default_scales();
    const int m = f.num_scales();
    f.tracks = {std::vector<Complex>(m, Complex(1, 0)),
                std::vector<Complex>(m, Complex(-1, 0.5))};
    return f;
}

// the worked example: degrees 1 at -2-i, 2 at 3+4i, 4 escaping on nu e^{i nu}
ConfigurationFamily example_family() {
    ConfigurationFamily f;
    f.scales = default_scales();
    const int m = f.num_scales();
    f.tracks = {std::vector<Complex>(m, Complex(-2, -1)),
                std::vector<Complex>(m, Complex(3, 4)),
                std::vector<Complex>(m, Complex(3, 4))};
    std::vector<Complex> esc(m);
    for (int i = 0; i < m; ++i) esc[i] = std::polar(f.scales[i], f.scales[i]);
    for (int k = 0; k < 4; ++k) f.tracks.push_back(esc);
    return f;
}

// two separation rates: {0} against {nu, nu + sqrt(nu)}
ConfigurationFamily two_level_family() {
    ConfigurationFamily f;
    f.scales = default_scales();
    const int m = f.num_scales();
    std::vector<Complex> t0(m, Complex(0, 0)), t1(m), t2(m);
    for (int i = 0; i < m; ++i) {
        t1[i] = Complex(f.scales[i], 0);
        t2[i] = Complex(f.scales[i] + std::sqrt(f.scales[i]), 0);
    }
    f.tracks = {t0, t1, t2};
    return f;
}

int count_type(const BubbleTree& t, VertexType ty) {
    int c = 0;
    for (const auto& [v, vt] : t.vertices) c += vt == ty;
    return c;
}

} // namespace

TEST_CASE("stationary family collapses to a single vortex vertex") {
    const ConfigurationFamily fam = stationary_family();
    const Extraction ex = extract_bubble_tree(fam);
    CHECK(ex.tree.vertices.size() == 1);
    CHECK(ex.tree.vertices.at(0) == VertexType::T1);
    REQUIRE(ex.tree.marked.size() == 1);
    CHECK(ex.tree.marked[0].second.is_inf);
    const ZeroConfig expected{{{{1, 0}, 1}, {{-1, 0.5}, 1}}};
    CHECK(same_config(ex.tree.vortex_data.at(0), expected, 1e-9));
    // identity reparametrizations on a stationary family
    for (const Mobius& m : ex.reparams.at(0)) CHECK(m.is_identity(1e-12));

    const ConvergenceReport rep = check_convergence(fam, ex.tree, ex.reparams);
    CHECK(rep.pass);
    for (const auto& c : rep.conditions)
        CHECK(c.residuals.back() <= 1e-12);
}

TEST_CASE("the worked example: two vortices attached to a ghost sphere") {
    const ConfigurationFamily fam = example_family();
    const Extraction ex = extract_bubble_tree(fam);

    CHECK(count_type(ex.tree, VertexType::T0) == 0);
    CHECK(count_type(ex.tree, VertexType::T1) == 2);
    CHECK(count_type(ex.tree, VertexType::TInf) == 1);
    REQUIRE(ex.tree.vertices.count(0));
    CHECK(ex.tree.vertices.at(0) == VertexType::TInf);
    CHECK(ex.tree.root() == 0);

    // degree 3 vertex keeps the constant zeros, degree 4 is recentered
    REQUIRE(ex.tree.vortex_data.count(1));
    REQUIRE(ex.tree.vortex_data.count(2));
    const ZeroConfig w1{{{{-2, -1}, 1}, {{3, 4}, 2}}};
    const ZeroConfig w2{{{{0, 0}, 4}}};
    CHECK(same_config(ex.tree.vortex_data.at(1), w1, 1e-9));
    CHECK(same_config(ex.tree.vortex_data.at(2), w2, 1e-9));

    // nodal points: infinity on the vortex side, 0/1 normalization on the
    // ghost sphere
    CHECK(ex.tree.nodal.at({1, 0}).is_inf);
    CHECK(ex.tree.nodal.at({2, 0}).is_inf);
    CHECK(std::abs(ex.tree.nodal.at({0, 1}).z) < 1e-9);
    CHECK(std::abs(ex.tree.nodal.at({0, 2}).z - Complex(1, 0)) < 1e-9);

    CHECK(ex.tree.total_degree() == 7);
    const ConvergenceReport rep = check_convergence(fam, ex.tree, ex.reparams);
    CHECK(rep.pass);
}

TEST_CASE("two separation levels give a chain of ghost spheres") {
    const Extraction ex = extract_bubble_tree(two_level_family());
    CHECK(count_type(ex.tree, VertexType::T1) == 3);
    CHECK(count_type(ex.tree, VertexType::TInf) == 2);
    for (const auto& [v, cfg] : ex.tree.vortex_data)
        CHECK(cfg.degree() == 1);
    CHECK(validate(ex.tree).empty());
    // report carries the two levels, roughly 1 and 1/2
    REQUIRE(ex.report.levels.size() == 2);
    CHECK(ex.report.levels[0] == doctest::Approx(1.0).epsilon(0.1));
    CHECK(ex.report.levels[1] == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("check_convergence against the derived reparametrizations") {
    const ConfigurationFamily fam = example_family();
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
    REQUIRE(validate(paper).empty());

    MobiusFamily reparams;
    for (double nu : fam.scales) {
        const Complex c = std::polar(nu, nu);
        reparams.per_vertex[0].push_back(Mobius::affine(c, -c)); // nu e^{inu}(z-1)
        reparams.per_vertex[1].push_back(Mobius::identity());
        reparams.per_vertex[2].push_back(Mobius::translation(c));
    }

    SUBCASE("paper tree passes; ghost nodal points land on 1 and 2") {
        const ConvergenceReport rep = check_convergence(fam, paper, reparams);
        CHECK(rep.pass);
        for (const auto& est : rep.induced_nodal) {
            if (est.from != 0) continue;
            const Complex target(est.to == 1 ? 1.0 : 2.0, 0.0);
            REQUIRE(!est.value.is_inf);
            CHECK(std::abs(est.value.z - target) <= 1e-2);
        }
    }

    SUBCASE("wrong degree partition fails on degree conservation") {
        BubbleTree wrong = paper;
        wrong.vortex_data[1] = ZeroConfig{{{{-2, -1}, 1}, {{3, 4}, 1}}};
        wrong.vortex_data[2] = ZeroConfig{{{{0, 0}, 5}}};
        const ConvergenceReport rep = check_convergence(fam, wrong, reparams);
        CHECK(!rep.pass);
        bool degree_condition_failed = false;
        for (const auto& c : rep.conditions)
            if (!c.pass && c.name.find("degree conservation") != std::string::npos)
                degree_condition_failed = true;
        CHECK(degree_condition_failed);
    }
}

TEST_CASE("extraction is covariant under global translation") {
    const ConfigurationFamily fam = stationary_family();
    const Complex c(0.75, -2.0);
    ConfigurationFamily moved = fam;
    for (auto& t : moved.tracks)
        for (auto& z : t) z += c;
    const Extraction a = extract_bubble_tree(fam);
    const Extraction b = extract_bubble_tree(moved);
    ReparamElement g;
    g.maps[0] = Mobius::translation(-c); // pullback by z - c shifts zeros by +c
    CHECK(tree_equal(b.tree, act(g, a.tree), 1e-9));
}

TEST_CASE("marked tracks") {
    SUBCASE("stationary marked point on the vortex vertex") {
        ConfigurationFamily fam = stationary_family();
        fam.marked_tracks = {std::vector<Complex>(fam.num_scales(), Complex(2, 2))};
        const Extraction ex = extract_bubble_tree(fam);
        REQUIRE(ex.tree.marked.size() == 2);
        CHECK(ex.tree.marked[1].first == 0);
        CHECK(std::abs(ex.tree.marked[1].second.z - Complex(2, 2)) < 1e-9);
        CHECK(validate(ex.tree).empty());
    }
    SUBCASE("marked point escaping with the moving cluster") {
        ConfigurationFamily fam = example_family();
        const int m = fam.num_scales();
        std::vector<Complex> w(m);
        for (int i = 0; i < m; ++i)
            w[i] = 2.0 * std::polar(fam.scales[i], fam.scales[i]);
        fam.marked_tracks = {w};
        const Extraction ex = extract_bubble_tree(fam);
        REQUIRE(ex.tree.marked.size() == 2);
        CHECK(ex.tree.marked[1].first == 0); // sits on the ghost sphere
        CHECK(std::abs(ex.tree.marked[1].second.z - Complex(2, 0)) < 1e-2);
        CHECK(validate(ex.tree).empty());
    }
    SUBCASE("colliding marked points spawn a type-0 ghost") {
        ConfigurationFamily fam = stationary_family();
        const int m = fam.num_scales();
        std::vector<Complex> w1(m), w2(m);
        for (int i = 0; i < m; ++i) {
            const double eps = 1.0 / std::sqrt(fam.scales[i]);
            w1[i] = Complex(2.0 + eps, 2.0);
            w2[i] = Complex(2.0 - eps, 2.0);
        }
        fam.marked_tracks = {w1, w2};
        const Extraction ex = extract_bubble_tree(fam);
        REQUIRE(ex.tree.marked.size() == 3);
        const int ghost = ex.tree.marked[1].first;
        CHECK(ex.tree.marked[2].first == ghost);
        CHECK(ex.tree.vertices.at(ghost) == VertexType::T0);
        // normalized to 0 and 1 on the ghost
        CHECK(std::abs(ex.tree.marked[1].second.z) < 1e-9);
        CHECK(std::abs(ex.tree.marked[2].second.z - Complex(1, 0)) < 1e-9);
        CHECK(validate(ex.tree).empty());
        CHECK(check_convergence(fam, ex.tree, ex.reparams).pass);
    }
    SUBCASE("marked point escaping at an intermediate rate") {
        ConfigurationFamily fam = stationary_family();
        const int m = fam.num_scales();
        std::vector<Complex> w(m);
        for (int i = 0; i < m; ++i)
            w[i] = Complex(std::sqrt(fam.scales[i]), 0);
        fam.marked_tracks = {w};
        const Extraction ex = extract_bubble_tree(fam);
        // a new ghost root carries z_0 and the marked point at 1
        const int root = ex.tree.root();
        CHECK(ex.tree.vertices.at(root) == VertexType::TInf);
        CHECK(ex.tree.marked[0].second.is_inf);
        CHECK(ex.tree.marked[1].first == root);
        CHECK(std::abs(ex.tree.marked[1].second.z - Complex(1, 0)) < 1e-9);
        CHECK(validate(ex.tree).empty());
    }
    SUBCASE("coincident marked tracks are rejected") {
        ConfigurationFamily fam = stationary_family();
        const std::vector<Complex> w(fam.num_scales(), Complex(3, 3));
        fam.marked_tracks = {w, w};
        CHECK_THROWS_AS(extract_bubble_tree(fam), UnstableLimit);
    }
}

TEST_CASE("ambiguity guards") {
    SUBCASE("too few scales") {
        ConfigurationFamily fam = stationary_family();
        fam.scales = {10, 20, 30};
        for (auto& t : fam.tracks) t.resize(3);
        CHECK_THROWS_AS(extract_bubble_tree(fam), AmbiguousExponents);
    }
    SUBCASE("noisy exponents within two standard errors") {
        ConfigurationFamily fam;
        fam.scales = default_scales();
        const int m = fam.num_scales();
        std::vector<Complex> t0(m, Complex(0, 0)), t1(m), t2(m);
        for (int i = 0; i < m; ++i) {
            const double nu = fam.scales[i];
            const double noisy = std::pow(nu, 0.55) *
                                 (1.0 + 0.35 * std::sin(5.0 * nu));
            t1[i] = Complex(std::pow(nu, 0.5), 0);
            t2[i] = Complex(0, noisy);
        }
        fam.tracks = {t0, t1, t2};
        CHECK_THROWS_AS(extract_bubble_tree(fam), AmbiguousExponents);
    }
}

TEST_CASE("degree conservation and round trip on random-ish families") {
    for (const ConfigurationFamily& fam :
         {stationary_family(), example_family(), two_level_family()}) {
        const Extraction ex = extract_bubble_tree(fam);
        CHECK(ex.tree.total_degree() == fam.degree());
        CHECK(check_convergence(fam, ex.tree, ex.reparams).pass);
        // every extracted vortex vertex carries positive degree
        for (const auto& [v, cfg] : ex.tree.vortex_data)
            CHECK(cfg.degree() >= 1);
    }
}

TEST_CASE("family JSON round trip") {
    ConfigurationFamily fam = example_family();
    fam.marked_tracks = {std::vector<Complex>(fam.num_scales(), Complex(1, 1))};
    const ConfigurationFamily back =
        ConfigurationFamily::from_json(fam.to_json());
    CHECK(back.scales == fam.scales);
    REQUIRE(back.tracks.size() == fam.tracks.size());
    for (size_t j = 0; j < fam.tracks.size(); ++j)
        CHECK(back.tracks[j] == fam.tracks[j]);
    REQUIRE(back.marked_tracks.size() == 1);
}
