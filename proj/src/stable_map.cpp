#include "vortexlab/stable_map.hpp"

#include <algorithm>
#include <numbers>
#include <queue>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

namespace {

const char* type_tag(VertexType t) {
    switch (t) {
        case VertexType::T0: return "T0";
        case VertexType::T1: return "T1";
        default: return "Tinf";
    }
}

VertexType type_from_tag(const std::string& s) {
    if (s == "T0") return VertexType::T0;
    if (s == "T1") return VertexType::T1;
    if (s == "Tinf") return VertexType::TInf;
    throw InvalidInput("unknown vertex type tag: " + s);
}

nlohmann::ordered_json point_json(const SpherePoint& p) {
    if (p.is_inf) return "inf";
    return {{"re", p.z.real()}, {"im", p.z.imag()}};
}

SpherePoint point_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return SpherePoint::infinity();
    return SpherePoint::finite({j.at("re").get<double>(), j.at("im").get<double>()});
}

} // namespace

bool BubbleTree::adjacent(int a, int b) const {
    for (const auto& [x, y] : edges)
        if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
}

std::vector<int> BubbleTree::neighbors(int a) const {
    std::vector<int> out;
    for (const auto& [x, y] : edges) {
        if (x == a) out.push_back(y);
        if (y == a) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SpherePoint> BubbleTree::special_points(int a) const {
    std::vector<SpherePoint> pts;
    for (int b : neighbors(a)) {
        auto it = nodal.find({a, b});
        if (it != nodal.end()) pts.push_back(it->second);
    }
    for (const auto& [v, z] : marked)
        if (v == a) pts.push_back(z);
    return pts;
}

double BubbleTree::vertex_energy(int a) const {
    auto it = vortex_data.find(a);
    if (it == vortex_data.end()) return 0.0;
    return std::numbers::pi * it->second.degree();
}

int BubbleTree::total_degree() const {
    int d = 0;
    for (const auto& [v, cfg] : vortex_data) d += cfg.degree();
    return d;
}

std::vector<Violation> validate(const BubbleTree& tree) {
    std::vector<Violation> out;
    auto flag = [&](const std::string& cond, int v, const std::string& detail) {
        out.push_back({cond, v, detail});
    };

    if (tree.vertices.empty()) {
        flag("Structure", -1, "no vertices");
        return out;
    }
    if (tree.marked.empty()) {
        flag("Structure", -1, "missing the marked point z_0");
        return out;
    }
    for (const auto& [a, b] : tree.edges) {
        if (a == b) flag("Structure", a, "self edge");
        if (!tree.vertices.count(a) || !tree.vertices.count(b))
            flag("Structure", a, "edge with unknown vertex");
        if (!tree.nodal.count({a, b}) || !tree.nodal.count({b, a}))
            flag("Structure", a, "edge without nodal points on both sides");
    }
    for (const auto& [v, z] : tree.marked)
        if (!tree.vertices.count(v)) flag("Structure", v, "marked point on unknown vertex");
    for (const auto& [key, z] : tree.nodal)
        if (!tree.adjacent(key.first, key.second))
            flag("Structure", key.first, "nodal point without an edge");
    for (const auto& [v, t] : tree.vertices)
        if (t == VertexType::T1 && !tree.vortex_data.count(v))
            flag("Structure", v, "T1 vertex without vortex data");
    for (const auto& [v, cfg] : tree.vortex_data) {
        if (!tree.vertices.count(v) || tree.vertices.at(v) != VertexType::T1)
            flag("Structure", v, "vortex data on a non-T1 vertex");
        try {
            cfg.validate();
        } catch (const InvalidInput& e) {
            flag("Structure", v, e.what());
        }
    }
    if (!out.empty()) return out;

    // connected tree: BFS from the root, parent pointers give the unique
    // path used by the combinatorics check
    const int root = tree.root();
    std::map<int, int> parent;
    std::queue<int> bfs;
    bfs.push(root);
    parent[root] = root;
    int seen = 0;
    while (!bfs.empty()) {
        const int a = bfs.front();
        bfs.pop();
        ++seen;
        for (int b : tree.neighbors(a)) {
            if (!parent.count(b)) {
                parent[b] = a;
                bfs.push(b);
            }
        }
    }
    if (seen != static_cast<int>(tree.vertices.size())) {
        flag("Structure", -1, "graph is not connected");
        return out;
    }
    if (tree.edges.size() != tree.vertices.size() - 1) {
        flag("Structure", -1, "edge count does not match a tree");
        return out;
    }

    auto type_of = [&](int v) { return tree.vertices.at(v); };

    // Combinatorics
    if (type_of(root) == VertexType::T0)
        flag("Combinatorics", root, "root marked vertex lies in T0");
    for (const auto& [v, t] : tree.vertices) {
        int cur = v;
        while (cur != root) {
            const int next = parent.at(cur);
            const VertexType tc = type_of(cur), tn = type_of(next);
            if (tc == VertexType::T0 && tn == VertexType::TInf)
                flag("Combinatorics", cur, "T0 vertex adjacent to Tinf toward the root");
            if ((tc == VertexType::T1 || tc == VertexType::TInf) &&
                tn != VertexType::TInf)
                flag("Combinatorics", cur,
                     "path toward the root leaves T1/Tinf into a non-Tinf vertex");
            cur = next;
        }
    }

    // Special points
    if (type_of(root) == VertexType::T1 && !tree.marked.front().second.is_inf)
        flag("SpecialPoints", root, "z_0 must be infinity on a T1 root");
    for (const auto& [a, b] : tree.edges) {
        auto check = [&](int x, int y) {
            if (type_of(x) == VertexType::T1 && type_of(y) == VertexType::TInf &&
                !tree.nodal.at({x, y}).is_inf)
                flag("SpecialPoints", x, "nodal point toward Tinf must be infinity");
        };
        check(a, b);
        check(b, a);
    }
    for (const auto& [v, t] : tree.vertices) {
        const auto pts = tree.special_points(v);
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (chordal(pts[i], pts[j]) <= 1e-12)
                    flag("SpecialPoints", v, "coincident special points");
    }

    // Stability
    for (const auto& [v, t] : tree.vertices) {
        const size_t count = tree.special_points(v).size();
        if (t == VertexType::T1 && tree.vortex_data.at(v).degree() == 0 &&
            count < 2)
            flag("Stability", v, "ghost vortex with fewer than two special points");
        if ((t == VertexType::T0 || t == VertexType::TInf) && count < 3)
            flag("Stability", v, "ghost sphere with fewer than three special points");
    }

    // marked points on T1 vertices other than z_0 lie in C
    for (size_t i = 1; i < tree.marked.size(); ++i) {
        const auto& [v, z] = tree.marked[i];
        if (type_of(v) == VertexType::T1 && z.is_inf)
            flag("MarkedInC", v, "marked point at infinity on a T1 vertex");
    }
    return out;
}

Mobius ReparamElement::map_at(int vertex) const {
    auto it = maps.find(vertex);
    return it == maps.end() ? Mobius::identity() : it->second;
}

int ReparamElement::image(int vertex) const {
    auto it = vertex_map.find(vertex);
    return it == vertex_map.end() ? vertex : it->second;
}

int ReparamElement::preimage(int vertex) const {
    for (const auto& [a, b] : vertex_map)
        if (b == vertex) return a;
    return vertex;
}

bool ReparamElement::is_identity(double tol) const {
    for (const auto& [a, b] : vertex_map)
        if (a != b) return false;
    for (const auto& [v, m] : maps)
        if (!m.is_identity(tol)) return false;
    return true;
}

BubbleTree act(const ReparamElement& g, const BubbleTree& tree) {
    // compatibility of f with the combinatorial type
    std::vector<int> images;
    for (const auto& [v, t] : tree.vertices) {
        const int w = g.image(v);
        if (!tree.vertices.count(w) || tree.vertices.at(w) != t)
            throw IncompatibleType("vertex map does not preserve the type");
        images.push_back(w);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
        throw IncompatibleType("vertex map is not a bijection");
    for (const auto& [a, b] : tree.edges)
        if (!tree.adjacent(g.image(a), g.image(b)))
            throw IncompatibleType("vertex map does not preserve edges");
    for (const auto& [v, t] : tree.vertices)
        if (t == VertexType::T1 && !g.map_at(v).is_translation(1e-9))
            throw IncompatibleType("T1 reparametrization must be a translation");

    BubbleTree out;
    out.vertices = tree.vertices;
    out.edges = tree.edges;

    for (const auto& [v, t] : tree.vertices) {
        if (t != VertexType::T1) continue;
        const int fv = g.image(v);
        const Mobius phi = g.map_at(fv);
        const Complex c = phi.translation_offset();
        out.vortex_data[v] = tree.vortex_data.at(fv).translated(-c);
    }
    for (const auto& [a, b] : tree.edges) {
        auto pull = [&](int x, int y) {
            const int fx = g.image(x), fy = g.image(y);
            out.nodal[{x, y}] = g.map_at(fx).inverse()(tree.nodal.at({fx, fy}));
        };
        pull(a, b);
        pull(b, a);
    }
    for (const auto& [v, z] : tree.marked)
        out.marked.push_back({g.preimage(v), g.map_at(v).inverse()(z)});
    return out;
}

ReparamElement compose(const ReparamElement& g, const ReparamElement& h) {
    ReparamElement out;
    std::vector<int> domain;
    for (const auto& [a, b] : g.vertex_map) domain.push_back(a);
    for (const auto& [a, b] : h.vertex_map) domain.push_back(a);
    for (const auto& [a, m] : g.maps) domain.push_back(a);
    for (const auto& [a, m] : h.maps) domain.push_back(a);
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    for (int v : domain) {
        out.vertex_map[v] = g.image(h.image(v));
        // chi_b = phi_b o psi_{f^{-1}(b)}
        out.maps[v] = g.map_at(v).compose(h.map_at(g.preimage(v)));
    }
    return out;
}

bool is_simple(const BubbleTree& tree) {
    std::vector<const ZeroConfig*> positive;
    for (const auto& [v, cfg] : tree.vortex_data)
        if (cfg.degree() > 0) positive.push_back(&cfg);
    for (size_t a = 0; a < positive.size(); ++a)
        for (size_t b = a + 1; b < positive.size(); ++b)
            if (translation_equivalent(*positive[a], *positive[b])) return false;
    return true;
}

bool tree_equal(const BubbleTree& a, const BubbleTree& b, double tol) {
    if (a.vertices != b.vertices) return false;
    auto norm_edges = [](const BubbleTree& t) {
        std::vector<std::pair<int, int>> e;
        for (auto [x, y] : t.edges) e.push_back({std::min(x, y), std::max(x, y)});
        std::sort(e.begin(), e.end());
        return e;
    };
    if (norm_edges(a) != norm_edges(b)) return false;
    for (const auto& [v, cfg] : a.vortex_data) {
        auto it = b.vortex_data.find(v);
        if (it == b.vortex_data.end() || !same_config(cfg, it->second, tol))
            return false;
    }
    if (a.vortex_data.size() != b.vortex_data.size()) return false;
    if (a.nodal.size() != b.nodal.size()) return false;
    for (const auto& [key, z] : a.nodal) {
        auto it = b.nodal.find(key);
        if (it == b.nodal.end() || chordal(z, it->second) > tol) return false;
    }
    if (a.marked.size() != b.marked.size()) return false;
    for (size_t i = 0; i < a.marked.size(); ++i) {
        if (a.marked[i].first != b.marked[i].first) return false;
        if (chordal(a.marked[i].second, b.marked[i].second) > tol) return false;
    }
    return true;
}

std::string BubbleTree::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& [v, t] : vertices)
        j["vertices"].push_back({{"id", v}, {"type", type_tag(t)}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
    j["vortex_data"] = nlohmann::ordered_json::array();
    for (const auto& [v, cfg] : vortex_data) {
        nlohmann::ordered_json zeros = nlohmann::ordered_json::array();
        for (const auto& z : cfg.zeros)
            zeros.push_back({{"re", z.position.real()},
                             {"im", z.position.imag()},
                             {"mult", z.multiplicity}});
        j["vortex_data"].push_back({{"vertex", v}, {"zeros", zeros}});
    }
    j["nodal"] = nlohmann::ordered_json::array();
    for (const auto& [key, z] : nodal)
        j["nodal"].push_back(
            {{"from", key.first}, {"to", key.second}, {"z", point_json(z)}});
    j["marked"] = nlohmann::ordered_json::array();
    for (const auto& [v, z] : marked)
        j["marked"].push_back({{"vertex", v}, {"z", point_json(z)}});
    return j.dump(2);
}

BubbleTree BubbleTree::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad bubble-tree JSON: ") + e.what());
    }
    BubbleTree t;
    for (const auto& e : j.at("vertices"))
        t.vertices[e.at("id").get<int>()] =
            type_from_tag(e.at("type").get<std::string>());
    for (const auto& e : j.at("edges"))
        t.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    for (const auto& e : j.at("vortex_data")) {
        ZeroConfig cfg;
        for (const auto& z : e.at("zeros"))
            cfg.zeros.push_back({{z.at("re").get<double>(), z.at("im").get<double>()},
                                 z.value("mult", 1)});
        t.vortex_data[e.at("vertex").get<int>()] = cfg;
    }
    for (const auto& e : j.at("nodal"))
        t.nodal[{e.at("from").get<int>(), e.at("to").get<int>()}] =
            point_from_json(e.at("z"));
    for (const auto& e : j.at("marked"))
        t.marked.push_back({e.at("vertex").get<int>(), point_from_json(e.at("z"))});
    return t;
}

} // namespace vortexlab
