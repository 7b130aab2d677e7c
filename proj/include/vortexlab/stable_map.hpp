#ifndef VORTEXLAB_STABLE_MAP_HPP
#define VORTEXLAB_STABLE_MAP_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vortexlab/sphere.hpp"
#include "vortexlab/zero_config.hpp"

namespace vortexlab {

enum class VertexType { T0, T1, TInf };

// Genus-0 stable map in the Ginzburg-Landau setting.  The symplectic
// quotient is a point, so spheres carry no map data: a T1 vertex is fully
// described by its ZeroConfig (the vortex class), TInf and T0 vertices are
// ghost spheres, and all the geometry sits in the nodal and marked points.
struct BubbleTree {
    std::map<int, VertexType> vertices;
    std::vector<std::pair<int, int>> edges; // unordered pairs, stored once
    std::map<int, ZeroConfig> vortex_data;  // for T1 vertices
    std::map<std::pair<int, int>, SpherePoint> nodal; // keyed by ordered (a,b)
    std::vector<std::pair<int, SpherePoint>> marked;  // index 0 is z_0

    int root() const { return marked.empty() ? -1 : marked.front().first; }
    bool adjacent(int a, int b) const;
    std::vector<int> neighbors(int a) const;
    // special points on a vertex: nodal points plus marked points
    std::vector<SpherePoint> special_points(int a) const;
    // energy of a T1 vertex is pi * degree of its config
    double vertex_energy(int a) const;
    int total_degree() const;

    std::string to_json() const;
    static BubbleTree from_json(const std::string& text);
};

struct Violation {
    std::string condition; // "Structure", "Combinatorics", "SpecialPoints",
                           // "Stability", "MarkedInC"
    int vertex = -1;
    std::string detail;
};

// Empty list iff the tree is a valid stable map.
std::vector<Violation> validate(const BubbleTree& tree);

// Element of the reparametrization group G_T: a type-preserving tree
// automorphism together with one Moebius map per vertex, restricted to
// translations on T1.
struct ReparamElement {
    std::map<int, int> vertex_map;  // the automorphism f
    std::map<int, Mobius> maps;     // phi_alpha; missing entries = identity

    Mobius map_at(int vertex) const;
    int image(int vertex) const;
    int preimage(int vertex) const;
    bool is_identity(double tol = 1e-12) const;
};

// Pullback action:
//   data'(a)   = phi_{f(a)}^* data(f(a))       (configs translated back)
//   z'_{ab}    = phi_{f(a)}^{-1} (z_{f(a) f(b)})
//   marked_i'  = (f^{-1}(a_i), phi_{a_i}^{-1}(z_i))
// so that act(compose(g,h), t) == act(h, act(g, t)).
BubbleTree act(const ReparamElement& g, const BubbleTree& tree);

// group product g*h in G_T (semi-direct product of Aut(T) with the
// per-vertex groups)
ReparamElement compose(const ReparamElement& g, const ReparamElement& h);

// No two distinct positive-energy T1 vertices carry translation-equivalent
// configurations.
bool is_simple(const BubbleTree& tree);

bool tree_equal(const BubbleTree& a, const BubbleTree& b, double tol = 1e-9);

} // namespace vortexlab

#endif
