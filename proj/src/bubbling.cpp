#include "vortexlab/bubbling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "vortexlab/errors.hpp"
#include "vortexlab/sym.hpp"

namespace vortexlab {

namespace {

constexpr double kGap = 0.25;       // exponent-level gap threshold
constexpr double kLevelEps = 0.125; // half gap: "bounded" cutoff
constexpr double kCTol = 1e-3;      // finite-scale convergence tolerance
const double kNegInf = -std::numeric_limits<double>::infinity();

struct Fit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

Fit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const int m = static_cast<int>(x.size());
    double mx = 0, my = 0;
    for (int i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Fit f;
    f.slope = sxy / sxx;
    if (m > 2) {
        double sse = 0;
        const double b = my - f.slope * mx;
        for (int i = 0; i < m; ++i) {
            const double r = y[i] - (f.slope * x[i] + b);
            sse += r * r;
        }
        f.stderr_ = std::sqrt(sse / (m - 2) / sxx);
    }
    return f;
}

// slope of log(values) against log(scales); values clamped away from zero
Fit growth_exponent(const std::vector<double>& scales,
                    const std::vector<double>& values) {
    const int m = static_cast<int>(scales.size());
    std::vector<double> x(m), y(m);
    for (int i = 0; i < m; ++i) {
        x[i] = std::log(scales[i]);
        y[i] = std::log(std::max(values[i], 1e-300));
    }
    return fit_line(x, y);
}

bool last_three_converged(const std::vector<SpherePoint>& seq, double tol) {
    const size_t m = seq.size();
    return chordal(seq[m - 1], seq[m - 2]) <= tol &&
           chordal(seq[m - 1], seq[m - 3]) <= tol &&
           chordal(seq[m - 2], seq[m - 3]) <= tol;
}

// --------------------------------------------------------------------------
// exponent matrix and cluster hierarchy

struct PairData {
    double expo = 0.0;   // -inf for coincident tracks
    double err = 0.0;
    bool coincident = false;
};

struct ClusterNode {
    std::vector<int> tracks;
    std::vector<std::unique_ptr<ClusterNode>> children;
    bool leaf = true;
    double level = 0.0;             // separation exponent (internal nodes)
    std::vector<Complex> center;    // per-scale mean of member tracks
    std::vector<Complex> scl;       // per-scale zoom factor (internal nodes)
    int vid = -1;
};

class Extractor {
public:
    explicit Extractor(const ConfigurationFamily& fam) : f(fam), m(fam.num_scales()) {}

    Extraction run() {
        compute_pair_data();
        auto root = build_cluster(all_tracks());
        compute_centers(*root);
        int counter = 0;
        materialize(*root, counter);
        ex.tree.marked.assign(1 + f.marked_tracks.size(),
                              {root->vid, SpherePoint::infinity()});
        root_vid = root->vid;
        next_id = counter;
        for (size_t k = 0; k < f.marked_tracks.size(); ++k)
            attach_marked(static_cast<int>(k));
        finish_report();
        const auto violations = validate(ex.tree);
        if (!violations.empty())
            throw UnstableLimit("extracted tree fails validation: " +
                                violations.front().condition + " at vertex " +
                                std::to_string(violations.front().vertex) + " (" +
                                violations.front().detail + ")");
        return std::move(ex);
    }

private:
    const ConfigurationFamily& f;
    int m;
    std::vector<PairData> pairs; // flattened upper triangle
    Extraction ex;
    std::map<int, std::vector<Complex>> offsets; // phi offset per vertex/scale
    struct Attached {
        int vertex;
        int track; // index into marked_tracks
        size_t slot;
    };
    std::vector<Attached> attached;
    int root_vid = 0;
    int next_id = 0;

    std::vector<int> all_tracks() const {
        std::vector<int> t(f.degree());
        std::iota(t.begin(), t.end(), 0);
        return t;
    }

    PairData& pair(int j, int k) {
        if (j > k) std::swap(j, k);
        return pairs[j * f.degree() + k];
    }

    void compute_pair_data() {
        const int d = f.degree();
        pairs.assign(d * d, {});
        ex.report.exponents = Eigen::MatrixXd::Zero(d, d);
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                std::vector<double> dist(m);
                double top = 0, mag = 0;
                for (int i = 0; i < m; ++i) {
                    dist[i] = std::abs(f.tracks[j][i] - f.tracks[k][i]);
                    top = std::max(top, dist[i]);
                    mag = std::max({mag, std::abs(f.tracks[j][i]),
                                    std::abs(f.tracks[k][i])});
                }
                PairData p;
                if (top <= 1e-12 * (1.0 + mag)) {
                    p.coincident = true;
                    p.expo = kNegInf;
                } else {
                    const Fit fit = growth_exponent(f.scales, dist);
                    p.expo = fit.slope;
                    p.err = fit.stderr_;
                }
                pair(j, k) = p;
                ex.report.exponents(j, k) = ex.report.exponents(k, j) = p.expo;
            }
    }

    std::unique_ptr<ClusterNode> build_cluster(const std::vector<int>& tracks) {
        auto node = std::make_unique<ClusterNode>();
        node->tracks = tracks;
        double emax = kNegInf;
        for (size_t a = 0; a < tracks.size(); ++a)
            for (size_t b = a + 1; b < tracks.size(); ++b)
                emax = std::max(emax, pair(tracks[a], tracks[b]).expo);
        if (!(emax > kLevelEps)) return node; // bounded: a vortex vertex

        node->leaf = false;
        node->level = emax;
        const double cut = emax - kGap;

        // ambiguity guard: separating pairs must be clearly above the rest
        double low_max = kNegInf, low_err = 0, top_min = emax, top_err = 0;
        for (size_t a = 0; a < tracks.size(); ++a)
            for (size_t b = a + 1; b < tracks.size(); ++b) {
                const PairData& p = pair(tracks[a], tracks[b]);
                if (p.coincident) continue;
                if (p.expo >= cut) {
                    if (p.expo <= top_min) {
                        top_min = p.expo;
                        top_err = p.err;
                    }
                } else if (p.expo >= low_max) {
                    low_max = p.expo;
                    low_err = p.err;
                }
            }
        if (low_max > kNegInf &&
            top_min - low_max < 2.0 * std::max(top_err, low_err))
            throw AmbiguousExponents(
                "separation exponents are within two regression standard "
                "errors of each other; more scales are needed");

        // single linkage: tracks joined by sub-level exponents stay together
        std::map<int, int> comp;
        for (int t : tracks) comp[t] = t;
        std::function<int(int)> find = [&](int x) {
            return comp[x] == x ? x : comp[x] = find(comp[x]);
        };
        for (size_t a = 0; a < tracks.size(); ++a)
            for (size_t b = a + 1; b < tracks.size(); ++b) {
                const PairData& p = pair(tracks[a], tracks[b]);
                if (p.coincident || p.expo < cut)
                    comp[find(tracks[a])] = find(tracks[b]);
            }
        std::map<int, std::vector<int>> groups;
        for (int t : tracks) groups[find(t)].push_back(t);
        if (groups.size() < 2)
            throw AmbiguousExponents(
                "inconsistent exponent structure: top-level pairs do not "
                "separate the clusters");
        std::vector<std::vector<int>> ordered;
        for (auto& [rep, g] : groups) ordered.push_back(g);
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) {
                      return *std::min_element(a.begin(), a.end()) <
                             *std::min_element(b.begin(), b.end());
                  });
        for (auto& g : ordered) node->children.push_back(build_cluster(g));
        return node;
    }

    void compute_centers(ClusterNode& node) {
        node.center.assign(m, Complex(0, 0));
        for (int i = 0; i < m; ++i) {
            for (int t : node.tracks) node.center[i] += f.tracks[t][i];
            node.center[i] /= double(node.tracks.size());
        }
        for (auto& ch : node.children) compute_centers(*ch);
        if (!node.leaf) {
            node.scl.assign(m, Complex(0, 0));
            for (int i = 0; i < m; ++i) {
                Complex s;
                if (node.children.size() >= 2)
                    s = node.children[1]->center[i] - node.children[0]->center[i];
                if (std::abs(s) < 1e-14)
                    s = std::pow(f.scales[i], node.level);
                node.scl[i] = s;
            }
            if (node.children.size() < 2)
                ex.report.notes.push_back(
                    "zoom level with a single cluster: normalization chosen "
                    "modulo the reparametrization group");
        }
    }

    void materialize(ClusterNode& node, int& counter) {
        node.vid = counter++;
        if (node.leaf) {
            ex.tree.vertices[node.vid] = VertexType::T1;
            // a cluster that never moves keeps its raw coordinates
            double dev = 0;
            for (int i = 0; i < m; ++i)
                dev = std::max(dev, std::abs(node.center[i] - node.center[m - 1]));
            const bool stationary = dev <= 1e-9;
            std::vector<Mobius> maps(m);
            std::vector<Complex> off(m, Complex(0, 0));
            for (int i = 0; i < m; ++i) {
                off[i] = stationary ? Complex(0, 0) : node.center[i];
                maps[i] = Mobius::translation(off[i]);
            }
            ex.reparams.per_vertex[node.vid] = std::move(maps);
            offsets[node.vid] = off;

            // limit configuration: merge tracks that collide in the limit
            std::map<int, int> comp;
            for (int t : node.tracks) comp[t] = t;
            std::function<int(int)> find = [&](int x) {
                return comp[x] == x ? x : comp[x] = find(comp[x]);
            };
            for (size_t a = 0; a < node.tracks.size(); ++a)
                for (size_t b = a + 1; b < node.tracks.size(); ++b) {
                    const PairData& p = pair(node.tracks[a], node.tracks[b]);
                    if (p.coincident || p.expo < -kLevelEps)
                        comp[find(node.tracks[a])] = find(node.tracks[b]);
                }
            std::map<int, std::vector<int>> groups;
            for (int t : node.tracks) groups[find(t)].push_back(t);
            ZeroConfig cfg;
            for (auto& [rep, g] : groups) {
                Complex pos(0, 0);
                for (int t : g) pos += f.tracks[t][m - 1] - off[m - 1];
                pos /= double(g.size());
                cfg.zeros.push_back({pos, static_cast<int>(g.size())});
            }
            std::sort(cfg.zeros.begin(), cfg.zeros.end(),
                      [](const Zero& a, const Zero& b) {
                          return a.position.real() != b.position.real()
                                     ? a.position.real() < b.position.real()
                                     : a.position.imag() < b.position.imag();
                      });
            ex.tree.vortex_data[node.vid] = std::move(cfg);
        } else {
            ex.tree.vertices[node.vid] = VertexType::TInf;
            std::vector<Mobius> maps(m);
            std::vector<Complex> off(m);
            for (int i = 0; i < m; ++i) {
                off[i] = node.children[0]->center[i];
                maps[i] = Mobius::affine(node.scl[i], off[i]);
            }
            ex.reparams.per_vertex[node.vid] = std::move(maps);
            offsets[node.vid] = off;
            for (auto& ch : node.children) {
                materialize(*ch, counter);
                ex.tree.edges.push_back({node.vid, ch->vid});
                const Complex z =
                    (ch->center[m - 1] - node.children[0]->center[m - 1]) /
                    node.scl[m - 1];
                ex.tree.nodal[{node.vid, ch->vid}] = SpherePoint::finite(z);
                ex.tree.nodal[{ch->vid, node.vid}] = SpherePoint::infinity();
            }
        }
    }

    // ------------------------------------------------------------------
    // marked points

    std::vector<SpherePoint> pullback_sequence(int vid,
                                               const std::vector<Complex>& w) {
        const auto& maps = ex.reparams.per_vertex.at(vid);
        std::vector<SpherePoint> out(m);
        for (int i = 0; i < m; ++i)
            out[i] = maps[i].inverse()(SpherePoint::finite(w[i]));
        return out;
    }

    bool escapes(const std::vector<SpherePoint>& pulled) const {
        std::vector<double> mags(m);
        for (int i = 0; i < m; ++i)
            mags[i] = pulled[i].is_inf ? 1e6 : std::abs(pulled[i].z);
        if (mags[m - 1] < 5.0) return false;
        return growth_exponent(f.scales, mags).slope > kLevelEps;
    }

    std::vector<int> tree_children(int vid, int parent) const {
        std::vector<int> out;
        for (int b : ex.tree.neighbors(vid))
            if (b != parent) out.push_back(b);
        return out;
    }

    int tree_parent(int vid) const {
        // walk from the root
        std::map<int, int> par;
        par[root_vid] = -1;
        std::vector<int> stack{root_vid};
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int b : ex.tree.neighbors(a))
                if (!par.count(b)) {
                    par[b] = a;
                    stack.push_back(b);
                }
        }
        return par.at(vid);
    }

    // insert a Tinf ghost carrying marked point `track` (at position 1)
    // between `cur` and its parent; becomes the new root when cur is the root
    void insert_ghost_above(int cur, int track, size_t slot) {
        const int g = next_id++;
        ex.tree.vertices[g] = VertexType::TInf;
        const std::vector<Complex>& off_cur = offsets.at(cur);
        std::vector<Mobius> maps(m);
        std::vector<Complex> off(m);
        for (int i = 0; i < m; ++i) {
            off[i] = off_cur[i];
            Complex s = f.marked_tracks[track][i] - off_cur[i];
            if (std::abs(s) < 1e-14) s = 1.0;
            maps[i] = Mobius::affine(s, off[i]);
        }
        ex.reparams.per_vertex[g] = std::move(maps);
        offsets[g] = off;

        const int parent = tree_parent(cur);
        if (parent < 0) {
            // new root: z_0 moves onto the ghost
            ex.tree.edges.push_back({g, cur});
            ex.tree.nodal[{g, cur}] = SpherePoint::finite(0.0);
            ex.tree.nodal[{cur, g}] = SpherePoint::infinity();
            ex.tree.marked[0] = {g, SpherePoint::infinity()};
            root_vid = g;
        } else {
            auto edge_it = std::find_if(
                ex.tree.edges.begin(), ex.tree.edges.end(), [&](auto e) {
                    return (e.first == parent && e.second == cur) ||
                           (e.first == cur && e.second == parent);
                });
            ex.tree.edges.erase(edge_it);
            ex.tree.edges.push_back({parent, g});
            ex.tree.edges.push_back({g, cur});
            ex.tree.nodal[{parent, g}] = ex.tree.nodal.at({parent, cur});
            ex.tree.nodal[{g, parent}] = SpherePoint::infinity();
            ex.tree.nodal[{g, cur}] = SpherePoint::finite(0.0);
            ex.tree.nodal[{cur, g}] = ex.tree.nodal.at({cur, parent});
            ex.tree.nodal.erase({parent, cur});
            ex.tree.nodal.erase({cur, parent});
        }
        ex.tree.marked[slot] = {g, SpherePoint::finite(1.0)};
        attached.push_back({g, track, slot});
        ex.report.notes.push_back("marked track " + std::to_string(track) +
                                  ": ghost bubble inserted at an intermediate "
                                  "separation rate");
    }

    // ghost child of `cur` carrying two colliding marked points; type T0
    // under a vortex vertex, Tinf otherwise
    void insert_collision_ghost(int cur, int track_a, size_t slot_a,
                                int track_b, size_t slot_b, SpherePoint p) {
        const int g = next_id++;
        ex.tree.vertices[g] = ex.tree.vertices.at(cur) == VertexType::T1
                                  ? VertexType::T0
                                  : VertexType::TInf;
        std::vector<Mobius> maps(m);
        std::vector<Complex> off(m);
        for (int i = 0; i < m; ++i) {
            const Complex wa = f.marked_tracks[track_a][i];
            const Complex wb = f.marked_tracks[track_b][i];
            Complex s = wb - wa;
            if (std::abs(s) < 1e-14) s = 1.0;
            off[i] = wa;
            maps[i] = Mobius::affine(s, off[i]);
        }
        ex.reparams.per_vertex[g] = std::move(maps);
        offsets[g] = off;
        ex.tree.edges.push_back({cur, g});
        ex.tree.nodal[{cur, g}] = p;
        ex.tree.nodal[{g, cur}] = SpherePoint::infinity();
        ex.tree.marked[slot_a] = {g, SpherePoint::finite(0.0)};
        ex.tree.marked[slot_b] = {g, SpherePoint::finite(1.0)};
        for (auto& a : attached)
            if (a.slot == slot_a) a.vertex = g;
        attached.push_back({g, track_b, slot_b});
        ex.report.notes.push_back(
            "colliding marked points: ghost vertex inserted");
    }

    void attach_marked(int track) {
        const size_t slot = track + 1;
        const std::vector<Complex>& w = f.marked_tracks[track];
        int cur = root_vid;
        for (int depth = 0; depth < 64; ++depth) {
            const auto pulled = pullback_sequence(cur, w);
            if (escapes(pulled)) {
                insert_ghost_above(cur, track, slot);
                return;
            }
            if (!last_three_converged(pulled, kCTol))
                throw UnstableLimit("marked track " + std::to_string(track) +
                                    " does not stabilize under the extracted "
                                    "reparametrizations");
            const SpherePoint p = pulled[m - 1];

            // follow a child whose nodal position the track approaches
            const int parent = tree_parent(cur);
            int descend = -1;
            double min_gap = 4.0;
            const auto specials = ex.tree.special_points(cur);
            for (size_t a = 0; a < specials.size(); ++a)
                for (size_t b = a + 1; b < specials.size(); ++b)
                    min_gap = std::min(min_gap, chordal(specials[a], specials[b]));
            for (int ch : tree_children(cur, parent)) {
                const SpherePoint zc = ex.tree.nodal.at({cur, ch});
                if (chordal(p, zc) < 0.25 * min_gap) {
                    descend = ch;
                    break;
                }
            }
            if (descend >= 0) {
                cur = descend;
                continue;
            }

            // collision with a marked point already attached here?
            for (const Attached& other : attached) {
                if (other.vertex != cur) continue;
                const std::vector<Complex>& w2 = f.marked_tracks[other.track];
                std::vector<double> sep(m);
                double top = 0, mag = 0;
                for (int i = 0; i < m; ++i) {
                    sep[i] = std::abs(w[i] - w2[i]);
                    top = std::max(top, sep[i]);
                    mag = std::max({mag, std::abs(w[i]), std::abs(w2[i])});
                }
                if (top <= 1e-12 * (1.0 + mag))
                    throw UnstableLimit("coincident marked tracks");
                if (growth_exponent(f.scales, sep).slope < -kLevelEps) {
                    insert_collision_ghost(cur, other.track, other.slot, track,
                                           slot, p);
                    return;
                }
            }

            ex.tree.marked[slot] = {cur, p};
            attached.push_back({cur, track, slot});
            return;
        }
        throw UnstableLimit("marked track descent did not terminate");
    }

    void finish_report() {
        std::vector<double> lv;
        for (const PairData& p : pairs)
            if (!p.coincident && std::abs(p.expo) > kLevelEps)
                lv.push_back(p.expo);
        std::sort(lv.begin(), lv.end(), std::greater<double>());
        for (double e : lv)
            if (ex.report.levels.empty() || ex.report.levels.back() - e > kGap)
                ex.report.levels.push_back(e);
    }
};

} // namespace

// --------------------------------------------------------------------------

void ConfigurationFamily::validate() const {
    if (num_scales() < 4)
        throw AmbiguousExponents("at least 4 scales are required");
    for (int i = 1; i < num_scales(); ++i)
        if (!(scales[i] > scales[i - 1]))
            throw InvalidInput("scales must be strictly increasing");
    if (scales.front() <= 0) throw InvalidInput("scales must be positive");
    if (tracks.empty()) throw InvalidInput("extraction needs at least one track");
    for (const auto& t : tracks)
        if (static_cast<int>(t.size()) != num_scales())
            throw InvalidInput("every track needs one position per scale");
    for (const auto& t : marked_tracks)
        if (static_cast<int>(t.size()) != num_scales())
            throw InvalidInput("every marked track needs one position per scale");
}

Extraction extract_bubble_tree(const ConfigurationFamily& family) {
    family.validate();
    return Extractor(family).run();
}

const std::vector<Mobius>& MobiusFamily::at(int vertex) const {
    auto it = per_vertex.find(vertex);
    if (it == per_vertex.end())
        throw InvalidInput("no reparametrizations for vertex " +
                           std::to_string(vertex));
    return it->second;
}

// --------------------------------------------------------------------------
// convergence checking

namespace {

bool sequence_passes(const std::vector<double>& r,
                     const std::vector<double>& scales, double tol,
                     std::string* note) {
    const size_t m = r.size();
    const auto leq = [](double a, double b) {
        return a <= b * (1.0 + 1e-9) + 1e-14;
    };
    if (!(leq(r[m - 2], r[m - 3]) && leq(r[m - 1], r[m - 2]))) {
        *note = "residuals are not decreasing over the last three scales";
        return false;
    }
    if (r[m - 1] <= tol) {
        *note = "final residual below tolerance";
        return true;
    }
    // accept clear power-law decay toward zero
    const size_t half = m / 2;
    std::vector<double> xs, ys;
    for (size_t i = half; i < m; ++i) {
        if (r[i] <= 0) continue;
        xs.push_back(std::log(scales[i]));
        ys.push_back(std::log(r[i]));
    }
    if (xs.size() >= 3) {
        const Fit f = fit_line(xs, ys);
        if (f.slope <= -0.5) {
            std::ostringstream os;
            os << "residual decays like nu^" << f.slope;
            *note = os.str();
            return true;
        }
    }
    *note = "final residual above tolerance without power-law decay";
    return false;
}

std::vector<SpherePoint> probe_points() {
    return {SpherePoint::finite({0, 0}),  SpherePoint::finite({1, 0}),
            SpherePoint::finite({-1, 0}), SpherePoint::finite({0, 1}),
            SpherePoint::finite({0, -1}), SpherePoint::finite({2, 0}),
            SpherePoint::infinity()};
}

} // namespace

ConvergenceReport check_convergence(const ConfigurationFamily& family,
                                    const BubbleTree& tree,
                                    const MobiusFamily& reparams,
                                    double tolerance) {
    family.validate();
    const int m = family.num_scales();
    const int d = family.degree();
    ConvergenceReport rep;

    auto add_condition = [&](const std::string& name, std::vector<double> r) {
        ConditionReport c;
        c.name = name;
        c.residuals = std::move(r);
        c.pass = sequence_passes(c.residuals, family.scales, tolerance, &c.note);
        rep.conditions.push_back(std::move(c));
    };

    // energy conservation via the degree identity E = pi * deg
    const double ddiff = std::abs(tree.total_degree() - d);
    add_condition("degree conservation (total)", std::vector<double>(m, ddiff));

    // structural: T1 reparametrizations are translations
    double not_translation = 0;
    for (const auto& [v, t] : tree.vertices) {
        if (t != VertexType::T1) continue;
        for (const Mobius& mb : reparams.at(v))
            if (!mb.is_translation(1e-9)) not_translation += 1;
    }
    add_condition("T1 reparametrizations are translations",
                  std::vector<double>(m, not_translation));

    // Tinf rescalings diverge: residual 1/|derivative| for affine maps
    for (const auto& [v, t] : tree.vertices) {
        if (t != VertexType::TInf) continue;
        const auto& maps = reparams.at(v);
        std::vector<double> r(m, 0.0);
        bool affine = true;
        for (int i = 0; i < m; ++i) {
            const auto& mm = maps[i].m;
            if (std::abs(mm(1, 0)) > 1e-12) {
                affine = false;
                break;
            }
            const Complex scale = mm(0, 0) / mm(1, 1);
            r[i] = 1.0 / std::max(std::abs(scale), 1e-300);
        }
        if (!affine) {
            ConditionReport c;
            c.name = "Tinf rescaling diverges (vertex " + std::to_string(v) + ")";
            c.pass = true;
            c.note = "non-affine reparametrization; divergence not checked";
            c.residuals.assign(m, 0.0);
            rep.conditions.push_back(std::move(c));
            continue;
        }
        add_condition("Tinf rescaling diverges (vertex " + std::to_string(v) + ")",
                      std::move(r));
    }

    // per-vertex degree count and symmetric-product convergence
    for (const auto& [v, cfg] : tree.vortex_data) {
        const auto& maps = reparams.at(v);
        const double bound = 2.0 * (1.0 + cfg.max_abs());
        std::vector<double> count_res(m), sym_res(m);
        const SymPoint target = iota(cfg, d);
        for (int i = 0; i < m; ++i) {
            SymPoint pulled;
            int count = 0;
            const Mobius inv = maps[i].inverse();
            for (int j = 0; j < d; ++j) {
                const SpherePoint q =
                    inv(SpherePoint::finite(family.tracks[j][i]));
                pulled.points.push_back(q);
                if (!q.is_inf && std::abs(q.z) <= bound) ++count;
            }
            count_res[i] = std::abs(count - cfg.degree());
            sym_res[i] = sym_distance(pulled, target);
        }
        add_condition("degree conservation at vertex " + std::to_string(v),
                      std::move(count_res));
        add_condition(
            "symmetric-product convergence at vertex " + std::to_string(v),
            std::move(sym_res));
    }

    // nodal convergence along each oriented edge
    for (const auto& [key, z_ab] : tree.nodal) {
        const auto [a, b] = key;
        const SpherePoint z_ba = tree.nodal.at({b, a});
        const auto& ma = reparams.at(a);
        const auto& mb = reparams.at(b);
        std::vector<SpherePoint> probes;
        for (const SpherePoint& q : probe_points())
            if (chordal(q, z_ba) >= 0.6) probes.push_back(q);
        std::vector<double> r(m);
        for (int i = 0; i < m; ++i) {
            const Mobius comp = ma[i].inverse().compose(mb[i]);
            double worst = 0;
            for (const SpherePoint& q : probes)
                worst = std::max(worst, chordal(comp(q), z_ab));
            r[i] = worst;
        }
        add_condition("nodal convergence " + std::to_string(a) + "->" +
                          std::to_string(b),
                      std::move(r));
        NodalEstimate est;
        est.from = a;
        est.to = b;
        const Mobius comp = ma[m - 1].inverse().compose(mb[m - 1]);
        est.value = comp(probes.front());
        rep.induced_nodal.push_back(est);
    }

    // marked points
    if (tree.marked.size() != family.marked_tracks.size() + 1) {
        ConditionReport c;
        c.name = "marked point count";
        c.pass = false;
        c.note = "tree and family disagree on the number of marked points";
        c.residuals.assign(m, 1.0);
        rep.conditions.push_back(std::move(c));
    } else {
        for (size_t i = 0; i < tree.marked.size(); ++i) {
            const auto& [v, z_i] = tree.marked[i];
            const auto& maps = reparams.at(v);
            std::vector<double> r(m);
            for (int s = 0; s < m; ++s) {
                const SpherePoint ws =
                    i == 0 ? SpherePoint::infinity()
                           : SpherePoint::finite(family.marked_tracks[i - 1][s]);
                r[s] = chordal(maps[s].inverse()(ws), z_i);
            }
            add_condition("marked point " + std::to_string(i) + " convergence",
                          std::move(r));
        }
    }

    rep.pass = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                           [](const ConditionReport& c) { return c.pass; });
    return rep;
}

// --------------------------------------------------------------------------
// serialization

namespace {

nlohmann::ordered_json complex_json(Complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const nlohmann::json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

} // namespace

std::string ConfigurationFamily::to_json() const {
    nlohmann::ordered_json j;
    j["scales"] = scales;
    j["tracks"] = nlohmann::ordered_json::array();
    for (const auto& t : tracks) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Complex z : t) row.push_back(complex_json(z));
        j["tracks"].push_back(row);
    }
    j["marked_tracks"] = nlohmann::ordered_json::array();
    for (const auto& t : marked_tracks) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Complex z : t) row.push_back(complex_json(z));
        j["marked_tracks"].push_back(row);
    }
    return j.dump(2);
}

ConfigurationFamily ConfigurationFamily::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad family JSON: ") + e.what());
    }
    ConfigurationFamily f;
    for (const auto& s : j.at("scales")) f.scales.push_back(s.get<double>());
    for (const auto& row : j.at("tracks")) {
        std::vector<Complex> t;
        for (const auto& e : row) t.push_back(complex_from_json(e));
        f.tracks.push_back(std::move(t));
    }
    if (j.contains("marked_tracks"))
        for (const auto& row : j["marked_tracks"]) {
            std::vector<Complex> t;
            for (const auto& e : row) t.push_back(complex_from_json(e));
            f.marked_tracks.push_back(std::move(t));
        }
    return f;
}

std::string MobiusFamily::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& [v, maps] : per_vertex) {
        nlohmann::ordered_json entry;
        entry["vertex"] = v;
        entry["maps"] = nlohmann::ordered_json::array();
        for (const Mobius& mb : maps)
            entry["maps"].push_back(
                {{"m", {complex_json(mb.m(0, 0)), complex_json(mb.m(0, 1)),
                        complex_json(mb.m(1, 0)), complex_json(mb.m(1, 1))}}});
        j["vertices"].push_back(entry);
    }
    return j.dump(2);
}

MobiusFamily MobiusFamily::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad reparametrization JSON: ") + e.what());
    }
    MobiusFamily f;
    for (const auto& entry : j.at("vertices")) {
        std::vector<Mobius> maps;
        for (const auto& me : entry.at("maps")) {
            Eigen::Matrix2cd raw;
            raw << complex_from_json(me.at("m").at(0)),
                complex_from_json(me.at("m").at(1)),
                complex_from_json(me.at("m").at(2)),
                complex_from_json(me.at("m").at(3));
            maps.push_back(Mobius::from_matrix(raw));
        }
        f.per_vertex[entry.at("vertex").get<int>()] = std::move(maps);
    }
    return f;
}

std::string ExtractionReport::to_json() const {
    nlohmann::ordered_json j;
    j["levels"] = levels;
    j["notes"] = notes;
    j["exponents"] = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < exponents.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < exponents.cols(); ++c)
            row.push_back(std::isfinite(exponents(r, c)) ? exponents(r, c)
                                                         : -1e300);
        j["exponents"].push_back(row);
    }
    return j.dump(2);
}

std::string ConvergenceReport::to_json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass;
    j["conditions"] = nlohmann::ordered_json::array();
    for (const auto& c : conditions)
        j["conditions"].push_back({{"name", c.name},
                                   {"pass", c.pass},
                                   {"note", c.note},
                                   {"residuals", c.residuals}});
    j["induced_nodal"] = nlohmann::ordered_json::array();
    for (const auto& e : induced_nodal) {
        nlohmann::ordered_json entry;
        entry["from"] = e.from;
        entry["to"] = e.to;
        entry["z"] = e.value.is_inf
                         ? nlohmann::ordered_json("inf")
                         : complex_json(e.value.z);
        j["induced_nodal"].push_back(entry);
    }
    return j.dump(2);
}

std::string ConvergenceReport::to_text() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : conditions) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.residuals.empty()) os << "  (final residual " << c.residuals.back() << ")";
        if (!c.note.empty()) os << "  -- " << c.note;
        os << "\n";
    }
    for (const auto& e : induced_nodal) {
        os << "  induced nodal " << e.from << "->" << e.to << ": ";
        if (e.value.is_inf)
            os << "inf";
        else
            os << e.value.z.real() << (e.value.z.imag() < 0 ? "" : "+")
               << e.value.z.imag() << "i";
        os << "\n";
    }
    return os.str();
}

} // namespace vortexlab
