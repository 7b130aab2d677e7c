#ifndef VORTEXLAB_BUBBLING_HPP
#define VORTEXLAB_BUBBLING_HPP

#include <map>
#include <string>
#include <vector>

#include "vortexlab/sphere.hpp"
#include "vortexlab/stable_map.hpp"

namespace vortexlab {

// Scale-indexed zero configurations: track j at scale i is tracks[j][i].
// Multiplicity is folded into repeated tracks.
struct ConfigurationFamily {
    std::vector<double> scales;                      // nu_1 < ... < nu_m
    std::vector<std::vector<Complex>> tracks;        // d tracks of length m
    std::vector<std::vector<Complex>> marked_tracks; // k tracks of length m

    int num_scales() const { return static_cast<int>(scales.size()); }
    int degree() const { return static_cast<int>(tracks.size()); }

    void validate() const;

    std::string to_json() const;
    static ConfigurationFamily from_json(const std::string& text);
};

// Per-vertex reparametrizations indexed by scale (phi_alpha^nu); T1 entries
// are translations.
struct MobiusFamily {
    std::map<int, std::vector<Mobius>> per_vertex;

    const std::vector<Mobius>& at(int vertex) const;

    std::string to_json() const;
    static MobiusFamily from_json(const std::string& text);
};

struct ExtractionReport {
    std::vector<std::string> notes;
    // pairwise growth exponents between zero tracks (slope of log distance
    // against log nu); -inf marks coincident tracks
    Eigen::MatrixXd exponents;
    std::vector<double> levels; // distinct separation levels, descending

    std::string to_json() const;
};

struct Extraction {
    BubbleTree tree;
    MobiusFamily reparams;
    ExtractionReport report;
};

// Limit bubble tree of a degenerating family: T1 vertices are clusters of
// tracks with mutually bounded distances, Tinf vertices are separation
// levels.  Normalized so that on each Tinf vertex the lowest-index child
// sits at nodal position 0 and the next at 1.
Extraction extract_bubble_tree(const ConfigurationFamily& family);

struct ConditionReport {
    std::string name;
    std::vector<double> residuals; // one entry per scale
    bool pass = false;
    std::string note;
};

struct NodalEstimate {
    int from = 0, to = 0;
    SpherePoint value; // induced nodal point at the largest scale
};

struct ConvergenceReport {
    std::vector<ConditionReport> conditions;
    std::vector<NodalEstimate> induced_nodal;
    bool pass = false;

    std::string to_json() const;
    std::string to_text() const;
};

// Finite-scale surrogate of convergence to a stable map.  A condition
// passes when its residuals are non-increasing over the last three scales
// and either the final residual is below `tolerance` or the sequence decays
// at a clear power-law rate (fitted slope <= -1/2).
ConvergenceReport check_convergence(const ConfigurationFamily& family,
                                    const BubbleTree& tree,
                                    const MobiusFamily& reparams,
                                    double tolerance = 1e-3);

} // namespace vortexlab

#endif
