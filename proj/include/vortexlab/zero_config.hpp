#ifndef VORTEXLAB_ZERO_CONFIG_HPP
#define VORTEXLAB_ZERO_CONFIG_HPP

#include <complex>
#include <string>
#include <vector>

namespace vortexlab {

using Complex = std::complex<double>;

struct Zero {
    Complex position;
    int multiplicity = 1;
};

// A point of Sym^d(C): finitely many zeros with multiplicities.  This is
// the canonical coordinate on the moduli space of degree-d vortex classes.
struct ZeroConfig {
    std::vector<Zero> zeros;

    int degree() const;
    bool empty() const { return zeros.empty(); }

    // throws InvalidInput on coincident positions or multiplicity < 1;
    // coincident prescribed zeros must be merged by the caller
    void validate() const;

    // all positions with multiplicity, sorted lexicographically (re, im)
    std::vector<Complex> flatten() const;

    Complex centroid() const; // multiplicity-weighted mean; degree >= 1

    double min_pairwise_separation() const; // +inf for fewer than 2 zeros
    double max_abs() const;                 // 0 for the empty config

    ZeroConfig translated(Complex c) const;
    ZeroConfig rotated(double angle) const; // z -> e^{i angle} z

    std::string to_json() const;
    static ZeroConfig from_json(const std::string& text);
};

// Exact multiset comparison up to `tol` on positions.
bool same_config(const ZeroConfig& a, const ZeroConfig& b, double tol = 1e-9);

// True iff b equals a translated by some vector (centroid-normalized
// multiset comparison with tolerance).
bool translation_equivalent(const ZeroConfig& a, const ZeroConfig& b,
                            double tol = 1e-9);

} // namespace vortexlab

#endif
