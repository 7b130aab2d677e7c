#ifndef VORTEXLAB_SPHERE_HPP
#define VORTEXLAB_SPHERE_HPP

#include <complex>

#include <Eigen/Core>

namespace vortexlab {

using Complex = std::complex<double>;

// A point of S^2 = C u {inf}.  The point at infinity is a distinguished
// symbol, never a large float.
struct SpherePoint {
    Complex z{0.0, 0.0};
    bool is_inf = false;

    static SpherePoint infinity() { return {Complex{}, true}; }
    static SpherePoint finite(Complex w) { return {w, false}; }
};

// Chordal distance on S^2 under stereographic projection:
//   chi(z,w)   = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2))
//   chi(z,inf) = 2 / sqrt(1+|z|^2)
double chordal(const SpherePoint& a, const SpherePoint& b);

bool sphere_close(const SpherePoint& a, const SpherePoint& b, double tol = 1e-9);

// total order used for deterministic tie-breaking: finite points lex by
// (re, im), infinity last
bool sphere_less(const SpherePoint& a, const SpherePoint& b);

// Moebius transformation as a 2x2 complex matrix acting by
// z -> (a z + b)/(c z + d), stored det-normalized with the first nonzero
// entry having nonnegative real part (deterministic representative).
struct Mobius {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();

    static Mobius identity() { return {}; }
    static Mobius translation(Complex c);
    static Mobius rotation(double angle);        // z -> e^{i angle} z
    static Mobius affine(Complex scale, Complex offset); // z -> scale z + offset
    static Mobius from_matrix(const Eigen::Matrix2cd& raw);

    SpherePoint operator()(const SpherePoint& p) const;
    Mobius inverse() const;
    Mobius compose(const Mobius& inner) const; // this after inner

    bool is_identity(double tol = 1e-12) const;
    bool is_translation(double tol = 1e-12) const;
    Complex translation_offset() const; // valid when is_translation()

    void normalize();
};

} // namespace vortexlab

#endif
