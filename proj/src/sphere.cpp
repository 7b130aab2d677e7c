#include "vortexlab/sphere.hpp"

#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

double chordal(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_inf && b.is_inf) return 0.0;
    if (a.is_inf) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
    if (b.is_inf) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
    return 2.0 * std::abs(a.z - b.z) /
           std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

bool sphere_close(const SpherePoint& a, const SpherePoint& b, double tol) {
    return chordal(a, b) <= tol;
}

bool sphere_less(const SpherePoint& a, const SpherePoint& b) {
    if (a.is_inf != b.is_inf) return !a.is_inf;
    if (a.is_inf) return false;
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
}

Mobius Mobius::translation(Complex c) {
    Mobius t;
    t.m << 1.0, c, 0.0, 1.0;
    return t;
}

Mobius Mobius::rotation(double angle) {
    Mobius r;
    const Complex half = std::polar(1.0, angle / 2.0);
    r.m << half, 0.0, 0.0, 1.0 / half;
    r.normalize();
    return r;
}

Mobius Mobius::affine(Complex scale, Complex offset) {
    if (scale == Complex(0.0, 0.0))
        throw InvalidInput("affine Moebius map needs a nonzero scale");
    Mobius a;
    const Complex s = std::sqrt(scale);
    a.m << s, offset / s, 0.0, 1.0 / s;
    a.normalize();
    return a;
}

Mobius Mobius::from_matrix(const Eigen::Matrix2cd& raw) {
    Mobius g;
    g.m = raw;
    g.normalize();
    return g;
}

void Mobius::normalize() {
    const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < 1e-300)
        throw InvalidInput("singular matrix is not a Moebius transformation");
    m /= std::sqrt(det);
    // fix the +-1 scale ambiguity
    for (int k = 0; k < 4; ++k) {
        const Complex e = m(k / 2, k % 2);
        if (std::abs(e) > 1e-14) {
            if (e.real() < 0 || (e.real() == 0 && e.imag() < 0)) m = -m;
            break;
        }
    }
}

SpherePoint Mobius::operator()(const SpherePoint& p) const {
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    if (p.is_inf) {
        if (std::abs(c) == 0.0) return SpherePoint::infinity();
        return SpherePoint::finite(a / c);
    }
    const Complex num = a * p.z + b;
    const Complex den = c * p.z + d;
    if (std::abs(den) == 0.0) return SpherePoint::infinity();
    return SpherePoint::finite(num / den);
}

Mobius Mobius::inverse() const {
    Mobius inv;
    inv.m << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    inv.normalize();
    return inv;
}

Mobius Mobius::compose(const Mobius& inner) const {
    Mobius out;
    out.m = m * inner.m;
    out.normalize();
    return out;
}

bool Mobius::is_identity(double tol) const {
    return std::abs(m(0, 0) - 1.0) <= tol && std::abs(m(0, 1)) <= tol &&
           std::abs(m(1, 0)) <= tol && std::abs(m(1, 1) - 1.0) <= tol;
}

bool Mobius::is_translation(double tol) const {
    return std::abs(m(1, 0)) <= tol && std::abs(m(0, 0) - 1.0) <= tol &&
           std::abs(m(1, 1) - 1.0) <= tol;
}

Complex Mobius::translation_offset() const { return m(0, 1) / m(1, 1); }

} // namespace vortexlab
