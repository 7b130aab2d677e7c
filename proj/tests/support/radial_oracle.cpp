#include "support/radial_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace vortexlab::testing {

namespace {

struct State {
    double h, v;
};

// RK4 step of h' = v, v' = e^h - 1 - v/r
State step(double r, State s, double dr) {
    auto f = [](double rr, State q) {
        return State{q.v, std::exp(q.h) - 1.0 - q.v / rr};
    };
    const State k1 = f(r, s);
    const State k2 = f(r + dr / 2, {s.h + dr / 2 * k1.h, s.v + dr / 2 * k1.v});
    const State k3 = f(r + dr / 2, {s.h + dr / 2 * k2.h, s.v + dr / 2 * k2.v});
    const State k4 = f(r + dr, {s.h + dr * k3.h, s.v + dr * k3.v});
    return {s.h + dr / 6 * (k1.h + 2 * k2.h + 2 * k3.h + k4.h),
            s.v + dr / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

// +1: overshoot (h crosses 0), -1: undershoot (h dives), 0: survived
int classify(int d, double a, double r_max, RadialProfile* out) {
    const double r0 = 1e-3;
    const double dr = 5e-4;
    const double ea = std::exp(a);
    const double q = 2.0 * d + 2.0;
    State s;
    s.h = 2.0 * d * std::log(r0) + a - r0 * r0 / 4 +
          ea * std::pow(r0, q) / (q * q);
    s.v = 2.0 * d / r0 - r0 / 2 + ea * q * std::pow(r0, q - 1) / (q * q);
    double r = r0;
    while (r < r_max) {
        if (out) {
            out->r.push_back(r);
            out->h.push_back(s.h);
        }
        s = step(r, s, dr);
        r += dr;
        if (s.h > 1e-9) return +1;
        if (r > 2.0 && s.h < -12.0) return -1;
    }
    if (out) {
        out->r.push_back(r);
        out->h.push_back(s.h);
    }
    return 0;
}

} // namespace

double RadialProfile::at(double radius) const {
    if (radius <= r.front()) return h.front();
    if (radius >= r.back()) return h.back();
    size_t lo = 0, hi = r.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        (r[mid] <= radius ? lo : hi) = mid;
    }
    const double t = (radius - r[lo]) / (r[hi] - r[lo]);
    return (1 - t) * h[lo] + t * h[hi];
}

RadialProfile solve_radial_vortex(int degree, double r_max) {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    double lo = -25.0, hi = 5.0;
    if (classify(degree, lo, r_max, nullptr) != -1 ||
        classify(degree, hi, r_max, nullptr) != +1)
        throw std::runtime_error("shooting bracket does not straddle");
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        (classify(degree, mid, r_max, nullptr) == +1 ? hi : lo) = mid;
    }
    RadialProfile profile;
    profile.a = 0.5 * (lo + hi);
    classify(degree, profile.a, r_max, &profile);
    return profile;
}

} // namespace vortexlab::testing
