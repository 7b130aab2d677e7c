#include "vortexlab/zero_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "vortexlab/errors.hpp"

namespace vortexlab {

int ZeroConfig::degree() const {
    int d = 0;
    for (const auto& z : zeros) d += z.multiplicity;
    return d;
}

void ZeroConfig::validate() const {
    for (const auto& z : zeros) {
        if (z.multiplicity < 1)
            throw InvalidInput("zero multiplicity must be >= 1");
        if (!std::isfinite(z.position.real()) || !std::isfinite(z.position.imag()))
            throw InvalidInput("zero position must be finite");
    }
    for (size_t a = 0; a < zeros.size(); ++a)
        for (size_t b = a + 1; b < zeros.size(); ++b)
            if (std::abs(zeros[a].position - zeros[b].position) < 1e-12)
                throw InvalidInput(
                    "coincident zeros; merge them into one entry with summed "
                    "multiplicity");
}

std::vector<Complex> ZeroConfig::flatten() const {
    std::vector<Complex> out;
    for (const auto& z : zeros)
        out.insert(out.end(), z.multiplicity, z.position);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

Complex ZeroConfig::centroid() const {
    Complex s = 0;
    for (const auto& z : zeros) s += double(z.multiplicity) * z.position;
    return s / double(degree());
}

double ZeroConfig::min_pairwise_separation() const {
    double m = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < zeros.size(); ++a)
        for (size_t b = a + 1; b < zeros.size(); ++b)
            m = std::min(m, std::abs(zeros[a].position - zeros[b].position));
    return m;
}

double ZeroConfig::max_abs() const {
    double m = 0;
    for (const auto& z : zeros) m = std::max(m, std::abs(z.position));
    return m;
}

ZeroConfig ZeroConfig::translated(Complex c) const {
    ZeroConfig out = *this;
    for (auto& z : out.zeros) z.position += c;
    return out;
}

ZeroConfig ZeroConfig::rotated(double angle) const {
    ZeroConfig out = *this;
    const Complex r = std::polar(1.0, angle);
    for (auto& z : out.zeros) z.position *= r;
    return out;
}

std::string ZeroConfig::to_json() const {
    nlohmann::ordered_json j;
    j["zeros"] = nlohmann::ordered_json::array();
    for (const auto& z : zeros)
        j["zeros"].push_back({{"re", z.position.real()},
                              {"im", z.position.imag()},
                              {"mult", z.multiplicity}});
    return j.dump();
}

ZeroConfig ZeroConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad zero-config JSON: ") + e.what());
    }
    if (!j.contains("zeros") || !j["zeros"].is_array())
        throw InvalidInput("zero-config JSON needs a \"zeros\" array");
    ZeroConfig c;
    for (const auto& e : j["zeros"]) {
        Zero z;
        z.position = {e.at("re").get<double>(), e.at("im").get<double>()};
        z.multiplicity = e.value("mult", 1);
        c.zeros.push_back(z);
    }
    c.validate();
    return c;
}

namespace {

bool multiset_equal(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    // both lists are lex-sorted; tolerance can reorder near-ties, so match
    // greedily against the nearest unused partner
    std::vector<bool> used(b.size(), false);
    for (const Complex& p : a) {
        bool found = false;
        for (size_t k = 0; k < b.size(); ++k) {
            if (!used[k] && std::abs(p - b[k]) <= tol) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace

bool same_config(const ZeroConfig& a, const ZeroConfig& b, double tol) {
    return multiset_equal(a.flatten(), b.flatten(), tol);
}

bool translation_equivalent(const ZeroConfig& a, const ZeroConfig& b, double tol) {
    if (a.degree() != b.degree()) return false;
    if (a.degree() == 0) return true;
    const Complex shift = b.centroid() - a.centroid();
    return same_config(a.translated(shift), b, tol);
}

} // namespace vortexlab
