#include "bohm/moshinsky.hpp"

#include <cmath>
#include <stdexcept>

namespace bohm {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
const Complex kExpIPi4(M_SQRT1_2, M_SQRT1_2); // exp(i pi/4)

Complex polar_unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

void check_time(double t) {
    if (!(t > 0.0))
        throw std::domain_error("moshinsky: requires t > 0");
}

} // namespace

Complex moshinsky(const MoshinskyArgs& a) {
    check_time(a.t);
    const Complex sqrt2it = kExpIPi4 * std::sqrt(2.0 * a.t);
    const Complex zeta = (a.r - a.k * a.t) / sqrt2it;
    const Complex phase = polar_unit(a.k * a.r - 0.5 * a.t * a.k * a.k);
    return 0.5 * erfc_complex(zeta) * phase;
}

Complex moshinsky_dr(const MoshinskyArgs& a) {
    check_time(a.t);
    const Complex sqrt2it = kExpIPi4 * std::sqrt(2.0 * a.t);
    const Complex zeta = (a.r - a.k * a.t) / sqrt2it;
    const Complex phase = polar_unit(a.k * a.r - 0.5 * a.t * a.k * a.k);
    const Complex ik(0.0, a.k);
    // exp(-zeta^2) is unimodular for real arguments: zeta^2 = -i (r-kt)^2/(2t).
    const double u = a.r - a.k * a.t;
    const Complex gauss = polar_unit(u * u / (2.0 * a.t));
    return ik * 0.5 * erfc_complex(zeta) * phase - gauss / (kSqrtPi * sqrt2it) * phase;
}

Complex moshinsky_asymptotic(const MoshinskyArgs& a, double threshold) {
    check_time(a.t);
    const double u = a.r - a.k * a.t;
    if (std::abs(u) / std::sqrt(a.t) < threshold)
        throw std::domain_error("moshinsky_asymptotic: argument inside the near-front band");
    const Complex lead =
        kExpIPi4 * std::sqrt(a.t / (2.0 * M_PI)) * polar_unit(a.r * a.r / (2.0 * a.t)) / u;
    if (u < 0.0)
        return lead + polar_unit(a.k * a.r - 0.5 * a.t * a.k * a.k);
    return lead;
}

} // namespace bohm
