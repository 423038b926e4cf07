#include "bohm/dynamics_bound.hpp"

#include <cmath>
#include <stdexcept>

namespace bohm {
namespace {

void check_radius(double R0, const PhysicalParams& p) {
    if (!(R0 > 0.0) || R0 >= p.a * (1.0 - 1e-12))
        throw std::domain_error("bound dynamics: radius must lie in (0, a)");
}

// [1 - x cot x] evaluated as (sin x - x cos x)/sin x; series for small x.
double one_minus_xcotx(double x) {
    return (std::sin(x) - x * std::cos(x)) / std::sin(x);
}

} // namespace

double omega_nr(double R0_mag, const PhysicalParams& p) {
    check_radius(R0_mag, p);
    const double x = M_PI * R0_mag / p.a;
    const double scale = p.hbar / (p.m * p.a * p.a);
    if (R0_mag < 1e-3 * p.a) {
        // direct (sin x - x cos x)/sin x cancels catastrophically here
        // small-R0 series: 1 - x cot x = x^2/3 + x^4/45 + 2 x^6/945 + ...
        const double x2 = x * x;
        return scale * M_PI * M_PI * (1.0 / 3.0 + x2 / 45.0 + 2.0 * x2 * x2 / 945.0);
    }
    return p.hbar / (p.m * R0_mag * R0_mag) * one_minus_xcotx(x);
}

double f_profile(double xi) { return 2.0 * xi / (1.0 + xi * xi); }

double omega_rel(double R0_mag, const PhysicalParams& p) {
    check_radius(R0_mag, p);
    const double w0 = omega_nr(R0_mag, p);
    const double xi = p.m * R0_mag * gamma_length(p) * w0 / p.hbar;
    return p.c / R0_mag * f_profile(xi);
}

OrbitSpec make_orbit(const Vec3& R0, const Vec3& s_hat, Regime regime,
                     const PhysicalParams& p) {
    const double R0_mag = R0.norm();
    const double w = (regime == Regime::Relativistic) ? omega_rel(R0_mag, p)
                                                      : omega_nr(R0_mag, p);
    return {R0, s_hat.normalized(), w, regime};
}

Vec3 orbit_position(double t, const OrbitSpec& spec) {
    const double wt = spec.omega * t;
    const double cwt = std::cos(wt), swt = std::sin(wt);
    const Vec3& s = spec.s_hat;
    return cwt * spec.R0 + swt * s.cross(spec.R0) + (1.0 - cwt) * spec.R0.dot(s) * s;
}

Vec3 velocity_bound(const Vec3& rvec, const Vec3& s_hat, const PhysicalParams& p,
                    Regime regime) {
    const double r = rvec.norm();
    check_radius(r, p);
    if (regime == Regime::Nonrelativistic)
        return -omega_nr(r, p) * rvec.cross(s_hat);
    // d(ln psi)/dr = (pi/a) cot(pi r/a) - 1/r = -(1/r)[1 - x cot x]
    const double dlog = -one_minus_xcotx(M_PI * r / p.a) / r;
    const double xi = gamma_length(p) * dlog;
    return p.c * f_profile(xi) * (rvec / r).cross(s_hat);
}

} // namespace bohm
