#pragma once

#include "bohm/quantum_state.hpp"
#include "bohm/vec3.hpp"

namespace bohm {

enum class Regime { Nonrelativistic, Relativistic };

/// A bound circular orbit: initial position, spin axis and angular frequency.
struct OrbitSpec {
    Vec3 R0;
    Vec3 s_hat;
    double omega = 0.0;
    Regime regime = Regime::Nonrelativistic;
};

/// omega_0 = hbar/(m R0^2) [1 - (pi R0/a) cot(pi R0/a)], for 0 < R0 < a.
/// Strictly positive; R0 -> 0 limit pi^2 hbar/(3 m a^2), divergent ~
/// hbar/(m a (a - R0)) near the edge.
double omega_nr(double R0_mag, const PhysicalParams& p);

/// F(xi) = 2 xi / (1 + xi^2); odd, |F| <= 1, F(1) = 1.
double f_profile(double xi);

/// omega_0R = (c/R0) F(m R0 gamma omega_0 / hbar); bounded for all R0,
/// ~ (2c/gamma)(1 - R0/a) as R0 -> a^-.
double omega_rel(double R0_mag, const PhysicalParams& p);

OrbitSpec make_orbit(const Vec3& R0, const Vec3& s_hat, Regime regime,
                     const PhysicalParams& p);

/// Closed-form orbit (Rodrigues rotation of R0 about s_hat by omega*t):
///   cos(wt) R0 + sin(wt) s x R0 + (1 - cos(wt)) (R0 . s) s.
Vec3 orbit_position(double t, const OrbitSpec& spec);

/// Guiding velocity inside the box. Nonrelativistic: -omega_0(r) r x s.
/// Relativistic: c F(gamma psi'/psi) e_r x s, with ||v|| <= c.
/// Rejects ||rvec|| >= a.
Vec3 velocity_bound(const Vec3& rvec, const Vec3& s_hat, const PhysicalParams& p,
                    Regime regime);

} // namespace bohm
