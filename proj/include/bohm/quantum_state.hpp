#pragma once

#include <array>
#include <complex>

#include "bohm/cerf.hpp"
#include "bohm/vec3.hpp"

namespace bohm {

/// Box radius, mass, constants, release time and detector radius; the unit
/// system of a run. Defaults give the natural units hbar = m = a = 1.
struct PhysicalParams {
    double a = 1.0;    ///< box radius
    double m = 1.0;    ///< particle mass
    double hbar = 1.0;
    double c = 1.0e3;  ///< speed of light in box units
    double t0 = 0.0;   ///< release instant
    double L = 500.0;  ///< detector radius, L > a

    void validate() const;
};

/// Normalized two-spinor (chi_+, chi_-).
struct SpinorPair {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    SpinorPair() = default;
    SpinorPair(Complex u, Complex d); // normalizes; rejects the zero spinor
};

using FourSpinor = std::array<Complex, 4>;

/// Unit spin vector s = chi^dag sigma chi (chi normalized):
///   (2 Re[chi_+^* chi_-], 2 Im[chi_+^* chi_-], |chi_+|^2 - |chi_-|^2).
/// Independent of the overall phase of chi.
Vec3 spin_vector(const SpinorPair& chi);

/// Spatial ground state psi(r) = sin(pi r/a)/(sqrt(2 pi a) r) for r < a,
/// zero otherwise; continuous at r = 0 with limit pi/(a sqrt(2 pi a)).
double ground_state_psi(double r, const PhysicalParams& p);

/// d psi/dr, with the r -> 0 limit 0 handled by series.
double ground_state_dpsi(double r, const PhysicalParams& p);

/// d^2 psi/dr^2 (series near the origin).
double ground_state_d2psi(double r, const PhysicalParams& p);

/// E = hbar^2 pi^2 / (2 m a^2).
double ground_energy(const PhysicalParams& p);

/// E_R = m c^2 sqrt(1 + 2E/(m c^2)).
double relativistic_energy(const PhysicalParams& p);

/// gamma = hbar c / (E_R + m c^2); a length, with gamma c -> hbar/(2m)
/// in the nonrelativistic limit.
double gamma_length(const PhysicalParams& p);

/// Dirac ground-state four-spinor at (rvec, t):
///   upper pair  e^{-i t E_R/hbar} psi(r) chi,
///   lower pair  e^{-i t E_R/hbar} (-i gamma) psi'(r) (e_r . sigma) chi.
/// Rejects ||rvec|| >= a.
FourSpinor dirac_ground_state(const Vec3& rvec, double t, const SpinorPair& chi,
                              const PhysicalParams& p);

struct FierzResult {
    double lhs; ///< (Psi^dag Psi)^2 - ||Psi^dag alpha Psi||^2
    double mu;  ///< Psi^dag beta Psi
    double nu;  ///< Psi^dag (alpha_x alpha_y alpha_z) beta Psi
};

/// Evaluates both sides of the Fierz identity lhs = mu^2 + nu^2.
FierzResult fierz_residual(const FourSpinor& psi4);

/// Current c Psi^dag alpha Psi / (Psi^dag Psi) evaluated by explicit 4x4
/// matrix algebra (verification path; the bound dynamics uses the closed form).
Vec3 dirac_velocity_raw(const FourSpinor& psi4, double c);

using Mat4 = std::array<std::array<Complex, 4>, 4>;

/// The Dirac matrices alpha_x, alpha_y, alpha_z in the standard block form.
const std::array<Mat4, 3>& alpha_matrices();
/// beta = diag(1, 1, -1, -1).
const Mat4& beta_matrix();

} // namespace bohm
