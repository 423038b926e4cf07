#pragma once

#include <optional>
#include <vector>

#include "bohm/moshinsky.hpp"
#include "bohm/quantum_state.hpp"
#include "bohm/vec3.hpp"

namespace bohm {

/// Evaluation controls for the released wave function and the trajectory
/// integrator.
struct FreeFieldOptions {
    double far_r_over_a = 50.0;   ///< switch to the far-field form beyond this r/a
    double far_x_over_pi = 20.0;  ///< ... and beyond this (a r/tau)/pi
    double node_floor = 1e-14;    ///< |psi|^2 floor relative to the local envelope
};

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double t_max_factor = 20.0; ///< t_max = factor * m L a/(hbar pi)
    double start_tau = 1e-8;    ///< initial reduced time offset, units of a^2
    bool record_path = false;
    int max_node_retries = 24;
};

/// psi_>, its radial derivative and the log-derivative split
///   grad psi_>/psi_> = (R_part + i I_part) e_r.
struct FreeWaveSample {
    Complex psi;
    Complex dpsi_dr;
    double R_part = 0.0;
    double I_part = 0.0;
    bool node = false; ///< |psi|^2 fell below the node floor
};

struct PolarState {
    double R = 0.0;     ///< radius, > 0
    double Theta = 0.0; ///< inclination to s_hat, conserved
    double Phi = 0.0;   ///< azimuth about s_hat
    double t = 0.0;
};

enum class TrajectoryStatus { Ok, NodeEncounter, MaxTimeExceeded };

struct TrajectoryRecord {
    Vec3 R0;
    double t1 = 0.0;      ///< detector hit time, R(t1) = L
    double tf = 0.0;      ///< time of flight t1 - t0
    double p = 0.0;       ///< reconstructed momentum m L / tf
    TrajectoryStatus status = TrajectoryStatus::Ok;
    long n_steps = 0;
    std::vector<PolarState> path; ///< filled only when recording is requested
};

/// Released wave function psi_>(r, t) for t > t0, r > 0, built from four
/// Moshinsky terms; converges to e^{-i t0 E/hbar} psi(r) as t -> t0^+.
Complex psi_free(double r, double t, const PhysicalParams& p);

/// d psi_> / dr (analytic).
Complex psi_free_dr(double r, double t, const PhysicalParams& p);

/// Far-field approximation
///   2 N0 sqrt(2 pi/(i tau)) (a/r) sin(ar/tau)/((ar/tau)^2 - pi^2)
///     e^{i (r^2+a^2)/(2 tau)},
/// valid for r > 10 a and a r/tau > 10 pi; removable point ar/tau = pi
/// handled by series.
Complex psi_free_approx(double r, double t, const PhysicalParams& p);

/// Wave-function sample with the log-derivative split; switches to the
/// far-field evaluation per `opt`, and flags nodes instead of emitting
/// garbage ratios.
FreeWaveSample log_derivative(double r, double t, const PhysicalParams& p,
                              const FreeFieldOptions& opt = {});

struct PolarRates {
    double dR = 0.0;
    double dTheta = 0.0; ///< identically zero
    double dPhi = 0.0;
    bool node = false;
};

/// Component guiding equations for t > t0:
///   dR/dt = (hbar/m) I,  dTheta/dt = 0,  dPhi/dt = -(hbar/(m R)) R_part.
PolarRates guiding_rhs(const PolarState& state, const PhysicalParams& p,
                       const FreeFieldOptions& opt = {});

/// Integrates the released trajectory from R0 at t0 until the detector
/// crossing R(t1) = L (located to |R - L| < 1e-9 L), with adaptive RK45.
TrajectoryRecord integrate_to_detector(const Vec3& R0, const Vec3& s_hat,
                                       const PhysicalParams& p,
                                       const FreeFieldOptions& fopt = {},
                                       const IntegratorOptions& iopt = {});

} // namespace bohm
