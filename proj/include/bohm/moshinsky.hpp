#pragma once

#include "bohm/cerf.hpp"

namespace bohm {

/// Arguments of the Moshinsky function M(r, k, t). Here t is the reduced
/// time tau = (hbar/m)(t - t0), with dimensions of length^2; k = pi/a.
struct MoshinskyArgs {
    double r = 0.0;
    double k = 0.0;
    double t = 0.0;
};

/// M(r,k,t) = (1/2) erfc((r - kt)/sqrt(2it)) exp(ikr - itk^2/2).
/// sqrt(2it) is taken on the principal branch, exp(i pi/4) sqrt(2t) for
/// t > 0; moshinsky_dr uses the same branch. Requires t > 0; the t -> 0+
/// truncated-plane-wave limit H(-r) e^{ikr} is the caller's business.
Complex moshinsky(const MoshinskyArgs& args);

/// Radial derivative dM/dr = ik M - (2it)^{-1/2} pi^{-1/2}
///   exp(-(r-kt)^2/(2it)) exp(ikr - itk^2/2). Requires t > 0.
Complex moshinsky_dr(const MoshinskyArgs& args);

/// Far-from-front approximation
///   sqrt(it/2pi) e^{ir^2/(2t)}/(r - kt) + H(kt - r) e^{ikr - itk^2/2},
/// valid for |r - kt|/sqrt(t) >= threshold (default 8, giving a dropped
/// remainder below 1e-3 relative). Rejects arguments inside the front band.
Complex moshinsky_asymptotic(const MoshinskyArgs& args, double threshold = 8.0);

} // namespace bohm
