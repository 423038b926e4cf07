#pragma once

#include <complex>

namespace bohm {

using Complex = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
/// Weideman-type rational approximation, uniformly accurate on the closed
/// upper half plane to ~1e-14 absolute.
Complex faddeeva_w_upper(Complex z);

/// Complementary error function of a complex argument.
/// Relative accuracy <= 1e-12 for |z| <= 30. Values whose magnitude exceeds
/// the double range are saturated to the largest finite double (the exact
/// function overflows there; no Inf/NaN is returned for finite input).
Complex erfc_complex(Complex z);

/// exp(-z^2) with the real exponent clamped to avoid Inf.
Complex exp_minus_z2(Complex z);

} // namespace bohm
