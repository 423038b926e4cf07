#include "bohm/cerf.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

namespace bohm {
namespace {

constexpr int kN = 64;          // polynomial degree of the rational approximation
const double kL = std::sqrt(kN / std::sqrt(2.0));
constexpr double kSqrtPi = 1.7724538509055160273;

// Fourier coefficients of exp(-t^2)(L^2 + t^2) under t = L tan(theta/2).
// Computed once by direct cosine sums; the O(M^2) cost is negligible.
const std::array<double, kN>& weideman_coeffs() {
    static std::array<double, kN> coeffs;
    static std::once_flag once;
    std::call_once(once, [] {
        const int M = 2 * kN, M2 = 2 * M;
        std::vector<double> f(2 * M - 1), theta(2 * M - 1);
        for (int j = 0; j < 2 * M - 1; ++j) {
            const int k = j - (M - 1);
            theta[j] = k * M_PI / M;
            const double t = kL * std::tan(0.5 * theta[j]);
            f[j] = std::exp(-t * t) * (kL * kL + t * t);
        }
        for (int n = 1; n <= kN; ++n) {
            double s = 0.0;
            for (int j = 0; j < 2 * M - 1; ++j)
                s += f[j] * std::cos(n * theta[j]);
            coeffs[n - 1] = s / M2;
        }
    });
    return coeffs;
}

} // namespace

Complex faddeeva_w_upper(Complex z) {
    const auto& a = weideman_coeffs();
    const Complex iz(-z.imag(), z.real());
    const Complex d = kL - iz;       // L - i z
    const Complex Z = (kL + iz) / d; // conformal map of the UHP to the unit disk
    Complex p = 0.0;
    for (int n = kN - 1; n >= 0; --n)
        p = p * Z + a[n];
    return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

Complex exp_minus_z2(Complex z) {
    const double re = z.imag() * z.imag() - z.real() * z.real(); // Re(-z^2)
    const double im = -2.0 * z.real() * z.imag();
    const double m = std::exp(std::min(re, 709.0));
    return {m * std::cos(im), m * std::sin(im)};
}

Complex erfc_complex(Complex z) {
    if (z.real() < 0.0)
        return 2.0 - erfc_complex(-z);
    // erfc(z) = exp(-z^2) w(iz); iz lies in the closed upper half plane here.
    const Complex w = faddeeva_w_upper(Complex(-z.imag(), z.real()));
    Complex v = exp_minus_z2(z) * w;
    const double huge = std::numeric_limits<double>::max();
    if (!std::isfinite(v.real())) v.real(std::copysign(huge, v.real()));
    if (!std::isfinite(v.imag())) v.imag(std::copysign(huge, v.imag()));
    return v;
}

} // namespace bohm
