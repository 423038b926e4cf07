#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace bohm {

/// Dormand-Prince 5(4) embedded pair with FSAL. The right-hand side has
/// signature bool f(t, y, dydt); returning false aborts the attempt (used
/// for wave-function node flags).
template <std::size_t N>
using StateN = std::array<double, N>;

template <std::size_t N, class F>
struct Rk45Attempt {
    StateN<N> y_new{};
    StateN<N> k1{};   ///< derivative at step start
    StateN<N> k_end{}; ///< derivative at step end (FSAL candidate)
    double err = 0.0; ///< scaled error estimate, accept when <= 1
    bool rhs_ok = false;
};

template <std::size_t N, class F>
Rk45Attempt<N, F> rk45_try_step(F&& f, double t, const StateN<N>& y, double h,
                                const StateN<N>* k1_reuse, double rtol, double atol) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Rk45Attempt<N, F> out;
    StateN<N> k1, k2, k3, k4, k5, k6, k7, tmp;
    if (k1_reuse) {
        k1 = *k1_reuse;
    } else if (!f(t, y, k1)) {
        return out;
    }
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    if (!f(t + c2 * h, tmp, k2)) return out;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    if (!f(t + c3 * h, tmp, k3)) return out;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    if (!f(t + c4 * h, tmp, k4)) return out;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    if (!f(t + c5 * h, tmp, k5)) return out;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] +
                 h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    if (!f(t + h, tmp, k6)) return out;
    for (std::size_t i = 0; i < N; ++i)
        out.y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                   b6 * k6[i]);
    if (!f(t + h, out.y_new, k7)) return out;

    double err2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                              e6 * k6[i] + e7 * k7[i]);
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
        err2 += (e / sc) * (e / sc);
    }
    out.err = std::sqrt(err2 / N);
    out.k1 = k1;
    out.k_end = k7;
    out.rhs_ok = true;
    return out;
}

inline double rk45_next_h(double h, double err) {
    const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    return h * std::min(5.0, std::max(0.2, fac));
}

} // namespace bohm
