#include <doctest.h>

#include <cmath>
#include <complex>

#include "bohm/moshinsky.hpp"

using bohm::Complex;
using bohm::MoshinskyArgs;
using bohm::moshinsky;
using bohm::moshinsky_asymptotic;
using bohm::moshinsky_dr;

namespace {
Complex polar(double ph) { return {std::cos(ph), std::sin(ph)}; }
} // namespace

TEST_CASE("M at the front r = kt equals half the plane-wave phase") {
    const double k = M_PI, t = 0.4, r = k * t;
    const Complex want = 0.5 * polar(0.5 * t * k * k);
    CHECK(std::abs(moshinsky({r, k, t}) - want) < 1e-13);
}

TEST_CASE("t -> 0+ reduces to the truncated plane wave H(-r) e^{ikr}") {
    const double k = M_PI, t = 1e-9;
    CHECK(std::abs(moshinsky({-1.0, k, t}) - polar(-k)) < 1e-4);
    CHECK(std::abs(moshinsky({1.0, k, t})) < 1e-4);
    // sweep r in [-3,3] excluding a small band around the front
    double worst = 0.0;
    for (double r = -3.0; r <= 3.0; r += 0.01) {
        if (std::abs(r) < 0.05) continue;
        const Complex limit = (r < 0.0) ? polar(k * r) : Complex(0.0, 0.0);
        worst = std::max(worst, std::abs(moshinsky({r, k, t}) - limit));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("dM/dr matches a centered finite difference") {
    const double k = M_PI, t = 0.3, r = 2.0, h = 1e-6;
    const Complex fd = (moshinsky({r + h, k, t}) - moshinsky({r - h, k, t})) / (2.0 * h);
    const Complex an = moshinsky_dr({r, k, t});
    CHECK(std::abs(an - fd) / std::abs(an) < 1e-6);
}

TEST_CASE("dM/dr at the front agrees with the closed form") {
    const double k = M_PI, t = 0.7, r = k * t;
    const Complex ph = polar(0.5 * t * k * k);
    const Complex want = Complex(0.0, 0.5 * k) * ph -
                         ph / std::sqrt(2.0 * M_PI * t) * Complex(M_SQRT1_2, -M_SQRT1_2);
    CHECK(std::abs(moshinsky_dr({r, k, t}) - want) < 1e-13);
}

TEST_CASE("far ahead of the front |M| decays and |dM/dr| -> 1/sqrt(2 pi t)") {
    // |M| vanishes algebraically but its derivative tends to the finite
    // value 1/sqrt(2 pi t) because the e^{ir^2/(2t)} phase keeps tightening.
    const double t = 1.0 / M_PI; // kt = 1
    CHECK(std::abs(moshinsky({1e3, M_PI, t})) < 1e-3);
    CHECK(std::abs(moshinsky_dr({1e3, M_PI, t})) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * t)).epsilon(1e-2));
}

TEST_CASE("asymptotic form agrees with the exact function") {
    for (auto [r, t] : {std::pair{100.0, 1.0}, {50.0, 0.5}, {1.0, 100.0}}) {
        const double k = M_PI;
        const Complex exact = moshinsky({r, k, t});
        const Complex approx = moshinsky_asymptotic({r, k, t});
        CHECK(std::abs(approx - exact) / std::abs(exact) < 1e-3);
    }
}

TEST_CASE("asymptotic Heaviside term present iff kt > r") {
    const double k = M_PI;
    // kt = 100 pi >> r = 1: plane-wave term dominates, |M| near 1
    CHECK(std::abs(moshinsky_asymptotic({1.0, k, 100.0})) > 0.5);
    // r >> kt: only the algebraically small tail
    CHECK(std::abs(moshinsky_asymptotic({100.0, k, 1.0})) < 0.05);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(moshinsky({1.0, M_PI, 0.0}), std::domain_error);
    CHECK_THROWS_AS(moshinsky_dr({1.0, M_PI, -1.0}), std::domain_error);
    CHECK_THROWS_AS(moshinsky_asymptotic({1.0, M_PI, 0.3}), std::domain_error);
}

TEST_CASE("M satisfies the free 1D Schrodinger equation (FD residual)") {
    const double k = M_PI;
    double worst = 0.0;
    const double hr = 1e-4, ht = 1e-5;
    for (double t : {0.3, 0.9}) {
        for (double r = -2.0; r <= 4.0; r += 0.25) {
            if (std::abs(r - k * t) < 0.5) continue; // stay away from the front
            auto M = [&](double rr, double tt) { return moshinsky({rr, k, tt}); };
            const Complex dt = (M(r, t + ht) - M(r, t - ht)) / (2.0 * ht);
            const Complex drr =
                (M(r + hr, t) - 2.0 * M(r, t) + M(r - hr, t)) / (hr * hr);
            const Complex resid = Complex(0.0, 1.0) * dt + 0.5 * drr;
            worst = std::max(worst, std::abs(resid));
        }
    }
    CHECK(worst < 1e-5);
}
