#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "bohm/dynamics_bound.hpp"
#include "bohm/quantum_state.hpp"
#include "bohm/rk45.hpp"

using namespace bohm;
using std::numbers::pi;

namespace {

Vec3 random_unit(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Vec3 v{g(rng), g(rng), g(rng)};
    while (v.norm() < 1e-3) v = Vec3{g(rng), g(rng), g(rng)};
    return v.normalized();
}

// Integrate dr/dt = velocity_bound over [0, T] with adaptive RK45 and return
// the worst deviation from the closed-form orbit at 64 checkpoints.
double orbit_deviation(const Vec3& R0, const Vec3& s_hat, Regime regime,
                       const PhysicalParams& p, double T)
{
    const auto spec = make_orbit(R0, s_hat, regime, p);
    auto rhs = [&](double, const std::array<double, 3>& q,
                   std::array<double, 3>& dq) {
        const auto v = velocity_bound({q[0], q[1], q[2]}, s_hat, p, regime);
        dq = {v.x, v.y, v.z};
        return true;
    };
    std::array<double, 3> y{R0.x, R0.y, R0.z};
    double t = 0.0, h = T / 2048.0, worst = 0.0;
    double next_check = 0.0;
    const double dt_check = T / 64.0;
    std::array<double, 3> k1{};
    bool have_k1 = false;
    while (t < T) {
        if (t >= next_check) {
            const auto closed = orbit_position(t, spec);
            const Vec3 num{y[0], y[1], y[2]};
            worst = std::max(worst, (num - closed).norm());
            next_check += dt_check;
        }
        h = std::min(h, T - t);
        auto att = rk45_try_step<3>(rhs, t, y, h, have_k1 ? &k1 : nullptr,
                                    1e-11, 1e-13);
        if (att.err <= 1.0) {
            t += h;
            y = att.y_new;
            k1 = att.k_end;
            have_k1 = true;
        } else {
            have_k1 = false;
        }
        h = rk45_next_h(h, att.err);
    }
    const auto closed = orbit_position(T, spec);
    worst = std::max(worst, (Vec3{y[0], y[1], y[2]} - closed).norm());
    return worst;
}

} // namespace

TEST_CASE("omega_nr anchors: half-radius value and small-radius limit")
{
    PhysicalParams p;
    // x = pi/2, cot = 0 -> omega = hbar/(m (a/2)^2) = 4 hbar/(m a^2)
    CHECK(omega_nr(0.5, p) == doctest::Approx(4.0).epsilon(1e-14));
    // R0 -> 0 limit pi^2/3 * hbar/(m a^2)
    CHECK(omega_nr(1e-8, p) == doctest::Approx(pi * pi / 3).epsilon(1e-6));
    CHECK(omega_nr(1e-4, p) == doctest::Approx(pi * pi / 3).epsilon(1e-6));
    // scaling in physical units
    PhysicalParams q;
    q.a = 2.0;
    q.m = 3.0;
    q.hbar = 0.7;
    CHECK(omega_nr(1.0, q) ==
          doctest::Approx(4.0 * q.hbar / (q.m * q.a * q.a)).epsilon(1e-14));
}

TEST_CASE("omega_nr: positivity, continuity of the series switch, edge "
          "divergence law")
{
    PhysicalParams p;
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double r = i / 401.0;
        const double w = omega_nr(r, p);
        CHECK(w > 0.0);
        CHECK(w >= prev * (1 - 1e-12)); // monotone increasing in R0
        prev = w;
    }
    // series vs direct form straddle the switch radius smoothly
    CHECK(omega_nr(0.9999e-3, p) ==
          doctest::Approx(omega_nr(1.0001e-3, p)).epsilon(2e-9));
    // near the edge omega ~ hbar/(m a (a - R0))
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const double w = omega_nr(1.0 - eps, p);
        CHECK(w == doctest::Approx(1.0 / eps).epsilon(2e-2 + 3 * eps));
    }
    CHECK_THROWS_AS(omega_nr(0.0, p), std::domain_error);
    CHECK_THROWS_AS(omega_nr(1.0, p), std::domain_error);
    CHECK_THROWS_AS(omega_nr(1.5, p), std::domain_error);
}

TEST_CASE("F profile: odd, bounded by one, F(1) = 1")
{
    CHECK(f_profile(1.0) == doctest::Approx(1.0));
    CHECK(f_profile(-1.0) == doctest::Approx(-1.0));
    CHECK(f_profile(0.0) == 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double xi = u(rng);
        CHECK(std::abs(f_profile(xi)) <= 1.0);
        CHECK(f_profile(-xi) == doctest::Approx(-f_profile(xi)));
        // small-argument linearity F ~ 2 xi
        CHECK(f_profile(1e-9) == doctest::Approx(2e-9).epsilon(1e-12));
    }
}

TEST_CASE("omega_rel: nonrelativistic agreement at mid-radius, edge behavior")
{
    PhysicalParams p; // c = 10^3 box units, i.e. a = 10^3 hbar/(m c)
    // interior agreement with omega_nr
    CHECK(std::abs(omega_rel(0.5, p) / omega_nr(0.5, p) - 1.0) < 1e-2);
    for (double r : {0.1, 0.3, 0.7}) {
        CHECK(std::abs(omega_rel(r, p) / omega_nr(r, p) - 1.0) < 0.05);
        CHECK(omega_rel(r, p) < omega_nr(r, p)); // F(xi) < 2 xi caps the rate
    }
    // omega_rel -> 0 at the edge, while omega_nr diverges
    double prev = omega_rel(1.0 - 1e-3, p);
    for (double eps : {1e-4, 1e-5, 1e-6, 1e-7}) {
        const double w = omega_rel(1.0 - eps, p);
        CHECK(w < prev);
        prev = w;
    }
    CHECK(omega_rel(1.0 - 1e-9, p) < 1e-2 * omega_rel(0.5, p));
    // edge law omega_rel ~ (2c/gamma)(1 - R0/a)
    const double gam = gamma_length(p);
    for (double eps : {1e-6, 1e-8}) {
        const double w = omega_rel(1.0 - eps, p);
        CHECK(w == doctest::Approx(2.0 * p.c / gam * eps).epsilon(5e-2));
    }
}

TEST_CASE("omega_rel converges to omega_nr as c grows")
{
    PhysicalParams p;
    p.c = 1e6;
    for (double r : {0.2, 0.5, 0.9}) {
        CHECK(std::abs(omega_rel(r, p) / omega_nr(r, p) - 1.0) < 1e-4);
    }
}

TEST_CASE("closed-form orbit: circle invariants")
{
    std::mt19937_64 rng(17);
    PhysicalParams p;
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const Vec3 R0 = ur(rng) * random_unit(rng);
        const Vec3 s = random_unit(rng);
        const auto spec = make_orbit(R0, s, Regime::Nonrelativistic, p);
        const double T = 2 * pi / spec.omega;
        for (double t : {0.1 * T, 0.37 * T, 0.8 * T}) {
            const Vec3 r = orbit_position(t, spec);
            CHECK(r.norm() == doctest::Approx(R0.norm()).epsilon(1e-12));
            CHECK(r.dot(s) == doctest::Approx(R0.dot(s)).epsilon(1e-9));
        }
        // full period closes the loop
        CHECK((orbit_position(T, spec) - R0).norm() < 1e-12);
    }
}

TEST_CASE("orbit parallel to the spin axis is stationary")
{
    PhysicalParams p;
    const Vec3 s{0.0, 0.0, 1.0};
    const Vec3 R0 = 0.4 * s;
    const auto spec = make_orbit(R0, s, Regime::Nonrelativistic, p);
    for (double t : {0.0, 1.0, 5.0, 20.0})
        CHECK((orbit_position(t, spec) - R0).norm() < 1e-14);
    const Vec3 v = velocity_bound(R0, s, p, Regime::Nonrelativistic);
    CHECK(v.norm() < 1e-14);
}

TEST_CASE("numeric integration of the velocity field reproduces the closed "
          "form")
{
    std::mt19937_64 rng(99);
    PhysicalParams p;
    std::uniform_real_distribution<double> ur(0.1, 0.9);
    for (int i = 0; i < 8; ++i) {
        const Vec3 R0 = ur(rng) * random_unit(rng);
        const Vec3 s = random_unit(rng);
        for (Regime regime : {Regime::Nonrelativistic, Regime::Relativistic}) {
            const auto spec = make_orbit(R0, s, regime, p);
            const double T = 2 * pi / spec.omega;
            CHECK(orbit_deviation(R0, s, regime, p, T) < 1e-7);
        }
    }
}

TEST_CASE("relativistic velocity respects the light-speed bound")
{
    std::mt19937_64 rng(123);
    PhysicalParams p;
    std::uniform_real_distribution<double> ur(1e-3, 1.0 - 1e-9);
    double sup = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 r = (ur(rng) * p.a) * random_unit(rng);
        const Vec3 s = random_unit(rng);
        const double speed = velocity_bound(r, s, p, Regime::Relativistic).norm();
        sup = std::max(sup, speed / p.c);
    }
    CHECK(sup <= 1.0 + 1e-12);
}

TEST_CASE("closed-form relativistic velocity matches the raw Dirac current")
{
    // velocity_bound's relativistic branch vs c Psi^dag alpha Psi / Psi^dag Psi
    // evaluated on the explicit four-spinor.
    std::mt19937_64 rng(7);
    PhysicalParams p;
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
        const Vec3 rv = ur(rng) * random_unit(rng);
        std::normal_distribution<double> g;
        const SpinorPair chi({g(rng), g(rng)}, {g(rng), g(rng)});
        const Vec3 s = spin_vector(chi);
        const auto psi4 = dirac_ground_state(rv, 0.0, chi, p);
        const Vec3 raw = dirac_velocity_raw(psi4, p.c);
        const Vec3 closed = velocity_bound(rv, s, p, Regime::Relativistic);
        CHECK((raw - closed).norm() < 1e-9 * p.c);
    }
}

TEST_CASE("nonrelativistic velocity is the angular-frequency cross product")
{
    PhysicalParams p;
    const Vec3 s{0, 0, 1};
    for (double r : {0.2, 0.5, 0.8}) {
        const Vec3 pos{r, 0, 0};
        const Vec3 v = velocity_bound(pos, s, p, Regime::Nonrelativistic);
        // -omega r x s = omega r (x-hat x z-hat -> -y-hat), so v = +omega r y-hat
        CHECK(v.x == doctest::Approx(0.0));
        CHECK(v.z == doctest::Approx(0.0));
        CHECK(v.y == doctest::Approx(omega_nr(r, p) * r).epsilon(1e-12));
    }
}
