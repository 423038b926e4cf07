#include "bohm/dynamics_free.hpp"

#include <cmath>
#include <stdexcept>

#include "bohm/rk45.hpp"

namespace bohm {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;
const Complex kExpMinusIPi4(M_SQRT1_2, -M_SQRT1_2);

struct FreeCtx {
    double tau;  // reduced time (hbar/m)(t - t0), units length^2
    double k;    // pi/a
    Complex N0;  // i e^{-i E t0/hbar} / (2 sqrt(2 pi a))
};

FreeCtx make_ctx(double r, double t, const PhysicalParams& p) {
    if (!(t > p.t0))
        throw std::domain_error("psi_free: requires t > t0");
    if (!(r > 0.0))
        throw std::domain_error("psi_free: requires r > 0");
    const double tau = p.hbar / p.m * (t - p.t0);
    const double ph = -ground_energy(p) * p.t0 / p.hbar;
    const Complex N0 = Complex(0.0, 1.0) * Complex(std::cos(ph), std::sin(ph)) /
                       (2.0 * std::sqrt(2.0 * M_PI * p.a));
    return {tau, M_PI / p.a, N0};
}

// Four-term Moshinsky combination S(r) = M(r-a) - M(r+a) - M(-r-a) + M(a-r),
// the ordering that matches the bound-state continuity limit at tau -> 0+.
Complex moshinsky_sum(double r, double a, const FreeCtx& c) {
    return moshinsky({r - a, c.k, c.tau}) - moshinsky({r + a, c.k, c.tau}) -
           moshinsky({-r - a, c.k, c.tau}) + moshinsky({a - r, c.k, c.tau});
}

Complex moshinsky_sum_dr(double r, double a, const FreeCtx& c) {
    return moshinsky_dr({r - a, c.k, c.tau}) - moshinsky_dr({r + a, c.k, c.tau}) +
           moshinsky_dr({-r - a, c.k, c.tau}) - moshinsky_dr({a - r, c.k, c.tau});
}

double moshinsky_sum_envelope(double r, double a, const FreeCtx& c) {
    return std::abs(moshinsky({r - a, c.k, c.tau})) +
           std::abs(moshinsky({r + a, c.k, c.tau})) +
           std::abs(moshinsky({-r - a, c.k, c.tau})) +
           std::abs(moshinsky({a - r, c.k, c.tau}));
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

double sinc_d1(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return -x / 3.0 * (1.0 - x2 / 10.0);
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x);
}

bool far_field_ok(double r, double tau, const PhysicalParams& p,
                  const FreeFieldOptions& opt) {
    return r > opt.far_r_over_a * p.a && p.a * r / tau > opt.far_x_over_pi * M_PI;
}

// Far-field value and log-derivative; d = ar/tau - pi.
struct FarEval {
    Complex psi;
    double Rp;
    double Ip;
    double sin_d; // node proxy: |sin d| small means a far-field node
};

FarEval eval_far(double r, const PhysicalParams& p, const FreeCtx& c) {
    const double x = p.a * r / c.tau;
    const double d = x - M_PI;
    // sin(x)/(x^2 - pi^2) = -sinc(d)/(x + pi), exact and stable at x = pi
    const double g = -sinc(d) / (x + M_PI);
    const Complex pref =
        2.0 * c.N0 * kExpMinusIPi4 * std::sqrt(kTwoPi / c.tau) * (p.a / r);
    const double phase = (r * r + p.a * p.a) / (2.0 * c.tau);
    const Complex psi = pref * g * Complex(std::cos(phase), std::sin(phase));
    const double Rp =
        -1.0 / r + (p.a / c.tau) * (sinc_d1(d) / sinc(d) - 1.0 / (x + M_PI));
    const double Ip = r / c.tau;
    return {psi, Rp, Ip, std::sin(d)};
}

} // namespace

Complex psi_free(double r, double t, const PhysicalParams& p) {
    const FreeCtx c = make_ctx(r, t, p);
    return c.N0 * moshinsky_sum(r, p.a, c) / r;
}

Complex psi_free_dr(double r, double t, const PhysicalParams& p) {
    const FreeCtx c = make_ctx(r, t, p);
    const Complex S = moshinsky_sum(r, p.a, c);
    const Complex Sd = moshinsky_sum_dr(r, p.a, c);
    return c.N0 * (Sd / r - S / (r * r));
}

Complex psi_free_approx(double r, double t, const PhysicalParams& p) {
    const FreeCtx c = make_ctx(r, t, p);
    if (!(r > 10.0 * p.a && p.a * r / c.tau > 10.0 * M_PI))
        throw std::domain_error(
            "psi_free_approx: outside validity region (r > 10 a, ar/tau > 10 pi)");
    return eval_far(r, p, c).psi;
}

FreeWaveSample log_derivative(double r, double t, const PhysicalParams& p,
                              const FreeFieldOptions& opt) {
    const FreeCtx c = make_ctx(r, t, p);
    FreeWaveSample s;
    if (far_field_ok(r, c.tau, p, opt)) {
        const FarEval fe = eval_far(r, p, c);
        s.psi = fe.psi;
        s.node = fe.sin_d * fe.sin_d < opt.node_floor;
        if (!s.node) {
            s.R_part = fe.Rp;
            s.I_part = fe.Ip;
            s.dpsi_dr = fe.psi * Complex(fe.Rp, fe.Ip);
        }
        return s;
    }
    const Complex S = moshinsky_sum(r, p.a, c);
    const Complex Sd = moshinsky_sum_dr(r, p.a, c);
    s.psi = c.N0 * S / r;
    s.dpsi_dr = c.N0 * (Sd / r - S / (r * r));
    const double env = moshinsky_sum_envelope(r, p.a, c);
    if (std::norm(S) < opt.node_floor * env * env) {
        s.node = true;
        return s;
    }
    const Complex logd = s.dpsi_dr / s.psi;
    s.R_part = logd.real();
    s.I_part = logd.imag();
    return s;
}

PolarRates guiding_rhs(const PolarState& state, const PhysicalParams& p,
                       const FreeFieldOptions& opt) {
    const FreeWaveSample s = log_derivative(state.R, state.t, p, opt);
    PolarRates rates;
    rates.node = s.node;
    if (s.node) return rates;
    rates.dR = p.hbar / p.m * s.I_part;
    rates.dTheta = 0.0;
    rates.dPhi = -p.hbar / (p.m * state.R) * s.R_part;
    return rates;
}

TrajectoryRecord integrate_to_detector(const Vec3& R0, const Vec3& s_hat,
                                       const PhysicalParams& p,
                                       const FreeFieldOptions& fopt,
                                       const IntegratorOptions& iopt) {
    p.validate();
    const double R0n = R0.norm();
    if (!(R0n > 0.0 && R0n < p.a))
        throw std::domain_error("integrate_to_detector: ||R0|| in (0, a) required");
    const Vec3 s = s_hat.normalized();
    const double theta = std::acos(std::min(1.0, std::max(-1.0, R0.dot(s) / R0n)));

    // Azimuth of R0 in a deterministic frame perpendicular to s.
    Vec3 e1 = (std::abs(s.z) < 0.9) ? Vec3{0, 0, 1}.cross(s) : Vec3{1, 0, 0}.cross(s);
    e1 = e1.normalized();
    const Vec3 e2 = s.cross(e1);
    const double phi0 = std::atan2(R0.dot(e2), R0.dot(e1));

    TrajectoryRecord rec;
    rec.R0 = R0;

    const double tau_unit = p.m * p.a * p.a / p.hbar; // time scale m a^2/hbar
    double t = p.t0 + iopt.start_tau * tau_unit;
    const double t_max = p.t0 + iopt.t_max_factor * p.m * p.L * p.a / (p.hbar * M_PI);
    StateN<2> y{R0n, phi0};

    auto rhs = [&](double tt, const StateN<2>& yy, StateN<2>& dydt) {
        PolarState st{yy[0], theta, yy[1], tt};
        const PolarRates r = guiding_rhs(st, p, fopt);
        if (r.node) return false;
        dydt[0] = r.dR;
        dydt[1] = r.dPhi;
        return true;
    };

    auto push_path = [&](double tt, const StateN<2>& yy) {
        if (iopt.record_path) rec.path.push_back({yy[0], theta, yy[1], tt});
    };
    push_path(t, y);

    double h = 0.5 * iopt.start_tau * tau_unit;
    StateN<2> k1{};
    bool have_k1 = false;
    int node_retries = 0;

    while (t < t_max) {
        if (t + h > t_max) h = t_max - t;
        auto att = rk45_try_step<2>(rhs, t, y, h, have_k1 ? &k1 : nullptr, iopt.rtol,
                                    iopt.atol);
        if (!att.rhs_ok) {
            have_k1 = false;
            h *= 0.5;
            if (++node_retries > iopt.max_node_retries || h < 1e-15 * std::max(1.0, t)) {
                rec.status = TrajectoryStatus::NodeEncounter;
                return rec;
            }
            continue;
        }
        node_retries = 0;
        if (att.err > 1.0) {
            h = rk45_next_h(h, att.err);
            continue;
        }
        ++rec.n_steps;
        const double t_new = t + h;
        if (att.y_new[0] >= p.L) {
            // Crossing inside [t, t_new]: Hermite initial guess, then Newton
            // polish against freshly integrated values of R.
            double lo = t, hi = t_new;
            auto hermite_R = [&](double tt) {
                const double u = (tt - t) / h;
                const double R0v = y[0], R1v = att.y_new[0];
                const double m0 = h * att.k1[0], m1 = h * att.k_end[0];
                const double u2 = u * u, u3 = u2 * u;
                return (2 * u3 - 3 * u2 + 1) * R0v + (u3 - 2 * u2 + u) * m0 +
                       (-2 * u3 + 3 * u2) * R1v + (u3 - u2) * m1;
            };
            double tc = hi;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (hermite_R(mid) < p.L) lo = mid; else hi = mid;
            }
            tc = 0.5 * (lo + hi);
            // Newton polish with true integration from the step start.
            double Rc = 0.0, dRc = 0.0;
            for (int it = 0; it < 8; ++it) {
                auto fine = rk45_try_step<2>(rhs, t, y, tc - t, &att.k1, iopt.rtol,
                                             iopt.atol);
                if (!fine.rhs_ok) break;
                Rc = fine.y_new[0];
                dRc = fine.k_end[0];
                if (std::abs(Rc - p.L) <= 1e-10 * p.L || dRc == 0.0) {
                    y = fine.y_new;
                    break;
                }
                tc -= (Rc - p.L) / dRc;
                tc = std::min(std::max(tc, t), t_new + h);
            }
            rec.t1 = tc;
            rec.tf = tc - p.t0;
            rec.p = p.m * p.L / rec.tf;
            rec.status = TrajectoryStatus::Ok;
            push_path(tc, y);
            return rec;
        }
        t = t_new;
        y = att.y_new;
        k1 = att.k_end;
        have_k1 = true;
        push_path(t, y);
        h = rk45_next_h(h, att.err);
    }
    rec.status = TrajectoryStatus::MaxTimeExceeded;
    return rec;
}

} // namespace bohm
