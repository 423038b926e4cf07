#include "bohm/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bohm/quadrature.hpp"
#include "bohm/rng.hpp"

namespace bohm {
namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

Vec3 draw_position(std::mt19937_64& rng, const QehRadialSampler& sampler) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double r = sampler.invert(unif(rng));
    const double cos_th = 1.0 - 2.0 * unif(rng);
    const double sin_th = std::sqrt(std::max(0.0, 1.0 - cos_th * cos_th));
    const double phi = 2.0 * M_PI * unif(rng);
    return {r * sin_th * std::cos(phi), r * sin_th * std::sin(phi), r * cos_th};
}

// Per-bin masses of a density on uniform bins (2-panel Simpson each).
std::vector<double> bin_masses(const Histogram& h,
                               const std::function<double(double)>& density) {
    std::vector<double> mass(h.counts.size());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double lo = h.edges[i], hi = h.edges[i + 1];
        const double mid = 0.5 * (lo + hi);
        mass[i] = (hi - lo) / 6.0 * (density(lo) + 4.0 * density(mid) + density(hi));
    }
    return mass;
}

} // namespace

double DensityCurve::trapezoid() const {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

QehRadialSampler::QehRadialSampler(const PhysicalParams& p) : a_(p.a) {
    constexpr int kTable = 2048;
    table_r_.resize(kTable + 1);
    table_F_.resize(kTable + 1);
    for (int i = 0; i <= kTable; ++i) {
        const double r = a_ * i / kTable;
        table_r_[i] = r;
        table_F_[i] = radius_cdf(r);
    }
}

double QehRadialSampler::radius_cdf(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= a_) return 1.0;
    return r / a_ - std::sin(2.0 * M_PI * r / a_) / (2.0 * M_PI);
}

double QehRadialSampler::invert(double u) const {
    u = std::min(std::max(u, 0.0), 1.0);
    auto it = std::lower_bound(table_F_.begin(), table_F_.end(), u);
    std::size_t hi_i = std::min<std::size_t>(it - table_F_.begin(), table_F_.size() - 1);
    double lo = table_r_[hi_i > 0 ? hi_i - 1 : 0], hi = table_r_[hi_i];
    double r = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double F = radius_cdf(r) - u;
        if (std::abs(F) < 1e-14) break;
        if (F > 0.0) hi = r; else lo = r;
        const double f = (1.0 - std::cos(2.0 * M_PI * r / a_)) / a_; // density
        double r_new = (f > 1e-8) ? r - F / f : 0.5 * (lo + hi);
        if (!(r_new > lo && r_new < hi)) r_new = 0.5 * (lo + hi);
        r = r_new;
    }
    return r;
}

std::vector<Vec3> sample_initial_positions(long n, std::uint64_t seed,
                                           const PhysicalParams& p) {
    if (n < 1)
        throw std::invalid_argument("sample_initial_positions: n >= 1");
    const QehRadialSampler sampler(p);
    std::vector<Vec3> out(n);
    for (long i = 0; i < n; ++i) {
        auto rng = trajectory_rng(seed, static_cast<std::uint64_t>(i));
        out[i] = draw_position(rng, sampler);
    }
    return out;
}

double lambda_qm(double p_mom, const PhysicalParams& p) {
    if (p_mom < 0.0)
        throw std::domain_error("lambda_qm: p >= 0 required");
    const double q = p_mom * p.a / p.hbar;
    const double d = q - M_PI; // sin^2 q/(pi^2-q^2)^2 = sinc^2(d)/(pi+q)^2
    const double s = sinc(d) / (M_PI + q);
    return 4.0 * M_PI * p.a / p.hbar * s * s;
}

double pi_dbb(double t1, const PhysicalParams& p) {
    const Complex psi = psi_free(p.L, t1, p);
    const Complex dpsi = psi_free_dr(p.L, t1, p);
    const double flux = (std::conj(psi) * dpsi).imag();
    return p.hbar / p.m * 4.0 * M_PI * p.L * p.L * flux;
}

DensityCurve tof_to_momentum_density(const DensityCurve& curve,
                                     const PhysicalParams& p) {
    DensityCurve out;
    const std::size_t n = curve.x.size();
    out.x.resize(n);
    out.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tf = curve.x[n - 1 - i];
        if (!(tf > 0.0))
            throw std::domain_error("tof_to_momentum_density: t_f > 0 required");
        const double mom = p.m * p.L / tf;
        out.x[i] = mom;
        out.y[i] = p.m * p.L / (mom * mom) * curve.y[n - 1 - i];
    }
    return out;
}

ExperimentResult run_tof_experiment(const ExperimentConfig& cfg) {
    cfg.params.validate();
    if (cfg.n < 1)
        throw std::invalid_argument("run_tof_experiment: n >= 1");

    const QehRadialSampler sampler(cfg.params);
    const Vec3 s_hat = spin_vector(cfg.chi);

    ExperimentResult res;
    res.records.resize(cfg.n);
    std::atomic<long> next{0};
    std::atomic<long> node_resamples{0};

    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= cfg.n) break;
            auto rng = trajectory_rng(cfg.seed, static_cast<std::uint64_t>(i));
            IntegratorOptions iopt = cfg.integ;
            iopt.record_path = i < cfg.record_paths;
            TrajectoryRecord rec;
            for (int attempt = 0; attempt < 50; ++attempt) {
                const Vec3 R0 = draw_position(rng, sampler);
                rec = integrate_to_detector(R0, s_hat, cfg.params, cfg.field, iopt);
                if (rec.status != TrajectoryStatus::NodeEncounter) break;
                node_resamples.fetch_add(1);
            }
            res.records[i] = std::move(rec);
        }
    };

    const int nthreads = cfg.threads > 0
                             ? cfg.threads
                             : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    res.node_resamples = node_resamples.load();

    std::vector<double> tf, mom;
    tf.reserve(cfg.n);
    mom.reserve(cfg.n);
    for (const auto& r : res.records) {
        if (r.status == TrajectoryStatus::Ok) {
            tf.push_back(r.tf);
            mom.push_back(r.p);
        } else {
            ++res.failures;
        }
    }
    if (res.failures > cfg.max_failure_fraction * cfg.n)
        throw std::runtime_error("run_tof_experiment: failure fraction exceeded");

    // Histograms over quantile-trimmed ranges.
    const double tf_lo = quantile(tf, cfg.trim_lo), tf_hi = quantile(tf, cfg.trim_hi);
    const double p_lo = quantile(mom, cfg.trim_lo), p_hi = quantile(mom, cfg.trim_hi);
    res.tof_hist = Histogram::uniform(tf_lo, tf_hi, cfg.bins);
    res.p_hist = Histogram::uniform(p_lo, p_hi, cfg.bins);
    for (double v : tf) res.tof_hist.add(v);
    for (double v : mom) res.p_hist.add(v);

    // Reference curves on matching (finer) grids.
    const int curve_pts = cfg.bins * 5 + 1;
    res.pi_curve.x.resize(curve_pts);
    res.pi_curve.y.resize(curve_pts);
    for (int i = 0; i < curve_pts; ++i) {
        const double t1 = cfg.params.t0 + tf_lo + (tf_hi - tf_lo) * i / (curve_pts - 1);
        res.pi_curve.x[i] = t1 - cfg.params.t0;
        res.pi_curve.y[i] = pi_dbb(t1, cfg.params);
    }
    res.lambda_curve.x.resize(curve_pts);
    res.lambda_curve.y.resize(curve_pts);
    for (int i = 0; i < curve_pts; ++i) {
        const double pv = p_lo + (p_hi - p_lo) * i / (curve_pts - 1);
        res.lambda_curve.x[i] = pv;
        res.lambda_curve.y[i] = lambda_qm(pv, cfg.params);
    }

    // Goodness of fit.
    const double n_ok = static_cast<double>(tf.size());
    auto pi_of_tf = [&](double t) { return pi_dbb(cfg.params.t0 + t, cfg.params); };
    auto lam = [&](double pv) { return lambda_qm(pv, cfg.params); };
    {
        auto mass = bin_masses(res.tof_hist, pi_of_tf);
        std::vector<double> obs(res.tof_hist.counts.begin(), res.tof_hist.counts.end());
        std::vector<double> expd(mass.size());
        for (std::size_t i = 0; i < mass.size(); ++i) expd[i] = mass[i] * n_ok;
        res.gof.tof_chi2 = chi2_gof(obs, expd);
    }
    {
        auto mass = bin_masses(res.p_hist, lam);
        std::vector<double> obs(res.p_hist.counts.begin(), res.p_hist.counts.end());
        std::vector<double> expd(mass.size());
        for (std::size_t i = 0; i < mass.size(); ++i) expd[i] = mass[i] * n_ok;
        res.gof.p_chi2 = chi2_gof(obs, expd);
    }
    {
        Histogram coarse = Histogram::uniform(p_lo, p_hi, cfg.compare_bins);
        for (double v : mom) coarse.add(v);
        const auto dens = coarse.density();
        const auto mass = bin_masses(coarse, lam);
        double peak = 0.0;
        for (std::size_t i = 0; i < mass.size(); ++i)
            peak = std::max(peak, mass[i] / coarse.bin_width());
        double sup = 0.0;
        for (std::size_t i = 0; i < mass.size(); ++i)
            sup = std::max(sup, std::abs(dens[i] - mass[i] / coarse.bin_width()));
        res.gof.p_supnorm_of_peak = sup / peak;
    }
    {
        const double tau_unit = cfg.params.m * cfg.params.a * cfg.params.a / cfg.params.hbar;
        const double t_start = cfg.params.t0 + cfg.integ.start_tau * tau_unit;
        const double t_max = cfg.params.t0 + cfg.integ.t_max_factor * cfg.params.m *
                                                 cfg.params.L * cfg.params.a /
                                                 (cfg.params.hbar * M_PI);
        res.gof.pi_norm = adaptive_simpson(
            [&](double t) { return pi_dbb(t, cfg.params); }, t_start, t_max, 1e-6);
        const double p_min = cfg.params.m * cfg.params.L / (t_max - cfg.params.t0);
        res.gof.pi_tail_mass = adaptive_simpson(lam, 0.0, p_min, 1e-9);
    }
    return res;
}

} // namespace bohm
