// bohmbox: command-line driver emitting figure data for the spherical-box
// Bohmian simulator. Subcommands:
//   bound-orbit  closed-form vs numeric orbit path + omega tables
//   free-evolve  released wave-function profiles at chosen reduced times
//   tof-run      full Monte Carlo time-of-flight experiment

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohm/dynamics_bound.hpp"
#include "bohm/dynamics_free.hpp"
#include "bohm/ensemble.hpp"
#include "bohm/io.hpp"
#include "bohm/quadrature.hpp"
#include "bohm/rk45.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitStatistical = 4;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int threads = -1;
    int paths = -1;
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonFlags& fl)
{
    cmd->add_option("--config", fl.config_path, "JSON config file");
    cmd->add_option("--out", fl.out_dir, "output directory");
    cmd->add_option("--seed", fl.seed, "override the RNG seed");
    cmd->add_option("--threads", fl.threads, "worker threads (0 = hardware)");
    cmd->add_option("--paths", fl.paths, "dump the first K full trajectories");
    cmd->add_flag("--strict", fl.strict,
                  "treat statistical-test failure as a nonzero exit");
}

bohm::RunConfig resolve_config(const CommonFlags& fl)
{
    bohm::RunConfig cfg;
    if (!fl.config_path.empty()) cfg = bohm::load_config_file(fl.config_path);
    if (!fl.out_dir.empty()) cfg.out_dir = fl.out_dir;
    if (fl.seed >= 0) cfg.exp.seed = static_cast<std::uint64_t>(fl.seed);
    if (fl.threads >= 0) cfg.exp.threads = fl.threads;
    if (fl.paths >= 0) cfg.exp.record_paths = fl.paths;
    cfg.strict = cfg.strict || fl.strict;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string join(const std::string& dir, const std::string& name)
{
    return (std::filesystem::path(dir) / name).string();
}

int run_bound_orbit(const CommonFlags& fl)
{
    const auto cfg = resolve_config(fl);
    const auto& p = cfg.exp.params;
    const bohm::Regime regime = cfg.orbit_regime == "relativistic"
                                    ? bohm::Regime::Relativistic
                                    : bohm::Regime::Nonrelativistic;
    const bohm::Vec3 s_hat = bohm::spin_vector(cfg.exp.chi);
    const auto spec = bohm::make_orbit(cfg.orbit_R0, s_hat, regime, p);
    const double period =
        spec.omega > 0 ? 2.0 * std::numbers::pi / spec.omega : 1.0;

    // Numeric integration of the velocity field alongside the closed form.
    std::ofstream orbit(join(cfg.out_dir, "orbit.csv"));
    orbit.precision(17);
    orbit << "t,x,y,z,x_num,y_num,z_num,deviation\n";
    std::array<double, 3> y{cfg.orbit_R0.x, cfg.orbit_R0.y, cfg.orbit_R0.z};
    auto rhs = [&](double, const std::array<double, 3>& q,
                   std::array<double, 3>& dq) {
        const auto v =
            bohm::velocity_bound({q[0], q[1], q[2]}, s_hat, p, regime);
        dq = {v.x, v.y, v.z};
        return true;
    };
    double t = 0.0, h = period / 1024.0, max_dev = 0.0;
    const double dt_out = period / cfg.orbit_samples;
    double next_out = 0.0;
    std::array<double, 3> k1{};
    bool have_k1 = false;
    while (t < period) {
        if (t >= next_out) {
            const auto closed = bohm::orbit_position(t, spec);
            const double dev = std::sqrt((y[0] - closed.x) * (y[0] - closed.x) +
                                         (y[1] - closed.y) * (y[1] - closed.y) +
                                         (y[2] - closed.z) * (y[2] - closed.z));
            max_dev = std::max(max_dev, dev);
            orbit << t << ',' << closed.x << ',' << closed.y << ',' << closed.z
                  << ',' << y[0] << ',' << y[1] << ',' << y[2] << ',' << dev
                  << '\n';
            next_out += dt_out;
        }
        h = std::min(h, period - t);
        auto att = bohm::rk45_try_step<3>(rhs, t, y, h, have_k1 ? &k1 : nullptr,
                                          1e-10, 1e-12);
        if (att.err <= 1.0) {
            t += h;
            y = att.y_new;
            k1 = att.k_end;
            have_k1 = true;
        } else {
            have_k1 = false;
        }
        h = bohm::rk45_next_h(h, att.err);
    }
    std::printf("bound-orbit: omega = %.12g, period = %.12g, max |numeric - "
                "closed| = %.3g\n",
                spec.omega, period, max_dev);

    // omega_0 / omega_0R profile over the box radius.
    std::ofstream table(join(cfg.out_dir, "omega_table.csv"));
    table.precision(17);
    table << "R0_over_a,omega_nr,omega_rel\n";
    for (int i = 1; i <= cfg.omega_table_points; ++i) {
        const double r = p.a * i / (cfg.omega_table_points + 1.0);
        table << r / p.a << ',' << bohm::omega_nr(r, p) << ','
              << bohm::omega_rel(r, p) << '\n';
    }
    bohm::write_manifest(join(cfg.out_dir, "manifest.json"), cfg, nullptr);
    if (max_dev >= 1e-7) {
        std::cerr << "bound-orbit: numeric/closed-form deviation " << max_dev
                  << " exceeds 1e-7\n";
        return kExitNumeric;
    }
    return 0;
}

int run_free_evolve(const CommonFlags& fl)
{
    const auto cfg = resolve_config(fl);
    const auto& p = cfg.exp.params;
    const double tau_unit = p.m * p.a * p.a / p.hbar;
    for (double tau : cfg.tau_list) {
        const double t = p.t0 + tau * tau_unit;
        char name[64];
        std::snprintf(name, sizeof name, "psi_tau_%g.csv", tau);
        std::ofstream out(join(cfg.out_dir, name));
        out.precision(17);
        // Radial norm via the same profile integrand, refined by adaptive
        // Simpson on |psi|^2 r^2.
        auto density = [&](double r) {
            const auto psi = bohm::psi_free(r, t, p);
            return std::norm(psi) * r * r;
        };
        // front at a + k tau; momenta above k ~ 80/a carry < 1e-5 mass
        const double r_up =
            p.a * (3.0 + 80.0 * tau + 10.0 * std::sqrt(tau));
        double norm =
            4.0 * std::numbers::pi *
            bohm::adaptive_simpson(density, 1e-9, r_up, 1e-8, 24);
        out << "r,re_psi,im_psi,abs_psi,norm\n";
        for (int i = 0; i <= cfg.profile_points; ++i) {
            const double r =
                1e-6 * p.a + (cfg.profile_r_max * p.a - 1e-6 * p.a) * i /
                                 cfg.profile_points;
            const auto psi = bohm::psi_free(r, t, p);
            out << r << ',' << psi.real() << ',' << psi.imag() << ','
                << std::abs(psi) << ',' << norm << '\n';
        }
        std::printf("free-evolve: tau = %g -> %s (norm = %.10f)\n", tau, name,
                    norm);
        if (std::abs(norm - 1.0) > 1e-3) {
            std::cerr << "free-evolve: norm deviates from 1 by "
                      << std::abs(norm - 1.0) << '\n';
            return kExitNumeric;
        }
    }
    bohm::write_manifest(join(cfg.out_dir, "manifest.json"), cfg, nullptr);
    return 0;
}

int run_tof(const CommonFlags& fl)
{
    const auto cfg = resolve_config(fl);
    const auto result = bohm::run_tof_experiment(cfg.exp);
    bohm::write_records_csv(join(cfg.out_dir, "records.csv"), result.records);
    bohm::write_hist_csv(join(cfg.out_dir, "tof_hist.csv"), result.tof_hist,
                         "tf", "m a^2/hbar");
    bohm::write_hist_csv(join(cfg.out_dir, "p_hist.csv"), result.p_hist, "p",
                         "hbar/a");
    bohm::write_curve_csv(join(cfg.out_dir, "lambda_qm.csv"),
                          result.lambda_curve, "p", "lambda_qm");
    bohm::write_curve_csv(join(cfg.out_dir, "pi_dbb.csv"), result.pi_curve,
                          "t1", "pi_dbb");
    const bohm::Vec3 s_hat = bohm::spin_vector(cfg.exp.chi);
    for (int i = 0; i < cfg.exp.record_paths &&
                    i < static_cast<int>(result.records.size());
         ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "path_%04d.csv", i);
        bohm::write_path_csv(join(cfg.out_dir, name), result.records[i], s_hat);
    }
    bohm::write_manifest(join(cfg.out_dir, "manifest.json"), cfg, &result);
    std::printf("tof-run: %zu trajectories, %ld failures, %ld node resamples\n",
                result.records.size(), result.failures, result.node_resamples);
    std::printf("  momentum chi2 = %.3f (dof %d, p = %.4g), sup-norm/peak = "
                "%.4f\n",
                result.gof.p_chi2.chi2, result.gof.p_chi2.dof,
                result.gof.p_chi2.pvalue, result.gof.p_supnorm_of_peak);
    std::printf("  ToF chi2 = %.3f (dof %d, p = %.4g)\n",
                result.gof.tof_chi2.chi2, result.gof.tof_chi2.dof,
                result.gof.tof_chi2.pvalue);
    const bool stats_ok = result.gof.p_chi2.pvalue > 0.001 &&
                          result.gof.tof_chi2.pvalue > 0.001 &&
                          result.gof.p_supnorm_of_peak < 0.05;
    if (!stats_ok) {
        std::cerr << "tof-run: statistical comparison against the analytic "
                     "densities failed\n";
        if (cfg.strict) return kExitStatistical;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"de Broglie-Bohm spherical-box simulator"};
    app.require_subcommand(1);

    CommonFlags fl_orbit, fl_free, fl_tof;
    auto* orbit = app.add_subcommand(
        "bound-orbit", "closed-form vs numeric bound orbit and omega tables");
    add_common(orbit, fl_orbit);
    auto* freeev = app.add_subcommand(
        "free-evolve", "released wave-function profiles at chosen times");
    add_common(freeev, fl_free);
    auto* tof = app.add_subcommand("tof-run",
                                   "Monte Carlo time-of-flight experiment");
    add_common(tof, fl_tof);

    CLI11_PARSE(app, argc, argv);

    try {
        if (orbit->parsed()) return run_bound_orbit(fl_orbit);
        if (freeev->parsed()) return run_free_evolve(fl_free);
        if (tof->parsed()) return run_tof(fl_tof);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const std::string msg = e.what();
        if (msg.find("config") != std::string::npos ||
            msg.find("parse") != std::string::npos)
            return kExitConfig;
        return kExitNumeric;
    }
    return 0;
}
