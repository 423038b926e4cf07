#pragma once

#include <cstdint>
#include <vector>

#include "bohm/dynamics_free.hpp"
#include "bohm/histogram.hpp"
#include "bohm/quantum_state.hpp"
#include "bohm/stats.hpp"
#include "bohm/vec3.hpp"

namespace bohm {

/// Tabulated analytic density over an abscissa grid.
struct DensityCurve {
    std::vector<double> x;
    std::vector<double> y;
    double trapezoid() const;
};

/// Inverse-CDF sampler for the quantum-equilibrium radial marginal
/// f(r) = (2/a) sin^2(pi r/a); CDF F(r) = r/a - sin(2 pi r/a)/(2 pi).
class QehRadialSampler {
  public:
    explicit QehRadialSampler(const PhysicalParams& p);
    double radius_cdf(double r) const;
    /// F^{-1}(u), table bracket + Newton polish to |F - u| < 1e-13.
    double invert(double u) const;

  private:
    double a_;
    std::vector<double> table_r_, table_F_;
};

/// n initial positions drawn per Born's rule from the ground state:
/// radius from f(r), direction uniform on the sphere. Deterministic given
/// seed; draw i depends only on (seed, i).
std::vector<Vec3> sample_initial_positions(long n, std::uint64_t seed,
                                           const PhysicalParams& p);

/// Momentum-magnitude density of the ground state,
///   Lambda_QM(p) = (4 pi a/hbar) sin^2(pa/hbar) / [pi^2 - (pa/hbar)^2]^2,
/// evaluated in a form stable through the removable point pa/hbar = pi.
double lambda_qm(double p_mom, const PhysicalParams& p);

/// Arrival-time density: probability flux through the detector sphere,
///   Pi_dBB(t1) = (hbar/m) (4 pi L^2) Im[psi_>^* dpsi_>/dr](L, t1).
double pi_dbb(double t1, const PhysicalParams& p);

/// Change of variables p = m L / t_f applied to a ToF density curve:
/// Lambda(p) = (m L / p^2) Pi(m L / p). The grid is reversed so p ascends.
DensityCurve tof_to_momentum_density(const DensityCurve& curve,
                                     const PhysicalParams& p);

struct ExperimentConfig {
    PhysicalParams params;
    SpinorPair chi;
    long n = 20000;
    std::uint64_t seed = 12345;
    int bins = 200;
    int compare_bins = 16;      ///< coarse bins for the sup-norm comparison
    double trim_lo = 0.001;     ///< histogram range quantiles
    double trim_hi = 0.999;
    FreeFieldOptions field;
    IntegratorOptions integ;
    int threads = 0;            ///< 0 = hardware concurrency
    int record_paths = 0;       ///< keep full paths for the first K trajectories
    double max_failure_fraction = 0.001;
};

struct GofSummary {
    Chi2Result tof_chi2;          ///< ToF histogram vs Pi_dBB
    Chi2Result p_chi2;            ///< momentum histogram vs Lambda_QM
    double p_supnorm_of_peak = 0; ///< sup |density - Lambda| / peak Lambda
    double pi_norm = 0;           ///< integral of Pi_dBB up to t_max
    double pi_tail_mass = 0;      ///< estimated mass beyond t_max
};

struct ExperimentResult {
    std::vector<TrajectoryRecord> records;
    Histogram tof_hist;
    Histogram p_hist;
    DensityCurve pi_curve;     ///< Pi_dBB tabulated over the ToF range
    DensityCurve lambda_curve; ///< Lambda_QM tabulated over the momentum range
    long node_resamples = 0;
    long failures = 0;
    GofSummary gof;
};

/// Runs the full Monte Carlo time-of-flight experiment. Deterministic given
/// the seed, independent of thread count. Throws if more than
/// max_failure_fraction of trajectories fail.
ExperimentResult run_tof_experiment(const ExperimentConfig& cfg);

} // namespace bohm
