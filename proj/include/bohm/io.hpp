#pragma once

#include <string>
#include <vector>

#include "bohm/ensemble.hpp"

namespace bohm {

/// Full run configuration: experiment settings plus per-command extras and
/// output destination. Serialized as JSON (config file and run manifest).
struct RunConfig {
    ExperimentConfig exp;
    std::string out_dir = "out";
    bool strict = false;
    // bound-orbit command
    Vec3 orbit_R0{0.5, 0.0, 0.0};
    std::string orbit_regime = "nonrelativistic";
    int orbit_samples = 400;
    int omega_table_points = 200;
    // free-evolve command
    std::vector<double> tau_list{0.05, 0.2, 1.0};
    double profile_r_max = 8.0;
    int profile_points = 1600;
};

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// records.csv: R0x, R0y, R0z, t1, tf, p, status
void write_records_csv(const std::string& path,
                       const std::vector<TrajectoryRecord>& records);
/// Histogram as bin_lo, bin_hi, count, density
void write_hist_csv(const std::string& path, const Histogram& h,
                    const std::string& quantity, const std::string& unit);
void write_curve_csv(const std::string& path, const DensityCurve& c,
                     const std::string& xname, const std::string& yname);
/// Per-trajectory path dump: t, x, y, z in the s_hat frame of the run.
void write_path_csv(const std::string& path, const TrajectoryRecord& rec,
                    const Vec3& s_hat);

/// manifest.json capturing config, seed, version, failure counts and
/// goodness-of-fit summary; config_from_json(manifest) round-trips.
void write_manifest(const std::string& path, const RunConfig& cfg,
                    const ExperimentResult* result);

} // namespace bohm
