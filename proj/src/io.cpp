#include "bohm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bohm {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error("expected [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json params_to_json(const PhysicalParams& p)
{
    return json{{"a", p.a},   {"m", p.m},   {"hbar", p.hbar},
                {"c", p.c},   {"t0", p.t0}, {"L", p.L}};
}

void params_from_json(const json& j, PhysicalParams& p)
{
    p.a = j.value("a", p.a);
    p.m = j.value("m", p.m);
    p.hbar = j.value("hbar", p.hbar);
    p.c = j.value("c", p.c);
    p.t0 = j.value("t0", p.t0);
    p.L = j.value("L", p.L);
}

const char* status_name(TrajectoryStatus s)
{
    switch (s) {
    case TrajectoryStatus::Ok: return "ok";
    case TrajectoryStatus::NodeEncounter: return "node";
    case TrajectoryStatus::MaxTimeExceeded: return "max_time";
    }
    return "unknown";
}

} // namespace

std::string config_to_json(const RunConfig& cfg)
{
    json j;
    j["params"] = params_to_json(cfg.exp.params);
    j["spin"] = {{"up", complex_to_json(cfg.exp.chi.up)},
                 {"down", complex_to_json(cfg.exp.chi.down)}};
    j["experiment"] = {{"n", cfg.exp.n},
                       {"seed", cfg.exp.seed},
                       {"bins", cfg.exp.bins},
                       {"compare_bins", cfg.exp.compare_bins},
                       {"trim_lo", cfg.exp.trim_lo},
                       {"trim_hi", cfg.exp.trim_hi},
                       {"threads", cfg.exp.threads},
                       {"record_paths", cfg.exp.record_paths},
                       {"max_failure_fraction", cfg.exp.max_failure_fraction}};
    j["field"] = {{"far_r_over_a", cfg.exp.field.far_r_over_a},
                  {"far_x_over_pi", cfg.exp.field.far_x_over_pi},
                  {"node_floor", cfg.exp.field.node_floor}};
    j["integrator"] = {{"rtol", cfg.exp.integ.rtol},
                       {"atol", cfg.exp.integ.atol},
                       {"t_max_factor", cfg.exp.integ.t_max_factor},
                       {"start_tau", cfg.exp.integ.start_tau},
                       {"max_node_retries", cfg.exp.integ.max_node_retries}};
    j["out_dir"] = cfg.out_dir;
    j["strict"] = cfg.strict;
    j["bound_orbit"] = {{"R0", {cfg.orbit_R0.x, cfg.orbit_R0.y, cfg.orbit_R0.z}},
                        {"regime", cfg.orbit_regime},
                        {"samples", cfg.orbit_samples},
                        {"omega_table_points", cfg.omega_table_points}};
    j["free_evolve"] = {{"tau_list", cfg.tau_list},
                        {"profile_r_max", cfg.profile_r_max},
                        {"profile_points", cfg.profile_points}};
    return j.dump(2);
}

RunConfig config_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    if (j.contains("params")) params_from_json(j["params"], cfg.exp.params);
    if (j.contains("spin")) {
        cfg.exp.chi = SpinorPair(complex_from_json(j["spin"]["up"]),
                                 complex_from_json(j["spin"]["down"]));
    }
    if (j.contains("experiment")) {
        const json& e = j["experiment"];
        cfg.exp.n = e.value("n", cfg.exp.n);
        cfg.exp.seed = e.value("seed", cfg.exp.seed);
        cfg.exp.bins = e.value("bins", cfg.exp.bins);
        cfg.exp.compare_bins = e.value("compare_bins", cfg.exp.compare_bins);
        cfg.exp.trim_lo = e.value("trim_lo", cfg.exp.trim_lo);
        cfg.exp.trim_hi = e.value("trim_hi", cfg.exp.trim_hi);
        cfg.exp.threads = e.value("threads", cfg.exp.threads);
        cfg.exp.record_paths = e.value("record_paths", cfg.exp.record_paths);
        cfg.exp.max_failure_fraction =
            e.value("max_failure_fraction", cfg.exp.max_failure_fraction);
    }
    if (j.contains("field")) {
        const json& f = j["field"];
        cfg.exp.field.far_r_over_a = f.value("far_r_over_a", cfg.exp.field.far_r_over_a);
        cfg.exp.field.far_x_over_pi = f.value("far_x_over_pi", cfg.exp.field.far_x_over_pi);
        cfg.exp.field.node_floor = f.value("node_floor", cfg.exp.field.node_floor);
    }
    if (j.contains("integrator")) {
        const json& it = j["integrator"];
        cfg.exp.integ.rtol = it.value("rtol", cfg.exp.integ.rtol);
        cfg.exp.integ.atol = it.value("atol", cfg.exp.integ.atol);
        cfg.exp.integ.t_max_factor = it.value("t_max_factor", cfg.exp.integ.t_max_factor);
        cfg.exp.integ.start_tau = it.value("start_tau", cfg.exp.integ.start_tau);
        cfg.exp.integ.max_node_retries =
            it.value("max_node_retries", cfg.exp.integ.max_node_retries);
    }
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.strict = j.value("strict", cfg.strict);
    if (j.contains("bound_orbit")) {
        const json& b = j["bound_orbit"];
        if (b.contains("R0")) {
            const json& r = b["R0"];
            cfg.orbit_R0 = Vec3{r[0].get<double>(), r[1].get<double>(), r[2].get<double>()};
        }
        cfg.orbit_regime = b.value("regime", cfg.orbit_regime);
        cfg.orbit_samples = b.value("samples", cfg.orbit_samples);
        cfg.omega_table_points = b.value("omega_table_points", cfg.omega_table_points);
    }
    if (j.contains("free_evolve")) {
        const json& f = j["free_evolve"];
        if (f.contains("tau_list"))
            cfg.tau_list = f["tau_list"].get<std::vector<double>>();
        cfg.profile_r_max = f.value("profile_r_max", cfg.profile_r_max);
        cfg.profile_points = f.value("profile_points", cfg.profile_points);
    }
    cfg.exp.params.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.precision(17);
    return out;
}

} // namespace

void write_records_csv(const std::string& path,
                       const std::vector<TrajectoryRecord>& records)
{
    auto out = open_out(path);
    out << "R0x,R0y,R0z,t1,tf,p,status\n";
    for (const auto& r : records) {
        out << r.R0.x << ',' << r.R0.y << ',' << r.R0.z << ',' << r.t1 << ','
            << r.tf << ',' << r.p << ',' << status_name(r.status) << '\n';
    }
}

void write_hist_csv(const std::string& path, const Histogram& h,
                    const std::string& quantity, const std::string& unit)
{
    auto out = open_out(path);
    out << quantity << "_lo," << quantity << "_hi,count,density\n";
    out << "# unit: " << unit << ", total: " << h.total
        << ", overflow: " << h.overflow << '\n';
    const auto dens = h.density();
    for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
        out << h.edges[i] << ',' << h.edges[i + 1] << ',' << h.counts[i] << ','
            << dens[i] << '\n';
    }
}

void write_curve_csv(const std::string& path, const DensityCurve& c,
                     const std::string& xname, const std::string& yname)
{
    auto out = open_out(path);
    out << xname << ',' << yname << '\n';
    for (std::size_t i = 0; i < c.x.size(); ++i)
        out << c.x[i] << ',' << c.y[i] << '\n';
}

void write_path_csv(const std::string& path, const TrajectoryRecord& rec,
                    const Vec3& s_hat)
{
    auto out = open_out(path);
    out << "t,x,y,z\n";
    // Rebuild the Cartesian frame the integrator used: e3 = s_hat, e1 from
    // the initial position's transverse part.
    const Vec3 e3 = s_hat.normalized();
    Vec3 e1 = rec.R0 - rec.R0.dot(e3) * e3;
    if (e1.norm() < 1e-12 * rec.R0.norm())
        e1 = std::abs(e3.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = (e1 - e1.dot(e3) * e3).normalized();
    const Vec3 e2 = e3.cross(e1);
    for (const auto& s : rec.path) {
        const double st = std::sin(s.Theta), ct = std::cos(s.Theta);
        const Vec3 pos = s.R * (st * std::cos(s.Phi) * e1 +
                                st * std::sin(s.Phi) * e2 + ct * e3);
        out << s.t << ',' << pos.x << ',' << pos.y << ',' << pos.z << '\n';
    }
}

void write_manifest(const std::string& path, const RunConfig& cfg,
                    const ExperimentResult* result)
{
    json j = json::parse(config_to_json(cfg));
    j["version"] = "1.0";
    if (result) {
        j["result"] = {
            {"trajectories", static_cast<long>(result->records.size())},
            {"failures", result->failures},
            {"node_resamples", result->node_resamples},
            {"gof",
             {{"tof_chi2", result->gof.tof_chi2.chi2},
              {"tof_dof", result->gof.tof_chi2.dof},
              {"tof_pvalue", result->gof.tof_chi2.pvalue},
              {"p_chi2", result->gof.p_chi2.chi2},
              {"p_dof", result->gof.p_chi2.dof},
              {"p_pvalue", result->gof.p_chi2.pvalue},
              {"p_supnorm_of_peak", result->gof.p_supnorm_of_peak},
              {"pi_norm", result->gof.pi_norm},
              {"pi_tail_mass", result->gof.pi_tail_mass}}}};
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace bohm
