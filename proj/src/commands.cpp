#include "ite/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ite/acceptance.hpp"
#include "ite/bounds.hpp"
#include "ite/capacitor.hpp"
#include "ite/double_well.hpp"
#include "ite/ensemble.hpp"
#include "ite/info.hpp"

namespace ite {

namespace {

// ---- shared key groups ---------------------------------------------------

std::vector<ConfigKey> cell_keys() {
    return {
        {"units", "reduced", "reduced (kT = C = 1) or si"},
        {"tau", "1", "relaxation time R*C in reduced units"},
        {"temperature_K", "300", "cell temperature (si)"},
        {"resistance_ohm", "1e6", "resistance (si)"},
        {"capacitance_F", "1e-12", "capacitance (si)"},
    };
}

std::vector<ConfigKey> well_keys() {
    return {
        {"units", "reduced", "reduced (kT = 1) or si"},
        {"temperature_K", "300", "ambient temperature (si)"},
        {"x0", "1", "well position (m in si)"},
        {"gamma", "1", "damping (kg/s in si)"},
    };
}

std::vector<ConfigKey> run_keys(const std::string& n) {
    return {
        {"n", n, "trajectories per grid point"},
        {"seed", "42", "master seed"},
        {"workers", "1", "worker threads"},
    };
}

std::vector<ConfigKey> concat(std::initializer_list<std::vector<ConfigKey>> parts) {
    std::vector<ConfigKey> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

bool si_units(const Config& c) {
    const std::string& u = c.get_string("units");
    if (u == "si") return true;
    if (u == "reduced") return false;
    throw ConfigError("units must be 'reduced' or 'si'");
}

CellParams cell_from(const Config& c) {
    if (si_units(c)) {
        return CellParams::si(c.get_positive("temperature_K"), c.get_positive("resistance_ohm"),
                              c.get_positive("capacitance_F"));
    }
    return CellParams::reduced(c.get_positive("tau"));
}

DoubleWellParams well_from(const Config& c, double barrier_kT, double x0) {
    if (si_units(c)) {
        const double t = c.get_positive("temperature_K");
        DoubleWellParams p{barrier_kT * kBoltzmann * t, x0, c.get_positive("gamma"), t, kBoltzmann};
        p.validate();
        return p;
    }
    return DoubleWellParams::reduced(barrier_kT, x0, c.get_positive("gamma"));
}

unsigned workers_from(const Config& c) {
    const auto w = c.get_uint("workers");
    if (w < 1 || w > 1024) throw ConfigError("workers must lie in [1, 1024]");
    return static_cast<unsigned>(w);
}

std::size_t count_from(const Config& c, const std::string& key = "n") {
    const auto n = c.get_uint(key);
    if (n < 1) throw ConfigError(key + " must be at least 1");
    return static_cast<std::size_t>(n);
}

int side_from(const Config& c) {
    const auto s = c.get_uint("side");
    if (s > 1) throw ConfigError("side must be 0 or 1");
    return static_cast<int>(s);
}

std::vector<double> sorted_grid(const Config& c, const std::string& key) {
    auto grid = c.get_list(key);
    if (!std::is_sorted(grid.begin(), grid.end())) throw ConfigError(key + " must be sorted ascending");
    for (double v : grid) {
        if (v < 0.0) throw ConfigError(key + " entries must be >= 0");
    }
    return grid;
}

std::string default_duration_grid() {
    // 0 followed by 19 log-spaced points from 0.1 tau to 20 tau.
    std::string out = "0";
    for (int i = 0; i < 19; ++i) {
        const double t = 0.1 * std::pow(200.0, static_cast<double>(i) / 18.0);
        out += "," + format_number(i == 18 ? 20.0 : t);
    }
    return out;
}

// ---- capacitor -----------------------------------------------------------

CommandOutput run_capacitor_write(const Config& c) {
    const CellParams p = cell_from(c);
    const auto u0_grid = c.get_list("u0_sigma");
    const std::size_t n = count_from(c);
    const unsigned workers = workers_from(c);
    const std::uint64_t seed = c.get_uint("seed");
    WriteOptions opt;
    opt.dt = c.get_positive("dt_tau") * p.tau();
    opt.max_duration = c.get_positive("max_duration_tau") * p.tau();
    opt.p_e_measurement = c.get_double("p_e_meas");
    control_cost_per_decision(p, opt.p_e_measurement);
    for (double u : u0_grid) {
        if (!(u > 0.0)) throw ConfigError("u0_sigma entries must be positive for writing");
    }

    CommandOutput out{CsvTable({"u0_sigma", "n", "mean_Q_env_kT", "se_Q_env_kT", "theory_Q_env_kT", "mean_duration_tau",
                                "mean_n_samples", "mean_control_cost_kT", "min_control_cost_kT"}),
                      nlohmann::json::object(), {}};
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < u0_grid.size(); ++j) {
        const double u0 = u0_grid[j] * p.sigma_st();
        const auto records = run_parallel_ensemble(
            n, workers,
            [&](std::uint64_t stream) {
                RngStream rng(seed, stream);
                const int bit = rng.uniform() < 0.5 ? 0 : 1;
                return write_bit(bit, u0, p, opt, rng);
            },
            static_cast<std::uint64_t>(j) * n);
        MeanAccumulator heat, duration, samples, cost;
        double min_cost = std::numeric_limits<double>::infinity();
        for (const auto& r : records) {
            heat.add(r.bath_heat / p.kT());
            duration.add(r.duration / p.tau());
            samples.add(static_cast<double>(r.n_samples));
            cost.add(r.control_cost_lower_bound / p.kT());
            min_cost = std::min(min_cost, r.control_cost_lower_bound / p.kT());
        }
        const double theory = -erase_dissipation_theory(u0, p) / p.kT();
        out.table.add_row({u0_grid[j], static_cast<double>(n), heat.mean(), heat.standard_error(), theory,
                           duration.mean(), samples.mean(), cost.mean(), min_cost});
        rows.push_back({{"u0_sigma", u0_grid[j]}, {"mean_Q_env_kT", heat.mean()}, {"se_Q_env_kT", heat.standard_error()},
                        {"theory_Q_env_kT", theory}, {"min_control_cost_kT", min_cost}});
    }
    out.headline["writes"] = rows;
    return out;
}

CommandOutput run_capacitor_erase(const Config& c) {
    const CellParams p = cell_from(c);
    const auto u0_grid = c.get_list("u0_sigma");
    const std::size_t n = count_from(c);
    const unsigned workers = workers_from(c);
    const std::uint64_t seed = c.get_uint("seed");
    const double duration_tau = c.get_double("duration_tau");
    if (!(duration_tau >= 0.0)) throw ConfigError("duration_tau must be >= 0");
    const double duration = duration_tau * p.tau();
    const double dt = c.get_positive("dt_tau") * p.tau();
    for (double u : u0_grid) {
        if (!(u >= 0.0)) throw ConfigError("u0_sigma entries must be >= 0");
    }

    CommandOutput out{
        CsvTable({"u0_sigma", "duration_tau", "n", "mean_Q_env_kT", "se_Q_env_kT", "theory_Q_env_kT"}),
        nlohmann::json::object(), {}};
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t j = 0; j < u0_grid.size(); ++j) {
        const double u0 = u0_grid[j] * p.sigma_st();
        const auto heats = run_parallel_ensemble(
            n, workers,
            [&](std::uint64_t stream) {
                RngStream rng(seed, stream);
                const double v0 = rng.uniform() < 0.5 ? -u0 : u0;
                return erase(v0, duration, p, dt, rng).bath_heat / p.kT();
            },
            static_cast<std::uint64_t>(j) * n);
        MeanAccumulator heat;
        for (double q : heats) heat.add(q);
        const double theory = erase_dissipation_theory(u0, p) / p.kT();
        out.table.add_row({u0_grid[j], duration_tau, static_cast<double>(n), heat.mean(), heat.standard_error(), theory});
        rows.push_back({{"u0_sigma", u0_grid[j]}, {"mean_Q_env_kT", heat.mean()}, {"se_Q_env_kT", heat.standard_error()},
                        {"theory_Q_env_kT", theory}});
    }
    out.headline["erasures"] = rows;
    return out;
}

CommandOutput run_capacitor_mi_curve(const Config& c) {
    ErasureExperimentConfig e;
    e.cell = cell_from(c);
    e.u0 = c.get_positive("u0_sigma") * e.cell.sigma_st();
    for (double d : sorted_grid(c, "durations_tau")) e.durations.push_back(d * e.cell.tau());
    e.write_dt = c.get_positive("dt_tau") * e.cell.tau();
    e.erase_dt = c.get_positive("erase_dt_tau") * e.cell.tau();
    e.max_write_duration = c.get_positive("max_duration_tau") * e.cell.tau();
    e.p_e_measurement = c.get_double("p_e_meas");
    control_cost_per_decision(e.cell, e.p_e_measurement);
    e.n_trajectories = count_from(c);
    e.master_seed = c.get_uint("seed");
    e.workers = workers_from(c);

    const auto reports = run_erasure_experiment(e);
    CommandOutput out{CsvTable({"duration_tau", "p_e_hat", "ci_low", "ci_high", "info_bits", "mean_Q_env_kT",
                                "se_Q_env_kT"}),
                      nlohmann::json::object(), {}};
    nlohmann::json rows = nlohmann::json::array();
    const double kT = e.cell.kT();
    for (const auto& r : reports) {
        const double d_tau = r.duration / e.cell.tau();
        out.table.add_row({d_tau, r.channel.p_e_hat, r.channel.ci_low, r.channel.ci_high, r.remaining.bits,
                           r.bath_heat.value / kT, r.bath_heat.standard_error / kT});
        rows.push_back({{"duration_tau", d_tau},
                        {"p_e_hat", r.channel.p_e_hat},
                        {"p_e_theory", r.p_e_theory},
                        {"info_bits", r.remaining.bits},
                        {"info_theory_bits", bit_information(r.p_e_theory)},
                        {"mean_Q_env_kT", r.bath_heat.value / kT},
                        {"theory_Q_env_kT", r.theory_bath_heat / kT}});
    }
    out.headline["curve"] = rows;
    return out;
}

// ---- double well ---------------------------------------------------------

EnsembleOptions ensemble_from(const Config& c, const DoubleWellParams& p) {
    EnsembleOptions o;
    o.n_trajectories = count_from(c);
    o.master_seed = c.get_uint("seed");
    o.workers = workers_from(c);
    const double fraction = c.get_positive("dt_fraction");
    if (fraction > 1.0) throw ConfigError("dt_fraction must not exceed 1 (the stability bound)");
    o.dt = fraction * p.stability_dt();
    if (o.n_trajectories < 100) throw ConfigError("relaxation ensembles need n >= 100");
    return o;
}

void add_series(CommandOutput& out, const RelaxationSeries& s, double kT) {
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        out.table.add_row({s.times[i], s.p1[i].value, s.p1[i].standard_error, s.mean_U[i].value / kT,
                           s.mean_U[i].standard_error / kT});
    }
    double worst = 0.0;
    for (const auto& u : s.mean_U) worst = std::max(worst, std::abs(u.value - s.mean_U.front().value) / kT);
    out.headline["terminal_p1"] = s.p1.back().value;
    out.headline["terminal_se_p1"] = s.p1.back().standard_error;
    out.headline["max_abs_delta_mean_U_kT"] = worst;
}

CommandOutput run_doublewell_relax(const Config& c) {
    const DoubleWellParams p = well_from(c, c.get_positive("barrier_kT"), c.get_positive("x0"));
    const auto opt = ensemble_from(c, p);
    const auto series = relax_ensemble(p, side_from(c), c.get_positive("t_total"), opt);
    CommandOutput out{CsvTable({"t", "p1", "se_p1", "mean_U", "se_U"}), nlohmann::json::object(), {}};
    add_series(out, series, p.kT());
    return out;
}

CommandOutput run_doublewell_escape(const Config& c) {
    const auto barriers = c.get_list("barriers_kT");
    const std::string& geometry = c.get_string("geometry");
    if (geometry != "curvature" && geometry != "width") throw ConfigError("geometry must be 'curvature' or 'width'");
    const double fraction = c.get_positive("dt_fraction");
    if (fraction > 1.0) throw ConfigError("dt_fraction must not exceed 1 (the stability bound)");

    CommandOutput out{CsvTable({"barrier_kT", "x0", "n", "mean_escape_time", "se_escape_time", "kramers_estimate"}),
                      nlohmann::json::object(), {}};
    nlohmann::json rows = nlohmann::json::array();
    for (double e : barriers) {
        if (!(e > 0.0)) throw ConfigError("barriers_kT entries must be positive");
        const double x0 = geometry == "curvature" ? std::sqrt(8.0 * e / c.get_positive("curvature"))
                                                  : c.get_positive("x0");
        const DoubleWellParams p = well_from(c, e, x0);
        EscapeOptions opt;
        opt.n_trajectories = count_from(c);
        opt.master_seed = c.get_uint("seed");
        opt.workers = workers_from(c);
        opt.dt = fraction * p.stability_dt();
        opt.max_total_steps = c.get_positive("max_total_steps");
        const Estimate t = measure_escape_time(p, opt);
        const double kramers = kramers_escape_time_estimate(p);
        out.table.add_row({e, x0, static_cast<double>(opt.n_trajectories), t.value, t.standard_error, kramers});
        rows.push_back({{"barrier_kT", e}, {"mean_escape_time", t.value}, {"se_escape_time", t.standard_error}});
    }
    out.headline["escape"] = rows;
    return out;
}

CommandOutput run_doublewell_heated(const Config& c) {
    const DoubleWellParams p = well_from(c, c.get_positive("barrier_kT"), c.get_positive("x0"));
    const double factor = c.get_positive("hot_factor");
    if (factor < 1.0) throw ConfigError("hot_factor must be >= 1");
    const auto opt = ensemble_from(c, p.at_temperature(p.temperature * factor));
    const auto result = heated_erase(p, p.temperature * factor, side_from(c), c.get_positive("t_total"), opt);
    CommandOutput out{CsvTable({"t", "p1", "se_p1", "mean_U", "se_U"}), nlohmann::json::object(), {}};
    add_series(out, result.series, p.kT());
    out.headline["absorbed_energy_kT"] = result.absorbed_energy.value / p.kT();
    out.headline["se_absorbed_energy_kT"] = result.absorbed_energy.standard_error / p.kT();
    return out;
}

// ---- bounds and info -----------------------------------------------------

CommandOutput run_bounds_brillouin(const Config& c) {
    const double t = c.get_positive("temperature_K");
    CommandOutput out{CsvTable({"p_e", "E_joule", "E_kT"}), nlohmann::json::object(), {}};
    for (double pe : c.get_list("p_e")) {
        const Energy e = brillouin_min_dissipation(pe, t);
        out.table.add_row({pe, e.joule, e.kT});
    }
    out.headline["temperature_K"] = t;
    return out;
}

CommandOutput run_bounds_anderson(const Config& c) {
    const double t = c.get_positive("temperature_K");
    CommandOutput out{CsvTable({"delta_S_bits", "bound_joule", "bound_kT"}), nlohmann::json::object(), {}};
    for (double ds : c.get_list("delta_S_bits")) {
        const Energy e = anderson_bound(ds, t);
        out.table.add_row({ds, e.joule, e.kT});
    }
    out.headline["temperature_K"] = t;
    return out;
}

CommandOutput run_bounds_icecube(const Config& c) {
    IceCubeModel m;
    m.volume_cm3 = c.get_positive("volume_cm3");
    m.ambient_temperature = c.get_positive("ambient_K");
    m.ice_density = c.get_positive("ice_density");
    m.latent_heat_fusion = c.get_positive("latent_heat");
    m.include_sensible_heat = c.get_bool("sensible_heat");
    m.ice_initial_temperature = c.get_positive("ice_initial_K");
    m.specific_heat_ice = c.get_double("c_ice");
    m.specific_heat_water = c.get_double("c_water");
    const BoundComparison b = ice_cube_erasure_energy(m);

    CommandOutput out{CsvTable({"volume_cm3", "Q_joule", "Q_kT", "bound_kT", "violation_factor"}),
                      nlohmann::json::object(), {}};
    out.table.add_row({m.volume_cm3, b.computed_cooling.joule, b.computed_cooling.kT, b.anderson_limit.kT,
                       b.violation_factor});
    out.headline = {{"Q_joule", b.computed_cooling.joule},
                    {"Q_kT", b.computed_cooling.kT},
                    {"bound_kT", b.anderson_limit.kT},
                    {"violation_factor", b.violation_factor}};
    std::ostringstream r;
    r << "ice cube erasure, " << format_number(m.volume_cm3) << " cm^3 at " << format_number(m.ambient_temperature)
      << " K\n"
      << "  heat drawn from environment : " << b.computed_cooling.joule << " J = " << b.computed_cooling.kT << " kT\n"
      << "  cooling limit for 1 bit     : " << b.anderson_limit.kT << " kT\n"
      << "  violation factor            : " << b.violation_factor << "\n";
    out.report = r.str();
    return out;
}

CommandOutput run_info_eval(const Config& c) {
    CommandOutput out{CsvTable({"p_e", "info_bits", "entropy_nats", "entropy_bits"}), nlohmann::json::object(), {}};
    for (double pe : c.get_list("p_e")) {
        const double s = memory_entropy(pe);
        out.table.add_row({pe, bit_information(pe), s, nats_to_bits(s)});
    }
    return out;
}

CommandOutput run_verify(const Config& c) {
    acceptance::Options opt;
    opt.workers = workers_from(c);
    const auto results = acceptance::run_all(opt);
    CommandOutput out{CsvTable({"criterion", "passed", "seconds"}), nlohmann::json::object(), {}};
    bool all = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        out.table.add_row({std::to_string(r.id), r.passed ? "1" : "0", format_number(r.seconds)});
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    out.headline["criteria"] = rows;
    out.headline["all_passed"] = all;
    out.report = acceptance::format_table(results);
    return out;
}

std::vector<CommandSpec> build_table() {
    std::vector<CommandSpec> t;
    t.push_back({"capacitor", "write", "measurement-triggered writes; bath heat and control cost",
                 concat({cell_keys(), run_keys("100000"),
                         {{"u0_sigma", "0.5", "comma list of write levels in units of sigma_st"},
                          {"dt_tau", "0.01", "sampling interval in units of tau"},
                          {"max_duration_tau", "10000", "first-passage guard in units of tau"},
                          {"p_e_meas", "0.5", "error probability of each measurement decision"}}}),
                 {"u0_sigma", "n", "mean_Q_env_kT", "se_Q_env_kT", "theory_Q_env_kT", "mean_duration_tau",
                  "mean_n_samples", "mean_control_cost_kT", "min_control_cost_kT"},
                 &run_capacitor_write});
    t.push_back({"capacitor", "erase", "erasure by thermalization from +-u0; mean bath heat",
                 concat({cell_keys(), run_keys("100000"),
                         {{"u0_sigma", "0,0.5,1,2", "comma list of stored levels in units of sigma_st"},
                          {"duration_tau", "20", "erasure time in units of tau"},
                          {"dt_tau", "0.1", "step in units of tau (transition is exact)"}}}),
                 {"u0_sigma", "duration_tau", "n", "mean_Q_env_kT", "se_Q_env_kT", "theory_Q_env_kT"},
                 &run_capacitor_erase});
    t.push_back({"capacitor", "mi-curve", "remaining information versus erasure time",
                 concat({cell_keys(), run_keys("10000"),
                         {{"u0_sigma", "1", "write level in units of sigma_st"},
                          {"durations_tau", default_duration_grid(), "ascending erasure times in units of tau"},
                          {"dt_tau", "0.01", "write sampling interval in units of tau"},
                          {"erase_dt_tau", "0.1", "erase step in units of tau"},
                          {"max_duration_tau", "10000", "first-passage guard in units of tau"},
                          {"p_e_meas", "0.5", "error probability of each measurement decision"}}}),
                 {"duration_tau", "p_e_hat", "ci_low", "ci_high", "info_bits", "mean_Q_env_kT", "se_Q_env_kT"},
                 &run_capacitor_mi_curve});
    t.push_back({"doublewell", "relax", "passive erasure by thermal activation",
                 concat({well_keys(), run_keys("10000"),
                         {{"barrier_kT", "2", "barrier height in kT"},
                          {"side", "1", "initial well (0 or 1)"},
                          {"t_total", "50", "simulated time"},
                          {"dt_fraction", "0.5", "step as a fraction of the stability bound"}}}),
                 {"t", "p1", "se_p1", "mean_U", "se_U"}, &run_doublewell_relax});
    t.push_back({"doublewell", "escape", "mean barrier-crossing time versus barrier height",
                 concat({well_keys(), run_keys("4000"),
                         {{"barriers_kT", "1,2,3,4", "comma list of barrier heights in kT"},
                          {"geometry", "curvature", "curvature: hold U''(x0) fixed; width: hold x0 fixed"},
                          {"curvature", "16", "well curvature U''(x0) in kT per length^2"},
                          {"dt_fraction", "0.5", "step as a fraction of the stability bound"},
                          {"max_total_steps", "1e9", "step budget before reporting infeasibility"}}}),
                 {"barrier_kT", "x0", "n", "mean_escape_time", "se_escape_time", "kramers_estimate"},
                 &run_doublewell_escape});
    t.push_back({"doublewell", "heated", "erasure accelerated by heating the cell",
                 concat({well_keys(), run_keys("2000"),
                         {{"barrier_kT", "4", "barrier height in ambient kT"},
                          {"hot_factor", "4", "T_hot / T_ambient"},
                          {"side", "1", "initial well (0 or 1)"},
                          {"t_total", "20", "simulated time"},
                          {"dt_fraction", "0.5", "step as a fraction of the stability bound"}}}),
                 {"t", "p1", "se_p1", "mean_U", "se_U"}, &run_doublewell_heated});
    t.push_back({"bounds", "brillouin", "minimum dissipation kT ln(1/p_e)",
                 {{"p_e", "0.5,0.25,0.1,0.01", "comma list of error probabilities in (0, 0.5]"},
                  {"temperature_K", "300", "temperature"}},
                 {"p_e", "E_joule", "E_kT"}, &run_bounds_brillouin});
    t.push_back({"bounds", "anderson", "cooling limit -kT ln2 dS",
                 {{"delta_S_bits", "0,1,2", "comma list of entropy changes in bits"}, {"temperature_K", "300", "temperature"}},
                 {"delta_S_bits", "bound_joule", "bound_kT"}, &run_bounds_anderson});
    t.push_back({"bounds", "icecube", "ice-cube tray erasure cooling versus the one-bit cooling limit",
                 {{"volume_cm3", "10", "cube volume"},
                  {"ambient_K", "300", "ambient temperature"},
                  {"ice_density", "0.917", "g/cm^3"},
                  {"latent_heat", "333.55", "latent heat of fusion, J/g"},
                  {"sensible_heat", "false", "also warm ice from ice_initial_K and meltwater to ambient"},
                  {"ice_initial_K", "255.15", "freezer temperature"},
                  {"c_ice", "2.1", "specific heat of ice, J/(g K)"},
                  {"c_water", "4.18", "specific heat of water, J/(g K)"}},
                 {"volume_cm3", "Q_joule", "Q_kT", "bound_kT", "violation_factor"}, &run_bounds_icecube});
    t.push_back({"info", "eval", "bit information and memory entropy",
                 {{"p_e", "0,0.11,0.3462,0.5", "comma list of probabilities in [0, 1]"}},
                 {"p_e", "info_bits", "entropy_nats", "entropy_bits"}, &run_info_eval});
    t.push_back({"verify", "", "run the acceptance suite", {{"workers", "1", "worker threads"}},
                 {"criterion", "passed", "seconds"}, &run_verify});
    return t;
}

}  // namespace

const std::vector<CommandSpec>& command_table() {
    static const std::vector<CommandSpec> table = build_table();
    return table;
}

const CommandSpec* find_command(std::string_view group, std::string_view name) {
    for (const auto& spec : command_table()) {
        if (spec.group == group && spec.name == name) return &spec;
    }
    return nullptr;
}

Config resolve_config(const CommandSpec& spec, const Config& file, const std::map<std::string, std::string>& overrides) {
    Config out;
    for (const auto& k : spec.keys) out.set(k.name, k.default_value);
    auto apply = [&](const std::map<std::string, std::string>& values, const char* origin) {
        for (const auto& [k, v] : values) {
            if (!out.has(k)) throw ConfigError(std::string("unknown ") + origin + " key '" + k + "' for " + spec.full_name());
            out.set(k, v);
        }
    };
    apply(file.values(), "config");
    apply(overrides, "flag");
    return out;
}

CommandOutput run_command(const CommandSpec& spec, const Config& resolved) {
    CommandOutput out{CsvTable(spec.csv_header), {}, {}};
    try {
        out = spec.run(resolved);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(spec.full_name() + ": " + e.what());
    }
    if (out.table.header() != spec.csv_header) {
        throw std::logic_error(spec.full_name() + ": CSV header differs from the documented schema");
    }
    return out;
}

ReplayResult replay_manifest(const nlohmann::json& manifest) {
    const std::string command = manifest.at("command").get<std::string>();
    const auto space = command.find(' ');
    const std::string group = command.substr(0, space);
    const std::string name = space == std::string::npos ? "" : command.substr(space + 1);
    const CommandSpec* spec = find_command(group, name);
    if (!spec) throw ConfigError("manifest names unknown command '" + command + "'");
    Config cfg;
    for (const auto& [k, v] : manifest.at("config").items()) cfg.set(k, v.get<std::string>());
    const Config resolved = resolve_config(*spec, cfg, {});
    const auto out = run_command(*spec, resolved);

    ReplayResult r;
    const auto& outputs = manifest.at("outputs");
    if (outputs.empty()) throw ConfigError("manifest lists no outputs");
    r.expected = outputs.begin().value().get<std::string>();
    r.actual = checksum(out.table.to_string());
    r.matches = r.expected == r.actual;
    return r;
}

}  // namespace ite
