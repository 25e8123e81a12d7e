#include "ehg/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <atomic>
#include <cstring>
#include <map>
#include <sstream>

#include "ehg/errors.hpp"

namespace ehg {

const char* solver_name(Solver s) {
    switch (s) {
        case Solver::closed_form: return "closed_form";
        case Solver::m1_exact: return "m1_exact";
        case Solver::nu_min: return "nu_min";
        case Solver::nu_max: return "nu_max";
        case Solver::sdp: return "sdp";
        case Solver::global_search: return "global_search";
    }
    return "?";
}

namespace {

const char* variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::pb_distance: return "pb_distance";
        case SweepVariable::uncertainty: return "uncertainty";
        case SweepVariable::antennas: return "antennas";
    }
    return "?";
}

// ---------------------------------------------------------------- config

struct RawConfig {
    // section -> key -> (value, consumed)
    std::map<std::string, std::map<std::string, std::pair<std::string, bool>>> kv;
    std::string origin;

    std::string path(const std::string& sec, const std::string& key) const {
        return sec + "." + key;
    }

    const std::string* find(const std::string& sec, const std::string& key) {
        auto s = kv.find(sec);
        if (s == kv.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.second = true;
        return &k->second.first;
    }

    std::string require(const std::string& sec, const std::string& key) {
        const std::string* v = find(sec, key);
        if (!v) throw validation_error(path(sec, key) + ": missing");
        return *v;
    }

    void reject_unknown() const {
        for (const auto& [sec, keys] : kv)
            for (const auto& [key, val] : keys)
                if (!val.second)
                    throw validation_error(path(sec, key) + ": unknown key");
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

RawConfig tokenize_config(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw validation_error(origin + ":" + std::to_string(lineno) +
                                       ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(origin + ":" + std::to_string(lineno) +
                                   ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw validation_error(origin + ":" + std::to_string(lineno) +
                                   ": key outside of any [section]");
        if (key.empty()) throw validation_error(origin + ":" + std::to_string(lineno) + ": empty key");
        auto& slot = raw.kv[section][key];
        slot = {val, false};
    }
    return raw;
}

double parse_double(const std::string& text, const std::string& path) {
    const char* c = text.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (end == c || *end != '\0' || !std::isfinite(v))
        throw validation_error(path + ": not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& path) {
    const char* c = text.c_str();
    char* end = nullptr;
    unsigned long long v = std::strtoull(c, &end, 10);
    if (end == c || *end != '\0')
        throw validation_error(path + ": not a nonnegative integer: '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& path) {
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok, path));
    return out;
}

Solver parse_solver(const std::string& tok, const std::string& path) {
    if (tok == "closed_form") return Solver::closed_form;
    if (tok == "m1_exact") return Solver::m1_exact;
    if (tok == "nu_min") return Solver::nu_min;
    if (tok == "nu_max") return Solver::nu_max;
    if (tok == "sdp") return Solver::sdp;
    if (tok == "global_search") return Solver::global_search;
    throw validation_error(path + ": unknown solver '" + tok + "'");
}

SweepVariable parse_variable(const std::string& tok, const std::string& path) {
    if (tok == "pb_distance") return SweepVariable::pb_distance;
    if (tok == "uncertainty") return SweepVariable::uncertainty;
    if (tok == "antennas") return SweepVariable::antennas;
    throw validation_error(path + ": unknown sweep variable '" + tok + "'");
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text, const std::string& origin) {
    RawConfig raw = tokenize_config(text, origin);
    SweepConfig cfg;

    Scenario& sc = cfg.scenario;
    sc.tau = parse_double(raw.require("scenario", "tau"), "scenario.tau");
    sc.beta = parse_double(raw.require("scenario", "beta"), "scenario.beta");
    sc.alpha = parse_double(raw.require("scenario", "alpha"), "scenario.alpha");
    sc.cost = parse_double(raw.require("scenario", "c"), "scenario.c");
    sc.noise_var = parse_double(raw.require("scenario", "sigma2"), "scenario.sigma2");
    sc.path_loss = parse_double(raw.require("scenario", "gamma"), "scenario.gamma");
    sc.antennas = static_cast<std::size_t>(parse_u64(raw.require("scenario", "M"), "scenario.M"));
    sc.sensors = static_cast<std::size_t>(parse_u64(raw.require("scenario", "N"), "scenario.N"));
    if (const std::string* t2 = raw.find("scenario", "theta2"))
        cfg.theta2_override = parse_double(*t2, "scenario.theta2");

    auto parse_vec2 = [&](const std::string& sec, const std::string& key) {
        std::vector<double> nums =
            parse_double_list(raw.require(sec, key), raw.path(sec, key));
        if (nums.size() != 2)
            throw validation_error(raw.path(sec, key) + ": expected two coordinates");
        return Vec2{nums[0], nums[1]};
    };
    sc.bs_position = parse_vec2("geometry", "bs_position");
    sc.pb_position = parse_vec2("geometry", "pb_position");
    {
        std::vector<double> nums = parse_double_list(raw.require("geometry", "sensor_region"),
                                                     "geometry.sensor_region");
        if (nums.size() != 8)
            throw validation_error("geometry.sensor_region: expected four corner pairs");
        for (int i = 0; i < 4; ++i) sc.sensor_region.corners[i] = Vec2{nums[2 * i], nums[2 * i + 1]};
    }

    cfg.sweep_variable =
        parse_variable(raw.require("sweep", "sweep_variable"), "sweep.sweep_variable");
    cfg.sweep_values =
        parse_double_list(raw.require("sweep", "sweep_values"), "sweep.sweep_values");
    cfg.replications = static_cast<std::size_t>(
        parse_u64(raw.require("sweep", "replications"), "sweep.replications"));
    cfg.base_seed = parse_u64(raw.require("sweep", "base_seed"), "sweep.base_seed");
    {
        std::istringstream in(raw.require("sweep", "solvers"));
        std::string tok;
        while (in >> tok) cfg.solvers.push_back(parse_solver(tok, "sweep.solvers"));
    }
    if (const std::string* v = raw.find("sweep", "mc_samples"))
        cfg.mc_samples = static_cast<std::size_t>(parse_u64(*v, "sweep.mc_samples"));
    if (const std::string* v = raw.find("sweep", "sdp_tol"))
        cfg.sdp_tol = parse_double(*v, "sweep.sdp_tol");
    if (const std::string* v = raw.find("sweep", "gs_budget"))
        cfg.gs_budget = static_cast<std::size_t>(parse_u64(*v, "sweep.gs_budget"));

    raw.reject_unknown();
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str(), path);
}

void SweepConfig::validate() const {
    scenario.validate();
    if (sweep_values.empty()) throw validation_error("sweep.sweep_values: must be nonempty");
    for (std::size_t i = 0; i + 1 < sweep_values.size(); ++i)
        if (!(sweep_values[i] < sweep_values[i + 1]))
            throw validation_error("sweep.sweep_values: must be strictly increasing");
    if (replications < 1) throw validation_error("sweep.replications: must be >= 1");
    if (solvers.empty()) throw validation_error("sweep.solvers: must be nonempty");
    for (std::size_t i = 0; i < solvers.size(); ++i)
        for (std::size_t j = i + 1; j < solvers.size(); ++j)
            if (solvers[i] == solvers[j])
                throw validation_error("sweep.solvers: duplicate solver");
    if (!(sdp_tol > 0.0)) throw validation_error("sweep.sdp_tol: must be > 0");
    if (gs_budget < 1) throw validation_error("sweep.gs_budget: must be >= 1");
}

// ---------------------------------------------------------------- runners

namespace {

double gamma_from_nu(double nu, double power, const Scenario& sc) {
    if (power <= 0.0 || nu <= 0.0) return 0.0;
    const double n = static_cast<double>(sc.sensors);
    const double g = sc.tau * n * nu / ((1.0 - sc.tau) * sc.noise_var);
    return (1.0 - sc.tau) / (2.0 * sc.beta * n) * (std::log1p(g * power) / M_LN2);
}

std::optional<double> min_nonoutage(const Equilibrium& eq, const ChannelState& chan,
                                    const Scenario& sc, std::size_t mc_samples,
                                    const RandomStream& stream) {
    if (mc_samples == 0 || !eq.weights) return std::nullopt;
    double worst = 1.0;
    for (std::size_t i = 0; i < chan.sensors(); ++i) {
        McEstimate est = estimate_non_outage(eq.power, *eq.weights, chan, i, sc, mc_samples,
                                             stream.split(i));
        worst = std::min(worst, est.p_hat);
    }
    return worst;
}

SweepRecord make_record(double sweep_value, std::size_t rep, std::uint64_t seed,
                        Solver solver, double nu, const Equilibrium& eq,
                        const Scenario& sc) {
    SweepRecord rec;
    rec.sweep_value = sweep_value;
    rec.replication = rep;
    rec.seed = seed;
    rec.solver = solver;
    rec.nu = nu;
    rec.rho_star = eq.rho;
    rec.p_star = eq.power;
    rec.u_bs = eq.u_bs;
    rec.u_pb = eq.u_pb;
    rec.gamma_min = gamma_from_nu(nu, eq.power, sc);
    if (eq.weights) {
        std::vector<double> powers(eq.weights->size());
        for (std::size_t k = 0; k < powers.size(); ++k)
            powers[k] = std::norm((*eq.weights)[k]) * eq.power;
        rec.antenna_powers = std::move(powers);
    }
    return rec;
}

void check_distance_solvers(const SweepConfig& cfg) {
    for (Solver s : cfg.solvers) {
        if ((s == Solver::closed_form || s == Solver::m1_exact) && cfg.scenario.sensors != 1)
            throw validation_error(std::string("sweep.solvers: ") + solver_name(s) +
                                   " requires N = 1");
        if (s == Solver::m1_exact && cfg.scenario.antennas != 1)
            throw validation_error("sweep.solvers: m1_exact requires M = 1");
    }
}

std::vector<SweepRecord> distance_sweep(const SweepConfig& cfg, bool parallel) {
    cfg.validate();
    if (cfg.sweep_variable != SweepVariable::pb_distance)
        throw validation_error(std::string("sweep.sweep_variable: expected pb_distance, got ") +
                               variable_name(cfg.sweep_variable));
    for (double d : cfg.sweep_values)
        if (!(d > 0.0)) throw validation_error("sweep.sweep_values: distances must be > 0");
    check_distance_solvers(cfg);

    const std::size_t n_vals = cfg.sweep_values.size();
    const std::size_t reps = cfg.replications;
    const std::size_t n_solvers = cfg.solvers.size();
    const bool needs_instance =
        std::any_of(cfg.solvers.begin(), cfg.solvers.end(), [](Solver s) {
            return s == Solver::nu_min || s == Solver::nu_max || s == Solver::sdp ||
                   s == Solver::global_search;
        });
    const RandomStream base{cfg.base_seed, 0};

    std::vector<SweepRecord> records(n_vals * reps * n_solvers);
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long flat = 0; flat < static_cast<long long>(n_vals * reps); ++flat) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            const std::size_t di = static_cast<std::size_t>(flat) / reps;
            const std::size_t rep = static_cast<std::size_t>(flat) % reps;
            const double d = cfg.sweep_values[di];

            RandomStream stream = base.split(di).split(rep);
            Scenario sc = cfg.scenario;
            sc.pb_position = Vec2{d, 0.0};

            std::vector<Vec2> pos = place_sensors(sc, stream.split(0));
            ChannelState chan = build_channels(sc, pos, stream.split(1));
            WeightedInstance inst;
            std::pair<double, double> bounds{0.0, 0.0};
            if (needs_instance) {
                inst = WeightedInstance::from_channels(chan);
                bounds = nu_bounds(inst);
            }

            for (std::size_t si = 0; si < n_solvers; ++si) {
                const Solver solver = cfg.solvers[si];
                Equilibrium eq;
                double nu = 0.0;
                switch (solver) {
                    case Solver::closed_form: {
                        eq = single_node_solve(chan, sc);
                        nu = std::norm(chan.h_s[0]) * eq.gain_value;
                        break;
                    }
                    case Solver::m1_exact: {
                        const double sigma1_sq = chan.sigma_mat[0].at(0, 0).real();
                        ChiSquareParams chi =
                            chi_square_params(chan, sc, sigma1_sq, cfg.theta2_override);
                        const double alpha_eff =
                            sc.alpha * (1.0 - sc.tau) / (2.0 * sc.beta * M_LN2);
                        eq = equilibrium_m1_exact(chi, alpha_eff, sc.tau, sc.cost);
                        const double mu = std::norm(chan.h_hat[0][0]) + sigma1_sq;
                        eq.gain_value = mu;
                        nu = std::norm(chan.h_s[0]) * mu;
                        break;
                    }
                    case Solver::nu_min: {
                        nu = bounds.first;
                        eq = equilibrium_from_nu(nu, sc);
                        break;
                    }
                    case Solver::nu_max: {
                        nu = bounds.second;
                        eq = equilibrium_from_nu(nu, sc);
                        break;
                    }
                    case Solver::sdp: {
                        SdpResult sdp = solve_sdp_relaxation(inst, cfg.sdp_tol, stream.split(2));
                        nu = sdp.rounded_value;
                        eq = equilibrium_from_nu(nu, sc);
                        eq.weights = sdp.w_rounded;
                        break;
                    }
                    case Solver::global_search: {
                        auto [gs, wgs] = global_search(inst, cfg.gs_budget, stream.split(3));
                        nu = gs;
                        eq = equilibrium_from_nu(nu, sc);
                        eq.weights = std::move(wgs);
                        break;
                    }
                }
                SweepRecord rec = make_record(d, rep, stream.seed, solver, nu, eq, sc);
                if (solver == Solver::m1_exact) {
                    const double sigma1_sq = chan.sigma_mat[0].at(0, 0).real();
                    ChiSquareParams chi =
                        chi_square_params(chan, sc, sigma1_sq, cfg.theta2_override);
                    rec.gamma_min =
                        eq.power > 0.0 ? std::exp(-chi.eta / eq.power) : 0.0;
                }
                rec.p_nonoutage_hat =
                    min_nonoutage(eq, chan, sc, cfg.mc_samples, stream.split(4).split(si));
                records[static_cast<std::size_t>(flat) * n_solvers + si] = std::move(rec);
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

std::vector<SweepRecord> uncertainty_sweep(const SweepConfig& cfg, bool parallel) {
    cfg.validate();
    if (cfg.sweep_variable != SweepVariable::uncertainty)
        throw validation_error(std::string("sweep.sweep_variable: expected uncertainty, got ") +
                               variable_name(cfg.sweep_variable));
    if (cfg.scenario.sensors != 1)
        throw validation_error("scenario.N: uncertainty sweep requires N = 1");
    if (cfg.scenario.antennas < 2)
        throw validation_error("scenario.M: uncertainty sweep requires M >= 2");
    if (cfg.solvers.size() != 1 || cfg.solvers[0] != Solver::closed_form)
        throw validation_error("sweep.solvers: uncertainty sweep supports only closed_form");
    for (double z : cfg.sweep_values)
        if (!(z > 0.0)) throw validation_error("sweep.sweep_values: zeta must be > 0");

    const std::size_t n_vals = cfg.sweep_values.size();
    const std::size_t reps = cfg.replications;
    const RandomStream base{cfg.base_seed, 0};
    std::vector<SweepRecord> records(n_vals * reps);
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long rep = 0; rep < static_cast<long long>(reps); ++rep) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            RandomStream stream = base.split(static_cast<std::uint64_t>(rep));
            const Scenario& sc = cfg.scenario;
            std::vector<Vec2> pos = place_sensors(sc, stream.split(0));
            ChannelState chan = build_channels(sc, pos, stream.split(1));
            for (std::size_t zi = 0; zi < n_vals; ++zi) {
                const double zeta = cfg.sweep_values[zi];
                ChannelState state = with_uncertainty(chan, 0, zeta);
                Equilibrium eq = single_node_solve(state, sc);
                const double nu = std::norm(state.h_s[0]) * eq.gain_value;
                SweepRecord rec = make_record(zeta, static_cast<std::size_t>(rep), stream.seed,
                                              Solver::closed_form, nu, eq, sc);
                rec.p_nonoutage_hat =
                    min_nonoutage(eq, state, sc, cfg.mc_samples, stream.split(2).split(zi));
                records[static_cast<std::size_t>(rep) * n_vals + zi] = std::move(rec);
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

BoundReport bound_check(const SweepConfig& cfg, bool parallel) {
    cfg.validate();
    if (cfg.mc_samples < 10000)
        throw validation_error("sweep.mc_samples: bound validation requires >= 10000");
    const Solver solver = cfg.solvers.front();
    if (solver != Solver::closed_form && solver != Solver::sdp &&
        solver != Solver::global_search)
        throw validation_error(
            "sweep.solvers: bound validation needs a solver with a beamformer "
            "(closed_form, sdp or global_search)");
    if (solver == Solver::closed_form && cfg.scenario.sensors != 1)
        throw validation_error("sweep.solvers: closed_form requires N = 1");

    const std::size_t reps = cfg.replications;
    const std::size_t n = cfg.scenario.sensors;
    const RandomStream base{cfg.base_seed, 0};
    BoundReport report;
    report.rows.resize(reps * n);
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long rep = 0; rep < static_cast<long long>(reps); ++rep) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            RandomStream stream = base.split(static_cast<std::uint64_t>(rep));
            const Scenario& sc = cfg.scenario;
            std::vector<Vec2> pos = place_sensors(sc, stream.split(0));
            ChannelState chan = build_channels(sc, pos, stream.split(1));

            Equilibrium eq;
            if (solver == Solver::closed_form) {
                eq = single_node_solve(chan, sc);
            } else {
                WeightedInstance inst = WeightedInstance::from_channels(chan);
                if (solver == Solver::sdp) {
                    SdpResult sdp = solve_sdp_relaxation(inst, cfg.sdp_tol, stream.split(2));
                    eq = equilibrium_from_nu(sdp.rounded_value, sc);
                    eq.weights = sdp.w_rounded;
                } else {
                    auto [gs, wgs] = global_search(inst, cfg.gs_budget, stream.split(3));
                    eq = equilibrium_from_nu(gs, sc);
                    eq.weights = std::move(wgs);
                }
            }

            for (std::size_t i = 0; i < n; ++i) {
                McEstimate est = estimate_non_outage(eq.power, *eq.weights, chan, i, sc,
                                                     cfg.mc_samples, stream.split(4).split(i));
                BoundCheckRow row;
                row.replication = static_cast<std::size_t>(rep);
                row.seed = stream.seed;
                row.sensor = i;
                row.p_hat = est.p_hat;
                row.std_err = est.std_err;
                row.gamma = gamma_bound(eq.power, *eq.weights, chan, i, sc);
                row.gamma_capped = std::min(1.0, row.gamma);
                row.violated = est.p_hat - 3.0 * est.std_err > row.gamma_capped;
                report.rows[static_cast<std::size_t>(rep) * n + i] = row;
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (const BoundCheckRow& row : report.rows)
        if (row.violated) ++report.violations;
    return report;
}

}  // namespace

std::vector<SweepRecord> run_distance_sweep(const SweepConfig& config) {
    return distance_sweep(config, true);
}
std::vector<SweepRecord> run_distance_sweep_serial(const SweepConfig& config) {
    return distance_sweep(config, false);
}
std::vector<SweepRecord> run_uncertainty_sweep(const SweepConfig& config) {
    return uncertainty_sweep(config, true);
}
std::vector<SweepRecord> run_uncertainty_sweep_serial(const SweepConfig& config) {
    return uncertainty_sweep(config, false);
}
BoundReport validate_bound(const SweepConfig& config) { return bound_check(config, true); }
BoundReport validate_bound_serial(const SweepConfig& config) {
    return bound_check(config, false);
}

// ------------------------------------------------------------------- csv

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_u64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
    return buf;
}

void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write file: " + path);
    out << text;
    if (!out) throw io_error("write failed: " + path);
}

std::vector<const SweepRecord*> sorted_view(const std::vector<SweepRecord>& records) {
    std::vector<const SweepRecord*> view;
    view.reserve(records.size());
    for (const auto& r : records) view.push_back(&r);
    std::sort(view.begin(), view.end(), [](const SweepRecord* a, const SweepRecord* b) {
        if (a->sweep_value != b->sweep_value) return a->sweep_value < b->sweep_value;
        if (a->replication != b->replication) return a->replication < b->replication;
        return std::strcmp(solver_name(a->solver), solver_name(b->solver)) < 0;
    });
    return view;
}

}  // namespace

std::string render_csv(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw validation_error("emit_csv: no records");
    std::string out =
        "sweep_value,replication,seed,solver,nu,rho_star,p_star,u_bs,u_pb,"
        "gamma_min,p_nonoutage_hat,antenna_powers\n";
    for (const SweepRecord* r : sorted_view(records)) {
        out += fmt(r->sweep_value);
        out += ',';
        out += fmt_u64(r->replication);
        out += ',';
        out += fmt_u64(r->seed);
        out += ',';
        out += solver_name(r->solver);
        out += ',';
        out += fmt(r->nu);
        out += ',';
        out += fmt(r->rho_star);
        out += ',';
        out += fmt(r->p_star);
        out += ',';
        out += fmt(r->u_bs);
        out += ',';
        out += fmt(r->u_pb);
        out += ',';
        out += fmt(r->gamma_min);
        out += ',';
        if (r->p_nonoutage_hat) out += fmt(*r->p_nonoutage_hat);
        out += ',';
        if (r->antenna_powers) {
            bool first = true;
            for (double p : *r->antenna_powers) {
                if (!first) out += ';';
                out += fmt(p);
                first = false;
            }
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    write_file(render_csv(records), path);
}

std::string render_summary_csv(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw validation_error("emit_summary_csv: no records");
    struct Acc {
        std::vector<double> nu, rho, p, ubs, upb;
    };
    std::map<std::pair<double, std::string>, Acc> groups;
    for (const auto& r : records) {
        Acc& a = groups[{r.sweep_value, solver_name(r.solver)}];
        a.nu.push_back(r.nu);
        a.rho.push_back(r.rho_star);
        a.p.push_back(r.p_star);
        a.ubs.push_back(r.u_bs);
        a.upb.push_back(r.u_pb);
    }
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto stddev = [&](const std::vector<double>& v) {
        if (v.size() < 2) return 0.0;
        double m = mean(v), s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    std::string out =
        "sweep_value,solver,replications,nu_mean,nu_std,rho_star_mean,rho_star_std,"
        "p_star_mean,p_star_std,u_bs_mean,u_bs_std,u_pb_mean,u_pb_std\n";
    for (const auto& [key, a] : groups) {
        out += fmt(key.first);
        out += ',';
        out += key.second;
        out += ',';
        out += fmt_u64(a.nu.size());
        for (const std::vector<double>* v : {&a.nu, &a.rho, &a.p, &a.ubs, &a.upb}) {
            out += ',';
            out += fmt(mean(*v));
            out += ',';
            out += fmt(stddev(*v));
        }
        out += '\n';
    }
    return out;
}

void emit_summary_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    write_file(render_summary_csv(records), path);
}

std::string render_bound_report_csv(const BoundReport& report) {
    std::string out = "replication,seed,sensor,p_hat,std_err,gamma,gamma_capped,violated\n";
    for (const BoundCheckRow& r : report.rows) {
        out += fmt_u64(r.replication);
        out += ',';
        out += fmt_u64(r.seed);
        out += ',';
        out += fmt_u64(r.sensor);
        out += ',';
        out += fmt(r.p_hat);
        out += ',';
        out += fmt(r.std_err);
        out += ',';
        out += fmt(r.gamma);
        out += ',';
        out += fmt(r.gamma_capped);
        out += ',';
        out += r.violated ? '1' : '0';
        out += '\n';
    }
    return out;
}

void emit_bound_report_csv(const BoundReport& report, const std::string& path) {
    write_file(render_bound_report_csv(report), path);
}

}  // namespace ehg
