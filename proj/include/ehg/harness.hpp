#ifndef EHG_HARNESS_HPP
#define EHG_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehg/channel.hpp"
#include "ehg/game.hpp"
#include "ehg/multinode.hpp"

namespace ehg {

enum class SweepVariable { pb_distance, uncertainty, antennas };
enum class Solver { closed_form, m1_exact, nu_min, nu_max, sdp, global_search };

const char* solver_name(Solver s);

// Parsed experiment description. See README for the config file schema
// (flat key = value with [scenario] / [geometry] / [sweep] sections).
struct SweepConfig {
    Scenario scenario;
    SweepVariable sweep_variable = SweepVariable::pb_distance;
    std::vector<double> sweep_values;
    std::size_t replications = 1;
    std::uint64_t base_seed = 0;
    std::vector<Solver> solvers;
    std::size_t mc_samples = 0;
    // solver knobs
    double sdp_tol = 1e-7;
    std::size_t gs_budget = 20000;
    std::optional<double> theta2_override;

    void validate() const;
};

struct SweepRecord {
    double sweep_value = 0.0;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    Solver solver = Solver::closed_form;
    double nu = 0.0;
    double rho_star = 0.0;
    double p_star = 0.0;
    double u_bs = 0.0;
    double u_pb = 0.0;
    double gamma_min = 0.0;
    std::optional<double> p_nonoutage_hat;
    std::optional<std::vector<double>> antenna_powers;  // |w_m|^2 P*
};

struct BoundCheckRow {
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    std::size_t sensor = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    double gamma = 0.0;         // raw Markov/Jensen bound
    double gamma_capped = 0.0;  // min(1, gamma)
    bool violated = false;
};

struct BoundReport {
    std::vector<BoundCheckRow> rows;
    std::size_t violations = 0;
};

SweepConfig load_sweep_config(const std::string& path);
SweepConfig parse_sweep_config(const std::string& text, const std::string& origin);

// One record per (sweep value, replication, solver). Replications run
// under derived substreams, so the parallel runners give byte-identical
// results to their serial references.
std::vector<SweepRecord> run_distance_sweep(const SweepConfig& config);
std::vector<SweepRecord> run_distance_sweep_serial(const SweepConfig& config);

std::vector<SweepRecord> run_uncertainty_sweep(const SweepConfig& config);
std::vector<SweepRecord> run_uncertainty_sweep_serial(const SweepConfig& config);

BoundReport validate_bound(const SweepConfig& config);
BoundReport validate_bound_serial(const SweepConfig& config);

// UTF-8 CSV, fixed header, floats at 12 significant digits, rows ordered
// by (sweep_value, replication, solver name).
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::string render_csv(const std::vector<SweepRecord>& records);

// Cross-replication mean/stddev per (sweep_value, solver).
void emit_summary_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::string render_summary_csv(const std::vector<SweepRecord>& records);

void emit_bound_report_csv(const BoundReport& report, const std::string& path);
std::string render_bound_report_csv(const BoundReport& report);

}  // namespace ehg

#endif
