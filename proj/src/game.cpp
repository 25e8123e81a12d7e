#include "ehg/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ehg/errors.hpp"

namespace ehg {

namespace {

void check_sensor_index(const ChannelState& channels, std::size_t i) {
    if (i >= channels.sensors()) throw validation_error("sensor index out of range");
}

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

}  // namespace

double throughput(double power, const cxvec& w, const ChannelState& channels,
                  std::size_t i, const Scenario& scenario, const cxvec& error_draw) {
    if (power < 0.0) throw validation_error("throughput: power must be >= 0");
    check_unit(w);
    check_sensor_index(channels, i);
    const double n = static_cast<double>(scenario.sensors);
    cxvec h = channels.h_hat[i];
    if (error_draw.size() != h.size()) throw validation_error("throughput: error draw size mismatch");
    for (std::size_t k = 0; k < h.size(); ++k) h[k] += error_draw[k];
    const double gain = std::norm(hdot(h, w));
    const double snr = scenario.tau * n * std::norm(channels.h_s[i]) * gain * power /
                       (scenario.noise_var * (1.0 - scenario.tau));
    return (1.0 - scenario.tau) / (2.0 * n) * log2_1p(snr);
}

double gamma_bound(double power, const cxvec& w, const ChannelState& channels,
                   std::size_t i, const Scenario& scenario) {
    if (power < 0.0) throw validation_error("gamma_bound: power must be >= 0");
    check_unit(w);
    check_sensor_index(channels, i);
    const double n = static_cast<double>(scenario.sensors);
    const double mu = quad_form(channels.q_mat[i], w);
    const double snr = scenario.tau * std::norm(channels.h_s[i]) * n * mu * power /
                       ((1.0 - scenario.tau) * scenario.noise_var);
    return (1.0 - scenario.tau) / (2.0 * scenario.beta * n) * log2_1p(snr);
}

double utility_bs(double rho, double power, const cxvec& w,
                  const ChannelState& channels, const Scenario& scenario) {
    if (rho < 0.0) throw validation_error("utility_bs: rho must be >= 0");
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < channels.sensors(); ++i)
        worst = std::min(worst, gamma_bound(power, w, channels, i, scenario));
    return scenario.alpha * worst - scenario.tau * rho * power;
}

double utility_pb(double rho, double power, double cost) {
    if (power < 0.0) throw validation_error("utility_pb: power must be >= 0");
    return (rho - cost) * power;
}

EffectiveGameParams effective_params_single(const ChannelState& channels,
                                            const Scenario& scenario, double mu_star) {
    const double kappa = scenario.tau * std::norm(channels.h_s[0]) /
                         (scenario.noise_var * (1.0 - scenario.tau));
    EffectiveGameParams p;
    p.gain = mu_star * kappa;
    p.alpha_eff = scenario.alpha * (1.0 - scenario.tau) / (2.0 * scenario.beta * M_LN2);
    p.tau = scenario.tau;
    p.cost = scenario.cost;
    return p;
}

EffectiveGameParams effective_params_from_nu(double nu, const Scenario& scenario) {
    if (!(nu > 0.0)) throw validation_error("effective_params_from_nu: nu must be > 0");
    const double n = static_cast<double>(scenario.sensors);
    EffectiveGameParams p;
    p.gain = scenario.tau * n * nu / ((1.0 - scenario.tau) * scenario.noise_var);
    p.alpha_eff = scenario.alpha * (1.0 - scenario.tau) / (2.0 * n * scenario.beta * M_LN2);
    p.tau = scenario.tau;
    p.cost = scenario.cost;
    return p;
}

double best_response_power(double rho, const EffectiveGameParams& params) {
    if (!(rho > 0.0)) throw validation_error("best_response_power: rho must be > 0");
    const double raw = (params.alpha_eff * params.gain / (params.tau * rho) - 1.0) / params.gain;
    return std::max(0.0, raw);
}

Equilibrium equilibrium_closed_form(const EffectiveGameParams& params) {
    if (!(params.gain > 0.0)) throw validation_error("equilibrium_closed_form: gain must be > 0");
    if (!(params.alpha_eff > 0.0))
        throw validation_error("equilibrium_closed_form: alpha_eff must be > 0");
    const double stationary =
        std::sqrt(params.alpha_eff * params.cost * params.gain / params.tau);
    Equilibrium eq;
    eq.rho = std::max(params.cost, stationary);
    eq.power = best_response_power(eq.rho, params);
    eq.u_bs = params.alpha_eff * std::log1p(params.gain * eq.power) -
              params.tau * eq.rho * eq.power;
    eq.u_pb = (eq.rho - params.cost) * eq.power;
    return eq;
}

Equilibrium single_node_solve(const ChannelState& channels, const Scenario& scenario) {
    if (channels.sensors() != 1 || scenario.sensors != 1)
        throw validation_error("single_node_solve: requires exactly one sensor");
    auto [mu_star, w_star] = max_eigenpair(channels.q_mat[0]);
    Equilibrium eq = equilibrium_closed_form(effective_params_single(channels, scenario, mu_star));
    eq.weights = std::move(w_star);
    eq.gain_value = mu_star;
    return eq;
}

ChiSquareParams chi_square_params(const ChannelState& channels, const Scenario& scenario,
                                  double sigma1_sq, std::optional<double> theta2_override) {
    if (scenario.antennas != 1 || channels.h_hat[0].size() != 1)
        throw validation_error("chi_square_params: requires a single antenna");
    if (channels.sensors() != 1) throw validation_error("chi_square_params: requires one sensor");
    if (!(sigma1_sq > 0.0)) throw validation_error("chi_square_params: sigma1_sq must be > 0");
    ChiSquareParams p;
    p.theta2 = theta2_override ? *theta2_override
                               : 2.0 * std::norm(channels.h_hat[0][0]) / sigma1_sq;
    if (p.theta2 < 0.0) throw validation_error("chi_square_params: theta2 must be >= 0");
    const double growth = std::pow(4.0, scenario.beta / (1.0 - scenario.tau)) - 1.0;
    p.eta = growth * (1.0 - scenario.tau) * scenario.noise_var /
            (scenario.tau * std::norm(channels.h_s[0]) * (1.0 + p.theta2 / 2.0));
    return p;
}

Equilibrium equilibrium_m1_exact(const ChiSquareParams& params, double alpha_eff,
                                 double tau, double cost) {
    const double eta = params.eta;
    if (!(eta > 0.0)) throw validation_error("equilibrium_m1_exact: eta must be > 0");
    if (!(alpha_eff > 0.0)) throw validation_error("equilibrium_m1_exact: alpha_eff must be > 0");

    // Eliminate rho = c / (eta/P - 1); the remaining residual of the first
    // stationarity equation changes sign from + to - at the interior
    // equilibrium, which is the rightmost root in (0, eta).
    auto price_of = [&](double p) { return cost / (eta / p - 1.0); };
    auto residual = [&](double p) {
        return alpha_eff * eta * std::exp(-eta / p) - tau * price_of(p) * p * p;
    };

    const double eps = 1e-9 * eta;
    const double lo = eps, hi = eta * (1.0 - 1e-9);
    const int grid = 4096;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    bool found = false;
    double prev_p = hi, prev_f = residual(hi);
    for (int k = 1; k <= grid; ++k) {
        double p = hi - (hi - lo) * static_cast<double>(k) / grid;
        double f = residual(p);
        if (f > 0.0 && prev_f <= 0.0) {
            bracket_lo = p;
            bracket_hi = prev_p;
            found = true;
            break;
        }
        prev_p = p;
        prev_f = f;
    }
    if (!found)
        throw numeric_error(
            "equilibrium_m1_exact: no interior equilibrium (residual has no "
            "sign change in (0, eta); the optimum sits on the boundary)");

    double a = bracket_lo, b = bracket_hi;  // residual(a) > 0 >= residual(b)
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        (residual(mid) > 0.0 ? a : b) = mid;
    }
    double p_star = 0.5 * (a + b);

    // two Newton polish steps on the residual
    for (int it = 0; it < 2; ++it) {
        double rho = price_of(p_star);
        double drho = cost * (eta / (p_star * p_star)) / ((eta / p_star - 1.0) * (eta / p_star - 1.0));
        double f = alpha_eff * eta * std::exp(-eta / p_star) - tau * rho * p_star * p_star;
        double fp = alpha_eff * eta * std::exp(-eta / p_star) * (eta / (p_star * p_star)) -
                    tau * (drho * p_star * p_star + 2.0 * rho * p_star);
        if (fp == 0.0) break;
        double next = p_star - f / fp;
        if (next > lo && next < hi) p_star = next;
    }

    Equilibrium eq;
    eq.power = p_star;
    eq.rho = price_of(p_star);
    eq.u_bs = alpha_eff * std::exp(-eta / p_star) - tau * eq.rho * p_star;
    eq.u_pb = (eq.rho - cost) * p_star;
    return eq;
}

namespace {

constexpr std::size_t kChunk = 8192;

McEstimate mc_nonoutage(double power, const cxvec& w, const ChannelState& channels,
                        std::size_t i, const Scenario& scenario, std::size_t n_samples,
                        const RandomStream& stream, bool parallel) {
    if (n_samples < 1) throw validation_error("estimate_non_outage: n_samples must be >= 1");
    if (power < 0.0) throw validation_error("estimate_non_outage: power must be >= 0");
    check_unit(w);
    check_sensor_index(channels, i);

    const double n = static_cast<double>(scenario.sensors);
    const double coef = scenario.tau * n * std::norm(channels.h_s[i]) * power /
                        (scenario.noise_var * (1.0 - scenario.tau));
    const double pre = (1.0 - scenario.tau) / (2.0 * n);

    // h = h_hat + L z, so h^dagger w = h_hat^dagger w + z^dagger (L w).
    const HermitianMatrix factor = psd_sqrt(channels.sigma_mat[i]);
    const cxd base = hdot(channels.h_hat[i], w);
    const cxvec u = factor.apply(w);
    const std::size_t m = w.size();

    const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> counts(n_chunks, 0);

#pragma omp parallel for schedule(static) if (parallel)
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
        const std::size_t len = std::min(kChunk, n_samples - begin);
        auto eng = stream.split(static_cast<std::uint64_t>(c)).engine();
        std::uint64_t hit = 0;
        for (std::size_t s = 0; s < len; ++s) {
            cxd t = base;
            for (std::size_t k = 0; k < m; ++k) t += std::conj(complex_gaussian(eng)) * u[k];
            double d = pre * log2_1p(coef * std::norm(t));
            if (d > scenario.beta) ++hit;
        }
        counts[c] = hit;
    }

    std::uint64_t total = 0;
    for (std::uint64_t h : counts) total += h;
    McEstimate est;
    est.p_hat = static_cast<double>(total) / static_cast<double>(n_samples);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
    return est;
}

}  // namespace

McEstimate estimate_non_outage(double power, const cxvec& w, const ChannelState& channels,
                               std::size_t i, const Scenario& scenario,
                               std::size_t n_samples, const RandomStream& stream) {
    return mc_nonoutage(power, w, channels, i, scenario, n_samples, stream, true);
}

McEstimate estimate_non_outage_serial(double power, const cxvec& w,
                                      const ChannelState& channels, std::size_t i,
                                      const Scenario& scenario, std::size_t n_samples,
                                      const RandomStream& stream) {
    return mc_nonoutage(power, w, channels, i, scenario, n_samples, stream, false);
}

}  // namespace ehg
