#ifndef EHG_GAME_HPP
#define EHG_GAME_HPP

#include <cstddef>
#include <optional>

#include "ehg/channel.hpp"

namespace ehg {

// Reduced leader/follower parameters: the base station utility becomes
// alpha_eff * ln(1 + gain * P) - tau * rho * P.
struct EffectiveGameParams {
    double gain = 0.0;       // mu* kappa for N=1, tau N nu / ((1-tau) sigma^2) in general
    double alpha_eff = 0.0;  // alpha (1-tau) / (2 N beta ln 2)
    double tau = 0.5;
    double cost = 1.0;
};

struct Equilibrium {
    double rho = 0.0;    // price, >= cost
    double power = 0.0;  // >= 0
    std::optional<cxvec> weights;  // unit beamformer when one exists
    double gain_value = 0.0;       // mu* or nu backing the solution
    double u_bs = 0.0;
    double u_pb = 0.0;
};

struct ChiSquareParams {
    double theta2 = 0.0;  // non-centrality 2|h_hat|^2 / sigma1^2
    double eta = 0.0;
};

struct McEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
};

// Instantaneous throughput of sensor i for a realized channel error.
double throughput(double power, const cxvec& w, const ChannelState& channels,
                  std::size_t i, const Scenario& scenario, const cxvec& error_draw);

// Markov/Jensen upper bound on the non-outage probability (raw value,
// may exceed 1).
double gamma_bound(double power, const cxvec& w, const ChannelState& channels,
                   std::size_t i, const Scenario& scenario);

// min_i alpha * Gamma_i - tau * rho * P
double utility_bs(double rho, double power, const cxvec& w,
                  const ChannelState& channels, const Scenario& scenario);

// (rho - c) * P
double utility_pb(double rho, double power, double cost);

EffectiveGameParams effective_params_single(const ChannelState& channels,
                                            const Scenario& scenario, double mu_star);
EffectiveGameParams effective_params_from_nu(double nu, const Scenario& scenario);

// Follower best response, clamped at zero power.
double best_response_power(double rho, const EffectiveGameParams& params);

// Closed-form Stackelberg equilibrium of the reduced game, with the
// price clamped at cost when the interior stationary price falls below it.
Equilibrium equilibrium_closed_form(const EffectiveGameParams& params);

// N=1: optimal beamformer from the dominant eigenpair of Q, then the
// closed form. gain_value is mu*.
Equilibrium single_node_solve(const ChannelState& channels, const Scenario& scenario);

// M=1, N=1 exponential approximation parameters. theta2_override pins the
// non-centrality independently of the channel when set.
ChiSquareParams chi_square_params(const ChannelState& channels, const Scenario& scenario,
                                  double sigma1_sq,
                                  std::optional<double> theta2_override = std::nullopt);

// Solves  alpha' eta e^(-eta/P) = tau rho P^2,  eta/P - c/rho = 1
// for the interior equilibrium (P in (eta/2, eta), rho > c) by
// elimination, bracketed bisection and Newton polish. Throws
// numeric_error when no interior equilibrium exists.
Equilibrium equilibrium_m1_exact(const ChiSquareParams& params, double alpha_eff,
                                 double tau, double cost);

// Monte-Carlo estimate of Pr(D_i > beta) at (P, w) with n_samples error
// draws; returns the estimate and its binomial standard error. Samples
// are sharded into fixed-size chunks with per-chunk substreams, so the
// result is independent of thread count. The _serial variant is the
// reference implementation the parallel one must match exactly.
McEstimate estimate_non_outage(double power, const cxvec& w, const ChannelState& channels,
                               std::size_t i, const Scenario& scenario,
                               std::size_t n_samples, const RandomStream& stream);
McEstimate estimate_non_outage_serial(double power, const cxvec& w,
                                      const ChannelState& channels, std::size_t i,
                                      const Scenario& scenario, std::size_t n_samples,
                                      const RandomStream& stream);

}  // namespace ehg

#endif
