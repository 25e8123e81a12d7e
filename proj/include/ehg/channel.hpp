#ifndef EHG_CHANNEL_HPP
#define EHG_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "ehg/hermitian.hpp"
#include "ehg/rng.hpp"

namespace ehg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Axis-aligned rectangle given by its four corners (any order).
struct Rect {
    Vec2 corners[4];

    double xmin() const;
    double xmax() const;
    double ymin() const;
    double ymax() const;
    // Throws validation_error (with `path` prefix) unless the corners
    // form a non-degenerate axis-aligned rectangle.
    void validate(const char* path) const;
};

// Game and physical parameters for one experiment.
struct Scenario {
    double tau = 0.5;         // harvesting fraction of the slot
    double beta = 1.0;        // throughput threshold
    double alpha = 1.0;       // non-outage weighting
    double cost = 1.0;        // beacon cost per unit power (c)
    double noise_var = 1.0;   // sigma^2
    double path_loss = 3.5;   // gamma
    std::size_t antennas = 1; // M
    std::size_t sensors = 1;  // N
    Vec2 bs_position{-10.0, 0.0};
    Vec2 pb_position{10.0, 0.0};
    Rect sensor_region{};

    void validate() const;  // throws validation_error with field paths
};

// Estimated channels and error statistics for all sensors.
struct ChannelState {
    std::vector<cxvec> h_hat;                 // per sensor, length M
    std::vector<HermitianMatrix> sigma_mat;   // error covariances
    std::vector<cxd> h_s;                     // sensor-to-BS gains
    std::vector<HermitianMatrix> q_mat;       // h_hat h_hat^dagger + Sigma
    std::vector<Vec2> sensor_positions;

    std::size_t sensors() const { return h_hat.size(); }
};

// N i.i.d. uniform points in the scenario's sensor rectangle.
std::vector<Vec2> place_sensors(const Scenario& scenario, const RandomStream& stream);

// Path-loss channel estimates with uniform random entry phases,
// Sigma_i = I / d_i^gamma, |h_si| = d_si^(-gamma/2).
ChannelState build_channels(const Scenario& scenario,
                            const std::vector<Vec2>& sensor_positions,
                            const RandomStream& stream);

// Replace Sigma_i(0,0) by zeta (leaving other diagonal entries) and
// reassemble Q_i. Used by the uncertainty sweep.
ChannelState with_uncertainty(const ChannelState& state, std::size_t i, double zeta);

// One draw e ~ CN(0, Sigma).
cxvec sample_error(const HermitianMatrix& sigma, const RandomStream& stream);

// Prefactored sampler for hot Monte-Carlo loops.
class ErrorSampler {
  public:
    explicit ErrorSampler(const HermitianMatrix& sigma);
    cxvec draw(std::mt19937_64& eng) const;
    const HermitianMatrix& factor() const { return factor_; }

  private:
    HermitianMatrix factor_;
};

}  // namespace ehg

#endif
