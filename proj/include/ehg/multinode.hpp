#ifndef EHG_MULTINODE_HPP
#define EHG_MULTINODE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "ehg/channel.hpp"
#include "ehg/game.hpp"
#include "ehg/hermitian.hpp"
#include "ehg/rng.hpp"

namespace ehg {

// Constraint matrices A_i = |h_si|^2 Q_i of the max-min beamforming
// problem  max_w min_i w^dagger A_i w  over the unit sphere.
struct WeightedInstance {
    std::vector<HermitianMatrix> a_mat;

    std::size_t sensors() const { return a_mat.size(); }
    std::size_t antennas() const { return a_mat.empty() ? 0 : a_mat[0].dim(); }

    static WeightedInstance from_channels(const ChannelState& channels);
    void validate() const;
};

struct SdpResult {
    double nu_sdp = 0.0;        // certified dual value, >= true optimum
    double primal_value = 0.0;  // min_i Tr(A_i W), >= nu_sdp - gap
    double gap = 0.0;
    HermitianMatrix w_mat;      // PSD, unit trace
    cxvec w_rounded;            // best rank-1 recovery (unit norm)
    double rounded_value = 0.0; // min_i w^dagger A_i w at w_rounded
    std::vector<double> dual_weights;  // simplex weights attaining nu_sdp
    std::size_t iterations = 0;
};

// All four nu values for one instance.
struct BoundSet {
    double nu_min = 0.0;
    double nu_max = 0.0;
    SdpResult sdp;
    double nu_gs = 0.0;
    cxvec w_gs;
};

// (min_i lambda_min(A_i), min_i lambda_max(A_i))
std::pair<double, double> nu_bounds(const WeightedInstance& instance);

// Relaxed problem  max_W min_i Tr(A_i W)  over the spectahedron, solved
// through its dual  min_{lambda in simplex} lambda_max(sum lambda_i A_i):
// a short projected-subgradient burn-in seeds a cutting-plane loop whose
// master problems are small exact matrix games, giving a certified
// primal/dual pair. Stops when nu_sdp - primal_value <= tol * max(1, nu_sdp);
// throws numeric_error (with the best gap) at the iteration cap.
SdpResult solve_sdp_relaxation(const WeightedInstance& instance, double tol,
                               const RandomStream& stream);

// Best-effort baseline: `budget` uniform sphere samples plus 20
// projected-gradient ascents (500 steps each). Monotone in budget for a
// fixed stream because sample k always uses the k-th substream and the
// restarts never depend on budget.
std::pair<double, cxvec> global_search(const WeightedInstance& instance,
                                       std::size_t budget, const RandomStream& stream);

// Maps a nu value onto the reduced game and solves it in closed form.
Equilibrium equilibrium_from_nu(double nu, const Scenario& scenario);

// Euclidean projection onto the probability simplex (sorted threshold).
std::vector<double> project_simplex(const std::vector<double>& v);

BoundSet compute_bound_set(const WeightedInstance& instance, double sdp_tol,
                           std::size_t gs_budget, const RandomStream& stream);

}  // namespace ehg

#endif
