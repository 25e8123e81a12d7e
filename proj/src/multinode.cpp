#include "ehg/multinode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ehg/errors.hpp"
#include "ehg/matrix_game.hpp"

namespace ehg {

WeightedInstance WeightedInstance::from_channels(const ChannelState& channels) {
    WeightedInstance inst;
    inst.a_mat.reserve(channels.sensors());
    for (std::size_t i = 0; i < channels.sensors(); ++i) {
        HermitianMatrix a = channels.q_mat[i];
        a.scale(std::norm(channels.h_s[i]));
        inst.a_mat.push_back(std::move(a));
    }
    return inst;
}

void WeightedInstance::validate() const {
    if (a_mat.empty()) throw validation_error("instance: needs at least one sensor");
    const std::size_t m = a_mat[0].dim();
    if (m == 0) throw validation_error("instance: empty matrices");
    for (const auto& a : a_mat)
        if (a.dim() != m) throw validation_error("instance: inconsistent dimensions");
}

std::pair<double, double> nu_bounds(const WeightedInstance& instance) {
    instance.validate();
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& a : instance.a_mat) {
        EigenDecomposition d = eigh(a);
        lo = std::min(lo, d.eigenvalues.front());
        hi = std::min(hi, d.eigenvalues.back());
    }
    return {lo, hi};
}

std::vector<double> project_simplex(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0) throw validation_error("project_simplex: empty vector");
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double running = 0.0;
    double theta = u[0] - 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        running += u[k];
        double cand = (running - 1.0) / static_cast<double>(k + 1);
        if (u[k] - cand > 0.0) theta = cand;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(0.0, v[i] - theta);
    double s = std::accumulate(out.begin(), out.end(), 0.0);
    if (s <= 0.0) {
        std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(n));
    } else {
        for (double& x : out) x /= s;
    }
    return out;
}

namespace {

double min_quad_over_constraints(const WeightedInstance& inst, const cxvec& w) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& a : inst.a_mat) worst = std::min(worst, quad_form(a, w));
    return worst;
}

// Projected-gradient ascent on w -> min_i w^dagger A_i w from a given
// start; steps along the active constraint's gradient with backtracking.
double ascend_max_min(const WeightedInstance& inst, cxvec& w, int iterations) {
    const std::size_t n = inst.sensors();
    const std::size_t m = inst.antennas();
    double cur = min_quad_over_constraints(inst, w);
    double step = 0.3;
    for (int iter = 0; iter < iterations && step > 1e-12; ++iter) {
        std::size_t active = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double v = quad_form(inst.a_mat[i], w);
            if (v < worst) {
                worst = v;
                active = i;
            }
        }
        cxvec grad = inst.a_mat[active].apply(w);
        double gn = vec_norm(grad);
        if (gn <= 1e-16) break;
        cxvec cand(m);
        for (std::size_t j = 0; j < m; ++j) cand[j] = w[j] + (step / gn) * 2.0 * grad[j];
        double nrm = vec_norm(cand);
        for (cxd& c : cand) c /= nrm;
        double val = min_quad_over_constraints(inst, cand);
        if (val > cur) {
            w = std::move(cand);
            cur = val;
            step = std::min(0.5, step * 1.25);
        } else {
            step *= 0.5;
        }
    }
    return cur;
}

// lambda_max and top eigenvector of sum_i lambda_i A_i
std::pair<double, cxvec> dual_eval(const WeightedInstance& inst,
                                   const std::vector<double>& lambda) {
    HermitianMatrix acc = HermitianMatrix::weighted_sum(inst.a_mat, lambda);
    return max_eigenpair(acc);
}

}  // namespace

SdpResult solve_sdp_relaxation(const WeightedInstance& instance, double tol,
                               const RandomStream& stream) {
    instance.validate();
    if (!(tol > 0.0)) throw validation_error("solve_sdp_relaxation: tol must be > 0");
    const std::size_t n = instance.sensors();
    const std::size_t m = instance.antennas();

    SdpResult res;

    if (n == 1) {
        auto [lam, v] = max_eigenpair(instance.a_mat[0]);
        res.nu_sdp = lam;
        res.primal_value = lam;
        res.gap = 0.0;
        res.w_mat = HermitianMatrix::outer(v);
        res.w_rounded = v;
        res.rounded_value = quad_form(instance.a_mat[0], v);
        res.dual_weights = {1.0};
        res.iterations = 1;
        return res;
    }

    struct Cut {
        cxvec v;
        std::vector<double> row;  // v^dagger A_i v for each i
    };
    std::vector<Cut> cuts;
    auto add_cut = [&](const cxvec& v) {
        Cut c;
        c.v = v;
        c.row.resize(n);
        for (std::size_t i = 0; i < n; ++i) c.row[i] = quad_form(instance.a_mat[i], v);
        cuts.push_back(std::move(c));
    };

    double best_ub = std::numeric_limits<double>::infinity();
    std::vector<double> best_lambda(n, 1.0 / static_cast<double>(n));
    auto consider = [&](const std::vector<double>& lambda) {
        auto [val, vec] = dual_eval(instance, lambda);
        if (val < best_ub) {
            best_ub = val;
            best_lambda = lambda;
        }
        add_cut(vec);
        return val;
    };

    // Vertex evaluations seed the model and pin nu_sdp <= min_i lambda_max(A_i).
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        consider(e);
    }

    // Projected-subgradient burn-in on the dual (step 1/(L sqrt(t))).
    double lips = 0.0;
    for (const auto& a : instance.a_mat) lips = std::max(lips, a.frobenius_norm());
    if (lips > 0.0) {
        std::vector<double> lambda(n, 1.0 / static_cast<double>(n));
        for (int t = 1; t <= 60; ++t) {
            HermitianMatrix acc = HermitianMatrix::weighted_sum(instance.a_mat, lambda);
            auto [val, vec] = max_eigenpair(acc);
            if (val < best_ub) {
                best_ub = val;
                best_lambda = lambda;
            }
            add_cut(vec);
            const double step = 1.0 / (lips * std::sqrt(static_cast<double>(t)));
            std::vector<double> next(n);
            for (std::size_t i = 0; i < n; ++i)
                next[i] = lambda[i] - step * quad_form(instance.a_mat[i], vec);
            lambda = project_simplex(next);
        }
    }

    // Cutting-plane loop: the master is the matrix game over current cuts,
    // whose row mix certifies a primal W and whose column mix is the next
    // dual iterate.
    const std::size_t cap = 3000;
    double lb = -std::numeric_limits<double>::infinity();
    std::vector<double> primal_weights;
    std::size_t it = 0;
    for (; it < cap; ++it) {
        std::vector<std::vector<double>> payoff;
        payoff.reserve(cuts.size());
        for (const auto& c : cuts) payoff.push_back(c.row);
        MatrixGameSolution game = solve_matrix_game(payoff);
        lb = game.value;
        primal_weights = game.row_strategy;
        if (best_ub - lb <= tol * std::max(1.0, std::abs(best_ub))) break;
        consider(project_simplex(game.col_strategy));

        // bundle compression: drop old zero-weight cuts once the set is large
        if (cuts.size() > 600) {
            std::vector<Cut> kept;
            kept.reserve(cuts.size());
            for (std::size_t kk = 0; kk < cuts.size(); ++kk) {
                const bool recent = kk + 200 >= cuts.size();
                if (recent || game.row_strategy[kk] > 1e-12) kept.push_back(std::move(cuts[kk]));
            }
            cuts = std::move(kept);
        }
    }
    if (best_ub - lb > tol * std::max(1.0, std::abs(best_ub)))
        throw numeric_error("solve_sdp_relaxation: iteration cap reached, best gap " +
                            std::to_string(best_ub - lb));

    // primal certificate W = sum_k p_k v_k v_k^dagger, renormalized to unit trace
    HermitianMatrix w(m);
    for (std::size_t kk = 0; kk < cuts.size(); ++kk) {
        if (primal_weights[kk] <= 0.0) continue;
        const cxvec& v = cuts[kk].v;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                w.at(i, j) += primal_weights[kk] * v[i] * std::conj(v[j]);
    }
    const double tr = w.trace_real();
    if (tr > 0.0) w.scale(1.0 / tr);

    res.nu_sdp = best_ub;
    double primal = std::numeric_limits<double>::infinity();
    for (const auto& a : instance.a_mat) {
        double tri = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                tri += (a.at(i, j) * w.at(j, i)).real();
        primal = std::min(primal, tri);
    }
    res.primal_value = primal;
    res.gap = std::max(0.0, res.nu_sdp - res.primal_value);
    res.w_mat = w;
    res.dual_weights = best_lambda;
    res.iterations = it + 1;

    // rank-1 recovery: top eigenvector of W against 1000 randomized samples
    auto [wtop_val, wtop] = max_eigenpair(w);
    (void)wtop_val;
    cxvec best_vec = wtop;
    double best_val = min_quad_over_constraints(instance, wtop);
    const HermitianMatrix half = psd_sqrt(w);
    auto eng = stream.engine();
    for (int s = 0; s < 1000; ++s) {
        cxvec z = gaussian_vector(m, eng);
        cxvec cand = half.apply(z);
        double nrm = vec_norm(cand);
        if (nrm <= 1e-14) continue;
        for (cxd& c : cand) c /= nrm;
        double val = min_quad_over_constraints(instance, cand);
        if (val > best_val) {
            best_val = val;
            best_vec = cand;
        }
    }
    res.w_rounded = best_vec;
    res.rounded_value = best_val;
    return res;
}

std::pair<double, cxvec> global_search(const WeightedInstance& instance,
                                       std::size_t budget, const RandomStream& stream) {
    instance.validate();
    if (budget < 1) throw validation_error("global_search: budget must be >= 1");
    const std::size_t n = instance.sensors();
    const std::size_t m = instance.antennas();

    double best = -std::numeric_limits<double>::infinity();
    cxvec best_w;

    // sphere samples: sample k always uses substream k, so a larger budget
    // extends the same sequence and the incumbent is monotone in budget
    const RandomStream sample_stream = stream.split(0);
    for (std::size_t k = 0; k < budget; ++k) {
        cxvec w = sample_unit_sphere(m, sample_stream.split(k));
        double val = min_quad_over_constraints(instance, w);
        if (val > best) {
            best = val;
            best_w = std::move(w);
        }
    }

    // 20 projected-gradient ascents, 500 steps each, backtracking step size.
    // Start points never depend on the sample budget: the first restarts sit
    // on the top eigenvectors of the tightest constraints, the rest are fresh
    // sphere samples from their own substreams.
    const RandomStream restart_stream = stream.split(1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> peak(n);
    for (std::size_t i = 0; i < n; ++i) peak[i] = max_eigenpair(instance.a_mat[i]).first;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return peak[a] < peak[b]; });

    const int restarts = 20;
    for (int r = 0; r < restarts; ++r) {
        cxvec w;
        if (static_cast<std::size_t>(r) < std::min<std::size_t>(n, 10))
            w = max_eigenpair(instance.a_mat[order[r]]).second;
        else
            w = sample_unit_sphere(m, restart_stream.split(static_cast<std::uint64_t>(r)));

        double cur = ascend_max_min(instance, w, 500);
        if (cur > best) {
            best = cur;
            best_w = std::move(w);
        }
    }
    return {best, best_w};
}

Equilibrium equilibrium_from_nu(double nu, const Scenario& scenario) {
    if (!(nu > 0.0)) throw validation_error("equilibrium_from_nu: nu must be > 0");
    Equilibrium eq = equilibrium_closed_form(effective_params_from_nu(nu, scenario));
    eq.gain_value = nu;
    return eq;
}

BoundSet compute_bound_set(const WeightedInstance& instance, double sdp_tol,
                           std::size_t gs_budget, const RandomStream& stream) {
    BoundSet bs;
    auto [lo, hi] = nu_bounds(instance);
    bs.nu_min = lo;
    bs.nu_max = hi;
    bs.sdp = solve_sdp_relaxation(instance, sdp_tol, stream.split(0));
    auto [gs, wgs] = global_search(instance, gs_budget, stream.split(1));
    bs.nu_gs = gs;
    bs.w_gs = std::move(wgs);
    return bs;
}

}  // namespace ehg
