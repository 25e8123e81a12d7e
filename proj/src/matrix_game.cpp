#include "ehg/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "ehg/errors.hpp"

namespace ehg {

namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau simplex for  min c^T z  s.t.  T z = b, z >= 0  with the
// starting basis already in `basis` and the tableau already reduced
// (basis columns are unit columns). Columns >= banned_from are excluded
// from pricing. Returns false on iteration cap.
bool simplex_min(std::vector<std::vector<double>>& t, std::vector<double>& rhs,
                 std::vector<std::size_t>& basis, const std::vector<double>& cost,
                 std::size_t banned_from) {
    const std::size_t rows = t.size();
    const std::size_t cols = t[0].size();

    std::vector<double> rc(cols);
    auto recompute_rc = [&]() {
        for (std::size_t j = 0; j < cols; ++j) {
            double z = 0.0;
            for (std::size_t i = 0; i < rows; ++i) z += cost[basis[i]] * t[i][j];
            rc[j] = cost[j] - z;
        }
    };
    recompute_rc();

    std::size_t stall = 0;
    for (std::size_t iter = 0; iter < 20000; ++iter) {
        // Dantzig pricing; Bland's rule once degeneracy stalls progress.
        const bool bland = stall > rows + 16;
        std::size_t enter = cols;
        double best = -kPivotTol;
        for (std::size_t j = 0; j < std::min(cols, banned_from); ++j) {
            if (rc[j] < best) {
                enter = j;
                if (bland) break;
                best = rc[j];
            }
        }
        if (enter == cols) return true;  // optimal

        std::size_t leave = rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter] > kPivotTol) {
                double ratio = rhs[i] / t[i][enter];
                if (ratio < best_ratio - 1e-15 ||
                    (bland && ratio < best_ratio + 1e-15 && basis[i] < basis[leave == rows ? i : leave])) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == rows) throw numeric_error("matrix game LP is unbounded");

        stall = best_ratio < 1e-13 ? stall + 1 : 0;

        // pivot
        const double piv = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        rhs[leave] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave) continue;
            double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
            rhs[i] -= f * rhs[leave];
        }
        double f = rc[enter];
        for (std::size_t j = 0; j < cols; ++j) rc[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return false;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff) {
    const std::size_t k = payoff.size();
    if (k == 0) throw validation_error("solve_matrix_game: empty payoff matrix");
    const std::size_t n = payoff[0].size();
    if (n == 0) throw validation_error("solve_matrix_game: empty payoff matrix");
    for (const auto& row : payoff)
        if (row.size() != n) throw validation_error("solve_matrix_game: ragged payoff matrix");

    double lowest = 0.0;
    for (const auto& row : payoff)
        for (double v : row) lowest = std::min(lowest, v);
    const double shift = 1.0 - std::min(0.0, lowest);

    // Covering LP on the shifted game: min 1'x s.t. R'^T x >= 1, x >= 0.
    // Columns: x (k) | surplus (n) | artificials (n).
    const std::size_t cols = k + 2 * n;
    std::vector<std::vector<double>> t(n, std::vector<double>(cols, 0.0));
    std::vector<double> rhs(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) t[i][j] = payoff[j][i] + shift;
        t[i][k + i] = -1.0;
        t[i][k + n + i] = 1.0;
    }
    std::vector<std::size_t> basis(n);
    for (std::size_t i = 0; i < n; ++i) basis[i] = k + n + i;

    std::vector<double> phase1_cost(cols, 0.0);
    for (std::size_t i = 0; i < n; ++i) phase1_cost[k + n + i] = 1.0;
    if (!simplex_min(t, rhs, basis, phase1_cost, cols))
        throw numeric_error("matrix game LP: phase 1 did not converge");

    double infeas = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i] >= k + n) infeas += rhs[i];
    if (infeas > 1e-9) throw numeric_error("matrix game LP: phase 1 left infeasibility");

    // Drive any zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < n; ++i) {
        if (basis[i] < k + n) continue;
        for (std::size_t j = 0; j < k + n; ++j) {
            if (std::abs(t[i][j]) > kPivotTol) {
                const double piv = t[i][j];
                for (std::size_t jj = 0; jj < cols; ++jj) t[i][jj] /= piv;
                rhs[i] /= piv;
                for (std::size_t ii = 0; ii < n; ++ii) {
                    if (ii == i) continue;
                    double f = t[ii][j];
                    if (f == 0.0) continue;
                    for (std::size_t jj = 0; jj < cols; ++jj) t[ii][jj] -= f * t[i][jj];
                    rhs[ii] -= f * rhs[i];
                }
                basis[i] = j;
                break;
            }
        }
    }

    std::vector<double> phase2_cost(cols, 0.0);
    for (std::size_t j = 0; j < k; ++j) phase2_cost[j] = 1.0;
    if (!simplex_min(t, rhs, basis, phase2_cost, k + n))
        throw numeric_error("matrix game LP: phase 2 did not converge");

    std::vector<double> x(k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i] < k) x[basis[i]] = std::max(0.0, rhs[i]);
    double x_sum = 0.0;
    for (double v : x) x_sum += v;
    if (!(x_sum > 0.0)) throw numeric_error("matrix game LP: degenerate optimum");

    // Simplex multipliers: reduced cost of surplus column i equals y_i.
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        for (std::size_t r = 0; r < n; ++r) z += phase2_cost[basis[r]] * t[r][k + i];
        y[i] = std::max(0.0, -z);  // cost of surplus col is 0, rc = -z
    }
    double y_sum = 0.0;
    for (double v : y) y_sum += v;

    MatrixGameSolution sol;
    sol.value = 1.0 / x_sum - shift;
    sol.row_strategy.resize(k);
    for (std::size_t j = 0; j < k; ++j) sol.row_strategy[j] = x[j] / x_sum;
    sol.col_strategy.assign(n, 1.0 / static_cast<double>(n));
    if (y_sum > 0.0)
        for (std::size_t i = 0; i < n; ++i) sol.col_strategy[i] = y[i] / y_sum;
    return sol;
}

}  // namespace ehg
