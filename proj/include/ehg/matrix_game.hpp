#ifndef EHG_MATRIX_GAME_HPP
#define EHG_MATRIX_GAME_HPP

#include <vector>

namespace ehg {

struct MatrixGameSolution {
    double value = 0.0;
    std::vector<double> row_strategy;  // maximizer, length = rows
    std::vector<double> col_strategy;  // minimizer, length = cols
};

// Value and optimal mixed strategies of the zero-sum game
//   max_p min_q  p^T R q,   p, q on their simplices,
// where R[k][i] is the payoff to the row player. Solved exactly by a
// two-phase dense simplex on the covering LP after a positivity shift.
// Row/column counts stay small here (columns = sensors, rows = cuts).
MatrixGameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff);

}  // namespace ehg

#endif
