#include <doctest.h>

#include <cmath>
#include <random>

#include "ehg/errors.hpp"
#include "ehg/matrix_game.hpp"

using namespace ehg;

TEST_CASE("known small games") {
    // matching pennies: value 0, strategies (1/2, 1/2)
    auto mp = solve_matrix_game({{1.0, -1.0}, {-1.0, 1.0}});
    CHECK(mp.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mp.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(mp.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));

    // identity 2x2: value 1/2
    auto id = solve_matrix_game({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(id.value == doctest::Approx(0.5).epsilon(1e-12));

    // rock-paper-scissors: value 0, uniform strategies
    auto rps = solve_matrix_game(
        {{0.0, -1.0, 1.0}, {1.0, 0.0, -1.0}, {-1.0, 1.0, 0.0}});
    CHECK(rps.value == doctest::Approx(0.0).epsilon(1e-12));
    for (double p : rps.row_strategy) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    // dominated row: maximizer avoids row 0
    auto dom = solve_matrix_game({{0.1, 0.2}, {1.0, 2.0}});
    CHECK(dom.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dom.row_strategy[1] == doctest::Approx(1.0).epsilon(1e-9));

    // 1x1
    auto one = solve_matrix_game({{-3.0}});
    CHECK(one.value == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("strategies certify the value on random games") {
    std::mt19937_64 eng(2025);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t rows = 1 + eng() % 12;
        std::size_t cols = 1 + eng() % 8;
        std::vector<std::vector<double>> payoff(rows, std::vector<double>(cols));
        for (auto& r : payoff)
            for (double& v : r)
                v = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
        auto sol = solve_matrix_game(payoff);

        // row strategy guarantees >= value against every column
        for (std::size_t j = 0; j < cols; ++j) {
            double got = 0.0;
            for (std::size_t i = 0; i < rows; ++i) got += sol.row_strategy[i] * payoff[i][j];
            CHECK(got >= sol.value - 1e-8);
        }
        // column strategy concedes <= value against every row
        for (std::size_t i = 0; i < rows; ++i) {
            double got = 0.0;
            for (std::size_t j = 0; j < cols; ++j) got += sol.col_strategy[j] * payoff[i][j];
            CHECK(got <= sol.value + 1e-8);
        }
        double psum = 0.0, qsum = 0.0;
        for (double v : sol.row_strategy) {
            CHECK(v >= -1e-12);
            psum += v;
        }
        for (double v : sol.col_strategy) {
            CHECK(v >= -1e-12);
            qsum += v;
        }
        CHECK(psum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(qsum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("bad inputs") {
    CHECK_THROWS_AS(solve_matrix_game({}), validation_error);
    CHECK_THROWS_AS(solve_matrix_game({{1.0, 2.0}, {1.0}}), validation_error);
}
