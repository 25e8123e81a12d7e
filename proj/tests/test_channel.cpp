#include <doctest.h>

#include <cmath>

#include "ehg/channel.hpp"
#include "ehg/errors.hpp"

using namespace ehg;

namespace {

Scenario paper_scenario(std::size_t m, std::size_t n) {
    Scenario sc;
    sc.tau = 0.5;
    sc.beta = 1.0;
    sc.alpha = 1e3;
    sc.cost = 1.0;
    sc.noise_var = 1e-8;
    sc.path_loss = 3.5;
    sc.antennas = m;
    sc.sensors = n;
    sc.bs_position = {-10.0, 0.0};
    sc.pb_position = {10.0, 0.0};
    sc.sensor_region = Rect{{{-4.0, -10.0}, {4.0, -10.0}, {4.0, 10.0}, {-4.0, 10.0}}};
    return sc;
}

}  // namespace

TEST_CASE("place_sensors stays in the rectangle and reproduces") {
    Scenario sc = paper_scenario(5, 20);
    RandomStream s{11, 0};
    auto pts = place_sensors(sc, s);
    REQUIRE(pts.size() == 20);
    for (const Vec2& p : pts) {
        CHECK(p.x >= -4.0);
        CHECK(p.x <= 4.0);
        CHECK(p.y >= -10.0);
        CHECK(p.y <= 10.0);
    }
    auto again = place_sensors(sc, s);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].x == again[i].x);
        CHECK(pts[i].y == again[i].y);
    }
}

TEST_CASE("degenerate rectangle is rejected") {
    Scenario sc = paper_scenario(2, 3);
    sc.sensor_region = Rect{{{1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {1.0, 1.0}}};
    CHECK_THROWS_AS(place_sensors(sc, RandomStream{1, 0}), validation_error);
}

TEST_CASE("build_channels geometry: magnitudes follow the path loss") {
    Scenario sc = paper_scenario(5, 1);
    sc.pb_position = {10.0, 0.0};
    std::vector<Vec2> pos = {{0.0, 0.0}};  // d_pb = 10, d_bs = 10
    ChannelState st = build_channels(sc, pos, RandomStream{3, 1});

    const double expect_mag = std::pow(10.0, -1.75);
    CHECK(expect_mag == doctest::Approx(0.017782794100389).epsilon(1e-12));
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(std::abs(st.h_hat[0][k]) == doctest::Approx(expect_mag).epsilon(1e-13));

    const double s = std::pow(10.0, -3.5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(std::abs(st.sigma_mat[0].at(i, j) - (i == j ? cxd(s, 0.0) : cxd(0.0, 0.0))) <
                  1e-18);

    CHECK(std::abs(st.h_s[0]) == doctest::Approx(expect_mag).epsilon(1e-13));

    // construction identity: Q - h h^dagger - Sigma = 0 exactly
    HermitianMatrix q = HermitianMatrix::outer(st.h_hat[0]);
    q.add_scaled(st.sigma_mat[0], 1.0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(st.q_mat[0].at(i, j) == q.at(i, j));

    // rank-1 plus scaled identity spectrum
    auto top = max_eigenpair(st.q_mat[0]).first;
    CHECK(top == doctest::Approx(5.0 * s + s).epsilon(1e-10));
}

TEST_CASE("build_channels rejects coincident nodes") {
    Scenario sc = paper_scenario(2, 1);
    sc.pb_position = {0.0, 0.0};
    std::vector<Vec2> pos = {{0.0, 0.0}};
    CHECK_THROWS_AS(build_channels(sc, pos, RandomStream{1, 0}), validation_error);
}

TEST_CASE("sample_error covariance matches Sigma") {
    // Sigma = diag(4, 1): component variance ratio ~ 4:1, means ~ 0
    HermitianMatrix sigma(2);
    sigma.at(0, 0) = 4.0;
    sigma.at(1, 1) = 1.0;
    ErrorSampler sampler(sigma);
    auto eng = RandomStream{17, 0}.engine();
    double m0 = 0.0, m1 = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        cxvec e = sampler.draw(eng);
        m0 += std::norm(e[0]);
        m1 += std::norm(e[1]);
    }
    m0 /= n;
    m1 /= n;
    CHECK(std::abs(m0 - 4.0) < 5.0 * 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(m1 - 1.0) < 5.0 * 1.0 / std::sqrt(static_cast<double>(n)));

    // zero covariance: always zero draws
    cxvec e0 = sample_error(HermitianMatrix(2), RandomStream{5, 0});
    CHECK(std::abs(e0[0]) == 0.0);
    CHECK(std::abs(e0[1]) == 0.0);

    HermitianMatrix indef(2);
    indef.at(0, 0) = -1.0;
    CHECK_THROWS_AS(sample_error(indef, RandomStream{5, 0}), validation_error);
}

TEST_CASE("general covariance empirical check (off-diagonal)") {
    HermitianMatrix sigma(2);
    sigma.at(0, 0) = 2.0;
    sigma.at(1, 1) = 1.0;
    sigma.at(0, 1) = cxd(0.5, 0.25);
    sigma.at(1, 0) = std::conj(sigma.at(0, 1));
    ErrorSampler sampler(sigma);
    auto eng = RandomStream{18, 0}.engine();
    cxd cross(0.0, 0.0);
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        cxvec e = sampler.draw(eng);
        cross += e[0] * std::conj(e[1]);
    }
    cross /= static_cast<double>(n);
    CHECK(std::abs(cross - sigma.at(0, 1)) < 5.0 * 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("with_uncertainty rebuilds Q") {
    Scenario sc = paper_scenario(3, 1);
    ChannelState st = build_channels(sc, {{0.0, 0.0}}, RandomStream{21, 0});
    double zeta = 0.5;
    ChannelState st2 = with_uncertainty(st, 0, zeta);
    CHECK(st2.sigma_mat[0].at(0, 0).real() == zeta);
    CHECK(st2.sigma_mat[0].at(1, 1) == st.sigma_mat[0].at(1, 1));
    HermitianMatrix q = HermitianMatrix::outer(st2.h_hat[0]);
    q.add_scaled(st2.sigma_mat[0], 1.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(st2.q_mat[0].at(i, j) == q.at(i, j));
}
