#include <doctest.h>

#include <cmath>

#include "ehg/errors.hpp"
#include "ehg/rng.hpp"

using namespace ehg;

TEST_CASE("sample_unit_sphere basics") {
    RandomStream s{123, 5};
    cxvec w1 = sample_unit_sphere(1, s);
    CHECK(std::abs(std::abs(w1[0]) - 1.0) < 1e-14);

    cxvec a = sample_unit_sphere(4, s);
    cxvec b = sample_unit_sphere(4, s);
    REQUIRE(a.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(a[k] == b[k]);

    double n2 = 0.0;
    for (const cxd& c : a) n2 += std::norm(c);
    CHECK(std::abs(n2 - 1.0) <= 1e-12);

    CHECK_THROWS_AS(sample_unit_sphere(0, s), validation_error);
}

TEST_CASE("sphere direction is symmetric: mean |w1|^2 = 1/2 for M=2") {
    auto eng = RandomStream{99, 1}.engine();
    double acc = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) acc += std::norm(sample_unit_sphere(2, eng)[0]);
    CHECK(std::abs(acc / n - 0.5) < 0.01);
}

TEST_CASE("complex gaussian has unit second moment") {
    auto eng = RandomStream{7, 3}.engine();
    double acc = 0.0, re = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        cxd z = complex_gaussian(eng);
        acc += std::norm(z);
        re += z.real();
    }
    CHECK(std::abs(acc / n - 1.0) < 0.02);
    CHECK(std::abs(re / n) < 0.01);
}

TEST_CASE("split streams decorrelate and reproduce") {
    RandomStream root{2024, 0};
    auto a = root.split(0);
    auto b = root.split(1);
    CHECK(a.engine()() != b.engine()());
    CHECK(a.split(3).engine()() == root.split(0).split(3).engine()());
    // distinct stream ids give distinct sequences
    CHECK(RandomStream{5, 0}.engine()() != RandomStream{5, 1}.engine()());
}
