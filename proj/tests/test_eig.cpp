#include <doctest.h>

#include <cmath>

#include "ehg/errors.hpp"
#include "ehg/hermitian.hpp"
#include "ehg/rng.hpp"

using namespace ehg;

namespace {

HermitianMatrix random_hermitian(std::size_t m, std::mt19937_64& eng, bool psd) {
    HermitianMatrix g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g.at(i, j) = complex_gaussian(eng);
    HermitianMatrix out(m);
    if (psd) {
        // G G^dagger
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                cxd acc(0.0, 0.0);
                for (std::size_t k = 0; k < m; ++k) acc += g.at(i, k) * std::conj(g.at(j, k));
                out.at(i, j) = acc;
            }
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                out.at(i, j) = 0.5 * (g.at(i, j) + std::conj(g.at(j, i)));
    }
    return out;
}

double residual(const HermitianMatrix& q, const EigenDecomposition& d) {
    double worst = 0.0;
    for (std::size_t k = 0; k < q.dim(); ++k) {
        cxvec qv = q.apply(d.eigenvectors[k]);
        double err = 0.0;
        for (std::size_t i = 0; i < q.dim(); ++i)
            err += std::norm(qv[i] - d.eigenvalues[k] * d.eigenvectors[k][i]);
        worst = std::max(worst, std::sqrt(err) / std::max(1.0, std::abs(d.eigenvalues[k])));
    }
    return worst;
}

}  // namespace

TEST_CASE("eigh identity and diagonal") {
    auto d = eigh(HermitianMatrix::identity(3));
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-14));

    HermitianMatrix q(2);
    q.at(0, 0) = 2.0;
    q.at(1, 1) = 1.0;
    auto d2 = eigh(q);
    CHECK(d2.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(d2.eigenvalues[1] == doctest::Approx(2.0));
    // ascending order puts e2 first
    CHECK(std::abs(d2.eigenvectors[0][1] - cxd(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(d2.eigenvectors[1][0] - cxd(1.0, 0.0)) < 1e-14);
}

TEST_CASE("eigh rank-1 plus scaled identity (hand-derived spectrum)") {
    // Q = h h^dagger + 0.5 I with h = (1, i): eigenvalues 0.5 and 2.5,
    // top eigenvector (1, i)/sqrt(2) after phase normalization.
    cxvec h = {cxd(1.0, 0.0), cxd(0.0, 1.0)};
    HermitianMatrix q = HermitianMatrix::outer(h);
    q.add_scaled_identity(0.5);
    auto d = eigh(q);
    CHECK(d.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(std::abs(d.eigenvectors[1][0] - cxd(M_SQRT1_2, 0.0)) < 1e-12);
    CHECK(std::abs(d.eigenvectors[1][1] - cxd(0.0, M_SQRT1_2)) < 1e-12);
}

TEST_CASE("max_eigenpair examples") {
    HermitianMatrix q(2);
    q.at(0, 0) = 2.0;
    q.at(1, 1) = 1.0;
    auto [lam, v] = max_eigenpair(q);
    CHECK(lam == doctest::Approx(2.0));
    CHECK(std::abs(v[0] - cxd(1.0, 0.0)) < 1e-14);

    cxvec h = {cxd(1.0, 0.0), cxd(0.0, 1.0)};
    auto [lam2, v2] = max_eigenpair(HermitianMatrix::outer(h));
    CHECK(lam2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(v2[0] - cxd(M_SQRT1_2, 0.0)) < 1e-12);
    CHECK(std::abs(v2[1] - cxd(0.0, M_SQRT1_2)) < 1e-12);

    // zero matrix: deterministic basis vector, lowest index among ties
    auto [lam3, v3] = max_eigenpair(HermitianMatrix(3));
    CHECK(lam3 == 0.0);
    CHECK(std::abs(v3[0] - cxd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("min_eigenvalue examples") {
    HermitianMatrix q(2);
    q.at(0, 0) = 2.0;
    q.at(1, 1) = 1.0;
    CHECK(min_eigenvalue(q) == doctest::Approx(1.0));
    CHECK(min_eigenvalue(HermitianMatrix::identity(4)) == doctest::Approx(1.0));

    auto eng = RandomStream{7, 0}.engine();
    for (std::size_t m : {2, 3, 5}) {
        cxvec h = gaussian_vector(m, eng);
        HermitianMatrix q2 = HermitianMatrix::outer(h);
        q2.add_scaled_identity(0.25);
        CHECK(min_eigenvalue(q2) == doctest::Approx(0.25).epsilon(1e-10));
    }
}

TEST_CASE("rayleigh examples and validation") {
    HermitianMatrix q(2);
    q.at(0, 0) = 2.0;
    q.at(1, 1) = 1.0;
    CHECK(rayleigh(q, {cxd(1.0, 0.0), cxd(0.0, 0.0)}) == doctest::Approx(2.0));
    CHECK(rayleigh(q, {cxd(M_SQRT1_2, 0.0), cxd(M_SQRT1_2, 0.0)}) == doctest::Approx(1.5));
    CHECK(rayleigh(HermitianMatrix::identity(2), {cxd(0.6, 0.0), cxd(0.0, 0.8)}) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(rayleigh(q, {cxd(1.0, 0.0), cxd(1.0, 0.0)}), validation_error);
}

TEST_CASE("eigh rejects non-Hermitian input") {
    HermitianMatrix q(2);
    q.at(0, 1) = cxd(1.0, 0.0);
    q.at(1, 0) = cxd(0.5, 0.0);  // asymmetry 0.5 > 1e-8
    CHECK_THROWS_AS(eigh(q), validation_error);
}

TEST_CASE("eigh invariants on random matrices") {
    auto eng = RandomStream{42, 0}.engine();
    for (int rep = 0; rep < 40; ++rep) {
        std::size_t m = 1 + static_cast<std::size_t>(uniform01(eng) * 12.0);
        HermitianMatrix q = random_hermitian(m, eng, rep % 2 == 0);
        auto d = eigh(q);
        CHECK(residual(q, d) < 1e-9);
        double tr = 0.0;
        for (double lam : d.eigenvalues) tr += lam;
        CHECK(std::abs(tr - q.trace_real()) <= 1e-9 * std::max(1.0, std::abs(q.trace_real())));
        // orthonormality
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b) {
                cxd ip = hdot(d.eigenvectors[a], d.eigenvectors[b]);
                CHECK(std::abs(ip - (a == b ? cxd(1.0, 0.0) : cxd(0.0, 0.0))) < 1e-9);
            }
    }
}

TEST_CASE("rayleigh sandwich on random PSD matrices") {
    auto eng = RandomStream{43, 0}.engine();
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t m = 2 + static_cast<std::size_t>(uniform01(eng) * 6.0);
        HermitianMatrix q = random_hermitian(m, eng, true);
        auto d = eigh(q);
        for (int k = 0; k < 100; ++k) {
            cxvec w = sample_unit_sphere(m, eng);
            double r = rayleigh(q, w);
            CHECK(r >= d.eigenvalues.front() - 1e-9);
            CHECK(r <= d.eigenvalues.back() + 1e-9);
        }
    }
}

TEST_CASE("eigh is bit-deterministic") {
    auto eng = RandomStream{44, 0}.engine();
    HermitianMatrix q = random_hermitian(6, eng, false);
    auto a = eigh(q);
    auto b = eigh(q);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(a.eigenvalues[k] == b.eigenvalues[k]);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(a.eigenvectors[k][i] == b.eigenvectors[k][i]);
    }
}

TEST_CASE("psd_sqrt squares back and rejects indefinite input") {
    auto eng = RandomStream{45, 0}.engine();
    HermitianMatrix q = random_hermitian(5, eng, true);
    HermitianMatrix r = psd_sqrt(q);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            cxd acc(0.0, 0.0);
            for (std::size_t k = 0; k < 5; ++k) acc += r.at(i, k) * r.at(k, j);
            CHECK(std::abs(acc - q.at(i, j)) < 1e-9 * std::max(1.0, q.frobenius_norm()));
        }
    HermitianMatrix neg = HermitianMatrix::identity(3, -1.0);
    CHECK_THROWS_AS(psd_sqrt(neg), validation_error);
}
