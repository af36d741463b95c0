#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qsl/grape.hpp"
#include "qsl/matrix_core.hpp"
#include "qsl/rng.hpp"

using namespace qsl;
using oracle::sigma_x;
using oracle::sigma_y;
using oracle::sigma_z;

namespace {
const Complex I_(0, 1);
}

TEST_CASE("killing_inner on Pauli generators") {
    const MatrixC isz = I_ * sigma_z();
    CHECK(killing_inner(isz, isz) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(killing_norm(isz) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

    const MatrixC zero = MatrixC::Zero(2, 2);
    CHECK(killing_inner(zero, isz) == 0.0);

    CHECK(std::abs(killing_inner(I_ * sigma_x(), isz)) <= 1e-15);
}

TEST_CASE("killing_inner rejects dimension mismatch") {
    CHECK_THROWS_AS(killing_inner(MatrixC::Zero(2, 2), MatrixC::Zero(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("killing_inner symmetry and positivity on random skew-Hermitian input") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const MatrixC a = I_ * oracle::random_hermitian(4, rng);
        const MatrixC b = I_ * oracle::random_hermitian(4, rng);
        CHECK(killing_inner(a, b) == doctest::Approx(killing_inner(b, a)).epsilon(1e-12));
        CHECK(killing_inner(a, a) > 0.0);
    }
}

TEST_CASE("eig_hermitian basic spectra") {
    auto es = eig_hermitian(sigma_z());
    CHECK(es.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

    MatrixC d = MatrixC::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = -0.5;
    d(2, 2) = -0.5;
    es = eig_hermitian(d);
    CHECK(es.eigenvalues(0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(es.eigenvalues(1) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(es.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_hermitian reconstruction and unitarity on random input") {
    Rng rng(7);
    const MatrixC h = oracle::random_hermitian(4, rng, false);
    const auto es = eig_hermitian(h);
    const MatrixC recon =
        es.eigenvectors * es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
        es.eigenvectors.adjoint();
    const double scale = std::max(1.0, frob_norm(h));
    CHECK(frob_norm(recon - h) <= 1e-10 * scale);
    CHECK(frob_norm(es.eigenvectors.adjoint() * es.eigenvectors -
                    MatrixC::Identity(4, 4)) <= 1e-10);
    CHECK(es.eigenvalues.sum() ==
          doctest::Approx(h.trace().real()).epsilon(1e-10));
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    MatrixC bad = MatrixC::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);
}

TEST_CASE("expm_skew closed forms") {
    CHECK(frob_norm(expm_skew(MatrixC::Zero(3, 3)) - MatrixC::Identity(3, 3)) <=
          1e-12);

    const MatrixC u = expm_skew(I_ * std::numbers::pi * sigma_z());
    CHECK(frob_norm(u + MatrixC::Identity(2, 2)) <= 1e-10);
}

TEST_CASE("expm_skew matches the Taylor oracle") {
    const MatrixC a = I_ * (std::numbers::pi / 4.0) * sigma_x();
    CHECK(frob_norm(expm_skew(a) - oracle::taylor_expm(a)) <= 1e-10);

    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const MatrixC b = I_ * oracle::random_hermitian(4, rng);
        CHECK(frob_norm(expm_skew(b) - oracle::taylor_expm(b)) <= 1e-10);
    }
}

TEST_CASE("expm_skew output is unitary with unit determinant") {
    Rng rng(31);
    const MatrixC a = I_ * oracle::random_hermitian(5, rng);
    const MatrixC u = expm_skew(a);
    CHECK(frob_norm(u.adjoint() * u - MatrixC::Identity(5, 5)) <= 1e-10);
    CHECK(std::abs(u.determinant() - Complex(1, 0)) <= 1e-10);
}

TEST_CASE("expm_skew rejects non-skew-Hermitian input") {
    CHECK_THROWS_AS(expm_skew(sigma_x()), std::invalid_argument);
}

TEST_CASE("expm_skew group laws") {
    Rng rng(5);
    const MatrixC a = I_ * oracle::random_hermitian(3, rng);
    CHECK(frob_norm(expm_skew(a) * expm_skew(-a) - MatrixC::Identity(3, 3)) <=
          1e-9);
    const double s = 0.37, t = 1.41;
    CHECK(frob_norm(expm_skew(a * s) * expm_skew(a * t) -
                    expm_skew(a * (s + t))) <= 1e-9);
}

TEST_CASE("orthonormalize drops dependent inputs and keeps spans") {
    const MatrixC isx = I_ * sigma_x();
    const MatrixC isy = I_ * sigma_y();

    auto b1 = orthonormalize({isx, 2.0 * isx}, 2);
    CHECK(b1.size() == 1);

    auto b2 = orthonormalize({isx, isy, I_ * sigma_z()}, 2);
    CHECK(b2.size() == 3);

    auto b3 = orthonormalize({isx + isy, isy}, 2);
    REQUIRE(b3.size() == 2);
    CHECK(std::abs(killing_inner(b3[0], b3[1])) <= 1e-10);
    CHECK(oracle::real_span_rank(b3) == 2);
    // Span preserved: original vectors have full components in the output.
    for (const MatrixC& v : {MatrixC(isx + isy), isy}) {
        MatrixC residual = v;
        for (const auto& b : b3) residual -= killing_inner(v, b) * b;
        CHECK(frob_norm(residual) <= 1e-10 * frob_norm(v));
    }

    CHECK(orthonormalize({}, 2).empty());
}

TEST_CASE("Gram matrix of orthonormalize output is the identity") {
    Rng rng(17);
    std::vector<MatrixC> vecs;
    for (int k = 0; k < 6; ++k)
        vecs.push_back(I_ * oracle::random_hermitian(3, rng));
    auto basis = orthonormalize(vecs, 3);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(killing_inner(basis[i], basis[j]) - expected) <= 1e-9);
        }
}

TEST_CASE("killing_inner is invariant under unitary conjugation") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const MatrixC a = I_ * oracle::random_hermitian(n, rng);
        const MatrixC u = haar_random_su(n, derive_seed(99, trial));
        const double before = killing_inner(a, a);
        const MatrixC conj = u.adjoint() * a * u;
        CHECK(std::abs(killing_inner(conj, conj) - before) <= 1e-8 * before);
    }
}

TEST_CASE("project_traceless removes exactly the trace component") {
    MatrixC m = sigma_z();
    m(0, 0) = 2.0;  // trace 1
    const double removed = project_traceless(m);
    CHECK(std::abs(m.trace()) <= 1e-14);
    CHECK(removed == doctest::Approx(frob_norm(0.5 * MatrixC::Identity(2, 2))));
}
