#pragma once

// Test-only oracles, independent of the library's computational paths:
// a Taylor scaling-and-squaring exponential, a vectorization-based real
// rank, a rank-based Lie closure, and central finite differences.

#include <Eigen/Dense>
#include <vector>

#include "qsl/grape.hpp"
#include "qsl/matrix_core.hpp"
#include "qsl/rng.hpp"

namespace oracle {

// exp(A) by scaling-and-squaring with a plain Taylor series. No
// eigendecomposition anywhere, so it checks expm_skew independently.
inline qsl::MatrixC taylor_expm(const qsl::MatrixC& a) {
    const auto n = a.rows();
    int squarings = 0;
    double norm = a.norm();
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    qsl::MatrixC x = a / std::pow(2.0, squarings);
    qsl::MatrixC term = qsl::MatrixC::Identity(n, n);
    qsl::MatrixC sum = term;
    for (int k = 1; k < 40; ++k) {
        term = (term * x) / double(k);
        sum += term;
        if (term.norm() < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline Eigen::MatrixXd stack_real(const std::vector<qsl::MatrixC>& mats) {
    const auto n = mats[0].rows();
    Eigen::MatrixXd stacked(2 * n * n, static_cast<Eigen::Index>(mats.size()));
    for (size_t j = 0; j < mats.size(); ++j) {
        Eigen::Index r = 0;
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) {
                stacked(r++, j) = mats[j](a, b).real();
                stacked(r++, j) = mats[j](a, b).imag();
            }
    }
    return stacked;
}

// Real-span rank of a set of matrices via singular values of the
// stacked (Re, Im) vectorizations.
inline int real_span_rank(const std::vector<qsl::MatrixC>& mats,
                          double tol = 1e-10) {
    if (mats.empty()) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack_real(mats));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > tol * sv[0]) ++rank;
    return rank;
}

// Brute-force Lie closure: keep commutating and re-ranking until the
// span stops growing. Uses no Gram-Schmidt under the Lie-algebra inner
// product, so it is an independent check of lie_closure. Each round the
// candidate set is reduced to an independent column subset (pivoted QR)
// to keep the pairwise commutator count bounded.
inline int closure_rank(const std::vector<qsl::MatrixC>& generators,
                        double tol = 1e-10) {
    auto reduce = [&](const std::vector<qsl::MatrixC>& mats)
        -> std::vector<qsl::MatrixC> {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stack_real(mats));
        qr.setThreshold(tol);
        const int rank = static_cast<int>(qr.rank());
        std::vector<qsl::MatrixC> keep;
        for (int i = 0; i < rank; ++i)
            keep.push_back(mats[qr.colsPermutation().indices()[i]]);
        return keep;
    };
    std::vector<qsl::MatrixC> span = reduce(generators);
    for (;;) {
        std::vector<qsl::MatrixC> next = span;
        for (size_t i = 0; i < span.size(); ++i)
            for (size_t j = i + 1; j < span.size(); ++j)
                next.push_back(span[i] * span[j] - span[j] * span[i]);
        next = reduce(next);
        if (next.size() == span.size()) return static_cast<int>(span.size());
        span = std::move(next);
    }
}

// Central finite differences of the fidelity error w.r.t. every
// amplitude.
inline Eigen::MatrixXd fd_gradient(const qsl::ControlSystem& sys,
                                   const qsl::ControlSchedule& sched,
                                   const qsl::MatrixC& target,
                                   double step = 1e-6) {
    Eigen::MatrixXd g(sched.amplitudes.rows(), sched.amplitudes.cols());
    qsl::ControlSchedule probe = sched;
    for (Eigen::Index j = 0; j < g.rows(); ++j)
        for (Eigen::Index k = 0; k < g.cols(); ++k) {
            probe.amplitudes = sched.amplitudes;
            probe.amplitudes(j, k) += step;
            const double up = 1.0 - qsl::fidelity(qsl::propagate(sys, probe), target);
            probe.amplitudes(j, k) -= 2.0 * step;
            const double dn = 1.0 - qsl::fidelity(qsl::propagate(sys, probe), target);
            g(j, k) = (up - dn) / (2.0 * step);
        }
    return g;
}

// Pauli and Gell-Mann generators used across the tests.
inline qsl::MatrixC sigma_x() {
    qsl::MatrixC m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline qsl::MatrixC sigma_y() {
    qsl::MatrixC m(2, 2);
    m << qsl::Complex(0, 0), qsl::Complex(0, -1), qsl::Complex(0, 1),
        qsl::Complex(0, 0);
    return m;
}
inline qsl::MatrixC sigma_z() {
    qsl::MatrixC m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
// Antisymmetric Gell-Mann matrices (the so(3) control set inside su(3)).
inline qsl::MatrixC gellmann(int which) {
    qsl::MatrixC m = qsl::MatrixC::Zero(3, 3);
    const qsl::Complex i(0, 1);
    switch (which) {
        case 2: m(0, 1) = -i; m(1, 0) = i; break;
        case 5: m(0, 2) = -i; m(2, 0) = i; break;
        case 7: m(1, 2) = -i; m(2, 1) = i; break;
        default: throw std::invalid_argument("gellmann: unsupported index");
    }
    return m;
}

inline qsl::MatrixC random_hermitian(int n, qsl::Rng& rng, bool traceless = true) {
    qsl::MatrixC m(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            m(a, b) = qsl::Complex(rng.normal(), rng.normal());
    m = 0.5 * (m + m.adjoint().eval());
    if (traceless) qsl::project_traceless(m);
    return m;
}

}  // namespace oracle
