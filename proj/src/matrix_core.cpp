#include "qsl/matrix_core.hpp"

#include <stdexcept>

namespace qsl {

double frob_norm(const MatrixC& a) { return a.norm(); }

bool is_hermitian(const MatrixC& h, double tol) {
    return (h - h.adjoint()).norm() <= tol * std::max(1.0, h.norm());
}

bool is_skew_hermitian(const MatrixC& a, double tol) {
    return (a + a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

double project_traceless(MatrixC& m) {
    const auto n = m.rows();
    Complex mean = m.trace() / static_cast<double>(n);
    MatrixC removed = mean * MatrixC::Identity(n, n);
    m -= removed;
    return removed.norm();
}

double killing_inner(const MatrixC& x, const MatrixC& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
        throw std::invalid_argument("killing_inner: dimension mismatch");
    const double n = static_cast<double>(x.rows());
    return -2.0 * n * (x * y).trace().real();
}

double killing_norm(const MatrixC& x) {
    return std::sqrt(std::max(0.0, killing_inner(x, x)));
}

EigenSystem eig_hermitian(const MatrixC& h) {
    if (!is_hermitian(h))
        throw std::invalid_argument("eig_hermitian: input not Hermitian");
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    MatrixC hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixC> solver(hs);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

MatrixC expm_skew(const MatrixC& a) {
    if (!is_skew_hermitian(a))
        throw std::invalid_argument("expm_skew: input not skew-Hermitian");
    // A = iH with H = -iA Hermitian; exp(A) = V e^{i lambda} V^dag.
    EigenSystem es = eig_hermitian(Complex(0, -1) * a);
    const auto n = a.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases[k] = std::exp(Complex(0, es.eigenvalues[k]));
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

std::vector<MatrixC> orthonormalize(const std::vector<MatrixC>& vecs,
                                    int n, double tol) {
    std::vector<MatrixC> basis;
    for (const auto& v : vecs) {
        if (v.rows() != n || v.cols() != n)
            throw std::invalid_argument("orthonormalize: dimension mismatch");
        const double orig = killing_norm(v);
        MatrixC w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) w -= killing_inner(b, w) * b;
        const double r = killing_norm(w);
        if (r > tol * orig) basis.push_back(w / r);
    }
    return basis;
}

}  // namespace qsl
