#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Dense complex linear algebra primitives shared by every module:
// Hermitian eigendecomposition, exponentials of skew-Hermitian matrices,
// the Killing-form inner product, and Gram-Schmidt orthonormalization
// over the real field.

namespace qsl {

using MatrixC = Eigen::MatrixXcd;
using Complex = std::complex<double>;

struct EigenSystem {
    Eigen::VectorXd eigenvalues;  // ascending
    MatrixC eigenvectors;         // unitary, columns are eigenvectors
};

double frob_norm(const MatrixC& a);

// ||H - H^dag||_F <= tol * max(1, ||H||_F)
bool is_hermitian(const MatrixC& h, double tol = 1e-12);
bool is_skew_hermitian(const MatrixC& a, double tol = 1e-12);

// Removes the trace component (Tr/n) * I. Returns the Frobenius norm of
// the removed part.
double project_traceless(MatrixC& m);

// <X,Y>_K = -2n Re Tr[XY] for skew-Hermitian X, Y of dimension n.
// Positive definite on skew-Hermitian inputs; Ad-invariant.
double killing_inner(const MatrixC& x, const MatrixC& y);

double killing_norm(const MatrixC& x);

// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
// Throws std::invalid_argument if the input is not Hermitian within
// 1e-12 relative Frobenius tolerance.
EigenSystem eig_hermitian(const MatrixC& h);

// exp(A) for skew-Hermitian A, computed as V diag(e^{i lambda}) V^dag
// with lambda the spectrum of -iA. The result is unitary up to
// eigensolver error. Throws if A is not skew-Hermitian.
MatrixC expm_skew(const MatrixC& a);

// Gram-Schmidt over the real field under the Killing inner product.
// An input is discarded iff its residual after projection onto the
// running basis has norm <= tol * (its original norm). Output elements
// are pairwise orthonormal and span the same real subspace.
std::vector<MatrixC> orthonormalize(const std::vector<MatrixC>& vecs,
                                    int n, double tol = 1e-10);

}  // namespace qsl
