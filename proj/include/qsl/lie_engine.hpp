#pragma once

#include <string>
#include <vector>

#include "qsl/matrix_core.hpp"

// Lie-algebraic analysis of a bilinear control system: dynamical-algebra
// closure, controllability, standard control-algebra bases, Cartan pair
// verification, orthogonal complements, drift projection, and
// centralizer / adjoint-orbit dimensions.

namespace qsl {

struct ControlSystem {
    int n = 0;
    MatrixC drift;                 // Hermitian, traceless after ingestion
    std::vector<MatrixC> controls;

    // Projects out traces; throws on non-Hermitian or dimension-mismatched
    // inputs. Returns the largest removed trace component through
    // *trace_removed when non-null.
    ControlSystem(int n, MatrixC drift, std::vector<MatrixC> controls,
                  double* trace_removed = nullptr);
};

struct LieBasis {
    int n = 0;
    std::vector<MatrixC> elements;  // pairwise orthonormal under killing_inner

    int size() const { return static_cast<int>(elements.size()); }
};

struct GroupKind {
    enum class Tag { SO, Sp, SU_pq, FullSU, Other };
    Tag tag = Tag::Other;
    int p = 0;  // Sp index m for Sp; p for SU_pq
    int q = 0;  // q for SU_pq

    static GroupKind so() { return {Tag::SO, 0, 0}; }
    static GroupKind sp(int m) { return {Tag::Sp, m, 0}; }
    static GroupKind su_pq(int p, int q) { return {Tag::SU_pq, p, q}; }
    static GroupKind full_su() { return {Tag::FullSU, 0, 0}; }
    static GroupKind other() { return {Tag::Other, 0, 0}; }

    std::string name(int n) const;
};

struct CartanReport {
    bool kk_in_k = false;
    bool kp_in_p = false;
    bool pp_in_k = false;
    bool is_cartan = false;  // all three
    double max_residual = 0.0;
};

// Orthonormal basis of the smallest real Lie algebra containing the
// generators. Breadth-first over commutator pairs (new x all), in
// deterministic insertion order; stops when closed or when the size
// reaches n^2 - 1.
LieBasis lie_closure(const std::vector<MatrixC>& generators, int n,
                     double tol = 1e-10);

// True iff the dynamical algebra {iH_d, iH_1, ...} has dimension n^2 - 1.
bool is_controllable(const ControlSystem& sys, double tol = 1e-10);

// Standard orthonormal basis of so(n), sp(m) (n = 2m), s(u(p) + u(q)),
// or all of su(n). Throws on inconsistent parameters.
LieBasis standard_basis(const GroupKind& kind, int n);

// Basis of the orthogonal complement of span(k) inside su(n).
LieBasis orthogonal_complement(const LieBasis& k, int n);

// H_d minus the component of iH_d lying in span(k) (divided by i).
MatrixC project_drift(const MatrixC& h_d, const LieBasis& k);

// Checks the three commutation inclusions [k,k] in k, [k,p] in p,
// [p,p] in k. (k, p) must be jointly orthonormal and span su(n).
CartanReport verify_cartan(const LieBasis& k, const LieBasis& p,
                           double tol = 1e-9);

// Dispatch to the three symmetric-space kinds by dimension matching plus
// Cartan-pair verification; FullSU when dim = n^2 - 1; Other otherwise.
GroupKind classify_control_group(const LieBasis& k, int n, double tol = 1e-9);

// dim({A in k | [H_d, A] = 0}) via the kernel of A -> [H_d, A] in
// coordinates of k (image coordinates: orthonormal basis of su(n)).
int centralizer_dim(const MatrixC& h_d, const LieBasis& k, double tol = 1e-9);

// dim k - centralizer_dim.
int adjoint_orbit_dim(const MatrixC& h_d, const LieBasis& k,
                      double tol = 1e-9);

// True iff the pair of candidates generates all of span(k).
bool minimal_generators_check(const LieBasis& k, const MatrixC& a,
                              const MatrixC& b, double tol = 1e-10);

}  // namespace qsl
