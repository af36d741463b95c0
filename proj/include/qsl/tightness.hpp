#pragma once

#include <string>
#include <vector>

#include "qsl/lie_engine.hpp"

// Diagnostics for whether the analytic lower bound is expected to be
// exact: the adjoint-orbit dimension-counting criterion, the so(n)
// eigenvalue-degeneracy rule, and the su(3)/so(3) root-condition
// analysis.

namespace qsl {

enum class TightnessStatus { TIGHT_GUARANTEED, EXPECTED_NOT_TIGHT, INDETERMINATE };

struct TightnessVerdict {
    TightnessStatus status = TightnessStatus::INDETERMINATE;
    std::vector<std::string> reasons;
};

struct DimensionCriterion {
    bool holds = false;
    int lhs = 0;  // centralizer dimension
    int rhs = 0;  // 1 + dim k - dim p
};

struct SoDegeneracy {
    int degenerate_pairs = 0;  // M
    int orbit_dim = 0;         // n(n-1)/2 - M
};

struct RootAnalysis {
    double eigenvalues[3] = {0, 0, 0};  // canonical descending
    double cond1_lhs = 0.0;             // lambda1 + 2 lambda2
    double cond2_lhs = 0.0;             // lambda1 - lambda2
    bool degenerate = false;
};

// lhs = dim centralizer, rhs = 1 + dim k - dim p; holds iff equal.
// The drift must already be projected into span(p).
DimensionCriterion dimension_criterion(const ControlSystem& sys,
                                       const LieBasis& k, const LieBasis& p,
                                       double tol = 1e-9);

// M = number of unordered eigenvalue pairs within tol * max(1, spectral
// radius) of each other; orbit_dim = n(n-1)/2 - M (so(n) controls).
SoDegeneracy so_degeneracy_analysis(const MatrixC& h_d, int n,
                                    double tol = 1e-8);

// Root conditions for su(3) with so(3) controls, scanned over all six
// eigenvalue orderings. degenerate iff some ordering zeroes a condition
// (equivalently, the spectrum is degenerate).
RootAnalysis su3_root_analysis(const MatrixC& h_d, double tol = 1e-8);

TightnessVerdict classify_tightness(const ControlSystem& sys,
                                    const GroupKind& kind, const LieBasis& k,
                                    const LieBasis& p, double degeneracy_tol = 1e-8);

std::string to_string(TightnessStatus s);

}  // namespace qsl
