#include "qsl/tightness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qsl {

std::string to_string(TightnessStatus s) {
    switch (s) {
        case TightnessStatus::TIGHT_GUARANTEED: return "TIGHT_GUARANTEED";
        case TightnessStatus::EXPECTED_NOT_TIGHT: return "EXPECTED_NOT_TIGHT";
        case TightnessStatus::INDETERMINATE: return "INDETERMINATE";
    }
    return "INDETERMINATE";
}

DimensionCriterion dimension_criterion(const ControlSystem& sys,
                                       const LieBasis& k, const LieBasis& p,
                                       double tol) {
    DimensionCriterion c;
    c.lhs = centralizer_dim(sys.drift, k, tol);
    c.rhs = 1 + k.size() - p.size();
    c.holds = (c.lhs == c.rhs);
    assert(c.lhs >= c.rhs);
    return c;
}

SoDegeneracy so_degeneracy_analysis(const MatrixC& h_d, int n, double tol) {
    EigenSystem es = eig_hermitian(h_d);
    const double radius =
        std::max(std::abs(es.eigenvalues[0]), std::abs(es.eigenvalues[n - 1]));
    const double cut = tol * std::max(1.0, radius);
    SoDegeneracy d;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(es.eigenvalues[i] - es.eigenvalues[j]) <= cut)
                ++d.degenerate_pairs;
    d.orbit_dim = n * (n - 1) / 2 - d.degenerate_pairs;
    return d;
}

RootAnalysis su3_root_analysis(const MatrixC& h_d, double tol) {
    if (h_d.rows() != 3 || h_d.cols() != 3)
        throw std::invalid_argument("su3_root_analysis: needs a 3x3 drift");
    EigenSystem es = eig_hermitian(h_d);
    double lam[3] = {es.eigenvalues[2], es.eigenvalues[1], es.eigenvalues[0]};
    RootAnalysis r;
    r.eigenvalues[0] = lam[0];
    r.eigenvalues[1] = lam[1];
    r.eigenvalues[2] = lam[2];
    r.cond1_lhs = lam[0] + 2.0 * lam[1];
    r.cond2_lhs = lam[0] - lam[1];
    const double scale =
        std::max(1.0, std::max(std::abs(lam[0]), std::abs(lam[2])));
    // The controls can permute the diagonal arbitrarily, so scan every
    // ordering for a zeroed condition.
    double perm[3] = {lam[0], lam[1], lam[2]};
    std::sort(perm, perm + 3);
    do {
        if (std::abs(perm[0] + 2.0 * perm[1]) <= tol * scale ||
            std::abs(perm[0] - perm[1]) <= tol * scale)
            r.degenerate = true;
    } while (std::next_permutation(perm, perm + 3));
    return r;
}

TightnessVerdict classify_tightness(const ControlSystem& sys,
                                    const GroupKind& kind, const LieBasis& k,
                                    const LieBasis& p, double degeneracy_tol) {
    TightnessVerdict v;
    DimensionCriterion c = dimension_criterion(sys, k, p);
    v.reasons.push_back("dimension criterion: centralizer dim " +
                        std::to_string(c.lhs) + " vs 1 + dim k - dim p = " +
                        std::to_string(c.rhs) +
                        (c.holds ? " (equality)" : " (no equality)"));
    if (c.holds) {
        v.status = TightnessStatus::TIGHT_GUARANTEED;
        v.reasons.push_back("full adjoint orbit: every direction in G/K is "
                            "reachable, so a minimal geodesic to the diameter "
                            "exists");
        return v;
    }
    if (kind.tag == GroupKind::Tag::SO) {
        SoDegeneracy d = so_degeneracy_analysis(sys.drift, sys.n, degeneracy_tol);
        v.reasons.push_back("so(n) degeneracy rule: M = " +
                            std::to_string(d.degenerate_pairs) +
                            " degenerate pairs, orbit dim " +
                            std::to_string(d.orbit_dim));
        bool degenerate = d.degenerate_pairs > 0;
        if (sys.n == 3) {
            RootAnalysis r = su3_root_analysis(sys.drift, degeneracy_tol);
            v.reasons.push_back(
                "su(3) root conditions: lambda1 + 2 lambda2 = " +
                std::to_string(r.cond1_lhs) + ", lambda1 - lambda2 = " +
                std::to_string(r.cond2_lhs) +
                (r.degenerate ? " (a condition is zeroed)" : " (none zeroed)"));
            degenerate = degenerate && r.degenerate;
        }
        if (degenerate) {
            v.status = TightnessStatus::EXPECTED_NOT_TIGHT;
            v.reasons.push_back(
                "degenerate drift spectrum blocks part of the cut locus; all "
                "degenerate drifts behave alike under permutation and scaling");
            return v;
        }
    }
    v.status = TightnessStatus::INDETERMINATE;
    v.reasons.push_back("the dimension criterion is sufficient only; no "
                        "analytic verdict for this drift");
    return v;
}

}  // namespace qsl
