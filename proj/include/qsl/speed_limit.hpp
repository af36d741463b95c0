#pragma once

#include <optional>

#include "qsl/lie_engine.hpp"

// Analytic speed-limit computation: drift speed, symmetric-space
// diameters, the diameter/speed lower bound, the published closed-form
// specializations, and the single-control embedding bound.

namespace qsl {

struct BoundReport {
    GroupKind kind;
    int n = 0;
    double drift_speed = 0.0;               // sqrt(2n Tr[H_d^2])
    double diameter = 0.0;                  // Killing length
    double bound_theorem = 0.0;             // diameter / drift_speed
    std::optional<double> bound_published;  // closed forms as printed
};

// v = sqrt(2n Tr[H_d^2]).
double drift_speed(const MatrixC& h_d, int n);

// Tabulated diameter of SU(n)/K. Throws for FullSU/Other ("no tabulated
// diameter"). Sp values carry the sqrt(2) correction already.
double diameter(const GroupKind& kind, int n);

// The closed-form bounds as printed:
//   SO, n even:  sqrt(n) pi / (2 sqrt(Tr))
//   SO, n odd :  pi sqrt(n^2-1) / (2 sqrt(n Tr))
//   Sp, m even:  sqrt(m) pi / sqrt(2 Tr)
//   Sp, m odd :  pi sqrt(m^2-1) / sqrt(2 m Tr)
//   SU_pq     :  sqrt(p) pi / sqrt(2 Tr)
// For the Sp kind these differ from diameter/speed by a constant sqrt(2).
double published_bound(const GroupKind& kind, int n, double trace_hd2);

// Full report for a system whose drift has been projected into p.
// Throws on zero drift speed.
BoundReport qsl_bound(const ControlSystem& sys, const GroupKind& kind);

// Single-control embedding bound: sqrt(floor(n/2)) pi / sqrt(2 Tr[H_d^2]),
// independent of the control Hamiltonian.
double single_control_bound(const MatrixC& h_d, int n);

}  // namespace qsl
