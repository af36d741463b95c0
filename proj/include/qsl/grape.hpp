#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsl/lie_engine.hpp"

// Numerical verification engine: piecewise-constant propagation,
// phase-insensitive fidelity, multi-start gradient-ascent pulse
// optimization with exact spectral gradients, per-target minimum-time
// search over a time grid, and Haar-random target ensembles.

namespace qsl {

struct ControlSchedule {
    double horizon = 0.0;        // T > 0
    int slots = 0;               // N
    Eigen::MatrixXd amplitudes;  // m x N, f_j on each slot

    double slot_width() const { return horizon / slots; }
};

struct GrapeConfig {
    int slots = 100;
    int restarts = 20;
    int max_iters = 1000;
    double cutoff = 1e-7;        // fidelity-error threshold
    double init_scale = 1.0;     // sigma0 for initial amplitudes
    double init_step = 1.0;      // line-search initial step
    double armijo_factor = 0.5;  // backtracking shrink
    double armijo_c = 1e-4;      // sufficient-decrease constant
    int stall_window = 50;       // iterations without relative improvement
    double stall_tol = 1e-12;
    double amplitude_limit = 0.0;  // 0 = unbounded
    bool warm_start = true;        // across the time grid
    std::uint64_t seed = 0;
};

struct GrapeOutcome {
    double error = 1.0;  // best 1 - F
    ControlSchedule best;
    bool converged = false;
    long iterations = 0;  // summed over restarts
    int best_restart = -1;
};

struct SweepRecord {
    int target_id = 0;
    std::vector<double> times;       // grid actually evaluated
    std::vector<double> best_error;  // per grid point
    std::optional<double> min_time;  // first grid T with error <= cutoff
};

// Product of slot propagators exp(-i H_k T/N), slot 1 applied first.
MatrixC propagate(const ControlSystem& sys, const ControlSchedule& sched);

// F = |Tr[U_target^dag U]| / n; phase-insensitive, in [0, 1].
double fidelity(const MatrixC& u, const MatrixC& u_target);

// d(1 - F)/df_{j,k}, exact per-slot spectral derivatives chained through
// forward/backward partial products.
Eigen::MatrixXd gradient(const ControlSystem& sys, const ControlSchedule& sched,
                         const MatrixC& u_target);

// Multi-start gradient ascent on F with backtracking line search.
// target_id and t_index key the deterministic restart RNG streams.
GrapeOutcome optimize(const ControlSystem& sys, const MatrixC& u_target,
                      double horizon, const GrapeConfig& cfg, int target_id = 0,
                      int t_index = 0,
                      const ControlSchedule* warm_start = nullptr);

// Walk the ascending time grid until a converged horizon is found;
// warm-starts each grid point from the previous best when enabled.
SweepRecord min_time_for_target(const ControlSystem& sys,
                                const MatrixC& u_target,
                                const std::vector<double>& grid,
                                const GrapeConfig& cfg, int target_id = 0,
                                bool full_sweep = false);

// Haar-distributed element of SU(n): complex Ginibre, QR with the
// R-diagonal phase fix, then a det^{-1/n} rescale (principal branch).
MatrixC haar_random_su(int n, std::uint64_t seed);

struct QslEstimate {
    std::optional<double> estimate;  // max over targets of min_time
    std::vector<SweepRecord> records;
};

// Sweeps num_targets Haar targets over the grid; jobs > 1 runs targets
// concurrently (identical output either way).
QslEstimate estimate_qsl(const ControlSystem& sys, int num_targets,
                         const std::vector<double>& grid,
                         const GrapeConfig& cfg, int jobs = 1,
                         bool full_sweep = false);

}  // namespace qsl
