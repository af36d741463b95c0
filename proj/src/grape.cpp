#include "qsl/grape.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsl/rng.hpp"

namespace qsl {

namespace {

// Slot Hamiltonian H_d + sum_j f_j H_j.
MatrixC slot_hamiltonian(const ControlSystem& sys,
                         const Eigen::MatrixXd& amps, int k) {
    MatrixC h = sys.drift;
    for (size_t j = 0; j < sys.controls.size(); ++j)
        h += amps(static_cast<Eigen::Index>(j), k) * sys.controls[j];
    return h;
}

MatrixC slot_propagator(const MatrixC& h, double tau) {
    EigenSystem es = eig_hermitian(h);
    const auto n = h.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index a = 0; a < n; ++a)
        phases[a] = std::exp(Complex(0, -es.eigenvalues[a] * tau));
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

double error_only(const ControlSystem& sys, const Eigen::MatrixXd& amps,
                  double horizon, const MatrixC& u_target) {
    const int n_slots = static_cast<int>(amps.cols());
    const double tau = horizon / n_slots;
    MatrixC u = MatrixC::Identity(sys.n, sys.n);
    for (int k = 0; k < n_slots; ++k)
        u = slot_propagator(slot_hamiltonian(sys, amps, k), tau) * u;
    return 1.0 - fidelity(u, u_target);
}

// One forward/backward sweep: fidelity error and its exact gradient.
double error_and_gradient(const ControlSystem& sys,
                          const Eigen::MatrixXd& amps, double horizon,
                          const MatrixC& u_target, Eigen::MatrixXd& grad) {
    const int n = sys.n;
    const int m = static_cast<int>(sys.controls.size());
    const int n_slots = static_cast<int>(amps.cols());
    const double tau = horizon / n_slots;

    std::vector<MatrixC> vecs(n_slots), props(n_slots), partials(n_slots);
    std::vector<Eigen::VectorXd> vals(n_slots);
    MatrixC a = MatrixC::Identity(n, n);
    for (int k = 0; k < n_slots; ++k) {
        partials[k] = a;  // product of slots before slot k
        EigenSystem es = eig_hermitian(slot_hamiltonian(sys, amps, k));
        Eigen::VectorXcd phases(n);
        for (int i = 0; i < n; ++i)
            phases[i] = std::exp(Complex(0, -es.eigenvalues[i] * tau));
        props[k] = es.eigenvectors * phases.asDiagonal() *
                   es.eigenvectors.adjoint();
        vecs[k] = std::move(es.eigenvectors);
        vals[k] = std::move(es.eigenvalues);
        a = props[k] * a;
    }
    const Complex z = (u_target.adjoint() * a).trace();
    const double zabs = std::abs(z);
    grad.setZero(m, n_slots);
    if (zabs < 1e-300) return 1.0;  // stationary at F = 0
    const Complex phase = std::conj(z) / zabs;

    // right = u_target^dag * (product of slots after slot k)
    MatrixC right = u_target.adjoint();
    for (int k = n_slots - 1; k >= 0; --k) {
        const auto& v = vecs[k];
        const auto& lam = vals[k];
        // Divided-difference kernel of the slot exponential.
        MatrixC kernel(n, n);
        for (int p = 0; p < n; ++p) {
            const Complex ep = std::exp(Complex(0, -lam[p] * tau));
            for (int q = 0; q < n; ++q) {
                const double dl = lam[p] - lam[q];
                if (std::abs(dl) <= 1e-12) {
                    kernel(p, q) = ep;
                } else {
                    const Complex eq = std::exp(Complex(0, -lam[q] * tau));
                    kernel(p, q) = (ep - eq) / (Complex(0, -dl) * tau);
                }
            }
        }
        // Tr[U_t^dag B dE A] = Tr[(V^dag A U_t^dag B V) (M .* kernel)]
        MatrixC g_hat = v.adjoint() * partials[k] * right * v;
        for (int j = 0; j < m; ++j) {
            MatrixC mj = v.adjoint() * (Complex(0, -tau) * sys.controls[j]) * v;
            const Complex deriv =
                (g_hat.transpose().cwiseProduct(mj.cwiseProduct(kernel))).sum();
            grad(j, k) = -(1.0 / n) * (phase * deriv).real();
        }
        right = right * props[k];
    }
    return 1.0 - zabs / n;
}

void clamp(Eigen::MatrixXd& amps, double limit) {
    if (limit > 0.0)
        amps = amps.cwiseMax(-limit).cwiseMin(limit);
}

struct RunResult {
    double error = 1.0;
    Eigen::MatrixXd amps;
    long iterations = 0;
};

// Gradient ascent on F with backtracking (Armijo) line search.
// Search directions use Polyak-Ribiere+ conjugate-gradient updates with a
// steepest-descent reset whenever conjugacy is lost; this stays first-order
// but reaches the stall plateau orders of magnitude faster than plain
// steepest descent on these ill-conditioned pulse landscapes.
RunResult run_single(const ControlSystem& sys, const MatrixC& u_target,
                     double horizon, const GrapeConfig& cfg,
                     Eigen::MatrixXd amps) {
    RunResult res;
    clamp(amps, cfg.amplitude_limit);
    Eigen::MatrixXd grad, prev_grad, dir;
    double step = cfg.init_step;
    double err = error_and_gradient(sys, amps, horizon, u_target, grad);
    dir = -grad;
    std::vector<double> history{err};
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        ++res.iterations;
        if (err <= cfg.cutoff) break;
        if (grad.squaredNorm() < 1e-30) break;
        double slope = grad.cwiseProduct(dir).sum();
        if (slope >= 0.0) {  // not a descent direction: reset
            dir = -grad;
            slope = -grad.squaredNorm();
        }
        bool accepted = false;
        Eigen::MatrixXd new_grad;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::MatrixXd trial = amps + step * dir;
            clamp(trial, cfg.amplitude_limit);
            // The first trial is usually accepted, so compute its gradient
            // in the same sweep; backtracked trials use the cheap error.
            double trial_err =
                bt == 0 ? error_and_gradient(sys, trial, horizon, u_target,
                                             new_grad)
                        : error_only(sys, trial, horizon, u_target);
            if (trial_err <= err + cfg.armijo_c * step * slope) {
                if (bt != 0)
                    trial_err = error_and_gradient(sys, trial, horizon,
                                                   u_target, new_grad);
                amps = std::move(trial);
                err = trial_err;
                step = std::min(step * 2.0, 1e8);
                accepted = true;
                break;
            }
            step *= cfg.armijo_factor;
        }
        if (!accepted) break;
        history.push_back(err);
        if (static_cast<int>(history.size()) > cfg.stall_window) {
            const double past = history[history.size() - 1 - cfg.stall_window];
            if (past - err <= cfg.stall_tol * std::max(past, 1e-300)) break;
        }
        prev_grad = std::move(grad);
        grad = std::move(new_grad);
        const double denom = prev_grad.squaredNorm();
        const double beta =
            denom > 0.0
                ? std::max(0.0,
                           grad.cwiseProduct(grad - prev_grad).sum() / denom)
                : 0.0;
        dir = -grad + beta * dir;
    }
    res.error = err;
    res.amps = std::move(amps);
    return res;
}

}  // namespace

MatrixC propagate(const ControlSystem& sys, const ControlSchedule& sched) {
    if (static_cast<int>(sys.controls.size()) != sched.amplitudes.rows() ||
        sched.slots != sched.amplitudes.cols())
        throw std::invalid_argument("propagate: schedule shape mismatch");
    MatrixC u = MatrixC::Identity(sys.n, sys.n);
    const double tau = sched.slot_width();
    for (int k = 0; k < sched.slots; ++k)
        u = slot_propagator(slot_hamiltonian(sys, sched.amplitudes, k), tau) * u;
    return u;
}

double fidelity(const MatrixC& u, const MatrixC& u_target) {
    if (u.rows() != u_target.rows() || u.cols() != u_target.cols())
        throw std::invalid_argument("fidelity: dimension mismatch");
    return std::abs((u_target.adjoint() * u).trace()) / double(u.rows());
}

Eigen::MatrixXd gradient(const ControlSystem& sys, const ControlSchedule& sched,
                         const MatrixC& u_target) {
    Eigen::MatrixXd g;
    error_and_gradient(sys, sched.amplitudes, sched.horizon, u_target, g);
    return g;
}

GrapeOutcome optimize(const ControlSystem& sys, const MatrixC& u_target,
                      double horizon, const GrapeConfig& cfg, int target_id,
                      int t_index, const ControlSchedule* warm_start) {
    if (horizon <= 0.0)
        throw std::invalid_argument("optimize: horizon must be > 0");
    const int m = static_cast<int>(sys.controls.size());
    GrapeOutcome out;
    out.best.horizon = horizon;
    out.best.slots = cfg.slots;
    out.best.amplitudes = Eigen::MatrixXd::Zero(m, cfg.slots);

    auto consider = [&](RunResult&& r, int restart_index) {
        out.iterations += r.iterations;
        if (r.error < out.error) {
            out.error = r.error;
            out.best.amplitudes = std::move(r.amps);
            out.best_restart = restart_index;
        }
    };

    if (warm_start && warm_start->amplitudes.rows() == m &&
        warm_start->amplitudes.cols() == cfg.slots) {
        consider(run_single(sys, u_target, horizon, cfg, warm_start->amplitudes),
                 -1);
    }
    for (int r = 0; r < cfg.restarts && out.error > cfg.cutoff; ++r) {
        Rng rng(derive_seed(cfg.seed, target_id + 1, t_index + 1, r));
        Eigen::MatrixXd amps(m, cfg.slots);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < cfg.slots; ++k)
                amps(j, k) = cfg.init_scale * rng.normal();
        consider(run_single(sys, u_target, horizon, cfg, std::move(amps)), r);
    }
    out.converged = out.error <= cfg.cutoff;
    return out;
}

SweepRecord min_time_for_target(const ControlSystem& sys,
                                const MatrixC& u_target,
                                const std::vector<double>& grid,
                                const GrapeConfig& cfg, int target_id,
                                bool full_sweep) {
    SweepRecord rec;
    rec.target_id = target_id;
    ControlSchedule prev;
    bool have_prev = false;
    for (size_t ti = 0; ti < grid.size(); ++ti) {
        if (ti > 0 && grid[ti] <= grid[ti - 1])
            throw std::invalid_argument("min_time_for_target: grid must ascend");
        GrapeOutcome out =
            optimize(sys, u_target, grid[ti], cfg, target_id,
                     static_cast<int>(ti),
                     (cfg.warm_start && have_prev) ? &prev : nullptr);
        rec.times.push_back(grid[ti]);
        rec.best_error.push_back(out.error);
        if (out.converged && !rec.min_time) rec.min_time = grid[ti];
        if (out.converged && !full_sweep) break;
        prev = out.best;
        prev.horizon = 0.0;  // amplitudes reused as-is at the next horizon
        have_prev = true;
    }
    return rec;
}

MatrixC haar_random_su(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("haar_random_su: n must be >= 2");
    Rng rng(seed);
    MatrixC z(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z(i, j) = Complex(s * rng.normal(), s * rng.normal());
    Eigen::HouseholderQR<MatrixC> qr(z);
    MatrixC q = qr.householderQ() * MatrixC::Identity(n, n);
    MatrixC r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the row phases so the implied R has a positive real diagonal.
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        phases[i] = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1, 0);
    }
    q = q * phases.asDiagonal();
    // Rescale into SU(n), principal branch of det^{-1/n}.
    const Complex det = q.determinant();
    q *= std::exp(-std::log(det) / double(n));
    return q;
}

QslEstimate estimate_qsl(const ControlSystem& sys, int num_targets,
                         const std::vector<double>& grid,
                         const GrapeConfig& cfg, int jobs, bool full_sweep) {
    if (num_targets < 1)
        throw std::invalid_argument("estimate_qsl: num_targets must be >= 1");
    QslEstimate result;
    result.records.resize(num_targets);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int id = next.fetch_add(1);
            if (id >= num_targets) return;
            MatrixC target =
                haar_random_su(sys.n, derive_seed(cfg.seed, 0x74676574, id));
            result.records[id] =
                min_time_for_target(sys, target, grid, cfg, id, full_sweep);
        }
    };
    const int workers = std::max(1, std::min(jobs, num_targets));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    double worst = 0.0;
    bool all = true;
    for (const auto& rec : result.records) {
        if (!rec.min_time) {
            all = false;
            break;
        }
        worst = std::max(worst, *rec.min_time);
    }
    if (all) result.estimate = worst;
    return result;
}

}  // namespace qsl
