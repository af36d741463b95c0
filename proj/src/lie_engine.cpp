#include "qsl/lie_engine.hpp"

#include <deque>
#include <stdexcept>
#include <utility>

namespace qsl {

namespace {

MatrixC commutator(const MatrixC& a, const MatrixC& b) {
    return a * b - b * a;
}

// Residual of v after projection onto an orthonormal set (two passes).
MatrixC project_out(MatrixC v, const std::vector<MatrixC>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= killing_inner(b, v) * b;
    return v;
}

}  // namespace

ControlSystem::ControlSystem(int n_, MatrixC drift_,
                             std::vector<MatrixC> controls_,
                             double* trace_removed)
    : n(n_), drift(std::move(drift_)), controls(std::move(controls_)) {
    if (n < 1) throw std::invalid_argument("ControlSystem: n must be >= 1");
    if (controls.empty())
        throw std::invalid_argument("ControlSystem: needs at least one control");
    double removed = 0.0;
    auto ingest = [&](MatrixC& h, const char* what) {
        if (h.rows() != n || h.cols() != n)
            throw std::invalid_argument(std::string("ControlSystem: ") + what +
                                        " has wrong dimension");
        if (!is_hermitian(h))
            throw std::invalid_argument(std::string("ControlSystem: ") + what +
                                        " is not Hermitian");
        removed = std::max(removed, project_traceless(h));
    };
    ingest(drift, "drift");
    for (auto& c : controls) ingest(c, "control");
    if (trace_removed) *trace_removed = removed;
}

std::string GroupKind::name(int n) const {
    switch (tag) {
        case Tag::SO: return "SO(" + std::to_string(n) + ")";
        case Tag::Sp: return "Sp(" + std::to_string(p) + ")";
        case Tag::SU_pq:
            return "S(U(" + std::to_string(p) + ")xU(" + std::to_string(q) + "))";
        case Tag::FullSU: return "SU(" + std::to_string(n) + ")";
        case Tag::Other: return "Other";
    }
    return "Other";
}

LieBasis lie_closure(const std::vector<MatrixC>& generators, int n,
                     double tol) {
    const int max_dim = n * n - 1;
    std::vector<MatrixC> basis = orthonormalize(generators, n, tol);
    // Unprocessed commutator pairs, in insertion order.
    std::deque<std::pair<int, int>> pending;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(basis.size()); ++j)
            pending.emplace_back(i, j);
    while (!pending.empty() && static_cast<int>(basis.size()) < max_dim) {
        auto [i, j] = pending.front();
        pending.pop_front();
        MatrixC c = commutator(basis[i], basis[j]);
        const double cnorm = killing_norm(c);
        if (cnorm <= tol) continue;
        MatrixC r = project_out(std::move(c), basis);
        const double rnorm = killing_norm(r);
        if (rnorm > tol * cnorm) {
            basis.push_back(r / rnorm);
            const int m = static_cast<int>(basis.size()) - 1;
            for (int a = 0; a < m; ++a) pending.emplace_back(a, m);
        }
    }
    return {n, std::move(basis)};
}

bool is_controllable(const ControlSystem& sys, double tol) {
    std::vector<MatrixC> gens;
    gens.push_back(Complex(0, 1) * sys.drift);
    for (const auto& c : sys.controls) gens.push_back(Complex(0, 1) * c);
    return lie_closure(gens, sys.n, tol).size() == sys.n * sys.n - 1;
}

LieBasis standard_basis(const GroupKind& kind, int n) {
    std::vector<MatrixC> raw;
    auto unit = [&](int r, int c) {
        MatrixC e = MatrixC::Zero(n, n);
        e(r, c) = 1.0;
        return e;
    };
    const Complex I(0, 1);
    switch (kind.tag) {
        case GroupKind::Tag::SO:
            // B_ij = |e_i><e_j| - |e_j><e_i|, i < j.
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    raw.push_back(unit(i, j) - unit(j, i));
            break;
        case GroupKind::Tag::Sp: {
            const int m = n / 2;
            if (n % 2 != 0 || kind.p != m)
                throw std::invalid_argument("standard_basis: Sp requires even n "
                                            "with matching index");
            // [[L1, L2], [-conj(L2), conj(L1)]], L1 skew-Hermitian,
            // L2 complex symmetric.
            auto block = [&](const MatrixC& l1, const MatrixC& l2) {
                MatrixC e = MatrixC::Zero(n, n);
                e.topLeftCorner(m, m) = l1;
                e.topRightCorner(m, m) = l2;
                e.bottomLeftCorner(m, m) = -l2.conjugate();
                e.bottomRightCorner(m, m) = l1.conjugate();
                return e;
            };
            MatrixC zero = MatrixC::Zero(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    MatrixC eij = MatrixC::Zero(m, m);
                    eij(i, j) = 1.0;
                    MatrixC eji = MatrixC::Zero(m, m);
                    eji(j, i) = 1.0;
                    if (i == j) {
                        raw.push_back(block(I * eij, zero));  // L1 diagonal
                        raw.push_back(block(zero, eij));      // L2 diagonal, real
                        raw.push_back(block(zero, I * eij));  // L2 diagonal, imag
                    } else {
                        raw.push_back(block(eij - eji, zero));
                        raw.push_back(block(I * (eij + eji), zero));
                        raw.push_back(block(zero, eij + eji));
                        raw.push_back(block(zero, I * (eij + eji)));
                    }
                }
            break;
        }
        case GroupKind::Tag::SU_pq: {
            const int p = kind.p, q = kind.q;
            if (p < 1 || q < 1 || p + q != n || p > q)
                throw std::invalid_argument(
                    "standard_basis: SU_pq requires 1 <= p <= q, p + q = n");
            auto su_block = [&](int offset, int m) {
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        raw.push_back(unit(offset + i, offset + j) -
                                      unit(offset + j, offset + i));
                        raw.push_back(I * (unit(offset + i, offset + j) +
                                           unit(offset + j, offset + i)));
                    }
                for (int i = 0; i + 1 < m; ++i) {
                    MatrixC d = MatrixC::Zero(n, n);
                    d(offset + i, offset + i) = I;
                    d(offset + i + 1, offset + i + 1) = -I;
                    raw.push_back(d);
                }
            };
            su_block(0, p);
            su_block(p, q);
            // Relative trace direction: i diag(I_p / p, -I_q / q).
            MatrixC d = MatrixC::Zero(n, n);
            for (int i = 0; i < p; ++i) d(i, i) = I / double(p);
            for (int i = p; i < n; ++i) d(i, i) = -I / double(q);
            raw.push_back(d);
            break;
        }
        case GroupKind::Tag::FullSU:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    raw.push_back(unit(i, j) - unit(j, i));
                    raw.push_back(I * (unit(i, j) + unit(j, i)));
                }
            for (int i = 0; i + 1 < n; ++i) {
                MatrixC d = MatrixC::Zero(n, n);
                d(i, i) = I;
                d(i + 1, i + 1) = -I;
                raw.push_back(d);
            }
            break;
        case GroupKind::Tag::Other:
            throw std::invalid_argument("standard_basis: no basis for Other");
    }
    LieBasis out{n, orthonormalize(raw, n)};
    int expected = 0;
    switch (kind.tag) {
        case GroupKind::Tag::SO: expected = n * (n - 1) / 2; break;
        case GroupKind::Tag::Sp: expected = kind.p * (2 * kind.p + 1); break;
        case GroupKind::Tag::SU_pq:
            expected = kind.p * kind.p + kind.q * kind.q - 1;
            break;
        default: expected = n * n - 1; break;
    }
    if (out.size() != expected)
        throw std::runtime_error("standard_basis: unexpected basis size");
    return out;
}

LieBasis orthogonal_complement(const LieBasis& k, int n) {
    LieBasis full = standard_basis(GroupKind::full_su(), n);
    std::vector<MatrixC> running = k.elements;
    std::vector<MatrixC> comp;
    for (const auto& f : full.elements) {
        MatrixC w = f;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : running) w -= killing_inner(b, w) * b;
        const double r = killing_norm(w);
        if (r > 1e-8) {
            w /= r;
            running.push_back(w);
            comp.push_back(std::move(w));
        }
    }
    return {n, std::move(comp)};
}

MatrixC project_drift(const MatrixC& h_d, const LieBasis& k) {
    const Complex I(0, 1);
    MatrixC a = I * h_d;
    for (const auto& b : k.elements) a -= killing_inner(b, a) * b;
    return -I * a;  // back to a Hermitian matrix
}

CartanReport verify_cartan(const LieBasis& k, const LieBasis& p, double tol) {
    CartanReport rep;
    auto wrong_component = [](const MatrixC& c,
                              const std::vector<MatrixC>& wrong) {
        double s = 0.0;
        for (const auto& b : wrong) {
            const double x = killing_inner(b, c);
            s += x * x;
        }
        return std::sqrt(s) / std::max(1.0, killing_norm(c));
    };
    auto check = [&](const std::vector<MatrixC>& lhs,
                     const std::vector<MatrixC>& rhs,
                     const std::vector<MatrixC>& wrong, bool same) {
        double worst = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i)
            for (size_t j = same ? i + 1 : 0; j < rhs.size(); ++j) {
                MatrixC c = lhs[i] * rhs[j] - rhs[j] * lhs[i];
                worst = std::max(worst, wrong_component(c, wrong));
            }
        rep.max_residual = std::max(rep.max_residual, worst);
        return worst <= tol;
    };
    rep.kk_in_k = check(k.elements, k.elements, p.elements, true);
    rep.kp_in_p = check(k.elements, p.elements, k.elements, false);
    rep.pp_in_k = check(p.elements, p.elements, p.elements, true);
    rep.is_cartan = rep.kk_in_k && rep.kp_in_p && rep.pp_in_k;
    return rep;
}

GroupKind classify_control_group(const LieBasis& k, int n, double tol) {
    const int d = k.size();
    if (d == n * n - 1) return GroupKind::full_su();
    std::vector<GroupKind> candidates;
    if (d == n * (n - 1) / 2) candidates.push_back(GroupKind::so());
    if (n % 2 == 0 && d == (n / 2) * (n + 1))
        candidates.push_back(GroupKind::sp(n / 2));
    for (int p = 1; 2 * p <= n; ++p)
        if (p * p + (n - p) * (n - p) - 1 == d)
            candidates.push_back(GroupKind::su_pq(p, n - p));
    if (candidates.empty()) return GroupKind::other();
    LieBasis comp = orthogonal_complement(k, n);
    CartanReport rep = verify_cartan(k, comp, tol);
    if (!rep.is_cartan) return GroupKind::other();
    return candidates.front();
}

int centralizer_dim(const MatrixC& h_d, const LieBasis& k, double tol) {
    if (k.size() == 0) return 0;
    if (h_d.rows() != k.n || h_d.cols() != k.n)
        throw std::invalid_argument("centralizer_dim: dimension mismatch");
    LieBasis full = standard_basis(GroupKind::full_su(), k.n);
    const Complex I(0, 1);
    Eigen::MatrixXd m(full.size(), k.size());
    for (int j = 0; j < k.size(); ++j) {
        MatrixC c = I * (h_d * k.elements[j] - k.elements[j] * h_d);
        for (int a = 0; a < full.size(); ++a)
            m(a, j) = killing_inner(full.elements[a], c);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double cut = tol * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cut) ++rank;
    return k.size() - rank;
}

int adjoint_orbit_dim(const MatrixC& h_d, const LieBasis& k, double tol) {
    return k.size() - centralizer_dim(h_d, k, tol);
}

bool minimal_generators_check(const LieBasis& k, const MatrixC& a,
                              const MatrixC& b, double tol) {
    LieBasis closure = lie_closure({a, b}, k.n, tol);
    return closure.size() == k.size();
}

}  // namespace qsl
