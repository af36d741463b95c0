#include "qsl/speed_limit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsl {

namespace {
constexpr double kPi = std::numbers::pi;

double trace_h2(const MatrixC& h_d) {
    return (h_d * h_d).trace().real();
}
}  // namespace

double drift_speed(const MatrixC& h_d, int n) {
    return std::sqrt(std::max(0.0, 2.0 * n * trace_h2(h_d)));
}

double diameter(const GroupKind& kind, int n) {
    switch (kind.tag) {
        case GroupKind::Tag::SO:
            return n % 2 == 0 ? (std::sqrt(2.0) / 2.0) * kPi * n
                              : (std::sqrt(2.0) / 2.0) * kPi *
                                    std::sqrt(double(n) * n - 1.0);
        case GroupKind::Tag::Sp: {
            const int m = kind.p;
            if (n != 2 * m)
                throw std::invalid_argument("diameter: Sp index inconsistent");
            return m % 2 == 0 ? kPi * m : kPi * std::sqrt(double(m) * m - 1.0);
        }
        case GroupKind::Tag::SU_pq: {
            const int p = kind.p, q = kind.q;
            if (p + q != n || p > q || p < 1)
                throw std::invalid_argument("diameter: SU_pq parameters "
                                            "inconsistent");
            return kPi * std::sqrt(double(p + q) * p);
        }
        default:
            throw std::invalid_argument("diameter: no tabulated diameter for " +
                                        kind.name(n));
    }
}

double published_bound(const GroupKind& kind, int n, double trace_hd2) {
    if (trace_hd2 <= 0.0)
        throw std::invalid_argument("published_bound: Tr[H_d^2] must be > 0");
    switch (kind.tag) {
        case GroupKind::Tag::SO:
            return n % 2 == 0
                       ? std::sqrt(double(n)) * kPi / (2.0 * std::sqrt(trace_hd2))
                       : kPi * std::sqrt(double(n) * n - 1.0) /
                             (2.0 * std::sqrt(n * trace_hd2));
        case GroupKind::Tag::Sp: {
            const int m = kind.p;
            return m % 2 == 0
                       ? std::sqrt(double(m)) * kPi / std::sqrt(2.0 * trace_hd2)
                       : kPi * std::sqrt(double(m) * m - 1.0) /
                             std::sqrt(2.0 * m * trace_hd2);
        }
        case GroupKind::Tag::SU_pq:
            return std::sqrt(double(kind.p)) * kPi / std::sqrt(2.0 * trace_hd2);
        default:
            throw std::invalid_argument("published_bound: no closed form for " +
                                        kind.name(n));
    }
}

BoundReport qsl_bound(const ControlSystem& sys, const GroupKind& kind) {
    BoundReport rep;
    rep.kind = kind;
    rep.n = sys.n;
    rep.drift_speed = drift_speed(sys.drift, sys.n);
    if (rep.drift_speed <= 0.0)
        throw std::invalid_argument("bound undefined: zero drift speed");
    rep.diameter = diameter(kind, sys.n);
    rep.bound_theorem = rep.diameter / rep.drift_speed;
    rep.bound_published = published_bound(kind, sys.n, trace_h2(sys.drift));
    return rep;
}

double single_control_bound(const MatrixC& h_d, int n) {
    const double tr = trace_h2(h_d);
    if (tr <= 0.0)
        throw std::invalid_argument("single_control_bound: zero drift");
    return std::sqrt(double(n / 2)) * kPi / std::sqrt(2.0 * tr);
}

}  // namespace qsl
