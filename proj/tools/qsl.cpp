// Command-line surface: controllability check, analytic bound report,
// tightness diagnostics, and the numerical speed-limit estimator.

#include <CLI11.hpp>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qsl/grape.hpp"
#include "qsl/io.hpp"
#include "qsl/speed_limit.hpp"
#include "qsl/tightness.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// Exit codes: 0 success, 2 parse, 3 negative verdict, 4 unclassifiable
// kind, 5 I/O.
enum ExitCode { kOk = 0, kParse = 2, kNotControllable = 3, kNoKind = 4, kIo = 5 };

struct Loaded {
    qsl::SystemSpec spec;
    std::unique_ptr<qsl::ControlSystem> sys;
};

Loaded load_or_exit(const std::string& path, double tol) {
    Loaded out;
    try {
        out.spec = qsl::load_system_spec(path);
    } catch (const qsl::ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        std::exit(kParse);
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        std::exit(kIo);
    }
    if (out.spec.hermiticity_warning > 1e-8)
        std::cerr << "warning: symmetrized a matrix with relative asymmetry "
                  << out.spec.hermiticity_warning << "\n";
    double removed = 0.0;
    try {
        out.sys = std::make_unique<qsl::ControlSystem>(
            out.spec.n, out.spec.drift, out.spec.controls, &removed);
    } catch (const std::exception& e) {
        std::cerr << path << ": " << e.what() << "\n";
        std::exit(kParse);
    }
    if (removed > 1e-8)
        std::cerr << "warning: removed trace component of norm " << removed
                  << "\n";
    (void)tol;
    return out;
}

qsl::LieBasis control_algebra(const qsl::ControlSystem& sys, double tol) {
    std::vector<qsl::MatrixC> gens;
    for (const auto& c : sys.controls)
        gens.push_back(qsl::Complex(0, 1) * c);
    return qsl::lie_closure(gens, sys.n, tol);
}

// Declared kind, or classification of the control algebra for "auto".
qsl::GroupKind resolve_kind(const qsl::SystemSpec& spec,
                            const qsl::LieBasis& k) {
    if (spec.kind == "so") return qsl::GroupKind::so();
    if (spec.kind == "sp") return qsl::GroupKind::sp(spec.n / 2);
    if (spec.kind == "su_pq") return qsl::GroupKind::su_pq(spec.p, spec.q);
    if (spec.kind == "full") return qsl::GroupKind::full_su();
    return qsl::classify_control_group(k, spec.n);
}

std::string timestamp_now() {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        std::cerr << "cannot write '" << p.string() << "'\n";
        std::exit(kIo);
    }
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum speed limit bounds for bilinear control systems"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir;
    double tol = 1e-10;
    std::string kind_override;

    qsl::GrapeConfig cfg;
    int targets = 20;
    double tmin = 0.1, tmax = 2.0;
    int tsteps = 40;
    int jobs = 1;
    bool full_sweep = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_path, "system description file")
            ->required();
        cmd->add_option("--tol", tol, "numerical rank / dependence tolerance");
        cmd->add_option("--kind", kind_override,
                        "override the declared control-group kind "
                        "(so|sp|su_pq:p:q|full|auto)");
        cmd->add_option("--out-dir", out_dir, "directory for CSV + manifest");
    };

    CLI::App* c_ctrl = app.add_subcommand("controllability",
                                          "dynamical-algebra dimension check");
    add_common(c_ctrl);
    CLI::App* c_bound =
        app.add_subcommand("bound", "analytic speed-limit lower bound");
    add_common(c_bound);
    CLI::App* c_tight =
        app.add_subcommand("tightness", "is the bound expected to be exact?");
    add_common(c_tight);
    CLI::App* c_est =
        app.add_subcommand("estimate", "numerical speed-limit estimate");
    add_common(c_est);
    c_est->add_option("--targets", targets, "number of Haar-random targets");
    c_est->add_option("--tmin", tmin, "first horizon on the grid");
    c_est->add_option("--tmax", tmax, "last horizon on the grid");
    c_est->add_option("--tsteps", tsteps, "number of grid points");
    c_est->add_option("--slots", cfg.slots, "time slots per schedule");
    c_est->add_option("--restarts", cfg.restarts, "random restarts per horizon");
    c_est->add_option("--iters", cfg.max_iters, "iteration cap per restart");
    c_est->add_option("--cutoff", cfg.cutoff, "fidelity-error cutoff");
    c_est->add_option("--sigma0", cfg.init_scale, "initial amplitude scale");
    c_est->add_option("--fmax", cfg.amplitude_limit,
                      "amplitude clamp (0 = unbounded)");
    c_est->add_option("--seed", cfg.seed, "master seed");
    c_est->add_option("--jobs", jobs, "concurrent targets");
    c_est->add_flag("--full-sweep", full_sweep,
                    "keep optimizing past the first converged horizon");
    c_est->add_flag("!--no-warm-start", cfg.warm_start,
                    "disable warm starts across the grid");

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("QSL_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

    Loaded loaded = load_or_exit(spec_path, tol);
    const qsl::ControlSystem& sys = *loaded.sys;
    if (!kind_override.empty()) {
        // same grammar as the file, with ':' separators for su_pq
        if (kind_override.rfind("su_pq", 0) == 0) {
            loaded.spec.kind = "su_pq";
            if (std::sscanf(kind_override.c_str(), "su_pq:%d:%d", &loaded.spec.p,
                            &loaded.spec.q) != 2) {
                std::cerr << "bad --kind value '" << kind_override << "'\n";
                return kParse;
            }
        } else {
            loaded.spec.kind = kind_override;
        }
    }

    auto write_run_manifest = [&](const std::filesystem::path& dir,
                                  std::vector<std::pair<std::string, std::string>>
                                      extra) {
        qsl::RunManifest man;
        man.command = join_args(argc, argv);
        man.version = kVersion;
        man.timestamp = timestamp_now();
        man.seed = cfg.seed;
        man.config = std::move(extra);
        auto f = open_out(dir / "manifest.txt");
        qsl::write_manifest(f, man);
    };

    auto ensure_out_dir = [&]() -> std::filesystem::path {
        std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            std::cerr << "cannot create '" << out_dir << "': " << ec.message()
                      << "\n";
            std::exit(kIo);
        }
        return dir;
    };

    if (*c_ctrl) {
        std::vector<qsl::MatrixC> gens;
        gens.push_back(qsl::Complex(0, 1) * sys.drift);
        for (const auto& c : sys.controls)
            gens.push_back(qsl::Complex(0, 1) * c);
        const int dim = qsl::lie_closure(gens, sys.n, tol).size();
        const int full = sys.n * sys.n - 1;
        const bool ok = dim == full;
        std::cout << "dim " << dim << " of " << full << ": "
                  << (ok ? "controllable" : "not controllable") << "\n";
        return ok ? kOk : kNotControllable;
    }

    // The remaining commands need the control algebra and kind.
    qsl::LieBasis k = control_algebra(sys, tol);
    qsl::GroupKind kind = resolve_kind(loaded.spec, k);
    if (kind.tag == qsl::GroupKind::Tag::Other ||
        kind.tag == qsl::GroupKind::Tag::FullSU) {
        std::cerr << "no tabulated diameter for kind " << kind.name(sys.n)
                  << "; supply --kind or use the grape estimate\n";
        return kNoKind;
    }
    qsl::LieBasis p = qsl::orthogonal_complement(k, sys.n);
    qsl::MatrixC drift_p = qsl::project_drift(sys.drift, k);
    qsl::ControlSystem projected(sys.n, drift_p, sys.controls);

    qsl::BoundReport rep;
    try {
        rep = qsl::qsl_bound(projected, kind);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kNoKind;
    }
    qsl::TightnessVerdict verdict =
        qsl::classify_tightness(projected, kind, k, p);

    if (*c_bound) {
        std::cout << "kind            " << kind.name(sys.n) << "\n";
        std::cout << "drift speed     " << qsl::format_double(rep.drift_speed)
                  << "\n";
        std::cout << "diameter        " << qsl::format_double(rep.diameter)
                  << "\n";
        std::cout << "bound (theorem) " << qsl::format_double(rep.bound_theorem)
                  << "\n";
        if (rep.bound_published)
            std::cout << "bound (formula) "
                      << qsl::format_double(*rep.bound_published) << "\n";
        if (sys.controls.size() == 1)
            std::cout << "single-control  "
                      << qsl::format_double(
                             qsl::single_control_bound(projected.drift, sys.n))
                      << "\n";
        std::cout << "tightness       " << qsl::to_string(verdict.status)
                  << "\n";
        if (!out_dir.empty()) {
            auto dir = ensure_out_dir();
            auto f = open_out(dir / "bound.csv");
            f << "kind,n,drift_speed,diameter,bound_theorem,bound_published,"
                 "tightness\n";
            f << kind.name(sys.n) << "," << sys.n << ","
              << qsl::format_double(rep.drift_speed) << ","
              << qsl::format_double(rep.diameter) << ","
              << qsl::format_double(rep.bound_theorem) << ","
              << (rep.bound_published ? qsl::format_double(*rep.bound_published)
                                      : "")
              << "," << qsl::to_string(verdict.status) << "\n";
            write_run_manifest(dir, {{"tol", qsl::format_double(tol)}});
        }
        return kOk;
    }

    if (*c_tight) {
        qsl::DimensionCriterion crit =
            qsl::dimension_criterion(projected, k, p);
        std::cout << "kind " << kind.name(sys.n) << ", dim k = " << k.size()
                  << ", dim p = " << p.size() << "\n";
        std::cout << "dimension criterion: centralizer " << crit.lhs
                  << " vs 1 + dim k - dim p = " << crit.rhs << " -> "
                  << (crit.holds ? "equality" : "no equality") << "\n";
        if (kind.tag == qsl::GroupKind::Tag::SO) {
            auto d = qsl::so_degeneracy_analysis(projected.drift, sys.n);
            std::cout << "so(n) degeneracy: M = " << d.degenerate_pairs
                      << ", orbit dim = " << d.orbit_dim << "\n";
            if (sys.n == 3) {
                auto r = qsl::su3_root_analysis(projected.drift);
                std::cout << "su(3) roots: lambda1+2*lambda2 = "
                          << qsl::format_double(r.cond1_lhs)
                          << ", lambda1-lambda2 = "
                          << qsl::format_double(r.cond2_lhs)
                          << (r.degenerate ? " (degenerate)" : "") << "\n";
            }
        }
        std::cout << "verdict: " << qsl::to_string(verdict.status) << "\n";
        for (const auto& reason : verdict.reasons)
            std::cout << "  - " << reason << "\n";
        return kOk;
    }

    // estimate
    if (out_dir.empty()) {
        std::cerr << "estimate requires --out-dir\n";
        return kIo;
    }
    if (tsteps < 1 || tmax < tmin) {
        std::cerr << "bad time grid\n";
        return kParse;
    }
    std::vector<double> grid(tsteps);
    for (int i = 0; i < tsteps; ++i)
        grid[i] = tsteps == 1
                      ? tmin
                      : tmin + (tmax - tmin) * double(i) / (tsteps - 1);

    qsl::QslEstimate est =
        qsl::estimate_qsl(projected, targets, grid, cfg, jobs, full_sweep);

    auto dir = ensure_out_dir();
    {
        auto f = open_out(dir / "waterfall.csv");
        f << "target_id,T,best_error\n";
        for (const auto& rec : est.records)
            for (size_t i = 0; i < rec.times.size(); ++i)
                f << rec.target_id << "," << qsl::format_double(rec.times[i])
                  << "," << qsl::format_double(rec.best_error[i]) << "\n";
    }
    {
        auto f = open_out(dir / "histogram.csv");
        f << "target_id,min_time\n";
        for (const auto& rec : est.records)
            f << rec.target_id << ","
              << (rec.min_time ? qsl::format_double(*rec.min_time) : "") << "\n";
    }
    write_run_manifest(
        dir,
        {{"targets", std::to_string(targets)},
         {"tmin", qsl::format_double(tmin)},
         {"tmax", qsl::format_double(tmax)},
         {"tsteps", std::to_string(tsteps)},
         {"slots", std::to_string(cfg.slots)},
         {"restarts", std::to_string(cfg.restarts)},
         {"iters", std::to_string(cfg.max_iters)},
         {"cutoff", qsl::format_double(cfg.cutoff)},
         {"sigma0", qsl::format_double(cfg.init_scale)},
         {"warm_start", cfg.warm_start ? "on" : "off"},
         {"note", "discrete time grid: a faster solution strictly between "
                  "grid points cannot be observed"}});

    std::cout << "analytic bound " << qsl::format_double(rep.bound_theorem)
              << "\n";
    if (est.estimate) {
        std::cout << "qsl estimate " << qsl::format_double(*est.estimate);
        if (*est.estimate > 1.05 * rep.bound_theorem)
            std::cout << "  (exceeds the analytic bound: not tight on this "
                         "grid)";
        std::cout << "\n";
    } else {
        std::cout << "qsl estimate: grid exhausted (a target never "
                     "converged)\n";
    }
    return kOk;
}
