#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/lie_engine.hpp"

// File formats owned by the CLI: the structured-text system description,
// CSV emission, and the reproducibility manifest.

namespace qsl {

// Parse failure with a 1-based line number for diagnostics.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

// On-disk description of a control system:
//   n <dim>
//   kind auto | so | sp | su_pq <p> <q> | full
//   drift            (n rows of n "re im" pairs follow)
//   control          (repeatable)
// '#' starts a comment. Matrices are symmetrized at load; matrices whose
// anti-Hermitian part exceeds 1e-8 (relative) are flagged via
// hermiticity_warning.
struct SystemSpec {
    int n = 0;
    MatrixC drift;
    std::vector<MatrixC> controls;
    std::string kind = "auto";  // "auto", "so", "sp", "su_pq", "full"
    int p = 0, q = 0;           // for su_pq
    double hermiticity_warning = 0.0;  // largest relative asymmetry removed
};

SystemSpec parse_system_spec(std::istream& in);
SystemSpec load_system_spec(const std::string& path);  // I/O errors -> std::ios_base::failure

// Emits a file that reparses to bitwise-identical matrices.
void emit_system_spec(std::ostream& out, const SystemSpec& spec);

// Reproducibility manifest written next to every output file set.
struct RunManifest {
    std::string command;  // argv joined
    std::vector<std::pair<std::string, std::string>> config;
    std::uint64_t seed = 0;
    std::string version;
    std::string timestamp;
};

void write_manifest(std::ostream& out, const RunManifest& m);

// One double, shortest round-trippable decimal ("%.17g").
std::string format_double(double v);

}  // namespace qsl
