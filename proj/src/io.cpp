#include "qsl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsl {

namespace {

// Line reader that strips comments and tracks the 1-based line number.
struct LineReader {
    std::istream& in;
    int line_no = 0;

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.assign(std::istream_iterator<std::string>(ss),
                          std::istream_iterator<std::string>());
            if (!tokens.empty()) return true;
        }
        return false;
    }
};

double parse_number(const std::string& tok, int line) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line, "trailing characters in number '" + tok + "'");
    return v;
}

MatrixC read_matrix(LineReader& rd, int n) {
    MatrixC m(n, n);
    std::vector<std::string> tokens;
    for (int r = 0; r < n; ++r) {
        if (!rd.next(tokens))
            throw ParseError(rd.line_no, "unexpected end of file inside matrix");
        if (static_cast<int>(tokens.size()) != 2 * n)
            throw ParseError(rd.line_no,
                             "matrix row needs " + std::to_string(2 * n) +
                                 " values (re im pairs), got " +
                                 std::to_string(tokens.size()));
        for (int c = 0; c < n; ++c)
            m(r, c) = Complex(parse_number(tokens[2 * c], rd.line_no),
                              parse_number(tokens[2 * c + 1], rd.line_no));
    }
    return m;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SystemSpec parse_system_spec(std::istream& in) {
    LineReader rd{in};
    SystemSpec spec;
    bool have_drift = false;
    std::vector<std::string> tokens;
    while (rd.next(tokens)) {
        const std::string& key = tokens[0];
        if (key == "n") {
            if (tokens.size() != 2)
                throw ParseError(rd.line_no, "usage: n <dim>");
            spec.n = static_cast<int>(parse_number(tokens[1], rd.line_no));
            if (spec.n < 1) throw ParseError(rd.line_no, "n must be >= 1");
        } else if (key == "kind") {
            if (tokens.size() < 2)
                throw ParseError(rd.line_no, "usage: kind <auto|so|sp|su_pq p q|full>");
            spec.kind = tokens[1];
            if (spec.kind == "su_pq") {
                if (tokens.size() != 4)
                    throw ParseError(rd.line_no, "usage: kind su_pq <p> <q>");
                spec.p = static_cast<int>(parse_number(tokens[2], rd.line_no));
                spec.q = static_cast<int>(parse_number(tokens[3], rd.line_no));
            } else if (spec.kind != "auto" && spec.kind != "so" &&
                       spec.kind != "sp" && spec.kind != "full") {
                throw ParseError(rd.line_no, "unknown kind '" + spec.kind + "'");
            }
        } else if (key == "drift" || key == "control") {
            if (spec.n == 0)
                throw ParseError(rd.line_no, "'n' must come before matrices");
            MatrixC m = read_matrix(rd, spec.n);
            const double asym =
                (m - m.adjoint()).norm() / std::max(1.0, m.norm());
            spec.hermiticity_warning = std::max(spec.hermiticity_warning, asym);
            m = 0.5 * (m + m.adjoint().eval());
            if (key == "drift") {
                if (have_drift) throw ParseError(rd.line_no, "duplicate drift");
                spec.drift = std::move(m);
                have_drift = true;
            } else {
                spec.controls.push_back(std::move(m));
            }
        } else {
            throw ParseError(rd.line_no, "unknown directive '" + key + "'");
        }
    }
    if (spec.n == 0) throw ParseError(rd.line_no, "missing 'n'");
    if (!have_drift) throw ParseError(rd.line_no, "missing 'drift'");
    if (spec.controls.empty())
        throw ParseError(rd.line_no, "at least one 'control' required");
    return spec;
}

SystemSpec load_system_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    return parse_system_spec(in);
}

void emit_system_spec(std::ostream& out, const SystemSpec& spec) {
    out << "n " << spec.n << "\n";
    if (spec.kind == "su_pq")
        out << "kind su_pq " << spec.p << " " << spec.q << "\n";
    else
        out << "kind " << spec.kind << "\n";
    auto emit_matrix = [&](const MatrixC& m) {
        for (int r = 0; r < spec.n; ++r) {
            for (int c = 0; c < spec.n; ++c) {
                if (c) out << "  ";
                out << format_double(m(r, c).real()) << " "
                    << format_double(m(r, c).imag());
            }
            out << "\n";
        }
    };
    out << "drift\n";
    emit_matrix(spec.drift);
    for (const auto& ctrl : spec.controls) {
        out << "control\n";
        emit_matrix(ctrl);
    }
}

void write_manifest(std::ostream& out, const RunManifest& m) {
    out << "artifact qsl " << m.version << "\n";
    out << "timestamp " << m.timestamp << "\n";
    out << "command " << m.command << "\n";
    out << "seed " << m.seed << "\n";
    for (const auto& [k, v] : m.config) out << "config " << k << " " << v << "\n";
}

}  // namespace qsl
