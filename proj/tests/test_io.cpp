#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qsl/io.hpp"
#include "qsl/rng.hpp"

using namespace qsl;

TEST_CASE("parse_system_spec basic file") {
    std::istringstream in(
        "# two-level benchmark\n"
        "n 2\n"
        "kind so\n"
        "drift\n"
        "1 0   0 0\n"
        "0 0  -1 0\n"
        "control\n"
        "0 0   1 0\n"
        "1 0   0 0\n");
    const auto spec = parse_system_spec(in);
    CHECK(spec.n == 2);
    CHECK(spec.kind == "so");
    REQUIRE(spec.controls.size() == 1);
    CHECK(spec.drift(0, 0) == Complex(1, 0));
    CHECK(spec.drift(1, 1) == Complex(-1, 0));
    CHECK(spec.controls[0](0, 1) == Complex(1, 0));
    CHECK(spec.hermiticity_warning <= 1e-12);
}

TEST_CASE("parse_system_spec kinds") {
    std::istringstream in(
        "n 5\nkind su_pq 2 3\n"
        "drift\n"
        "0 0 0 0 1 0 0 0 0 0\n"
        "0 0 0 0 0 0 4 0 0 0\n"
        "1 0 0 0 0 0 0 0 0 0\n"
        "0 0 4 0 0 0 0 0 0 0\n"
        "0 0 0 0 0 0 0 0 0 0\n"
        "control\n"
        "0 0 0 1 0 0 0 0 0 0\n"
        "0 -1 0 0 0 0 0 0 0 0\n"
        "0 0 0 0 0 0 0 0 0 0\n"
        "0 0 0 0 0 0 0 0 0 0\n"
        "0 0 0 0 0 0 0 0 0 0\n");
    const auto spec = parse_system_spec(in);
    CHECK(spec.kind == "su_pq");
    CHECK(spec.p == 2);
    CHECK(spec.q == 3);
    CHECK(spec.drift(1, 3) == Complex(4, 0));
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream missing_n("drift\n1 0 0 0\n0 0 -1 0\n");
    CHECK_THROWS_AS(parse_system_spec(missing_n), ParseError);

    std::istringstream short_row("n 2\ndrift\n1 0\n0 0 -1 0\n");
    try {
        parse_system_spec(short_row);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    std::istringstream bad_kind("n 2\nkind frobnicate\ndrift\n1 0 0 0\n0 0 -1 0\n");
    CHECK_THROWS_AS(parse_system_spec(bad_kind), ParseError);

    std::istringstream no_control("n 2\ndrift\n1 0 0 0\n0 0 -1 0\n");
    CHECK_THROWS_AS(parse_system_spec(no_control), ParseError);
}

TEST_CASE("non-Hermitian input is symmetrized with a warning") {
    std::istringstream in(
        "n 2\n"
        "drift\n"
        "1 0   0.5 0\n"
        "0 0  -1 0\n"
        "control\n"
        "0 0   1 0\n"
        "1 0   0 0\n");
    const auto spec = parse_system_spec(in);
    CHECK(spec.hermiticity_warning > 1e-8);
    CHECK(is_hermitian(spec.drift));
    CHECK(spec.drift(0, 1) == Complex(0.25, 0));
}

TEST_CASE("emit/parse round trip is bitwise exact") {
    Rng rng(64);
    SystemSpec spec;
    spec.n = 3;
    spec.kind = "auto";
    spec.drift = oracle::random_hermitian(3, rng);
    spec.controls = {oracle::random_hermitian(3, rng),
                     oracle::random_hermitian(3, rng)};

    std::ostringstream out;
    emit_system_spec(out, spec);
    std::istringstream back(out.str());
    const auto again = parse_system_spec(back);

    CHECK(again.n == spec.n);
    REQUIRE(again.controls.size() == spec.controls.size());
    CHECK((again.drift.array() == spec.drift.array()).all());
    for (size_t c = 0; c < spec.controls.size(); ++c)
        CHECK((again.controls[c].array() == spec.controls[c].array()).all());

    // Second round trip reproduces the emitted text byte for byte.
    std::ostringstream out2;
    emit_system_spec(out2, again);
    CHECK(out.str() == out2.str());
}

TEST_CASE("load_system_spec reports I/O failures") {
    CHECK_THROWS_AS(load_system_spec("/nonexistent/path/system.txt"),
                    std::ios_base::failure);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -0.5, 3.141592653589793, 1e-17, -2.2250738585072014e-308}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("manifest contains the reproducibility fields") {
    RunManifest m;
    m.command = "qsl estimate systems/su2_so2.txt";
    m.config = {{"targets", "10"}, {"slots", "100"}};
    m.seed = 12345;
    m.version = "1.0.0";
    m.timestamp = "2026-01-01T00:00:00Z";
    std::ostringstream out;
    write_manifest(out, m);
    const std::string text = out.str();
    CHECK(text.find("qsl estimate") != std::string::npos);
    CHECK(text.find("12345") != std::string::npos);
    CHECK(text.find("targets") != std::string::npos);
}
