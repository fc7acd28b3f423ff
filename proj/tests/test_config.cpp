#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "vanhove/commands.hpp"
#include "vanhove/config.hpp"
#include "vanhove/csv.hpp"
#include "vanhove/error.hpp"

using namespace vanhove;

namespace {

std::string source(const std::string& rel) { return std::string(VH_SOURCE_DIR) + "/" + rel; }

std::string error_text(const std::string& yaml) {
    try {
        parse_config(yaml, "cfg.yaml");
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == name) return c;
    FAIL("missing column " << name);
    return 0;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults and overrides") {
    const RunConfig d = parse_config("model: {preset: dephasing}\n");
    CHECK(d.model.preset == "dephasing");
    CHECK(d.quadrature.simplex_nodes == 12);
    CHECK(d.sweep.lambda_grid == std::vector<double>{0.4, 0.2, 0.1});
    CHECK(d.quadrature.seed == 0u);

    const RunConfig c = parse_config(
        "model: {preset: random, seed: 9, bath_levels: 3, lambda: 0.25}\n"
        "quadrature: {simplex_nodes: 6, seed: 4}\n"
        "sweep: {lambda_grid: [0.3], tau_grid: [0.5, 2]}\n"
        "output: {directory: out, long_format: true}\n");
    CHECK(c.model.options.seed == 9u);
    CHECK(c.model.options.bath_levels == 3);
    CHECK(c.model.options.lambda == 0.25);
    CHECK(c.quadrature.simplex_nodes == 6);
    CHECK(c.sweep.tau_grid == std::vector<double>{0.5, 2.0});
    CHECK(c.output.long_format);
    const Preset p = build_preset(c);
    CHECK(p.model.dR() == 3);
    CHECK(validate(p.model).ok());
}

TEST_CASE("explicit model") {
    const RunConfig c = load_config(source("configs/explicit_qubit.yaml"));
    REQUIRE(c.model.explicit_model.has_value());
    const Preset p = build_preset(c);
    CHECK(p.model.dS() == 2);
    CHECK(p.model.dR() == 3);
    CHECK(p.model.V(0, 2) == cplx(0.3, -0.2));
    CHECK(p.model.V(2, 0) == cplx(0.3, 0.2));
    CHECK(p.model.lambda == 0.2);
    REQUIRE(p.phi.has_value());
    CHECK(p.phi->gamma == 0.5);
    CHECK(validate(p.model).ok());
}

TEST_CASE("parse errors carry file, line and column") {
    try {
        load_config(source("tests/data/malformed_row.yaml"));
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        const std::string msg = e.what();
        CHECK(msg.find("malformed_row.yaml:7:7:") != std::string::npos);
        CHECK(msg.find("row 1 has 3 entries, expected 2") != std::string::npos);
    }
    CHECK(error_text("model: {preset: dephasing, colour: red}\n").find("cfg.yaml:1:") == 0);
    CHECK(error_text("model: {preset: dephasing}\nsweep: {lambda_grid: [a]}\n").find("cfg.yaml:2:") == 0);
    CHECK(error_text("model: [1, 2\n").find("cfg.yaml:") == 0);
    CHECK_FALSE(error_text("model: {preset: dephasing, H_S: [[1]]}\n").empty());
    CHECK_FALSE(error_text("quadrature: {order: 4}\n").empty());
    CHECK_THROWS_AS(load_config(source("tests/data/does_not_exist.yaml")), Error);
}

TEST_CASE("window resolution") {
    RunConfig c = parse_config("model: {preset: dephasing}\n");
    Preset p = build_preset(c);
    CHECK(effective_window(c, p) == doctest::Approx(recurrence_window(p.model)));
    c = parse_config("model: {preset: dephasing, window: 7.5}\n");
    CHECK(effective_window(c, build_preset(c)) == 7.5);
}

TEST_CASE("csv formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-12) == "-2.5e-12");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    Table t{{"a", "b"}, {}};
    t.add({"1", "x,y"});
    t.add({"2", "say \"hi\""});
    CHECK(t.to_csv() == "a,b\n1,\"x,y\"\n2,\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(t.add({"3"}), Error);
    CHECK(t.to_text().find("a  b") == 0);
}

TEST_CASE("command parsing") {
    CHECK(parse_kn_mode("both") == KnMode::Both);
    CHECK(parse_bounds_which("lemmaA") == BoundsWhich::LemmaA);
    CHECK_THROWS_AS(parse_kn_mode("fast"), Error);
    CHECK_THROWS_AS(parse_bounds_which("all"), Error);
}

TEST_CASE("validate command") {
    const CommandResult ok = cmd_validate(load_config(source("configs/dephasing.yaml")));
    CHECK(ok.status == 0);
    CHECK(ok.table.header == std::vector<std::string>{"check", "assumption", "residual", "tolerance", "pass"});
    const CommandResult bad = cmd_validate(load_config(source("tests/data/v_identity.yaml")));
    CHECK(bad.status == 1);
    CHECK(bad.message.find("A4-centering") != std::string::npos);
}

TEST_CASE("kn command cross-checks both routes") {
    const RunConfig c = parse_config("model: {preset: random, seed: 2}\nquadrature: {simplex_nodes: 6}\n");
    const CommandResult r = cmd_kn(c, 2, 1.0, KnMode::Both);
    CHECK(r.status == 0);
    CHECK(r.table.rows.size() == 16u);
    const std::size_t br = column(r.table, "brute_re"), dr = column(r.table, "diagram_re");
    for (const auto& row : r.table.rows) CHECK(std::abs(std::stod(row[br]) - std::stod(row[dr])) <= 1e-10);
    CHECK_THROWS_AS(cmd_kn(c, 4, 1.0, KnMode::Brute), Error);
    CHECK_THROWS_AS(cmd_kn(c, 7, 1.0, KnMode::Diagram), Error);
    CHECK_THROWS_AS(cmd_kn(load_config(source("tests/data/v_identity.yaml")), 1, 1.0, KnMode::Both), Error);
}

TEST_CASE("converge command") {
    const RunConfig c = parse_config(
        "model: {preset: star-bath, bath_levels: 160}\nsweep: {lambda_grid: [0.4, 0.2], tau_grid: [1]}\n");
    const CommandResult r = cmd_converge(c);
    CHECK(r.table.header == std::vector<std::string>{"lambda", "tau", "error", "flagged"});
    REQUIRE(r.table.rows.size() == 2u);
    CHECK(r.table.rows[0][0] == "0.4");
    CHECK(r.table.rows[0][3] == "false");
    CHECK(std::stod(r.table.rows[1][2]) < std::stod(r.table.rows[0][2]));
    REQUIRE(r.long_table.has_value());
    CHECK(r.long_table->rows.size() == 6u);
    CHECK(r.message.find("preset=star-bath") != std::string::npos);

    const CommandResult f = cmd_converge(parse_config("model: {preset: dephasing}\nsweep: {lambda_grid: [0.1]}\n"));
    REQUIRE(f.table.rows.size() == 1u);
    CHECK(f.table.rows[0][3] == "true");
    CHECK_FALSE(f.warnings.empty());
}

TEST_CASE("bounds command") {
    const RunConfig c = load_config(source("configs/dephasing.yaml"));
    const CommandResult xi = cmd_bounds(c, BoundsWhich::Xi);
    CHECK(xi.status == 0);
    CHECK(xi.table.header.front() == "check");
    const CommandResult cs = cmd_bounds(c, BoundsWhich::Constants);
    CHECK(cs.status == 0);
    const CommandResult kn = cmd_bounds(load_config(source("tests/data/no_certificate.yaml")), BoundsWhich::Kn);
    CHECK(kn.status == 1);
    CHECK(kn.message.find("clustering certificate") != std::string::npos);
}

TEST_CASE("diagram command") {
    CHECK(cmd_diagram(1, "", "0-2").find("(2,1,0)") != std::string::npos);
    CHECK_THROWS_AS(cmd_diagram(4, "2,4", "0/1-5"), Error);
}

}
