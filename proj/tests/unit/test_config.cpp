#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "hcert/config.hpp"
#include "hcert/errors.hpp"
#include "hcert/report.hpp"
#include "oracles.hpp"

using namespace hcert;

namespace {

RunContext ctx_for(const std::string& name) {
  RunContext ctx;
  ctx.config_path = name;
  ctx.config_text = serialize_config(load_config(oracle::config_path(name)));
  ctx.timestamp = false;
  return ctx;
}

double value(const Json& j) { return std::stod(j.at("value").get<std::string>()); }

void expect_config_error(const std::string& text, int line, const std::string& field) {
  try {
    parse_config(text, "test.cfg");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    std::string msg = e.what();
    INFO(msg);
    CHECK(msg.find("test.cfg:" + std::to_string(line)) != std::string::npos);
    CHECK(msg.find(field) != std::string::npos);
  }
}

const char* kMinimal = "[kernel]\npreset = dirichlet_max\nwindow = 1/4, 3/4\n[nonlinearity]\nf = 0\nf1 = 0\nf2 = 0\n";

}  // namespace

TEST_CASE("bundled configs round-trip") {
  for (const char* name : {"example1.cfg", "example2.cfg", "zero.cfg"}) {
    INFO(name);
    ProblemConfig a = load_config(oracle::config_path(name));
    std::string text = serialize_config(a);
    ProblemConfig b = parse_config(text);
    CHECK(a == b);
    CHECK(serialize_config(b) == text);
  }
}

TEST_CASE("example 1 config builds the expected problem") {
  ProblemConfig cfg = load_config(oracle::config_path("example1.cfg"));
  CHECK(cfg.kernel.a == 0.25);
  CHECK(cfg.certify.rho == std::vector<double>{1, 28, 50});
  ProblemSpec p = build_problem(cfg);
  CHECK(p.lower.size() == 2);
  CHECK(p.nonlinearity.f(0.5, 2.0, 1.0) == doctest::Approx(0.5 * 4 + 0.5));
  CHECK(p.deviation.eta(1.0) == 0.75);
  CHECK(p.boundary.map(0.0, 4.0) == 2.0);
}

TEST_CASE("config errors name the line and field") {
  expect_config_error(std::string(kMinimal) + "bogus = 1\n", 8, "bogus");
  expect_config_error(std::string(kMinimal) + "f = 1\n", 8, "[nonlinearity] f");
  expect_config_error(std::string("[kernel]\npreset = nope\n"), 2, "preset");
  expect_config_error(std::string(kMinimal) + "[solver]\nnodes = abc\n", 9, "nodes");
  expect_config_error(std::string(kMinimal) + "[deviation]\nkind = composition\neta = t +\n", 10, "eta");
  expect_config_error(std::string(kMinimal) + "[upper.gamma]\nfunction = 1\nfunctional = stieltjes:mu\n", 10,
                      "functional");
  expect_config_error(std::string(kMinimal) + "[kernel]\n", 8, "kernel");
  expect_config_error("[kernel]\npreset = dirichlet_max\nwindow = 0.8, 0.2\n", 3, "window");
  CHECK_THROWS_AS(parse_config("[kernel]\npreset = dirichlet_max\nwindow = 1/4, 3/4\n"), Error);
}

TEST_CASE("stieltjes densities in configs") {
  std::string text = std::string(kMinimal) +
                     "[upper.gamma.w]\nfunction = 1\nfunctional = stieltjes:mu\n"
                     "[density.mu]\ndensity = 2*s\natoms = 0.5:0.25\n";
  ProblemConfig cfg = parse_config(text);
  CHECK(cfg.terms.size() == 1);
  CHECK(cfg.terms[0].label == "w");
  CHECK(parse_config(serialize_config(cfg)) == cfg);
  ProblemSpec p = build_problem(cfg);
  CHECK(p.upper[0].functional.norm() == doctest::Approx(1.25));
}

TEST_CASE("custom kernel config") {
  std::string text =
      "[kernel]\nexpr = exp(-(t-s)^2)\nwindow = 0.3, 0.7\n[nonlinearity]\nf = u^2\nf1 = u^2\nf2 = u^2\n";
  ProblemSpec p = build_problem(parse_config(text));
  CHECK(p.kernel.c1 == doctest::Approx(std::exp(-0.49)).epsilon(1e-6));
  CHECK(p.kernel.c == p.kernel.c1);
}

TEST_CASE("constants command reproduces the example values") {
  CommandResult r1 = run_constants(load_config(oracle::config_path("example1.cfg")), ctx_for("example1.cfg"));
  const Json& k1 = r1.document["constants"];
  CHECK(std::abs(value(k1["M1"][0][0]) - 43.0 / 1024.0) < 1e-9);
  CHECK(std::abs(value(k1["M2"][0][0]) - 11.0 / 192.0) < 1e-9);
  CHECK(std::abs(value(k1["r_M2"]) - 107.0 / 192.0) < 1e-9);
  CHECK(k1["M1"][0][0]["source"] == "cone_algebra.build_cross_matrix");
  CommandResult r2 = run_constants(load_config(oracle::config_path("example2.cfg")), ctx_for("example2.cfg"));
  const Json& k2 = r2.document["constants"];
  CHECK(std::abs(value(k2["norm_L2_bound"]) - 1.0) < 1e-9);
  CHECK(std::abs(value(k2["norm_H2_bound"]) - 0.5) < 1e-9);
  CommandResult r0 = run_constants(load_config(oracle::config_path("zero.cfg")), ctx_for("zero.cfg"));
  CHECK(r0.document["constants"]["M1"].empty());
  CHECK(r0.document["constants"]["M2"].empty());
}

TEST_CASE("certify exit codes") {
  ProblemConfig cfg = load_config(oracle::config_path("example1.cfg"));
  RunContext ctx = ctx_for("example1.cfg");
  CommandResult full = run_certify(cfg, ctx);
  CHECK(full.exit_code == kExitCertificate);
  CHECK(full.document["certificate"]["pattern"] == "S2");
  CHECK(full.document["certificate"]["solution_count"] == 1);
  ctx.rho = std::vector<double>{1.0};
  CommandResult single = run_certify(cfg, ctx);
  CHECK(single.document["candidates"]["index"]["pattern"] == "NONE");

  ProblemConfig cfg2 = load_config(oracle::config_path("example2.cfg"));
  CommandResult eig = run_certify(cfg2, ctx_for("example2.cfg"));
  CHECK(eig.exit_code == kExitCertificate);
  CHECK(eig.document["certificate"]["pattern"] == "EIG_13");
  CHECK(eig.document["certificate"]["advisory"] == false);

  ProblemConfig cfg0 = load_config(oracle::config_path("zero.cfg"));
  CHECK(run_certify(cfg0, ctx_for("zero.cfg")).exit_code == kExitNone);
}

TEST_CASE("solve command") {
  auto dir = std::filesystem::temp_directory_path() / "hcert_unit_solve";
  std::filesystem::create_directories(dir);
  ProblemConfig cfg0 = load_config(oracle::config_path("zero.cfg"));
  RunContext ctx = ctx_for("zero.cfg");
  ctx.csv_dir = dir.string();
  ctx.csv_stem = "zero";
  CommandResult r = run_solve(cfg0, ctx);
  REQUIRE(r.document["solver"].size() == 1);
  CHECK(r.document["solver"][0]["trivial"] == true);
  CHECK(r.csv_files.size() == 1);
  CHECK(std::filesystem::exists(r.csv_files[0]));

  ProblemConfig cfg1 = load_config(oracle::config_path("example1.cfg"));
  CommandResult s1 = run_solve(cfg1, ctx_for("example1.cfg"));
  const Json& run = s1.document["solver"][0];
  CHECK(run["converged"] == true);
  CHECK(run["cone_ok"] == true);
  CHECK(run["shell_index"] == 0);
  CHECK(value(run["residual"]) < 1e-8);
}

TEST_CASE("reports are deterministic") {
  ProblemConfig cfg = load_config(oracle::config_path("example2.cfg"));
  RunContext ctx = ctx_for("example2.cfg");
  std::string a = run_report(cfg, ctx).document.dump();
  std::string b = run_report(cfg, ctx).document.dump();
  CHECK(a == b);
  ctx.timestamp = true;
  Json c = run_certify(cfg, ctx).document;
  CHECK_FALSE(c["generated_at"].get<std::string>().empty());
}

TEST_CASE("number formatting and hashing") {
  CHECK(format15(43.0 / 1024.0) == "0.0419921875");
  CHECK(format15(1.0 / 3.0) == "0.333333333333333");
  Json n = number_json(0.5, "src", 1e-9);
  CHECK(n["value"] == "0.5");
  CHECK(n["tolerance"] == "1e-09");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
