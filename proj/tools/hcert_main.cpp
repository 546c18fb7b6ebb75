#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcert/errors.hpp"
#include "hcert/report.hpp"

namespace {

hcert::RunContext context_for(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw hcert::Error(hcert::ErrorCode::ConfigError, path, "cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  hcert::RunContext ctx;
  ctx.config_path = path;
  ctx.config_text = ss.str();
  ctx.csv_stem = std::filesystem::path(path).stem().string() + "_solution";
  return ctx;
}

void emit(const hcert::Json& doc, const std::string& out) {
  std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw hcert::Error(hcert::ErrorCode::InvalidArgument, "report", "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Existence and multiplicity certificates for perturbed Hammerstein equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hcert::kToolVersion);

  std::string cfg_path, out_path, csv_dir;
  std::vector<double> rho;
  bool no_timestamp = false;

  auto* constants = app.add_subcommand("constants", "Print the constants table");
  auto* check = app.add_subcommand("check-index", "Evaluate the index conditions at given radii");
  auto* certify = app.add_subcommand("certify", "Match index conditions and eigenvalue criteria to a certificate");
  auto* solve = app.add_subcommand("solve", "Certify, then compute solutions by fixed-point iteration");
  auto* report = app.add_subcommand("report", "Write the full report and solution curves");
  for (auto* sub : {constants, check, certify, solve, report}) {
    sub->add_option("config", cfg_path, "Problem config file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--no-timestamp", no_timestamp, "Leave generated_at empty");
  }
  check->add_option("--rho", rho, "Radii to test")->required()->delimiter(',');
  for (auto* sub : {certify, solve, report}) sub->add_option("--rho", rho, "Override the [certify] radii")->delimiter(',');
  solve->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  solve->add_option("--csv-dir", csv_dir, "Directory for solution CSV files");
  report->add_option("--out", out_path, "Report path; CSV files are written next to it")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : hcert::kExitError;
  }

  try {
    hcert::RunContext ctx = context_for(cfg_path);
    ctx.timestamp = !no_timestamp;
    if (!rho.empty()) ctx.rho = rho;
    hcert::ProblemConfig cfg = hcert::parse_config(ctx.config_text, cfg_path);
    std::error_code ec;
    if (!csv_dir.empty()) std::filesystem::create_directories(csv_dir, ec);
    if (std::filesystem::path(out_path).has_parent_path())
      std::filesystem::create_directories(std::filesystem::path(out_path).parent_path(), ec);
    hcert::CommandResult res;
    if (*constants) {
      res = hcert::run_constants(cfg, ctx);
    } else if (*check) {
      res = hcert::run_check_index(cfg, ctx);
    } else if (*certify) {
      res = hcert::run_certify(cfg, ctx);
    } else if (*solve) {
      if (!csv_dir.empty()) ctx.csv_dir = csv_dir;
      else if (!out_path.empty()) ctx.csv_dir = std::filesystem::path(out_path).parent_path().string();
      if (!out_path.empty() && ctx.csv_dir.empty()) ctx.csv_dir = ".";
      res = hcert::run_solve(cfg, ctx);
    } else {
      std::filesystem::path p(out_path);
      ctx.csv_dir = p.has_parent_path() ? p.parent_path().string() : ".";
      ctx.csv_stem = p.stem().string();
      res = hcert::run_report(cfg, ctx);
    }
    emit(res.document, out_path);
    return res.exit_code;
  } catch (const hcert::Error& e) {
    hcert::Json err = {{"error", {{"code", hcert::to_string(e.code())}, {"where", e.where()}, {"message", e.what()}}}};
    std::fputs((err.dump(2) + "\n").c_str(), stderr);
    return hcert::kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return hcert::kExitError;
  }
}
