#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcert/config.hpp"
#include "hcert/eigencriteria.hpp"
#include "hcert/index_conditions.hpp"
#include "hcert/multiplicity.hpp"
#include "hcert/solver.hpp"

namespace hcert {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitCertificate = 0;
inline constexpr int kExitError = 2;
inline constexpr int kExitNone = 3;

// Where the config came from and where side files go.
struct RunContext {
  std::string config_path;
  std::string config_text;
  std::optional<std::vector<double>> rho;  // overrides [certify] rho
  std::string csv_dir;                     // empty: no CSV files
  std::string csv_stem = "solution";
  bool timestamp = true;
};

struct CommandResult {
  Json document;
  int exit_code = kExitCertificate;
  std::vector<std::string> csv_files;
};

// Reported number: value as a %.15g string with its source operation and tolerance.
Json number_json(double value, const std::string& source, double tolerance);
std::string format15(double value);

Json constants_json(const ProblemSpec& problem, const ConstantsTable& constants, int eig_nodes);
Json condition_json(const ConditionResult& r);
Json certificate_json(const Certificate& cert, const std::string& route);
Json eig_json(const EigCriteria& eig);
Json solve_json(const SolveReport& report, double initial_level);

void write_solution_csv(const GridFunction& u, const std::string& path);

struct CertifyOutcome {
  ConstantsTable constants;
  std::vector<ConditionResult> conditions;
  ConditionLedger ledger;
  Certificate index_certificate;
  std::optional<EigCriteria> eig;
  std::optional<Certificate> eig_certificate;
  std::optional<std::string> eig_error;
  Certificate certificate;
  std::string route;  // "index", "eigen" or "none"
};

CertifyOutcome certify_problem(const ProblemSpec& problem, const ProblemConfig& config,
                               const std::vector<double>& rhos);

CommandResult run_constants(const ProblemConfig& config, const RunContext& ctx);
CommandResult run_check_index(const ProblemConfig& config, const RunContext& ctx);
CommandResult run_certify(const ProblemConfig& config, const RunContext& ctx);
CommandResult run_solve(const ProblemConfig& config, const RunContext& ctx);
// Constants, conditions, certificate, eigen criteria and solver runs in one document.
CommandResult run_report(const ProblemConfig& config, const RunContext& ctx);

}  // namespace hcert
