#include "hcert/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "hcert/errors.hpp"
#include "hcert/expression.hpp"

namespace hcert {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kExtremumTol = 1e-9;

Json vector_json(const Eigen::VectorXd& v, const std::string& source, double tol) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_json(v(i), source, tol));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m, const std::string& source, double tol) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number_json(m(i, j), source, tol));
    out.push_back(std::move(row));
  }
  return out;
}

Json provenance_json(const Provenance& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = number_json(v.value, v.source, v.tolerance);
  return out;
}

Json resolvent_json(const std::optional<ResolventVector>& r) {
  if (!r) return nullptr;
  Json out;
  out["values"] = vector_json(r->values, r->source.empty() ? "cone_algebra.resolve_positive" : r->source, 1e-12);
  out["neumann_terms"] = r->neumann_terms;
  out["neumann_gap"] = number_json(r->neumann_gap, "cone_algebra.resolve_positive", 0.0);
  return out;
}

std::string timestamp_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json header(const RunContext& ctx, const char* command) {
  Json doc;
  doc["tool"] = {{"name", "hcert"}, {"version", kToolVersion}};
  doc["command"] = command;
  doc["config"] = {{"path", ctx.config_path}, {"hash", fnv1a_hex(ctx.config_text)}};
  doc["generated_at"] = ctx.timestamp ? timestamp_utc() : "";
  return doc;
}

int certificate_exit(const Certificate& c) {
  return c.pattern == Pattern::NONE ? kExitNone : kExitCertificate;
}

std::vector<double> rho_list(const ProblemConfig& cfg, const RunContext& ctx) {
  std::vector<double> r = ctx.rho ? *ctx.rho : cfg.certify.rho;
  for (double x : r)
    if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "rho", "radii must be positive");
  return r;
}

}  // namespace

std::string format15(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

Json number_json(double value, const std::string& source, double tolerance) {
  Json out;
  out["value"] = format15(value);
  out["source"] = source;
  out["tolerance"] = format15(tolerance);
  return out;
}

Json constants_json(const ProblemSpec& problem, const ConstantsTable& t, int eig_nodes) {
  const bool preset = problem.preset.has_value();
  const std::string kt = preset ? "kernel_toolkit.make_preset" : "kernel_toolkit.compute_c1";
  Json out;
  out["c1"] = number_json(t.c1, kt, preset ? 1e-15 : 1e-9);
  out["c"] = number_json(t.c, "kernel_toolkit", preset ? 1e-15 : 1e-9);
  out["m"] = number_json(t.m, "kernel_toolkit.m_constant", kQuadTol);
  out["M"] = number_json(t.M, "kernel_toolkit.M_constant", kQuadTol);
  out["norm_L2_bound"] = number_json(t.sigma_sup, "kernel_toolkit.sigma", kQuadTol);
  Json psi = Json::array();
  for (Family fam : {Family::Lower, Family::Upper})
    for (const PsiFunction& p : t.psi.of(fam))
      psi.push_back({{"family", family_name(fam)},
                     {"label", p.label},
                     {"sup_norm", number_json(p.sup_norm, "psi.build_psi", kExtremumTol)},
                     {"window_min", number_json(p.window_min, "psi.build_psi", kExtremumTol)}});
  out["psi"] = std::move(psi);
  out["M1"] = matrix_json(t.M1.entries, "cone_algebra.build_cross_matrix", kQuadTol);
  out["M2"] = matrix_json(t.M2.entries, "cone_algebra.build_cross_matrix", kQuadTol);
  out["r_M1"] = number_json(t.c8.r1, "cone_algebra.spectral_radius", 1e-12);
  out["r_M2"] = number_json(t.c8.r2, "cone_algebra.spectral_radius", 1e-12);
  out["C8"] = {{"holds", t.c8.holds},
               {"margin1", number_json(t.c8.margin1, "cone_algebra.check_C8", 1e-12)},
               {"margin2", number_json(t.c8.margin2, "cone_algebra.check_C8", 1e-12)}};
  out["int_K_phi_upper"] = vector_json(t.kphi_upper, "psi.K_phi_integral", kQuadTol);
  out["int_K_phi_lower"] = vector_json(t.kphi_lower, "psi.K_phi_integral", kQuadTol);
  out["resolvent_upper"] = resolvent_json(t.x_upper);
  out["resolvent_lower"] = resolvent_json(t.x_lower);
  out["I1_bracket"] = {{"value", number_json(t.i1_bracket.value, "index_conditions.compute_constants", kExtremumTol)},
                       {"arg", number_json(t.i1_bracket.arg, "quadrature.extremize", kExtremumTol)}};
  out["I0_bracket"] = {{"value", number_json(t.i0_bracket.value, "index_conditions.compute_constants", kExtremumTol)},
                       {"arg", number_json(t.i0_bracket.arg, "quadrature.extremize", kExtremumTol)}};
  out["I1_strong_bracket"] = number_json(t.i1_strong_bracket, "index_conditions.compute_constants", kExtremumTol);
  out["I0_strong_bracket"] = number_json(t.i0_strong_bracket, "index_conditions.compute_constants", kExtremumTol);
  out["norm_H2_bound"] =
      t.h2_bound ? number_json(*t.h2_bound, "psi.H2_lip_bound", kExtremumTol) : Json(nullptr);
  if (eig_nodes > 0) {
    SpectralEstimate est = spectral_radius_op(discretize(problem.kernel, OperatorRole::L1, eig_nodes));
    double tol = std::max(est.richardson_error, 1e-12);
    out["r_L1"] = number_json(est.radius, "eigencriteria.spectral_radius_op", tol);
    out["r_L1_fine"] = number_json(est.radius_fine, "eigencriteria.spectral_radius_op", tol);
    out["mu_L1"] = number_json(est.mu, "eigencriteria.spectral_radius_op", tol / (est.radius * est.radius));
  }
  return out;
}

Json condition_json(const ConditionResult& r) {
  Json out;
  out["kind"] = condition_name(r.kind);
  out["rho"] = r.rho ? Json(format15(*r.rho)) : Json(nullptr);
  out["lhs"] = number_json(r.lhs, "index_conditions", 1e-9);
  out["threshold"] = number_json(r.threshold, "index_conditions", 1e-9);
  out["comparison"] = r.comparison == Comparison::Less ? "<" : ">";
  out["holds"] = r.holds;
  out["margin"] = number_json(r.margin, "index_conditions", 1e-9);
  out["advisory"] = r.advisory;
  out["constants_used"] = provenance_json(r.constants_used);
  out["notes"] = r.notes;
  return out;
}

Json certificate_json(const Certificate& c, const std::string& route) {
  Json out;
  out["pattern"] = pattern_name(c.pattern);
  out["solution_count"] = c.solution_count;
  out["route"] = route;
  out["advisory"] = c.advisory;
  Json rhos = Json::array();
  for (double r : c.rhos) rhos.push_back(format15(r));
  out["rhos"] = std::move(rhos);
  Json shells = Json::array();
  for (const Shell& s : c.shells) {
    Json js;
    js["description"] = s.description;
    auto bound = [](const std::optional<ShellBound>& b) -> Json {
      if (!b) return nullptr;
      return {{"kind", index_kind_name(b->kind)}, {"rho", format15(b->rho)}};
    };
    js["inner"] = bound(s.inner);
    js["outer"] = bound(s.outer);
    shells.push_back(std::move(js));
  }
  out["shells"] = std::move(shells);
  Json matches = Json::array();
  for (const PatternMatch& m : c.all_matches) {
    Json jm;
    jm["pattern"] = pattern_name(m.pattern);
    Json rs = Json::array(), ks = Json::array();
    for (std::size_t i = 0; i < m.rhos.size(); ++i) {
      rs.push_back(format15(m.rhos[i]));
      ks.push_back(index_kind_name(m.kinds[i]));
    }
    jm["rhos"] = std::move(rs);
    jm["kinds"] = std::move(ks);
    matches.push_back(std::move(jm));
  }
  out["all_matches"] = std::move(matches);
  out["provenance"] = provenance_json(c.provenance);
  out["notes"] = c.notes;
  return out;
}

Json eig_json(const EigCriteria& e) {
  Json out;
  Json limits;
  auto lim = [](const LimitValue& v) {
    Json j = number_json(v.value, std::string("eigencriteria.estimate_limits:") + bound_source_name(v.source),
                         v.source == BoundSource::Analytic ? 0.0 : 1e-6);
    Json samples = Json::array();
    for (double s : v.samples) samples.push_back(format15(s));
    j["samples"] = std::move(samples);
    return j;
  };
  limits["f2_at_0"] = lim(e.limits.f2_at_0);
  limits["f1_at_0"] = lim(e.limits.f1_at_0);
  limits["f2_at_inf"] = lim(e.limits.f2_at_inf);
  limits["f1_at_inf"] = lim(e.limits.f1_at_inf);
  out["limits"] = std::move(limits);
  double tol = std::max(e.L1.richardson_error, 1e-12);
  out["L1"] = {{"radius", number_json(e.L1.radius, "eigencriteria.spectral_radius_op", tol)},
               {"radius_fine", number_json(e.L1.radius_fine, "eigencriteria.spectral_radius_op", tol)},
               {"mu", number_json(e.L1.mu, "eigencriteria.spectral_radius_op", tol)},
               {"converged", e.L1.converged},
               {"iterations", e.L1.iterations}};
  out["norm_L2_bound"] = number_json(e.L2_bound, "kernel_toolkit.sigma", kQuadTol);
  out["norm_H2_bound"] = number_json(e.H2_bound, "psi.H2_lip_bound", kExtremumTol);
  out["M"] = number_json(e.M, "kernel_toolkit.M_constant", kQuadTol);
  Json crit = Json::array();
  for (const ConditionResult* r :
       {&e.criterion1, &e.criterion2, &e.criterion3, &e.criterion2_strong, &e.criterion3_strong})
    crit.push_back(condition_json(*r));
  out["criteria"] = std::move(crit);
  out["exact_criterion1_implemented"] = e.exact_criterion1_implemented;
  return out;
}

Json solve_json(const SolveReport& r, double initial_level) {
  Json out;
  out["initial_level"] = format15(initial_level);
  out["method"] = acceleration_name(r.method);
  out["status"] = solve_status_name(r.status);
  out["converged"] = r.converged;
  out["iterations"] = r.iterations;
  out["residual"] = number_json(r.residual, "hammerstein_solver.picard_solve", 0.0);
  out["sup_norm"] = number_json(r.sup_norm, "grid_function.sup_norm", 1e-12);
  out["window_min"] = number_json(r.window_min, "grid_function.min_on", 1e-12);
  out["cone_ok"] = r.cone_ok;
  out["trivial"] = r.trivial;
  out["shell_index"] = r.shell_index ? Json(*r.shell_index) : Json(nullptr);
  out["shell_sup_norm_range"] =
      r.shell ? Json::array({format15(r.shell->first), format15(r.shell->second)}) : Json(nullptr);
  out["notes"] = r.notes;
  Json nodes = Json::array(), values = Json::array();
  for (std::size_t i = 0; i < r.solution.size(); ++i) {
    nodes.push_back(format15(r.solution.nodes()[i]));
    values.push_back(format15(r.solution.values()[i]));
  }
  out["solution"] = {{"interpolation", "piecewise_cubic"}, {"nodes", std::move(nodes)}, {"values", std::move(values)}};
  return out;
}

void write_solution_csv(const GridFunction& u, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "write_solution_csv", "cannot write " + path);
  f << "t,u\n";
  for (std::size_t i = 0; i < u.size(); ++i) f << format15(u.nodes()[i]) << "," << format15(u.values()[i]) << "\n";
}

CertifyOutcome certify_problem(const ProblemSpec& problem, const ProblemConfig& config,
                               const std::vector<double>& rhos) {
  CertifyOutcome out;
  out.constants = compute_constants(problem);
  IndexConditions ic(problem, out.constants);
  out.ledger.c = problem.c();
  for (double rho : rhos) {
    ConditionResult i1 = ic.check_I1(rho);
    ConditionResult i1s = ic.check_I1_strong(rho);
    ConditionResult i0 = ic.check_I0(rho);
    ConditionResult i0s = ic.check_I0_strong(rho);
    if (i1.holds) out.ledger.add(rho, IndexKind::I1, i1);
    if (i0.holds) out.ledger.add(rho, IndexKind::I0, i0);
    for (ConditionResult* r : {&i1, &i1s, &i0, &i0s}) out.conditions.push_back(std::move(*r));
  }
  auto [ne1, ne2] = ic.check_nonexistence();
  consistency_check(ne1, out.conditions);
  out.conditions.push_back(ne1);
  out.conditions.push_back(ne2);
  out.index_certificate = match_patterns(out.ledger);
  out.certificate = out.index_certificate;
  out.route = out.certificate.pattern == Pattern::NONE ? "none" : "index";
  if (config.certify.eig) {
    try {
      out.eig = check_eig_criteria(problem, out.constants, config.certify.eig_nodes);
      out.eig_certificate = certify_eig(problem, *out.eig);
      if (out.eig_certificate->pattern != Pattern::NONE &&
          (out.route == "none" || out.eig_certificate->solution_count > out.certificate.solution_count)) {
        out.certificate = *out.eig_certificate;
        out.route = "eigen";
      }
    } catch (const Error& e) {
      out.eig_error = e.what();
    }
  }
  return out;
}

namespace {

void add_certify_blocks(Json& doc, const CertifyOutcome& o) {
  Json conds = Json::array();
  for (const ConditionResult& r : o.conditions) conds.push_back(condition_json(r));
  doc["conditions"] = std::move(conds);
  if (o.eig) doc["eigencriteria"] = eig_json(*o.eig);
  else if (o.eig_error) doc["eigencriteria"] = {{"error", *o.eig_error}};
  else doc["eigencriteria"] = nullptr;
  doc["certificate"] = certificate_json(o.certificate, o.route);
  Json cands;
  cands["index"] = certificate_json(o.index_certificate, "index");
  cands["eigen"] = o.eig_certificate ? certificate_json(*o.eig_certificate, "eigen") : Json(nullptr);
  doc["candidates"] = std::move(cands);
}

Json solve_runs(const ProblemSpec& problem, const ProblemConfig& cfg, const Certificate& cert,
                const RunContext& ctx, std::vector<std::string>& csv_files) {
  struct Init {
    double level;
    GridFunction u0;
  };
  std::vector<Init> inits;
  const int n = cfg.solver.nodes;
  std::vector<double> nodes = GridFunction::uniform_nodes(n);
  if (!cfg.solver.u0.empty()) {
    Expression e = Expression::compile(cfg.solver.u0, {"t"});
    GridFunction u0 = GridFunction::sample(nodes, [&](double t) { return e({t}); });
    inits.push_back({u0.sup_norm(), u0});
  } else {
    for (const Shell& s : cert.shells)
      if (s.inner || s.outer) {
        double level = default_initial_level(s, problem.c());
        inits.push_back({level, GridFunction::constant(n, level)});
      }
    if (inits.empty()) inits.push_back({1.0, GridFunction::constant(n, 1.0)});
  }
  Json runs = Json::array();
  for (std::size_t k = 0; k < inits.size(); ++k) {
    SolveReport r = picard_solve(problem, inits[k].u0, cfg.solver.options());
    r = shell_check(std::move(r), cert, problem.c());
    Json jr = solve_json(r, inits[k].level);
    if (!ctx.csv_dir.empty()) {
      std::filesystem::path p =
          std::filesystem::path(ctx.csv_dir) / (ctx.csv_stem + "_" + std::to_string(k) + ".csv");
      write_solution_csv(r.solution, p.string());
      csv_files.push_back(p.string());
      jr["csv"] = p.filename().string();
    }
    runs.push_back(std::move(jr));
  }
  return runs;
}

}  // namespace

CommandResult run_constants(const ProblemConfig& cfg, const RunContext& ctx) {
  ProblemSpec problem = build_problem(cfg);
  CommandResult res;
  res.document = header(ctx, "constants");
  res.document["constants"] = constants_json(problem, compute_constants(problem), cfg.certify.eig_nodes);
  return res;
}

CommandResult run_check_index(const ProblemConfig& cfg, const RunContext& ctx) {
  ProblemSpec problem = build_problem(cfg);
  IndexConditions ic(problem);
  CommandResult res;
  res.document = header(ctx, "check-index");
  Json conds = Json::array();
  for (double rho : rho_list(cfg, ctx))
    for (ConditionResult r : {ic.check_I1(rho), ic.check_I1_strong(rho), ic.check_I0(rho), ic.check_I0_strong(rho)})
      conds.push_back(condition_json(r));
  res.document["conditions"] = std::move(conds);
  return res;
}

CommandResult run_certify(const ProblemConfig& cfg, const RunContext& ctx) {
  ProblemSpec problem = build_problem(cfg);
  CertifyOutcome o = certify_problem(problem, cfg, rho_list(cfg, ctx));
  CommandResult res;
  res.document = header(ctx, "certify");
  res.document["constants"] = constants_json(problem, o.constants, 0);
  add_certify_blocks(res.document, o);
  res.exit_code = certificate_exit(o.certificate);
  return res;
}

CommandResult run_solve(const ProblemConfig& cfg, const RunContext& ctx) {
  ProblemSpec problem = build_problem(cfg);
  CertifyOutcome o = certify_problem(problem, cfg, rho_list(cfg, ctx));
  CommandResult res;
  res.document = header(ctx, "solve");
  res.document["certificate"] = certificate_json(o.certificate, o.route);
  res.document["solver"] = solve_runs(problem, cfg, o.certificate, ctx, res.csv_files);
  res.exit_code = certificate_exit(o.certificate);
  return res;
}

CommandResult run_report(const ProblemConfig& cfg, const RunContext& ctx) {
  ProblemSpec problem = build_problem(cfg);
  CertifyOutcome o = certify_problem(problem, cfg, rho_list(cfg, ctx));
  CommandResult res;
  res.document = header(ctx, "report");
  res.document["constants"] = constants_json(problem, o.constants, cfg.certify.eig ? cfg.certify.eig_nodes : 0);
  add_certify_blocks(res.document, o);
  res.document["solver"] = solve_runs(problem, cfg, o.certificate, ctx, res.csv_files);
  res.exit_code = certificate_exit(o.certificate);
  return res;
}

}  // namespace hcert
