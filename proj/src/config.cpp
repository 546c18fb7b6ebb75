#include "hcert/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "hcert/errors.hpp"
#include "hcert/expression.hpp"

namespace hcert {

SolverOptions SolverConfig::options() const {
  SolverOptions o;
  o.nodes = nodes;
  o.damping = damping;
  o.tol = tol;
  o.max_iter = max_iter;
  o.acceleration = acceleration;
  o.anderson_depth = anderson_depth;
  return o;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Where a value came from, for error messages.
struct Site {
  std::string origin;
  int line = 0;
  std::string section;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const {
    std::string where = origin + ":" + std::to_string(line);
    std::string field = key.empty() ? "[" + section + "]" : "[" + section + "] " + key;
    throw Error(ErrorCode::ConfigError, where, field + ": " + msg);
  }
};

double number(const std::string& text, const Site& site) {
  if (text.empty()) site.fail("expected a number");
  try {
    double v = Expression::compile(text, {})({});
    if (std::isnan(v)) site.fail("value is not a number");
    return v;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    site.fail(std::string("bad number '") + text + "': " + e.what());
  }
}

int integer(const std::string& text, const Site& site) {
  double v = number(text, site);
  if (v != std::floor(v) || std::abs(v) > 1e9) site.fail("expected an integer");
  return static_cast<int>(v);
}

std::vector<double> number_list(const std::string& text, const Site& site) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const std::string& item : split(text, ',')) out.push_back(number(item, site));
  return out;
}

bool boolean(const std::string& text, const Site& site) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  site.fail("expected true or false");
}

std::string expression(const std::string& text, const std::vector<std::string>& vars, const Site& site) {
  if (text.empty()) site.fail("empty expression");
  try {
    Expression::compile(text, vars);
  } catch (const Error& e) {
    site.fail(e.what());
  }
  return text;
}

void check_functional(const std::string& text, const Site& site) {
  if (text == "min_window" || text == "max_window") return;
  if (text.rfind("point:", 0) == 0) {
    double tau = number(text.substr(6), site);
    if (!(tau >= 0.0 && tau <= 1.0)) site.fail("point functional outside [0,1]");
    return;
  }
  if (text.rfind("stieltjes:", 0) == 0 && text.size() > 10) return;
  site.fail("unknown functional '" + text + "'");
}

const std::set<std::string> kSingleSections = {"kernel", "nonlinearity", "limits", "attest", "boundary",
                                               "deviation", "certify", "solver"};

struct Parser {
  std::string origin;
  ProblemConfig cfg;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  std::string section;
  int term = -1;
  int density = -1;
  std::vector<std::pair<std::size_t, Site>> term_sites;     // term index, header site
  std::vector<std::pair<std::string, Site>> stieltjes_refs;  // density id, site

  void header(const std::string& name, const Site& site) {
    section = name;
    seen_keys.clear();
    term = -1;
    density = -1;
    if (kSingleSections.count(name)) {
      if (!seen_sections.insert(name).second) site.fail("duplicate section");
      return;
    }
    std::vector<std::string> parts = split(name, '.');
    if (parts.size() >= 2 && (parts[0] == "lower" || parts[0] == "upper") &&
        (parts[1] == "gamma" || parts[1] == "delta")) {
      TermConfig t;
      t.family = parts[0] == "lower" ? Family::Lower : Family::Upper;
      t.kind = parts[1] == "gamma" ? TermKind::Gamma : TermKind::Delta;
      if (parts.size() > 2) t.label = name.substr(parts[0].size() + parts[1].size() + 2);
      cfg.terms.push_back(t);
      term = static_cast<int>(cfg.terms.size()) - 1;
      term_sites.emplace_back(cfg.terms.size() - 1, site);
      return;
    }
    if (parts.size() >= 2 && parts[0] == "density") {
      std::string id = name.substr(8);
      if (!seen_sections.insert(name).second) site.fail("duplicate section");
      cfg.densities.push_back(DensityConfig{id, {}, {}, {}});
      density = static_cast<int>(cfg.densities.size()) - 1;
      return;
    }
    site.fail("unknown section");
  }

  void entry(const std::string& key, const std::string& value, const Site& site) {
    if (section.empty()) site.fail("key outside any section");
    if (!seen_keys.insert(key).second) site.fail("duplicate key");
    if (term >= 0) return term_entry(key, value, site);
    if (density >= 0) return density_entry(key, value, site);
    if (section == "kernel") return kernel_entry(key, value, site);
    if (section == "nonlinearity") return nonlinearity_entry(key, value, site);
    if (section == "limits") return limits_entry(key, value, site);
    if (section == "attest") return attest_entry(key, value, site);
    if (section == "boundary") return boundary_entry(key, value, site);
    if (section == "deviation") return deviation_entry(key, value, site);
    if (section == "certify") return certify_entry(key, value, site);
    if (section == "solver") return solver_entry(key, value, site);
    site.fail("unknown key");
  }

  void kernel_entry(const std::string& k, const std::string& v, const Site& site) {
    KernelConfig& kc = cfg.kernel;
    if (k == "preset") {
      if (!parse_preset(v)) site.fail("unknown preset '" + v + "'");
      kc.preset = v;
    } else if (k == "expr") {
      kc.expr = expression(v, {"t", "s"}, site);
    } else if (k == "envelope") {
      kc.envelope = expression(v, {"s"}, site);
    } else if (k == "weight") {
      kc.weight = expression(v, {"s"}, site);
    } else if (k == "window") {
      std::vector<double> w = number_list(v, site);
      if (w.size() != 2 || !(0.0 < w[0] && w[0] < w[1] && w[1] < 1.0)) site.fail("window must be a, b with 0 < a < b < 1");
      kc.a = w[0];
      kc.b = w[1];
    } else if (k == "diagonal_kink") {
      kc.diagonal_kink = boolean(v, site);
    } else if (k == "sign") {
      if (v != "nonnegative" && v != "signed") site.fail("sign must be nonnegative or signed");
      kc.is_signed = v == "signed";
    } else if (k == "s_kinks") {
      kc.s_kinks = number_list(v, site);
    } else if (k == "t_kinks") {
      kc.t_kinks = number_list(v, site);
    } else if (k == "weight_singularities") {
      kc.weight_singularities = number_list(v, site);
    } else if (k == "c") {
      kc.c = number(v, site);
    } else if (k == "c1") {
      kc.c1 = number(v, site);
    } else {
      site.fail("unknown key");
    }
  }

  void nonlinearity_entry(const std::string& k, const std::string& v, const Site& site) {
    NonlinearityConfig& n = cfg.nonlinearity;
    if (k == "f") n.f = expression(v, {"t", "u", "v"}, site);
    else if (k == "f1") n.f1 = expression(v, {"t", "u"}, site);
    else if (k == "f2") n.f2 = expression(v, {"t", "u"}, site);
    else if (k == "f2_upper") n.f2_upper = expression(v, {"rho"}, site);
    else if (k == "f1_lower") n.f1_lower = expression(v, {"rho", "c"}, site);
    else if (k == "t_kinks") n.t_kinks = number_list(v, site);
    else site.fail("unknown key");
  }

  void limits_entry(const std::string& k, const std::string& v, const Site& site) {
    LimitsConfig& l = cfg.limits;
    double x = number(v, site);
    if (x < 0.0) site.fail("limits of f/u must be nonnegative");
    if (k == "f2_at_0") l.f2_at_0 = x;
    else if (k == "f1_at_0") l.f1_at_0 = x;
    else if (k == "f2_at_inf") l.f2_at_inf = x;
    else if (k == "f1_at_inf") l.f1_at_inf = x;
    else site.fail("unknown key");
  }

  void attest_entry(const std::string& k, const std::string& v, const Site& site) {
    AttestConfig& a = cfg.attest;
    if (k == "order_preserving") a.order_preserving = boolean(v, site);
    else if (k == "nonexistence_1") a.nonexistence_1 = boolean(v, site);
    else if (k == "nonexistence_2") a.nonexistence_2 = boolean(v, site);
    else site.fail("unknown key");
  }

  void boundary_entry(const std::string& k, const std::string& v, const Site& site) {
    if (k == "functional") {
      check_functional(v, site);
      if (v.rfind("stieltjes:", 0) == 0) stieltjes_refs.emplace_back(v.substr(10), site);
      cfg.boundary.functional = v;
    } else if (k == "map") {
      cfg.boundary.map = expression(v, {"t", "x"}, site);
    } else {
      site.fail("unknown key");
    }
  }

  void deviation_entry(const std::string& k, const std::string& v, const Site& site) {
    if (k == "kind") {
      if (v == "none") cfg.deviation.kind = DeviationKind::None;
      else if (v == "identity") cfg.deviation.kind = DeviationKind::Identity;
      else if (v == "composition") cfg.deviation.kind = DeviationKind::Composition;
      else site.fail("kind must be none, identity or composition");
    } else if (k == "eta") {
      cfg.deviation.eta = expression(v, {"t"}, site);
    } else {
      site.fail("unknown key");
    }
  }

  void certify_entry(const std::string& k, const std::string& v, const Site& site) {
    if (k == "rho") {
      cfg.certify.rho = number_list(v, site);
      for (double r : cfg.certify.rho)
        if (!(r > 0.0) || !std::isfinite(r)) site.fail("radii must be positive and finite");
    } else if (k == "eig") {
      cfg.certify.eig = boolean(v, site);
    } else if (k == "eig_nodes") {
      cfg.certify.eig_nodes = integer(v, site);
      if (cfg.certify.eig_nodes < 33) site.fail("eig_nodes must be at least 33");
    } else {
      site.fail("unknown key");
    }
  }

  void solver_entry(const std::string& k, const std::string& v, const Site& site) {
    SolverConfig& s = cfg.solver;
    if (k == "nodes") {
      s.nodes = integer(v, site);
      if (s.nodes < 4) site.fail("nodes must be at least 4");
    } else if (k == "damping") {
      s.damping = number(v, site);
      if (!(s.damping > 0.0 && s.damping <= 1.0)) site.fail("damping must lie in (0,1]");
    } else if (k == "tol") {
      s.tol = number(v, site);
      if (!(s.tol > 0.0)) site.fail("tol must be positive");
    } else if (k == "max_iter") {
      s.max_iter = integer(v, site);
      if (s.max_iter < 1) site.fail("max_iter must be positive");
    } else if (k == "acceleration") {
      auto a = parse_acceleration(v);
      if (!a) site.fail("acceleration must be none, anderson or newton");
      s.acceleration = *a;
    } else if (k == "anderson_depth") {
      s.anderson_depth = integer(v, site);
      if (s.anderson_depth < 1) site.fail("anderson_depth must be positive");
    } else if (k == "u0") {
      s.u0 = expression(v, {"t"}, site);
    } else {
      site.fail("unknown key");
    }
  }

  void term_entry(const std::string& k, const std::string& v, const Site& site) {
    if (k == "function") {
      cfg.terms[term].function = expression(v, {"t"}, site);
    } else if (k == "kinks") {
      cfg.terms[term].kinks = number_list(v, site);
    } else if (k == "functional") {
      check_functional(v, site);
      if (v.rfind("stieltjes:", 0) == 0) stieltjes_refs.emplace_back(v.substr(10), site);
      cfg.terms[term].functional = v;
    } else if (k == "norm_bound") {
      cfg.terms[term].norm_bound = number(v, site);
    } else {
      site.fail("unknown key");
    }
  }

  void density_entry(const std::string& k, const std::string& v, const Site& site) {
    if (k == "density") {
      cfg.densities[density].density = expression(v, {"s"}, site);
    } else if (k == "breakpoints") {
      cfg.densities[density].breakpoints = number_list(v, site);
    } else if (k == "atoms") {
      for (const std::string& item : split(v, ',')) {
        std::vector<std::string> pair = split(item, ':');
        if (pair.size() != 2) site.fail("atoms must be tau:mass pairs");
        cfg.densities[density].atoms.emplace_back(number(pair[0], site), number(pair[1], site));
      }
    } else {
      site.fail("unknown key");
    }
  }

  void finish() {
    auto need = [&](bool ok, const char* sec, const char* key, const char* msg) {
      if (!ok) Site{origin, 0, sec, key}.fail(msg);
    };
    const KernelConfig& kc = cfg.kernel;
    need(seen_sections.count("kernel"), "kernel", "", "section missing");
    need(!kc.preset.empty() || !kc.expr.empty(), "kernel", "expr", "either preset or expr is required");
    need(kc.preset.empty() || kc.expr.empty(), "kernel", "expr", "preset and expr are exclusive");
    need(kc.a > 0.0 && kc.b < 1.0, "kernel", "window", "window is required");
    need(!cfg.nonlinearity.f.empty(), "nonlinearity", "f", "required");
    need(!cfg.nonlinearity.f1.empty(), "nonlinearity", "f1", "required");
    need(!cfg.nonlinearity.f2.empty(), "nonlinearity", "f2", "required");
    need(cfg.boundary.functional.empty() == cfg.boundary.map.empty(), "boundary", "map",
         "functional and map must be given together");
    need(cfg.deviation.kind != DeviationKind::Composition || !cfg.deviation.eta.empty(), "deviation", "eta",
         "composition requires eta");
    for (const auto& [index, site] : term_sites) {
      const TermConfig& t = cfg.terms[index];
      if (t.function.empty()) Site{site.origin, site.line, site.section, "function"}.fail("required");
      if (t.functional.empty()) Site{site.origin, site.line, site.section, "functional"}.fail("required");
    }
    for (const auto& [id, site] : stieltjes_refs) {
      bool found = false;
      for (const DensityConfig& d : cfg.densities) found = found || d.id == id;
      if (!found) site.fail("no [density." + id + "] section");
    }
  }
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + num(xs[i]);
  return out;
}

const char* deviation_name(DeviationKind k) {
  switch (k) {
    case DeviationKind::None: return "none";
    case DeviationKind::Identity: return "identity";
    case DeviationKind::Composition: return "composition";
  }
  return "none";
}

}  // namespace

ProblemConfig parse_config(std::string_view text, std::string_view origin) {
  Parser p;
  p.origin = std::string(origin);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t cut = raw.find_first_of("#;");
    std::string s = trim(std::string_view(raw).substr(0, cut));
    if (s.empty()) continue;
    Site site{p.origin, line, p.section, ""};
    if (s.front() == '[') {
      if (s.back() != ']') site.fail("unterminated section header");
      std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
      site.section = name;
      p.header(name, site);
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) site.fail("expected key = value");
    site.key = trim(std::string_view(s).substr(0, eq));
    if (site.key.empty()) site.fail("empty key");
    p.entry(site.key, trim(std::string_view(s).substr(eq + 1)), site);
  }
  p.finish();
  return p.cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ConfigError, path, "cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize_config(const ProblemConfig& c) {
  std::ostringstream o;
  auto kv = [&](const char* k, const std::string& v) {
    if (!v.empty()) o << k << " = " << v << "\n";
  };
  auto opt = [&](const char* k, const std::optional<double>& v) {
    if (v) kv(k, num(*v));
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

  const KernelConfig& k = c.kernel;
  o << "[kernel]\n";
  kv("preset", k.preset);
  kv("expr", k.expr);
  kv("envelope", k.envelope);
  kv("weight", k.weight);
  kv("window", num(k.a) + ", " + num(k.b));
  kv("diagonal_kink", flag(k.diagonal_kink));
  kv("sign", k.is_signed ? "signed" : "nonnegative");
  kv("s_kinks", list(k.s_kinks));
  kv("t_kinks", list(k.t_kinks));
  kv("weight_singularities", list(k.weight_singularities));
  opt("c", k.c);
  opt("c1", k.c1);

  o << "\n[nonlinearity]\n";
  kv("f", c.nonlinearity.f);
  kv("f1", c.nonlinearity.f1);
  kv("f2", c.nonlinearity.f2);
  kv("f2_upper", c.nonlinearity.f2_upper);
  kv("f1_lower", c.nonlinearity.f1_lower);
  kv("t_kinks", list(c.nonlinearity.t_kinks));

  o << "\n[limits]\n";
  opt("f2_at_0", c.limits.f2_at_0);
  opt("f1_at_0", c.limits.f1_at_0);
  opt("f2_at_inf", c.limits.f2_at_inf);
  opt("f1_at_inf", c.limits.f1_at_inf);

  o << "\n[attest]\n";
  kv("order_preserving", flag(c.attest.order_preserving));
  kv("nonexistence_1", flag(c.attest.nonexistence_1));
  kv("nonexistence_2", flag(c.attest.nonexistence_2));

  o << "\n[boundary]\n";
  kv("functional", c.boundary.functional);
  kv("map", c.boundary.map);

  o << "\n[deviation]\n";
  kv("kind", deviation_name(c.deviation.kind));
  kv("eta", c.deviation.eta);

  for (const TermConfig& t : c.terms) {
    o << "\n[" << (t.family == Family::Lower ? "lower" : "upper") << "."
      << (t.kind == TermKind::Gamma ? "gamma" : "delta") << (t.label.empty() ? "" : "." + t.label) << "]\n";
    kv("function", t.function);
    kv("kinks", list(t.kinks));
    kv("functional", t.functional);
    opt("norm_bound", t.norm_bound);
  }

  for (const DensityConfig& d : c.densities) {
    o << "\n[density." << d.id << "]\n";
    kv("density", d.density);
    kv("breakpoints", list(d.breakpoints));
    std::string atoms;
    for (std::size_t i = 0; i < d.atoms.size(); ++i)
      atoms += (i ? ", " : "") + num(d.atoms[i].first) + ":" + num(d.atoms[i].second);
    kv("atoms", atoms);
  }

  o << "\n[certify]\n";
  kv("rho", list(c.certify.rho));
  kv("eig", flag(c.certify.eig));
  kv("eig_nodes", std::to_string(c.certify.eig_nodes));

  o << "\n[solver]\n";
  kv("nodes", std::to_string(c.solver.nodes));
  kv("damping", num(c.solver.damping));
  kv("tol", num(c.solver.tol));
  kv("max_iter", std::to_string(c.solver.max_iter));
  kv("acceleration", acceleration_name(c.solver.acceleration));
  kv("anderson_depth", std::to_string(c.solver.anderson_depth));
  kv("u0", c.solver.u0);
  return o.str();
}

namespace {

std::function<double(double)> fn1(const std::string& text, const char* v) {
  auto e = std::make_shared<Expression>(Expression::compile(text, {v}));
  return [e](double x) { return (*e)({x}); };
}

std::function<double(double, double)> fn2(const std::string& text, const char* v1, const char* v2) {
  auto e = std::make_shared<Expression>(Expression::compile(text, {v1, v2}));
  return [e](double x, double y) { return (*e)({x, y}); };
}

FunctionalSpec make_functional(const std::string& text, Family fam, Window w, const ProblemConfig& cfg) {
  FunctionalSpec phi;
  if (text == "min_window") {
    phi = FunctionalSpec::min_window(w, fam);
  } else if (text == "max_window") {
    phi = FunctionalSpec::max_window(w, fam);
  } else if (text.rfind("point:", 0) == 0) {
    phi = FunctionalSpec::point(Expression::compile(text.substr(6), {})({}), fam);
  } else if (text.rfind("stieltjes:", 0) == 0) {
    std::string id = text.substr(10);
    const DensityConfig* d = nullptr;
    for (const DensityConfig& x : cfg.densities)
      if (x.id == id) d = &x;
    if (!d) throw Error(ErrorCode::ConfigError, "build_problem", "unknown density '" + id + "'");
    StieltjesMeasure m;
    m.density_id = id;
    if (!d->density.empty()) m.density = fn1(d->density, "s");
    m.breakpoints = d->breakpoints;
    for (auto [tau, mass] : d->atoms) m.atoms.push_back({tau, mass});
    phi = FunctionalSpec::stieltjes(std::move(m), fam);
  } else {
    throw Error(ErrorCode::ConfigError, "build_problem", "unknown functional '" + text + "'");
  }
  phi.label = text;
  return phi;
}

}  // namespace

ProblemSpec build_problem(const ProblemConfig& cfg) {
  ProblemSpec p;
  const KernelConfig& kc = cfg.kernel;
  Window w{kc.a, kc.b};
  ScalarFn weight = kc.weight.empty() ? ScalarFn{} : fn1(kc.weight, "s");
  if (!kc.preset.empty()) {
    PresetId id = *parse_preset(kc.preset);
    p.kernel = make_preset(id, w, weight).kernel;
    p.preset = id;
    p.kernel.weight_singularities = kc.weight_singularities;
    if (kc.c1 && std::abs(*kc.c1 - p.kernel.c1) > 1e-12)
      throw Error(ErrorCode::ConfigError, "[kernel] c1", "declared c1 disagrees with the preset value");
    if (kc.c) {
      if (!(*kc.c > 0.0 && *kc.c <= p.kernel.c1))
        throw Error(ErrorCode::ConfigError, "[kernel] c", "c must lie in (0, c1]");
      p.kernel.c = *kc.c;
    }
  } else {
    KernelSpec k;
    k.evaluate = fn2(kc.expr, "t", "s");
    if (!kc.envelope.empty()) k.envelope = fn1(kc.envelope, "s");
    k.weight = weight;
    k.window = w;
    k.sign_class = kc.is_signed ? SignClass::Signed : SignClass::Nonnegative;
    k.diagonal_kink = kc.diagonal_kink;
    k.s_kinks = kc.s_kinks;
    k.t_kinks = kc.t_kinks;
    k.weight_singularities = kc.weight_singularities;
    k.c1 = kc.c1.value_or(0.0);
    k.c = kc.c.value_or(0.0);
    k.id = "custom";
    p.kernel = finalize_kernel(std::move(k));
  }

  for (const TermConfig& t : cfg.terms) {
    FamilyTerm term;
    term.kind = t.kind;
    term.function = fn1(t.function, "t");
    term.kinks = t.kinks;
    term.functional = make_functional(t.functional, t.family, w, cfg);
    term.functional.norm_bound = t.norm_bound;
    term.label = t.label.empty() ? (t.kind == TermKind::Gamma ? "gamma" : "delta") : t.label;
    (t.family == Family::Lower ? p.lower : p.upper).push_back(std::move(term));
  }

  NonlinearitySpec& n = p.nonlinearity;
  {
    auto e = std::make_shared<Expression>(Expression::compile(cfg.nonlinearity.f, {"t", "u", "v"}));
    n.f = [e](double t, double u, double v) { return (*e)({t, u, v}); };
  }
  n.f1 = fn2(cfg.nonlinearity.f1, "t", "u");
  n.f2 = fn2(cfg.nonlinearity.f2, "t", "u");
  if (!cfg.nonlinearity.f2_upper.empty()) n.f2_upper = fn1(cfg.nonlinearity.f2_upper, "rho");
  if (!cfg.nonlinearity.f1_lower.empty()) n.f1_lower = fn2(cfg.nonlinearity.f1_lower, "rho", "c");
  n.t_kinks = cfg.nonlinearity.t_kinks;
  n.limits.f2_at_0 = cfg.limits.f2_at_0;
  n.limits.f1_at_0 = cfg.limits.f1_at_0;
  n.limits.f2_at_inf = cfg.limits.f2_at_inf;
  n.limits.f1_at_inf = cfg.limits.f1_at_inf;

  if (!cfg.boundary.functional.empty()) {
    p.boundary.functional = make_functional(cfg.boundary.functional, Family::Upper, w, cfg);
    p.boundary.map = fn2(cfg.boundary.map, "t", "x");
  }
  p.deviation.kind = cfg.deviation.kind;
  if (!cfg.deviation.eta.empty()) p.deviation.eta = fn1(cfg.deviation.eta, "t");
  if (p.deviation.kind == DeviationKind::Composition) check_deviation(p);

  p.attest.order_preserving = cfg.attest.order_preserving;
  p.attest.nonexistence_1 = cfg.attest.nonexistence_1;
  p.attest.nonexistence_2 = cfg.attest.nonexistence_2;
  return p;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hcert
