#include "radeig_cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "radeig/serialize.hpp"
#include "radeig/solver.hpp"

namespace radeig::cli {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(bool x) { return x ? "true" : "false"; }
std::string fmt(int x) { return std::to_string(x); }

double parse_number(std::string_view s, const std::string& spec) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
    throw ConfigError("profile '" + spec + "': '" + std::string(s) + "' is not a finite number");
  return x;
}

std::string csv_text(const GridFunction& u) {
  std::ostringstream os;
  write_csv(os, u);
  return os.str();
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

IterationOptions iteration_options(const RunConfig& c) {
  IterationOptions it;
  it.tol = c.solver.tol;
  it.max_iter = c.solver.max_iter;
  it.u_max = c.solver.u_max;
  it.inner.max_steps = c.solver.max_steps;
  it.inner.u_max = c.solver.u_max;
  return it;
}

EigenOptions eigen_options(const RunConfig& c) {
  EigenOptions e;
  e.bracket_width = c.solver.bracket_width;
  e.eig_residual_tol = c.solver.eig_residual_tol;
  e.iteration = iteration_options(c);
  return e;
}

CoefficientField build_coefficients(const RunConfig& c) {
  return {build_profile(c.b, c), build_profile(c.c, c), build_profile(c.g, c)};
}

Json error_json(const RunConfig& c, const std::string& message) {
  Json j;
  j["config"] = to_json(c);
  j["status"] = "error";
  j["message"] = message;
  return j;
}

// ---- solve ----

Outcome run_solve(const RunConfig& c) {
  const EllipticOperator op = build_operator(c);
  const RadialGrid grid = build_grid(c);
  const CoefficientField coeff = build_coefficients(c);

  std::string method = c.solver.method;
  if (method == "auto") {
    bool coercive = true;
    for (double r : grid.nodes())
      if (!(coeff.c(r) + c.lambda < 0.0)) coercive = false;
    method = coercive ? "neumann" : "general";
  }

  Outcome out;
  Json j;
  j["config"] = to_json(c);
  j["method"] = method;
  GridFunction solution(grid);
  bool converged = false;
  double residual_sup = 0.0;
  int iterations = 0;
  try {
    if (method == "neumann") {
      SolveOptions so;
      so.tol = c.solver.tol;
      so.max_steps = c.solver.max_steps;
      so.u_max = c.solver.u_max;
      const SolveReport rep = solve_neumann(op, coeff, c.lambda, coeff.g, grid, so);
      j["report"] = to_json(rep);
      solution = rep.solution;
      converged = rep.converged;
      residual_sup = rep.residual_sup;
      iterations = rep.iterations;
    } else if (method == "monotone") {
      const IterationReport rep =
          monotone_iteration(op, coeff, c.lambda, coeff.g, grid, iteration_options(c));
      j["report"] = to_json(rep);
      solution = rep.final_iterate;
      converged = rep.verdict == IterationVerdict::converged;
      residual_sup = residual(op, coeff, c.lambda, coeff.g, solution).sup_norm();
      iterations = rep.steps();
    } else {
      GeneralSolveOptions go;
      go.iteration = iteration_options(c);
      go.eigen = eigen_options(c);
      const GeneralSolveReport rep = solve_general(op, coeff, c.lambda, coeff.g, grid, go);
      j["report"] = to_json(rep);
      solution = rep.result.solution;
      converged = rep.result.converged;
      residual_sup = rep.result.residual_sup;
      iterations = rep.result.iterations;
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::runtime_error& e) {
    out.status = kExitFailed;
    out.files.push_back({"report.json", json_text(error_json(c, e.what()))});
    out.row = {{"method", method}, {"status", std::string("error: ") + e.what()}};
    return out;
  }
  j["status"] = converged ? "converged" : "not_converged";
  out.status = converged ? kExitOk : kExitFailed;
  out.files.push_back({"solution.csv", csv_text(solution)});
  out.files.push_back({"report.json", json_text(j)});
  out.row = {{"method", method},
             {"converged", fmt(converged)},
             {"residual_sup", fmt(residual_sup)},
             {"sup_norm", fmt(solution.sup_norm())},
             {"iterations", fmt(iterations)},
             {"status", converged ? "ok" : "not_converged"}};
  return out;
}

// ---- eigen ----

Outcome run_eigen(const RunConfig& c) {
  const EllipticOperator op = build_operator(c);
  const RadialGrid grid = build_grid(c);
  const CoefficientField coeff = build_coefficients(c);
  const EigenOptions opts = eigen_options(c);

  std::vector<EigenSign> signs;
  if (c.eigen_sign != "negative") signs.push_back(EigenSign::positive);
  if (c.eigen_sign != "positive") signs.push_back(EigenSign::negative);
  const bool prefix = signs.size() > 1;

  Outcome out;
  Json j;
  j["config"] = to_json(c);
  j["status"] = "ok";
  for (EigenSign s : signs) {
    const std::string name = to_string(s);
    const std::string p = prefix ? name + "_" : "";
    try {
      const EigenEstimate est =
          s == EigenSign::positive ? lambda_up(op, coeff, grid, opts) : lambda_down(op, coeff, grid, opts);
      j[name] = to_json(est);
      out.files.push_back({s == EigenSign::positive ? "eigenfunction.csv" : "eigenfunction_negative.csv",
                           csv_text(est.eigenfunction)});
      out.row.emplace_back(p + "lambda_lo", fmt(est.lambda_lo));
      out.row.emplace_back(p + "lambda_hi", fmt(est.lambda_hi));
      out.row.emplace_back(p + "residual_sup", fmt(est.residual_sup));
      out.row.emplace_back(p + "lipschitz", fmt(lipschitz_quotient(est.eigenfunction)));
      out.row.emplace_back(p + "probes", fmt(est.probes));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::runtime_error& e) {
      out.status = kExitFailed;
      j["status"] = "error";
      j[name] = {{"sign", name}, {"error", e.what()}};
      out.row.emplace_back(p + "error", e.what());
    }
  }
  out.row.emplace_back("status", out.status == kExitOk ? "ok" : "error");
  out.files.insert(out.files.begin(), {"eigen.json", json_text(j)});
  return out;
}

// ---- certify ----

struct Ellipticity {
  double a;
  double A;
  double alpha;
};

Ellipticity certify_constants(const RunConfig& c) {
  const EllipticOperator op = build_operator(c);
  const auto [lo, hi] = op.ellipticity_constants();
  return {lo, hi, op.alpha()};
}

double resolved_beta2(const RunConfig& c, const Ellipticity& e, double ub) {
  if (c.certify.beta2) return *c.certify.beta2;
  if (!(c.certify.beta2_fraction > 0.0))
    throw ConfigError("certify: beta2_fraction must be > 0");
  (void)e;
  return c.certify.beta2_fraction * ub;
}

Outcome run_certify(const RunConfig& c) {
  const RadialGrid grid = build_grid(c);
  const Ellipticity e = certify_constants(c);
  const CertifySpec& cs = c.certify;
  const double ub =
      beta2_upper_bound(c.grid.N, e.a, e.A, e.alpha, c.grid.R, cs.rho, cs.k, cs.beta1);
  const double beta2 = resolved_beta2(c, e, ub);

  Outcome out;
  Json j;
  j["config"] = to_json(c);
  j["beta2"] = beta2;
  j["beta2_upper_bound"] = ub;
  j["limiting_D"] = limiting_D(c.grid.N, e.a, e.A, e.alpha, c.grid.R, cs.rho, cs.k, cs.beta1);

  Certificate cert;
  std::optional<RadialProfile> band;
  try {
    const SupersolutionParams params = build_params(c.grid.N, e.a, e.A, e.alpha, c.grid.R,
                                                    cs.rho, cs.k, cs.beta1, beta2);
    const PiecewiseRadialFn v = build_supersolution(params);
    band = default_c_band(params);
    cert = verify(params, v, *band, grid);
    if (cert.accept) out.files.push_back({"supersolution.csv", csv_text(GridFunction::sample(grid, v))});
  } catch (const InfeasibleParams& ex) {
    SupersolutionParams p;
    p.dim = c.grid.N;
    p.a = e.a;
    p.A = e.A;
    p.alpha = e.alpha;
    p.R = c.grid.R;
    p.rho = cs.rho;
    p.k = cs.k;
    p.beta1 = cs.beta1;
    p.beta2 = beta2;
    cert = rejected_certificate(p, ex.what());
  }
  j["certificate"] = to_json(cert);
  out.status = cert.accept ? kExitOk : kExitFailed;
  out.row = {{"verdict", cert.accept ? "accept" : "reject"},
             {"beta2", fmt(beta2)},
             {"beta2_upper_bound", fmt(ub)},
             {"m1", fmt(cert.m1)},
             {"m2", fmt(cert.m2)},
             {"m3", fmt(cert.m3)},
             {"grid_margin", fmt(cert.grid_margin)},
             {"integral_c", fmt(cert.integral_c)},
             {"lambda_lower_bound", fmt(cert.lambda_lower_bound())}};

  if (cs.lambda_up && cert.accept) {
    const EllipticOperator op = build_operator(c);
    try {
      const EigenEstimate est =
          lambda_up(op, CoefficientField::zero_order(*band), grid, eigen_options(c));
      j["lambda_up"] = to_json(est);
      out.row.emplace_back("lambda_lo", fmt(est.lambda_lo));
      out.row.emplace_back("lambda_hi", fmt(est.lambda_hi));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::runtime_error& ex) {
      out.status = kExitFailed;
      j["lambda_up"] = {{"error", ex.what()}};
      out.row.emplace_back("lambda_error", ex.what());
    }
  }
  out.row.emplace_back("status", out.status == kExitOk ? "ok" : cert.accept ? "error" : "reject");
  out.files.insert(out.files.begin(), {"certificate.json", json_text(j)});
  return out;
}

// ---- check-operator ----

Outcome run_check(const RunConfig& c) {
  const EllipticOperator op = build_operator(c);
  if (c.grid.N < 1) throw ConfigError("grid: N must be >= 1");
  const PropertyReport h = check_homogeneity(op, c.grid.N, c.samples, c.seed);
  const PropertyReport e = check_ellipticity(op, c.grid.N, c.samples, c.seed);
  Outcome out;
  const bool ok = h.passed() && e.passed();
  Json j;
  j["config"] = to_json(c);
  j["status"] = ok ? "passed" : "failed";
  j["reports"] = {to_json(h), to_json(e)};
  out.status = ok ? kExitOk : kExitFailed;
  out.files.push_back({"properties.json", json_text(j)});
  out.row = {{"homogeneity_failures", fmt(static_cast<int>(h.failures.size()))},
             {"homogeneity_max_rel_error", fmt(h.max_rel_error)},
             {"ellipticity_failures", fmt(static_cast<int>(e.failures.size()))},
             {"ellipticity_max_rel_error", fmt(e.max_rel_error)},
             {"status", ok ? "ok" : "failed"}};
  return out;
}

// ---- sweep ----

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

std::string csv_escape(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch == '\n' ? ' ' : ch;
  }
  return q + "\"";
}

Json::json_pointer pointer_for(const std::string& dotted) {
  std::string p;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    std::string part = dotted.substr(start, dot - start);
    if (part.empty()) throw ConfigError("sweep.vary: malformed key '" + dotted + "'");
    p += "/" + part;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return Json::json_pointer(p);
}

Outcome run_sweep(const RunConfig& c) {
  const auto& vary = c.sweep.vary;
  std::size_t total = 1;
  for (const auto& [k, v] : vary) total *= v.size();

  Json base = to_json(c);
  base["command"] = to_string(c.sweep.base);
  base["sweep"]["vary"] = Json::object();

  // Tuple t: first key varies slowest.
  std::vector<RunConfig> configs;
  std::vector<std::vector<std::string>> labels;
  configs.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    Json j = base;
    std::vector<std::string> label;
    std::size_t rest = t;
    std::size_t stride = total;
    for (const auto& [key, values] : vary) {
      stride /= values.size();
      const Json& value = values[rest / stride];
      rest %= stride;
      j[pointer_for(key)] = value;
      label.push_back(cell(value));
    }
    try {
      RunConfig rc = parse_config(j, std::nullopt, c.base_dir);
      (void)build_operator(rc);
      (void)build_grid(rc);
      if (rc.command != Command::certify && rc.command != Command::check_operator)
        (void)build_coefficients(rc);
      configs.push_back(std::move(rc));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sweep tuple " + std::to_string(t) + ": " + e.what());
    }
    labels.push_back(std::move(label));
  }

  int workers = c.sweep.workers;
  if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), total));

  std::vector<Outcome> results(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      try {
        results[t] = execute(configs[t]);
      } catch (const std::exception& e) {
        results[t].status = kExitFailed;
        results[t].row = {{"status", std::string("invalid: ") + e.what()}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  // Columns: varied keys, then the union of result columns in first-seen order
  // with status last.
  std::vector<std::string> columns;
  for (const auto& r : results)
    for (const auto& [k, v] : r.row)
      if (k != "status" && std::find(columns.begin(), columns.end(), k) == columns.end())
        columns.push_back(k);
  columns.push_back("status");

  std::ostringstream csv;
  {
    bool first = true;
    for (const auto& [k, v] : vary) {
      csv << (first ? "" : ",") << csv_escape(k);
      first = false;
    }
    for (const auto& col : columns) csv << "," << csv_escape(col);
    csv << "\n";
  }
  Outcome out;
  int failed = 0;
  Json rows = Json::array();
  for (std::size_t t = 0; t < total; ++t) {
    const Outcome& r = results[t];
    if (r.status != kExitOk) ++failed;
    for (std::size_t i = 0; i < labels[t].size(); ++i) csv << (i ? "," : "") << csv_escape(labels[t][i]);
    Json jr = Json::object();
    for (const auto& col : columns) {
      std::string value;
      for (const auto& [k, v] : r.row)
        if (k == col) value = v;
      csv << "," << csv_escape(value);
      jr[col] = value;
    }
    csv << "\n";
    rows.push_back(std::move(jr));
  }
  Json j;
  j["config"] = to_json(c);
  j["tuples"] = total;
  j["workers"] = workers;
  j["failed"] = failed;
  j["rows"] = std::move(rows);
  out.status = failed ? kExitFailed : kExitOk;
  out.files.push_back({"sweep.csv", csv.str()});
  out.files.push_back({"sweep.json", json_text(j)});
  return out;
}

}  // namespace

EllipticOperator build_operator(const RunConfig& c) {
  const OperatorSpec& s = c.op;
  EllipticOperator op = [&] {
    if (s.kind == "pucci_minus") return EllipticOperator::pucci(PucciSign::minus, s.a, s.A, s.alpha);
    if (s.kind == "pucci_plus") return EllipticOperator::pucci(PucciSign::plus, s.a, s.A, s.alpha);
    if (s.kind == "laplacian") return EllipticOperator::laplacian();
    if (s.kind == "p_laplacian") return EllipticOperator::p_laplacian(s.p);
    if (s.kind == "anisotropic")
      return EllipticOperator::anisotropic(s.a, s.A, s.q, s.c0, build_profile(s.b1, c),
                                           build_profile(s.b2, c), c.grid.R);
    throw ConfigError("operator: unknown kind '" + s.kind + "'");
  }();
  if (s.gradient_floor) op = op.with_gradient_floor(*s.gradient_floor);
  return op;
}

RadialProfile build_profile(const std::string& spec, const RunConfig& c) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "const") return RadialProfile::constant(parse_number(arg, spec));
  if (kind == "poly") {
    std::vector<double> coeffs;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = arg.find(',', start);
      coeffs.push_back(parse_number(std::string_view(arg).substr(start, comma - start), spec));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return RadialProfile::polynomial(std::move(coeffs));
  }
  if (kind == "band") {
    if (!arg.empty()) throw ConfigError("profile '" + spec + "': band takes its data from the certify section");
    try {
      return default_c_band(certify_params(c));
    } catch (const InfeasibleParams& e) {
      throw ConfigError(std::string("profile 'band': ") + e.what());
    }
  }
  if (kind == "table") {
    if (arg.empty()) throw ConfigError("profile '" + spec + "': missing path");
    std::filesystem::path p(arg);
    if (p.is_relative()) p = c.base_dir / p;
    const Samples s = read_csv_samples(p.string());
    return RadialProfile::tabulated(s.radii, s.values, spec);
  }
  throw ConfigError("profile '" + spec + "': expected const:, poly:, band: or table:");
}

RadialGrid build_grid(const RunConfig& c) { return RadialGrid(c.grid.R, c.grid.N, c.grid.n); }

SupersolutionParams certify_params(const RunConfig& c) {
  const Ellipticity e = certify_constants(c);
  const CertifySpec& cs = c.certify;
  const double ub =
      beta2_upper_bound(c.grid.N, e.a, e.A, e.alpha, c.grid.R, cs.rho, cs.k, cs.beta1);
  return build_params(c.grid.N, e.a, e.A, e.alpha, c.grid.R, cs.rho, cs.k, cs.beta1,
                      resolved_beta2(c, e, ub));
}

Outcome execute(const RunConfig& c) {
  switch (c.command) {
    case Command::solve: return run_solve(c);
    case Command::eigen: return run_eigen(c);
    case Command::certify: return run_certify(c);
    case Command::sweep: return run_sweep(c);
    case Command::check_operator: return run_check(c);
  }
  throw ConfigError("command: unsupported");
}

int run(const RunConfig& c, const std::filesystem::path& out_dir) {
  Outcome out;
  try {
    out = execute(c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  try {
    std::filesystem::create_directories(out_dir);
    for (const OutputFile& f : out.files) {
      std::ofstream os(out_dir / f.name, std::ios::binary | std::ios::trunc);
      os << f.content;
      if (!os) throw std::runtime_error("cannot write '" + (out_dir / f.name).string() + "'");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  for (const auto& [k, v] : out.row)
    if (k == "status" && v != "ok") std::cerr << "status: " << v << "\n";
  return out.status;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Radial eigenvalue bracketing, Neumann solves and supersolution certificates"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "solve | eigen | certify | sweep | check-operator")->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out-dir", out_dir, "Directory for output files");
  app.add_option("--seed", seed, "Seed for property sampling (overrides the config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  RunConfig cfg;
  try {
    cfg = load_config(config_path, command_from_string(command));
    if (seed) cfg.seed = *seed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return run(cfg, out_dir);
}

}  // namespace radeig::cli
