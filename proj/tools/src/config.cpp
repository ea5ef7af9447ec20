#include "radeig_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace radeig::cli {

namespace {

// Object reader that rejects unknown keys once every field has been read.
class Section {
 public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json* raw(const std::string& key) {
    seen_.insert(key);
    return has(key) ? &j_.at(key) : nullptr;
  }

  void number(const std::string& key, double& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_number()) throw ConfigError(path(key) + " must be a number");
      out = v->get<double>();
    }
  }

  void number(const std::string& key, std::optional<double>& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_number()) throw ConfigError(path(key) + " must be a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_number_integer()) throw ConfigError(path(key) + " must be an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = v->get<Int>();
        } else {
          const auto s = v->get<long long>();
          if (s < 0) throw ConfigError(path(key) + " must be >= 0");
          out = static_cast<Int>(s);
        }
      } else {
        out = v->get<Int>();
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key) + " must be true or false");
      out = v->get<bool>();
    }
  }

  // Strings; a bare number in a profile slot means const:<number>.
  void text(const std::string& key, std::string& out, bool number_is_const = false) {
    if (const Json* v = raw(key)) {
      if (number_is_const && v->is_number()) {
        out = "const:" + v->dump();
      } else if (v->is_string()) {
        out = v->get<std::string>();
      } else {
        throw ConfigError(path(key) + " must be a string");
      }
    }
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(path(k) + ": unknown key");
  }

  std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void require_choice(const std::string& what, const std::string& value,
                    std::initializer_list<const char*> choices) {
  for (const char* c : choices)
    if (value == c) return;
  std::string msg = what + ": '" + value + "' is not one of";
  for (const char* c : choices) msg += std::string(" ") + c;
  throw ConfigError(msg);
}

Json opt(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::eigen: return "eigen";
    case Command::certify: return "certify";
    case Command::sweep: return "sweep";
    case Command::check_operator: return "check-operator";
  }
  return "?";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::solve, Command::eigen, Command::certify, Command::sweep,
                    Command::check_operator})
    if (to_string(c) == name) return c;
  throw ConfigError("command: unknown command '" + name + "'");
}

RunConfig parse_config(const Json& j, std::optional<Command> command,
                       const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  Section top(j, "");

  if (const Json* v = top.raw("command")) {
    if (!v->is_string()) throw ConfigError("command must be a string");
    const Command file_cmd = command_from_string(v->get<std::string>());
    if (command && *command != file_cmd)
      throw ConfigError("command: config file says '" + to_string(file_cmd) +
                        "' but '" + to_string(*command) + "' was requested");
    c.command = file_cmd;
  }
  if (command) c.command = *command;
  top.integer("seed", c.seed);
  top.number("lambda", c.lambda);
  if (!std::isfinite(c.lambda)) throw ConfigError("lambda must be finite");

  if (const Json* v = top.raw("operator")) {
    Section s(*v, "operator");
    s.text("kind", c.op.kind);
    s.number("a", c.op.a);
    s.number("A", c.op.A);
    s.number("alpha", c.op.alpha);
    s.number("p", c.op.p);
    s.number("q", c.op.q);
    s.number("c0", c.op.c0);
    s.text("b1", c.op.b1, true);
    s.text("b2", c.op.b2, true);
    s.number("gradient_floor", c.op.gradient_floor);
    s.finish();
    require_choice("operator.kind", c.op.kind,
                   {"pucci_minus", "pucci_plus", "laplacian", "p_laplacian", "anisotropic"});
  }

  if (const Json* v = top.raw("coefficients")) {
    Section s(*v, "coefficients");
    s.text("b", c.b, true);
    s.text("c", c.c, true);
    s.text("g", c.g, true);
    s.finish();
  }

  if (const Json* v = top.raw("grid")) {
    Section s(*v, "grid");
    s.number("R", c.grid.R);
    s.integer("N", c.grid.N);
    s.integer("n", c.grid.n);
    s.finish();
  }

  if (const Json* v = top.raw("solver")) {
    Section s(*v, "solver");
    s.number("tol", c.solver.tol);
    s.integer("max_steps", c.solver.max_steps);
    s.integer("max_iter", c.solver.max_iter);
    s.number("u_max", c.solver.u_max);
    s.number("bracket_width", c.solver.bracket_width);
    s.number("eig_residual_tol", c.solver.eig_residual_tol);
    s.text("method", c.solver.method);
    s.finish();
    require_choice("solver.method", c.solver.method, {"auto", "neumann", "monotone", "general"});
  }
  if (!(c.solver.tol > 0.0)) throw ConfigError("solver: tol must be > 0");
  if (c.solver.max_steps < 1) throw ConfigError("solver: max_steps must be >= 1");
  if (c.solver.max_iter < 1) throw ConfigError("solver: max_iter must be >= 1");
  if (!(c.solver.u_max > 0.0)) throw ConfigError("solver: u_max must be > 0");

  if (const Json* v = top.raw("eigen")) {
    Section s(*v, "eigen");
    s.text("sign", c.eigen_sign);
    s.finish();
    require_choice("eigen.sign", c.eigen_sign, {"positive", "negative", "both"});
  }

  if (const Json* v = top.raw("certify")) {
    Section s(*v, "certify");
    s.number("rho", c.certify.rho);
    s.number("k", c.certify.k);
    s.number("beta1", c.certify.beta1);
    s.number("beta2", c.certify.beta2);
    s.number("beta2_fraction", c.certify.beta2_fraction);
    s.boolean("lambda_up", c.certify.lambda_up);
    s.finish();
  }

  if (const Json* v = top.raw("check")) {
    Section s(*v, "check");
    s.integer("samples", c.samples);
    s.finish();
  }
  if (c.samples < 1) throw ConfigError("check: samples must be >= 1");

  if (const Json* v = top.raw("sweep")) {
    Section s(*v, "sweep");
    std::string base = to_string(c.sweep.base);
    s.text("base", base);
    c.sweep.base = command_from_string(base);
    if (c.sweep.base == Command::sweep) throw ConfigError("sweep.base cannot be sweep");
    s.integer("workers", c.sweep.workers);
    if (c.sweep.workers < 0) throw ConfigError("sweep.workers must be >= 0");
    if (const Json* vary = s.raw("vary")) {
      if (!vary->is_object()) throw ConfigError("sweep.vary must be an object");
      for (const auto& [key, values] : vary->items()) {
        if (!values.is_array() || values.empty())
          throw ConfigError("sweep.vary." + key + " must be a non-empty array");
        c.sweep.vary.emplace_back(key, values.get<std::vector<Json>>());
      }
    }
    s.finish();
  }
  if (c.command == Command::sweep && c.sweep.vary.empty())
    throw ConfigError("sweep: vary must list at least one key");

  top.finish();
  return c;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<Command> command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_config(j, command, dir);
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["seed"] = c.seed;
  j["operator"] = {{"kind", c.op.kind},
                   {"a", c.op.a},
                   {"A", c.op.A},
                   {"alpha", c.op.alpha},
                   {"p", c.op.p},
                   {"q", c.op.q},
                   {"c0", c.op.c0},
                   {"b1", c.op.b1},
                   {"b2", c.op.b2},
                   {"gradient_floor", opt(c.op.gradient_floor)}};
  j["coefficients"] = {{"b", c.b}, {"c", c.c}, {"g", c.g}};
  j["grid"] = {{"R", c.grid.R}, {"N", c.grid.N}, {"n", c.grid.n}};
  j["lambda"] = c.lambda;
  j["solver"] = {{"tol", c.solver.tol},
                 {"max_steps", c.solver.max_steps},
                 {"max_iter", c.solver.max_iter},
                 {"u_max", c.solver.u_max},
                 {"bracket_width", opt(c.solver.bracket_width)},
                 {"eig_residual_tol", opt(c.solver.eig_residual_tol)},
                 {"method", c.solver.method}};
  j["eigen"] = {{"sign", c.eigen_sign}};
  j["certify"] = {{"rho", c.certify.rho},
                  {"k", c.certify.k},
                  {"beta1", c.certify.beta1},
                  {"beta2", opt(c.certify.beta2)},
                  {"beta2_fraction", c.certify.beta2_fraction},
                  {"lambda_up", c.certify.lambda_up}};
  j["check"] = {{"samples", c.samples}};
  Json vary = Json::object();
  for (const auto& [k, v] : c.sweep.vary) vary[k] = v;
  j["sweep"] = {{"base", to_string(c.sweep.base)}, {"workers", c.sweep.workers}, {"vary", vary}};
  return j;
}

}  // namespace radeig::cli
