#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radeig/serialize.hpp"

namespace radeig::cli {

/// Invalid configuration; reported with exit status 3.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { solve, eigen, certify, sweep, check_operator };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct OperatorSpec {
  /// pucci_minus, pucci_plus, laplacian, p_laplacian or anisotropic.
  std::string kind = "pucci_minus";
  double a = 1.0;
  double A = 1.0;
  double alpha = 0.0;
  double p = 2.0;
  double q = 2.0;
  double c0 = 0.0;
  std::string b1 = "const:1";
  std::string b2 = "const:0";
  std::optional<double> gradient_floor;
};

struct GridSpec {
  double R = 1.0;
  int N = 2;
  int n = 401;
};

struct SolverSpec {
  double tol = 1e-9;
  int max_steps = 4000;
  int max_iter = 200000;
  double u_max = 1e6;
  std::optional<double> bracket_width;
  std::optional<double> eig_residual_tol;
  /// auto, neumann, monotone or general.
  std::string method = "auto";
};

struct CertifySpec {
  double rho = 0.25;
  double k = 4.0;
  double beta1 = 10.0;
  /// Explicit beta2; otherwise beta2_fraction times the admissible bound.
  std::optional<double> beta2;
  double beta2_fraction = 0.5;
  /// Also bracket the positive eigenvalue with c = the default band.
  bool lambda_up = false;
};

struct SweepSpec {
  Command base = Command::certify;
  /// JSON-pointer-like dotted keys ("certify.beta2_fraction") and their values.
  std::vector<std::pair<std::string, std::vector<Json>>> vary;
  /// 0 selects the available hardware parallelism.
  int workers = 0;
};

/// Parsed and defaulted configuration. `base_dir` resolves relative table paths.
struct RunConfig {
  Command command = Command::eigen;
  std::uint64_t seed = 1;
  OperatorSpec op;
  std::string b = "const:0";
  std::string c = "const:-1";
  std::string g = "const:0";
  GridSpec grid;
  double lambda = 0.0;
  SolverSpec solver;
  /// positive, negative or both.
  std::string eigen_sign = "positive";
  CertifySpec certify;
  int samples = 10000;
  SweepSpec sweep;
  std::filesystem::path base_dir = ".";
};

/// Strict parse: unknown keys and wrong types are ConfigErrors. `command`
/// overrides a command key in the file; a conflicting one is an error.
RunConfig parse_config(const Json& j, std::optional<Command> command = std::nullopt,
                       const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path, std::optional<Command> command);

/// Every field, defaults included; parse_config(to_json(c)) == c.
Json to_json(const RunConfig& c);

}  // namespace radeig::cli
