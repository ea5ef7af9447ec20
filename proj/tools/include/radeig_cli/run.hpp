#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radeig/certify.hpp"
#include "radeig/eigen.hpp"
#include "radeig/operators.hpp"
#include "radeig_cli/config.hpp"

namespace radeig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitInvalid = 3;

struct OutputFile {
  std::string name;
  std::string content;
};

/// Result of one command held in memory; nothing touches disk until write.
struct Outcome {
  int status = kExitOk;
  std::vector<OutputFile> files;
  /// Summary columns for sweep rows, in column order.
  std::vector<std::pair<std::string, std::string>> row;
};

/// Resolved numerical objects of a configuration.
EllipticOperator build_operator(const RunConfig& c);
RadialProfile build_profile(const std::string& spec, const RunConfig& c);
RadialGrid build_grid(const RunConfig& c);
/// build_params from the certify section, operator and grid.
SupersolutionParams certify_params(const RunConfig& c);

/// Runs one command. Invalid configurations throw std::invalid_argument
/// (ConfigError, PreconditionError); numerical failures give status 2.
Outcome execute(const RunConfig& c);

/// execute plus writing the files into out_dir; returns the exit status and
/// prints diagnostics to stderr.
int run(const RunConfig& c, const std::filesystem::path& out_dir);

/// Full command-line entry point: `<command> --config <path> [--out-dir] [--seed]`.
int main_entry(int argc, char** argv);

}  // namespace radeig::cli
