#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "urnlab_cli.hpp"

namespace support {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = urnlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// One invocation per subcommand, each with fixed flags.
inline std::vector<std::vector<std::string>> subcommand_invocations() {
  return {
      {"pmf", "--model", "I", "--A", "linear:1", "--B", "linear:1", "--n", "2", "--m", "2", "--format", "json"},
      {"pmf", "--model", "II", "--A", "square", "--B", "triangular", "--n", "4", "--m", "3", "--mode", "bigfloat"},
      {"pmf-multi", "--model", "II", "--weights", "linear:1", "square", "linear:2", "--counts", "2,2,2"},
      {"moments", "--A", "linear:2", "--B", "linear:3", "--n", "4", "--m", "3", "--s", "2", "--kind", "raw"},
      {"okc-moments", "--b", "2", "--c", "1", "--n", "3", "--m", "2", "--s", "2"},
      {"limit", "--kind", "w-cdf", "--family", "triangular", "--grid-step", "0.1"},
      {"limit", "--kind", "zn-pmf", "--n", "4", "--k", "1"},
      {"theta", "--q", "0.5", "--tol", "1e-12"},
      {"duality-check", "--A", "square", "--B", "linear:1", "--n", "4", "--m", "3"},
      {"oracle", "--model", "II", "--A", "linear:1", "--B", "linear:1", "--n", "2", "--m", "1", "--method", "enumerate"},
      {"simulate", "--model", "II", "--A", "linear:1", "--B", "square", "--n", "5", "--m", "4", "--trials", "50000",
       "--seed", "17", "--workers", "3", "--chi-square"},
      {"simulate", "--sampler", "w", "--family", "shifted-square", "--tail", "100", "--trials", "20000", "--seed", "5",
       "--workers", "2"},
      {"compare", "--model", "I", "--A", "triangular", "--B", "shifted-square", "--n", "4", "--m", "4", "--trials",
       "20000", "--seed", "3", "--workers", "2"},
  };
}

}  // namespace support
