#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadsuite::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::string state = "vacuum";
  std::string kernel = "vacuum";  ///< K for gk-density / strip-prob
  int dim = 12;
  double theta = 0.0;
  std::string grid;               ///< min:max:step, empty = per-command default
  std::string interval = "0:1";   ///< X for strip-prob / complementarity-report
  int angles = 16;
  std::string input;              ///< dataset for tomo-reconstruct
  std::string output;             ///< empty = stdout
  std::string state_out;          ///< reconstructed state (tomo-reconstruct)
  Format format = Format::csv;
  int n = 0;                      ///< number-state index (markov-kernel)
  double q = 0.0;
  double p = 0.0;
  std::string form = "derivative";
  double mu_var = 0.5;
  double nu_var = 0.5;
  int k_max = 12;
  int threads = 0;                ///< 0 = QUADSUITE_THREADS or hardware
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "quad-density",  "wigner",         "radon",         "gk-density",   "strip-prob",
      "tomo-generate", "tomo-reconstruct", "markov-kernel", "moments-demo", "complementarity-report"};
  return names;
}

/// Executes one subcommand, writing its artifact to config.output (or `out`)
/// and diagnostics to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace quadsuite::cli
