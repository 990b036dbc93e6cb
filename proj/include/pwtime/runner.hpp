#pragma once

#include "pwtime/leggett_garg.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pwtime {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid configuration; carries the offending key. Exit code 1.
struct ConfigError : std::runtime_error {
  std::string key;
  ConfigError(std::string k, const std::string& msg)
      : std::runtime_error("config error [" + k + "]: " + msg), key(std::move(k)) {}
};

enum class OutputFormat { csv, json };

struct RunConfig {
  Eigen::Index clock_n = 64;
  double dt = 1.0;
  // Integer harmonics give a commensurate clock frequency; non-integer values
  // are allowed only together with allow_incommensurate.
  double omega_harmonic = 3.0;
  Eigen::Index ka = 1;
  Eigen::Index kb = 0;  // 0 = derive the second index from the phase grid
  std::vector<double> phases;  // empty = default grid for the command
  std::uint64_t shots = 0;     // 0 = exact Born-rule probabilities
  std::uint64_t seed = 0;
  std::string out;  // empty = stdout
  OutputFormat format = OutputFormat::csv;
  int threads = 1;
  bool allow_incommensurate = false;
  bool table1 = false;  // lg/run-record: emit the published reference phases
};

/// Fails fast with the offending key named; exit code 1 territory.
void validate_config(const RunConfig& cfg);

bool commensurate_harmonic(const RunConfig& cfg);
double config_omega(const RunConfig& cfg);

struct ConstraintReport {
  Eigen::Index clock_n = 0;
  double dt = 0;
  double omega_harmonic = 0;
  double omega = 0;
  bool commensurate = false;
  double residual = 0;
  Eigen::Index oracle_n = 0;
  Eigen::Index oracle_kernel_dim = 0;
  double oracle_projection_residual = 0;
  bool pass = false;
};

// Residual of the configured free history plus an independent dense
// eigendecomposition check at n = 8: the history must lie in the
// zero-eigenvalue eigenspace of the global Hamiltonian.
ConstraintReport run_constraint(const RunConfig& cfg);

struct CorrelationRow {
  double phase = 0;
  double p[2][2] = {};
  double p_same_given = 0;
  double p_diff_given = 0;
  double c = 0;
  std::optional<CountRecord> counts;
  std::string error;  // nonempty: the row failed (e.g. incommensurate phase)
};

struct LgRow {
  double x = 0;
  double k3_closed = 0;
  std::optional<LgPoint> point;
  std::optional<double> paper_theory;
  std::optional<double> delta_vs_paper;
  std::optional<double> paper_experiment;
  std::optional<double> paper_experiment_err;
  std::string error;
};

std::vector<double> default_correlation_phases(const RunConfig& cfg);
std::vector<double> default_lg_phases(const RunConfig& cfg);

std::vector<CorrelationRow> run_correlations(const RunConfig& cfg);
std::vector<LgRow> run_lg(const RunConfig& cfg);

/// Shortest decimal that round-trips; keeps repeated runs diffable.
std::string format_double(double v);

std::string constraint_csv(const ConstraintReport& r);
nlohmann::json constraint_json(const ConstraintReport& r);
std::string correlations_csv(const std::vector<CorrelationRow>& rows);
nlohmann::json correlations_json(const std::vector<CorrelationRow>& rows);
std::string lg_csv(const std::vector<LgRow>& rows, bool table1);
nlohmann::json lg_json(const std::vector<LgRow>& rows, bool table1);

// Full run record: config echo (output path excluded), version, seed, all
// datasets, wall-clock duration. Keys sorted for diffability.
nlohmann::json build_run_record(const RunConfig& cfg);

enum class Command { constraint, correlations, lg, run_record };

// Runs a command end to end: validate, compute, assert output invariants,
// serialize to cfg.out (or `fallback_out` when no path is configured).
// Returns the process exit code: 0 ok, 1 config error, 2 numerical failure.
int dispatch(Command cmd, const RunConfig& cfg, std::ostream& fallback_out,
             std::ostream& diagnostics);

}  // namespace pwtime
