#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "thermogas/grid.hpp"
#include "thermogas/initial.hpp"
#include "thermogas/integrator.hpp"
#include "thermogas/littlewood_paley.hpp"
#include "thermogas/params.hpp"

namespace thermogas {

/// A configuration problem. `key()` is the dotted path of the offending entry
/// ("params.kappa1"), and what() starts with it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct InitialConfig {
  enum class Preset { zero, single_mode, random_band, file };
  Preset preset = Preset::zero;
  // single-mode
  std::array<int, 3> mode{};
  double amplitude = 0.0;
  std::string component = "a";  ///< "a", "theta" or "both"
  bool sine = false;
  // random-band
  std::optional<std::uint64_t> seed;
  int band = 0;
  Normalization normalize = Normalization::linf;
  DataVariables variables = DataVariables::a_form;
  // file (THGSNAP1, paths resolved against the config file's directory)
  std::filesystem::path a_path;
  std::filesystem::path theta_path;
};

struct TimeConfig {
  double T = 0.0;
  /// Filled with T / ceil(T / default_dt) when the config leaves it out.
  double dt = 0.0;
  Scheme scheme = Scheme::etdrk2;
  int snapshot_stride = 1;
  /// Tilde by default: its density equation is in divergence form, so mass is
  /// conserved to rounding.
  Formulation formulation = Formulation::tilde;
  bool write_snapshots = true;
  int steps() const;
};

struct FixedPointConfig {
  double tol = 1e-12;
  int max_iter = 30;
  double c = 0.05;
  double M = 1.0;
};

struct BesovConfig {
  BesovSpec spec;
  std::string field = "both";  ///< "a", "theta" or "both"
};

struct RunConfig {
  Grid grid;
  ModelParams params;
  std::optional<InitialConfig> initial;
  std::optional<TimeConfig> time;
  FixedPointConfig fixedpoint;
  int lambda = 2;
  BesovConfig besov;
  std::optional<std::uint64_t> verify_seed;
};

/// Parses and validates a JSON config. Unknown keys, wrong types and values
/// outside the module preconditions raise ConfigError. Relative snapshot paths
/// are resolved against base_dir.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Reads the file and calls parse_config. A missing file is a ConfigError.
RunConfig load_config(const std::filesystem::path& path);

/// Initial (a, theta~) described by the config; `seed` overrides initial.seed.
AState build_initial(const RunConfig& config, std::optional<std::uint64_t> seed = std::nullopt);

enum class Command { simulate, fixedpoint, besov, scaling, verify };

/// Throws std::invalid_argument for an unknown name.
Command parse_command(const std::string& name);

struct RunRequest {
  Command command = Command::simulate;
  std::filesystem::path config;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBreach = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs a subcommand and writes its artifacts into out_dir. Progress goes to
/// `out`, errors to `err`. Returns one of the exit codes above.
int run(const RunRequest& request, std::ostream& out, std::ostream& err);

/// THERMOGAS_THREADS as a positive integer; 1 when unset or malformed.
int threads_from_env();

}  // namespace thermogas
