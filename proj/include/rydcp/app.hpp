#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rydcp/atomic_structure.hpp"
#include "rydcp/channels.hpp"
#include "rydcp/cp.hpp"
#include "rydcp/errors.hpp"
#include "rydcp/medium.hpp"

namespace rydcp::app {

/// Failure inside a sweep, tagged with the sample that failed.
class ComputationError : public Error {
 public:
  using Error::Error;
};

struct DistanceGrid {
  double min = 0.5e-6;
  double max = 20e-6;
  int count = 40;
  bool logarithmic = true;

  std::vector<double> points() const;
};

struct StateSpec {
  int n = 43;
  int l = 0;
  int j2 = 1;
  QuantumState state() const { return {n, l, j2, j2}; }
};

/// Everything a run needs. Relative paths are resolved against the directory
/// of the config file.
struct RunConfig {
  std::string species = "Rb87";
  std::filesystem::path defects;
  /// Either a material file or inline Drude parameters or a perfect mirror.
  std::optional<std::filesystem::path> material_file;
  std::optional<DrudeModel> material;
  bool perfect_mirror = false;
  std::vector<StateSpec> states{StateSpec{}};
  std::vector<double> temperatures{300.0};
  DistanceGrid distances{};
  int window = 8;
  bool include_all_lower = false;
  double tolerance = 1e-8;
  double matsubara_tail = 1e-6;
  std::filesystem::path output = "out";
  int threads = 0;  ///< 0: hardware concurrency

  // contributions
  std::vector<double> contribution_z{1e-6};
  bool fine_structure = false;

  // scaling
  double scaling_z = 2e-6;

  /// Checks the invariants; throws ConfigError naming the field.
  void validate() const;
};

/// Parses the JSON config text. `base_dir` anchors relative paths.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       const std::string& source_name = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Loaded inputs plus their provenance.
struct Inputs {
  QuantumDefectTable table;
  Surface surface;
  std::string defects_sha256;
  std::string material_sha256;  ///< "inline" or "perfect-mirror" when not a file
  std::string material_label;
};

Inputs load_inputs(const RunConfig& config);

std::string sha256_file(const std::filesystem::path& path);

/// Runs f(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots, so the outcome is independent of scheduling.
/// The first exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f);

/// Files written by a run.
struct RunOutput {
  std::vector<std::filesystem::path> files;
  std::filesystem::path manifest;
};

RunOutput run_potential(const RunConfig& config);
RunOutput run_decay(const RunConfig& config);
RunOutput run_contributions(const RunConfig& config);
RunOutput run_scaling(const RunConfig& config);

/// Fixed-precision rendering used by every CSV cell.
std::string format_number(double v);

}  // namespace rydcp::app
