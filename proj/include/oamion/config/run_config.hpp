#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oamion/beam/pulse.hpp"
#include "oamion/tdse/grid.hpp"
#include "oamion/tdse/propagator.hpp"

namespace oamion::config {

inline constexpr int kConfigVersion = 1;

struct AnalysisConfig {
  int l_max = 8;
  int n_radial = 48;
  double r_max = 20.0;
  int closure_order = 3;
  double confine_radius = 10.0;   // radius of the confinement fraction report
  double histogram_width = 0.5;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

struct OutputConfig {
  std::string directory = "out";
  int checkpoint_every = 0;
  bool trajectory = true;
  bool spectrum = true;
  bool projection = true;
  bool projection_series = false;  // xy projection of the excited part at every record
  bool final_state = true;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// Everything one simulation needs. Serialized as `key = value` lines grouped in
/// [beam], [grid], [propagator], [run], [analysis] and [output] sections.
struct RunConfig {
  int version = kConfigVersion;
  std::string name = "run";
  beam::PulseConfig beam{};
  tdse::GridSpec grid{};
  tdse::PropagatorConfig prop{};
  double tail = 0.0;
  int record_every = 10;
  AnalysisConfig analysis{};
  OutputConfig output{};

  /// Throws ConfigError when a field or a cross-field constraint fails:
  /// absorber inside the box, spectrum radius inside the absorber-free region.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse or validation failure; line() is 0 when no single line is to blame.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

std::string serialize(const RunConfig& cfg);

/// Parses and validates. Unknown sections or keys, duplicates and malformed
/// values are reported as "source:line: message".
///
/// [beam] accepts either `amplitude` or the pair `peak_field`, `peak_radius`,
/// which sets A0 so |E| peaks at that value on that radius.
RunConfig parse_run_config(std::string_view text, const std::string& source = "<config>");

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace oamion::config
