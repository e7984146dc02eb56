#pragma once

#include <cstdint>
#include <filesystem>

#include "oamion/tdse/grid.hpp"

namespace oamion::tdse {

inline constexpr char kCheckpointMagic[8] = {'O', 'A', 'M', 'W', 'F', 'N', '\0', '\0'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Binary state file: magic, version, grid (n[3] as int32, h, center as float64),
/// t (float64), step (int64), then size() complex values as (re, im) float64 pairs.
/// Everything little-endian.
struct Checkpoint {
  Wavefunction psi;
  double t = 0.0;
  std::int64_t step = 0;
};

/// Throws std::runtime_error when the file cannot be written completely.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

/// Throws std::runtime_error on bad magic, unknown version, truncation or an invalid grid.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace oamion::tdse
