#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oamion/tdse/ground_state.hpp"
#include "oamion/tdse/propagator.hpp"

namespace oamion::tdse {

/// Observables at one recorded time. Position means are over the normalized
/// excited part δψ; L is the kinetic angular momentum of the whole state.
struct TrajectoryPoint {
  double t = 0.0;
  std::int64_t step = 0;
  double pop_ground = 0.0;  // |⟨ψ_g|ψ⟩|²
  double norm = 0.0;        // ⟨ψ|ψ⟩
  double excited_norm = 0.0;
  Vec3 L{};
  Vec3 mean{};
  double r_mean = 0.0;
  double absorbed = 0.0;  // cumulative probability removed by the mask
};

struct TrajectoryRecord {
  std::vector<TrajectoryPoint> points;

  const TrajectoryPoint& back() const { return points.back(); }
  /// Columns t, pop_ground, norm, Lz, x_mean, y_mean, z_mean, absorbed.
  std::string to_csv() const;
  /// Every recorded field, for diagnostics.
  std::string to_csv_extended() const;
};

/// Thrown when the state stops being finite or its norm grows.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(double t, std::int64_t step, double norm);
  double t() const { return t_; }
  std::int64_t step() const { return step_; }
  double norm() const { return norm_; }
  std::string diagnostic_json() const;

 private:
  double t_;
  std::int64_t step_;
  double norm_;
};

/// Time span covering the pulse window on every grid plane, plus a tail.
struct RunPlan {
  double t_begin = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::int64_t n_steps = 0;
};

RunPlan plan_run(const beam::PulseConfig& pulse, const GridSpec& grid, double dt, double tail = 0.0);

struct RunOptions {
  double tail = 0.0;          // free evolution after the window closes
  int record_every = 10;
  bool record_oam = true;
  int checkpoint_every = 0;   // 0 disables
  std::filesystem::path checkpoint_path;
  /// Called at each recorded time with the current state.
  std::function<void(const TrajectoryPoint&, const Wavefunction&)> observer;
};

struct RunResult {
  Wavefunction psi;
  TrajectoryRecord trajectory;
  RunPlan plan;
};

/// Propagates psi0 over plan_run(...) recording observables every record_every
/// steps and at both ends. Throws NumericalBlowup on a non-finite or growing norm.
RunResult run(Propagator& prop, const Wavefunction& ground, const Wavefunction& psi0, const RunOptions& options);

/// Relaxes the ground state and runs from it.
std::pair<Wavefunction, TrajectoryRecord> run(const GridSpec& grid, const PropagatorConfig& prop,
                                              const beam::PulseConfig& pulse, int record_every);

/// Cycle-averaged q²⟨A²⟩/2 at the envelope maximum on every node.
std::vector<double> ponderomotive_profile(const beam::PulseConfig& pulse, const GridSpec& grid, double charge = -1.0);

/// Weight of ψ on the negative-energy part of the field-free spectrum,
/// from the Gauss quadrature of a Lanczos run started at ψ. Unnormalized:
/// an absorbed fraction lowers it.
double bound_fraction(const Propagator& prop, const Wavefunction& psi, int iterations = 80);

}  // namespace oamion::tdse
