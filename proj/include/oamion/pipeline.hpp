#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oamion/analysis/compliance.hpp"
#include "oamion/analysis/observables.hpp"
#include "oamion/analysis/spectrum.hpp"
#include "oamion/config/run_config.hpp"
#include "oamion/tdse/simulation.hpp"

namespace oamion::pipeline {

/// Spectral compliance of the excited part at one recorded time.
struct ComplianceSample {
  double t = 0.0;
  double excited_norm = 0.0;
  double ball_norm = 0.0;
  double allowed_weight = 0.0;
  double forbidden_weight = 0.0;
  double max_forbidden = 0.0;

  double forbidden_fraction() const {
    const double total = allowed_weight + forbidden_weight;
    return total > 0.0 ? forbidden_weight / total : 0.0;
  }
};

struct PipelineOptions {
  bool spectra_every_record = true;
  bool compute_bound_fraction = true;
  int checkpoint_every = 0;
  std::filesystem::path checkpoint_path;
  /// Called after every record with the point and, when computed, its compliance sample.
  std::function<void(const tdse::TrajectoryPoint&, const ComplianceSample*)> progress;
  /// Called at every record with the full state and the relaxed ground state.
  std::function<void(const tdse::TrajectoryPoint&, const tdse::Wavefunction& psi, const tdse::Wavefunction& ground)>
      observer;
};

struct SimulationReport {
  config::RunConfig config;
  tdse::GroundState ground;
  tdse::RunResult run;
  std::vector<ComplianceSample> compliance_series;
  analysis::SphericalSpectrum final_spectrum;
  analysis::ComplianceReport final_compliance;
  /// 1 − |α|² at the first record at or after one carrier period into the window.
  double first_cycle_depletion = 0.0;
  double first_cycle_time = 0.0;
  /// Negative-energy weight of the final state (absorbed probability counts as ionized).
  double bound_fraction = 0.0;
  /// Share of the final excited weight inside analysis.confine_radius.
  double confined_fraction = 0.0;
  analysis::RadialHistogram excited_histogram;
  analysis::Projection2D excited_projection;

  const tdse::TrajectoryPoint& final_point() const { return run.trajectory.back(); }
  double worst_forbidden_fraction() const;
  /// Deterministic summary of the headline numbers.
  std::string summary_json() const;
  std::string compliance_csv() const;
};

/// Excited-part spectrum and its compliance against the run's beam.
ComplianceSample compliance_sample(const config::RunConfig& cfg, const tdse::Wavefunction& psi,
                                   const tdse::Wavefunction& ground, double t,
                                   analysis::SphericalSpectrum* spectrum_out = nullptr,
                                   analysis::ComplianceReport* report_out = nullptr);

/// Ground-state relaxation, propagation over the pulse plus tail, and the
/// analysis products of the final state.
SimulationReport simulate(const config::RunConfig& cfg, const PipelineOptions& options = {});

}  // namespace oamion::pipeline
