#pragma once

#include "oamion/tdse/propagator.hpp"

namespace oamion::tdse {

struct GroundStateOptions {
  double tau = 0.1;                    // imaginary time step of the relaxation stage
  int max_relax_steps = 400;
  double relax_tolerance = 1e-6;       // energy change per step ending the relaxation stage
  int max_polish_iterations = 300;
  double residual_tolerance = 1e-7;    // ‖Hψ − Eψ‖ at convergence
};

struct GroundState {
  Wavefunction psi;
  double energy = 0.0;
  double residual = 0.0;
  int relax_steps = 0;
  int polish_iterations = 0;
  double seed_overlap = 0.0;  // |⟨1s|ψ⟩| with the analytic seed
};

/// e^{−r}/√π sampled on the grid and normalized.
Wavefunction hydrogen_seed(const GridSpec& grid);

/// Lowest eigenstate of the discrete field-free Hamiltonian −½∇² + V_soft.
///
/// Imaginary-time Strang relaxation from the analytic 1s seed, then a
/// preconditioned Rayleigh-quotient polish (block size one LOBPCG) that removes
/// the O(τ²) splitting bias. Throws std::runtime_error when either stage fails
/// to reach its tolerance.
GroundState init_ground_state(const GridSpec& grid, const PropagatorConfig& config,
                              const GroundStateOptions& options = {});

/// Same on an existing propagator (reuses its transforms and potential).
GroundState init_ground_state(const Propagator& prop, const GroundStateOptions& options = {});

}  // namespace oamion::tdse
