#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "oamion/tdse/grid.hpp"

namespace oamion::tdse {

/// Per-axis FFTs over a grid, executed line by line so that position-space
/// factors can be fused into the same cache pass.
///
/// Plans are built once (FFTW_ESTIMATE, deterministic) and executed on
/// arbitrary arrays with the grid layout; execution is thread-safe.
class AxisTransforms {
 public:
  explicit AxisTransforms(const GridSpec& grid);
  ~AxisTransforms();
  AxisTransforms(const AxisTransforms&) = delete;
  AxisTransforms& operator=(const AxisTransforms&) = delete;
  AxisTransforms(AxisTransforms&&) noexcept;
  AxisTransforms& operator=(AxisTransforms&&) noexcept;

  const GridSpec& grid() const { return grid_; }

  /// Angular wavenumbers of the FFT bins along an axis.
  const std::vector<double>& wavenumbers(int axis) const { return k_[static_cast<std::size_t>(axis)]; }

  /// ψ ← post ∘ F⁻¹ diag(spectral) F ∘ pre along `axis`, unnormalized inverse included in `spectral`.
  ///
  /// `pre` and `post` act on one slab (x, y axes: a z = const plane) or one
  /// xz row set (z axis: a y = const plane) right before and after the transforms.
  /// Either may be empty.
  using PlaneHook = std::function<void(Complex* plane, int plane_index)>;
  void apply(std::vector<Complex>& data, int axis, const std::vector<Complex>& spectral,
             const PlaneHook& pre = {}, const PlaneHook& post = {}) const;

  /// out = ∂ψ/∂x_axis by spectral differentiation.
  void derivative(const std::vector<Complex>& in, std::vector<Complex>& out, int axis) const;

  /// out = −½∇²ψ.
  void kinetic(const std::vector<Complex>& in, std::vector<Complex>& out) const;

  /// ⟨ψ| −½∇² |ψ⟩ for a state on the grid.
  double kinetic_energy(const Wavefunction& psi) const;

 private:
  struct Plans;
  GridSpec grid_;
  std::array<std::vector<double>, 3> k_;
  std::unique_ptr<Plans> plans_;
};

/// Spectral multiplier exp(−i dt k²/2)/n along one axis (normalization folded in).
std::vector<Complex> kinetic_phase(const std::vector<double>& k, double dt);
/// Spectral multiplier exp(−τ k²/2)/n for imaginary-time steps.
std::vector<Complex> kinetic_decay(const std::vector<double>& k, double tau);

}  // namespace oamion::tdse
