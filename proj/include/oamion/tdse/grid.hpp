#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "oamion/common.hpp"

namespace oamion::tdse {

/// Uniform cell-centred Cartesian grid: x_i = center.x + (i − (n_x − 1)/2) h.
///
/// The nucleus sits at the coordinate origin; an even n keeps it off the nodes
/// and makes the node set symmetric under x → −x when center = 0.
struct GridSpec {
  std::array<int, 3> n{8, 8, 8};
  double h = 0.5;
  Vec3 center{};

  /// Throws std::invalid_argument unless every n is even and >= 8 and h > 0.
  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(n[2]);
  }
  double coordinate(int axis, int i) const;
  double origin(int axis) const;  // coordinate of node 0
  double length(int axis) const { return n[static_cast<std::size_t>(axis)] * h; }
  double half_extent(int axis) const { return 0.5 * length(axis); }
  double cell_volume() const { return h * h * h; }
  /// Flat index; x runs fastest, z slowest.
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n[0]) +
           static_cast<std::size_t>(i);
  }
  Vec3 position(int i, int j, int k) const { return {coordinate(0, i), coordinate(1, j), coordinate(2, k)}; }
  /// Coordinates of all nodes along one axis.
  std::vector<double> axis(int a) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Cube of n^3 points with spacing h centred on the nucleus.
GridSpec cube_grid(int n, double h);

/// Complex amplitude on a GridSpec.
class Wavefunction {
 public:
  Wavefunction() = default;
  explicit Wavefunction(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  Complex& at(int i, int j, int k) { return data_[grid_.index(i, j, k)]; }
  const Complex& at(int i, int j, int k) const { return data_[grid_.index(i, j, k)]; }

  /// ∫ |ψ|² d³r.
  double norm_squared() const;
  double norm() const;
  /// Rescales to unit norm; throws std::runtime_error on a zero or non-finite norm.
  void normalize();
  bool finite() const;

  /// ⟨this|other⟩ = ∫ this^* other d³r.
  Complex inner(const Wavefunction& other) const;

  /// this += s * other.
  Wavefunction& axpy(Complex s, const Wavefunction& other);
  Wavefunction& operator*=(Complex s);

 private:
  GridSpec grid_;
  std::vector<Complex> data_;
};

/// Throws std::invalid_argument unless both wavefunctions live on the same grid.
void require_same_grid(const Wavefunction& a, const Wavefunction& b);

/// Samples f(x, y, z) on every node.
template <class F>
Wavefunction sample(const GridSpec& grid, F&& f) {
  Wavefunction psi(grid);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < grid.n[2]; ++k) {
    for (int j = 0; j < grid.n[1]; ++j) {
      for (int i = 0; i < grid.n[0]; ++i) psi.at(i, j, k) = f(grid.coordinate(0, i), grid.coordinate(1, j),
                                                              grid.coordinate(2, k));
    }
  }
  return psi;
}

}  // namespace oamion::tdse
