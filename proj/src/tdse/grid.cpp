#include "oamion/tdse/grid.hpp"

#include <stdexcept>
#include <string>

namespace oamion::tdse {

void GridSpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    const int na = n[static_cast<std::size_t>(a)];
    if (na < 8 || na % 2 != 0) {
      throw std::invalid_argument("grid axis " + std::to_string(a) + " needs an even point count >= 8, got " +
                                  std::to_string(na));
    }
  }
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
}

double GridSpec::origin(int axis) const {
  const double c = axis == 0 ? center.x : axis == 1 ? center.y : center.z;
  return c - 0.5 * (n[static_cast<std::size_t>(axis)] - 1) * h;
}

double GridSpec::coordinate(int axis, int i) const { return origin(axis) + i * h; }

std::vector<double> GridSpec::axis(int a) const {
  std::vector<double> out(static_cast<std::size_t>(n[static_cast<std::size_t>(a)]));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coordinate(a, static_cast<int>(i));
  return out;
}

GridSpec cube_grid(int n, double h) {
  GridSpec g;
  g.n = {n, n, n};
  g.h = h;
  g.validate();
  return g;
}

Wavefunction::Wavefunction(GridSpec grid) : grid_(grid) {
  grid_.validate();
  data_.assign(grid_.size(), Complex{});
}

double Wavefunction::norm_squared() const {
  double sum = 0.0;
  const std::size_t n = data_.size();
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::size_t i = 0; i < n; ++i) sum += std::norm(data_[i]);
  return sum * grid_.cell_volume();
}

double Wavefunction::norm() const { return std::sqrt(norm_squared()); }

void Wavefunction::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::runtime_error("cannot normalize a zero or non-finite state");
  *this *= 1.0 / nrm;
}

bool Wavefunction::finite() const {
  for (const auto& c : data_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

Complex Wavefunction::inner(const Wavefunction& other) const {
  require_same_grid(*this, other);
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = data_.size();
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c = std::conj(data_[i]) * other.data_[i];
    re += c.real();
    im += c.imag();
  }
  return Complex{re, im} * grid_.cell_volume();
}

Wavefunction& Wavefunction::axpy(Complex s, const Wavefunction& other) {
  require_same_grid(*this, other);
  const std::size_t n = data_.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) data_[i] += s * other.data_[i];
  return *this;
}

Wavefunction& Wavefunction::operator*=(Complex s) {
  const std::size_t n = data_.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) data_[i] *= s;
  return *this;
}

void require_same_grid(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("wavefunctions live on different grids");
}

}  // namespace oamion::tdse
