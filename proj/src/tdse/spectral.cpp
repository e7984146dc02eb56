#include "oamion/tdse/spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace oamion::tdse {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

struct Plan {
  fftw_plan handle = nullptr;
  Plan() = default;
  explicit Plan(fftw_plan p) : handle(p) {
    if (!p) throw std::runtime_error("FFTW plan creation failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  Plan(Plan&& o) noexcept : handle(o.handle) { o.handle = nullptr; }
  Plan& operator=(Plan&& o) noexcept {
    std::swap(handle, o.handle);
    return *this;
  }
  ~Plan() {
    if (handle) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(handle);
    }
  }
  void run(Complex* data) const { fftw_execute_dft(handle, as_fftw(data), as_fftw(data)); }
};

}  // namespace

struct AxisTransforms::Plans {
  std::array<Plan, 3> forward;
  std::array<Plan, 3> backward;
};

AxisTransforms::AxisTransforms(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  grid_.validate();
  for (int a = 0; a < 3; ++a) {
    const int n = grid_.n[static_cast<std::size_t>(a)];
    auto& k = k_[static_cast<std::size_t>(a)];
    k.resize(static_cast<std::size_t>(n));
    const double dk = 2.0 * kPi / (n * grid_.h);
    for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = dk * (i < n / 2 ? i : i - n);
  }
  const int nx = grid_.n[0];
  const int ny = grid_.n[1];
  const int nz = grid_.n[2];
  // Planning buffer with the full layout; FFTW_ESTIMATE never touches it.
  std::vector<Complex> scratch(grid_.size());
  fftw_complex* buf = as_fftw(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  for (int sign : {FFTW_FORWARD, FFTW_BACKWARD}) {
    auto& set = sign == FFTW_FORWARD ? plans_->forward : plans_->backward;
    set[0] = Plan(fftw_plan_many_dft(1, &nx, ny, buf, nullptr, 1, nx, buf, nullptr, 1, nx, sign, flags));
    set[1] = Plan(fftw_plan_many_dft(1, &ny, nx, buf, nullptr, nx, 1, buf, nullptr, nx, 1, sign, flags));
    set[2] = Plan(fftw_plan_many_dft(1, &nz, nx, buf, nullptr, nx * ny, 1, buf, nullptr, nx * ny, 1, sign, flags));
  }
}

AxisTransforms::~AxisTransforms() = default;
AxisTransforms::AxisTransforms(AxisTransforms&&) noexcept = default;
AxisTransforms& AxisTransforms::operator=(AxisTransforms&&) noexcept = default;

void AxisTransforms::apply(std::vector<Complex>& data, int axis, const std::vector<Complex>& spectral,
                           const PlaneHook& pre, const PlaneHook& post) const {
  if (data.size() != grid_.size()) throw std::invalid_argument("array does not match the transform grid");
  const std::size_t nx = static_cast<std::size_t>(grid_.n[0]);
  const std::size_t ny = static_cast<std::size_t>(grid_.n[1]);
  const std::size_t nz = static_cast<std::size_t>(grid_.n[2]);
  const Plan& fwd = plans_->forward[static_cast<std::size_t>(axis)];
  const Plan& bwd = plans_->backward[static_cast<std::size_t>(axis)];
  Complex* base = data.data();

  if (axis == 0 || axis == 1) {
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < nz; ++k) {
      Complex* plane = base + k * nx * ny;
      if (pre) pre(plane, static_cast<int>(k));
      fwd.run(plane);
      for (std::size_t j = 0; j < ny; ++j) {
        Complex* row = plane + j * nx;
        if (axis == 0) {
          for (std::size_t i = 0; i < nx; ++i) row[i] *= spectral[i];
        } else {
          const Complex s = spectral[j];
          for (std::size_t i = 0; i < nx; ++i) row[i] *= s;
        }
      }
      bwd.run(plane);
      if (post) post(plane, static_cast<int>(k));
    }
  } else if (axis == 2) {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < ny; ++j) {
      Complex* plane = base + j * nx;
      if (pre) pre(plane, static_cast<int>(j));
      fwd.run(plane);
      for (std::size_t k = 0; k < nz; ++k) {
        Complex* row = plane + k * nx * ny;
        const Complex s = spectral[k];
        for (std::size_t i = 0; i < nx; ++i) row[i] *= s;
      }
      bwd.run(plane);
      if (post) post(plane, static_cast<int>(j));
    }
  } else {
    throw std::invalid_argument("axis must be 0, 1 or 2");
  }
}

void AxisTransforms::derivative(const std::vector<Complex>& in, std::vector<Complex>& out, int axis) const {
  const auto& k = wavenumbers(axis);
  std::vector<Complex> spectral(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) spectral[i] = Complex{0.0, k[i] / static_cast<double>(k.size())};
  spectral[k.size() / 2] = 0.0;
  out = in;
  apply(out, axis, spectral);
}

void AxisTransforms::kinetic(const std::vector<Complex>& in, std::vector<Complex>& out) const {
  out.assign(in.size(), Complex{});
  std::vector<Complex> work;
  for (int a = 0; a < 3; ++a) {
    const auto& k = wavenumbers(a);
    std::vector<Complex> spectral(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) spectral[i] = 0.5 * k[i] * k[i] / static_cast<double>(k.size());
    work = in;
    apply(work, a, spectral);
    const std::size_t n = in.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) out[i] += work[i];
  }
}

double AxisTransforms::kinetic_energy(const Wavefunction& psi) const {
  std::vector<Complex> d;
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    const auto& k = wavenumbers(a);
    std::vector<Complex> spectral(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) spectral[i] = Complex{0.0, k[i] / static_cast<double>(k.size())};
    d = psi.data();
    apply(d, a, spectral);
    double s = 0.0;
    const std::size_t n = d.size();
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (std::size_t i = 0; i < n; ++i) s += std::norm(d[i]);
    sum += 0.5 * s;
  }
  return sum * grid_.cell_volume();
}

std::vector<Complex> kinetic_phase(const std::vector<double>& k, double dt) {
  std::vector<Complex> out(k.size());
  const double inv_n = 1.0 / static_cast<double>(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = inv_n * std::polar(1.0, -0.5 * dt * k[i] * k[i]);
  return out;
}

std::vector<Complex> kinetic_decay(const std::vector<double>& k, double tau) {
  std::vector<Complex> out(k.size());
  const double inv_n = 1.0 / static_cast<double>(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = inv_n * std::exp(-0.5 * tau * k[i] * k[i]);
  return out;
}

}  // namespace oamion::tdse
