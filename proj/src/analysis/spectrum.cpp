#include "oamion/analysis/spectrum.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oamion::analysis {
namespace {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n, double a, double b) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("failed to build Gauss-Legendre table");
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.x[static_cast<std::size_t>(i)],
                                  &rule.w[static_cast<std::size_t>(i)], table.get());
  }
  return rule;
}

std::array<double, 4> lagrange_weights(double f) {
  return {-f * (f - 1.0) * (f - 2.0) / 6.0, (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
          -(f + 1.0) * f * (f - 2.0) / 2.0, (f + 1.0) * f * (f - 1.0) / 6.0};
}

}  // namespace

double SphericalSpectrum::probability(HarmonicIndex index) const {
  auto it = entries.find(index);
  return it == entries.end() ? 0.0 : it->second;
}

double SphericalSpectrum::total() const {
  double sum = 0.0;
  for (const auto& [index, p] : entries) sum += p;
  return sum;
}

std::vector<std::pair<HarmonicIndex, double>> SphericalSpectrum::ranked() const {
  std::vector<std::pair<HarmonicIndex, double>> out(entries.begin(), entries.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string SphericalSpectrum::to_json() const {
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& [index, p] : entries) channels.push_back({{"L", index.L}, {"M", index.M}, {"P", p}});
  nlohmann::json out = {{"l_max", l_max}, {"r_max", r_max}, {"ball_norm", ball_norm}, {"channels", channels}};
  return out.dump(2);
}

std::string SphericalSpectrum::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "L,M,P\n";
  for (const auto& [index, p] : entries) os << index.L << ',' << index.M << ',' << p << '\n';
  return os.str();
}

Complex interpolate(const Wavefunction& psi, const Vec3& r) {
  const tdse::GridSpec& g = psi.grid();
  const double coords[3] = {r.x, r.y, r.z};
  std::array<int, 3> base{};
  std::array<std::array<double, 4>, 3> w{};
  for (int a = 0; a < 3; ++a) {
    const double u = (coords[a] - g.origin(a)) / g.h;
    const int i1 = static_cast<int>(std::floor(u));
    if (i1 - 1 < 0 || i1 + 2 > g.n[static_cast<std::size_t>(a)] - 1) {
      throw std::out_of_range("interpolation stencil leaves the grid");
    }
    base[static_cast<std::size_t>(a)] = i1 - 1;
    w[static_cast<std::size_t>(a)] = lagrange_weights(u - i1);
  }
  Complex sum{};
  for (int c = 0; c < 4; ++c) {
    Complex plane{};
    for (int b = 0; b < 4; ++b) {
      Complex row{};
      for (int a = 0; a < 4; ++a) row += w[0][static_cast<std::size_t>(a)] * psi.at(base[0] + a, base[1] + b, base[2] + c);
      plane += w[1][static_cast<std::size_t>(b)] * row;
    }
    sum += w[2][static_cast<std::size_t>(c)] * plane;
  }
  return sum;
}

SphericalSpectrum spherical_spectrum(const Wavefunction& delta_psi, const SpectrumOptions& options) {
  const int l_max = options.l_max;
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
  if (options.n_radial < 1) throw std::invalid_argument("n_radial must be positive");
  const int n_theta = options.n_theta > 0 ? options.n_theta : 2 * l_max + 8;
  const int n_phi = options.n_phi > 0 ? options.n_phi : 4 * l_max + 16;
  if (n_theta < l_max + 1 || n_phi < 2 * l_max + 1) {
    throw std::invalid_argument("angular mesh " + std::to_string(n_theta) + "x" + std::to_string(n_phi) +
                                " cannot resolve l_max = " + std::to_string(l_max));
  }
  const tdse::GridSpec& g = delta_psi.grid();
  const double centers[3] = {g.center.x, g.center.y, g.center.z};
  for (int a = 0; a < 3; ++a) {
    if (std::abs(centers[a]) + options.r_max + 2.0 * g.h > g.half_extent(a)) {
      throw std::invalid_argument("r_max reaches the grid edge");
    }
  }

  const GaussRule radial = gauss_legendre(options.n_radial, 0.0, options.r_max);
  const GaussRule polar = gauss_legendre(n_theta, -1.0, 1.0);
  std::vector<double> theta(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) theta[static_cast<std::size_t>(i)] = std::acos(polar.x[static_cast<std::size_t>(i)]);
  const double dphi = 2.0 * kPi / n_phi;

  // Real Legendre factors Ŷ_{L,M}(θ_i) with Y_L^M = Ŷ e^{iMφ}.
  std::vector<HarmonicIndex> channels;
  for (int L = 0; L <= l_max; ++L) {
    for (int M = -L; M <= L; ++M) channels.push_back({L, M});
  }
  std::vector<double> legendre(channels.size() * static_cast<std::size_t>(n_theta));
  for (std::size_t c = 0; c < channels.size(); ++c) {
    for (int i = 0; i < n_theta; ++i) {
      legendre[c * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(i)] =
          angular::spherical_harmonic(channels[c].L, channels[c].M, theta[static_cast<std::size_t>(i)], 0.0).real();
    }
  }

  const std::size_t n_shell = static_cast<std::size_t>(options.n_radial);
  std::vector<double> shell_p(n_shell * channels.size(), 0.0);
  std::vector<double> shell_norm(n_shell, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < n_shell; ++s) {
    const double r = radial.x[s];
    // F_M(θ_i) = ∫ δψ e^{−iMφ} dφ
    std::vector<Complex> fourier(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(2 * l_max + 1));
    std::vector<Complex> ring(static_cast<std::size_t>(n_phi));
    double sphere_norm = 0.0;
    for (int i = 0; i < n_theta; ++i) {
      const double st = std::sin(theta[static_cast<std::size_t>(i)]);
      const double ct = std::cos(theta[static_cast<std::size_t>(i)]);
      double ring_norm = 0.0;
      for (int j = 0; j < n_phi; ++j) {
        const double phi = j * dphi;
        ring[static_cast<std::size_t>(j)] = interpolate(delta_psi, {r * st * std::cos(phi), r * st * std::sin(phi), r * ct});
        ring_norm += std::norm(ring[static_cast<std::size_t>(j)]);
      }
      sphere_norm += polar.w[static_cast<std::size_t>(i)] * ring_norm * dphi;
      for (int m = -l_max; m <= l_max; ++m) {
        Complex acc{};
        for (int j = 0; j < n_phi; ++j) acc += ring[static_cast<std::size_t>(j)] * std::polar(1.0, -m * j * dphi);
        fourier[static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * l_max + 1) +
                static_cast<std::size_t>(m + l_max)] = acc * dphi;
      }
    }
    shell_norm[s] = sphere_norm;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      Complex u{};
      for (int i = 0; i < n_theta; ++i) {
        u += polar.w[static_cast<std::size_t>(i)] *
             legendre[c * static_cast<std::size_t>(n_theta) + static_cast<std::size_t>(i)] *
             fourier[static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * l_max + 1) +
                     static_cast<std::size_t>(channels[c].M + l_max)];
      }
      shell_p[s * channels.size() + c] = std::norm(u);
    }
  }

  SphericalSpectrum out;
  out.l_max = l_max;
  out.r_max = options.r_max;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    double p = 0.0;
    for (std::size_t s = 0; s < n_shell; ++s) p += radial.w[s] * radial.x[s] * radial.x[s] * shell_p[s * channels.size() + c];
    out.entries[channels[c]] = p;
  }
  for (std::size_t s = 0; s < n_shell; ++s) out.ball_norm += radial.w[s] * radial.x[s] * radial.x[s] * shell_norm[s];
  return out;
}

SphericalSpectrum spherical_spectrum(const Wavefunction& delta_psi, int l_max, int n_radial, double r_max) {
  SpectrumOptions options;
  options.l_max = l_max;
  options.n_radial = n_radial;
  options.r_max = r_max;
  return spherical_spectrum(delta_psi, options);
}

}  // namespace oamion::analysis
