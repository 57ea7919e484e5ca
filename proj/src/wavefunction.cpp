#include "qps/wavefunction.hpp"

#include <cmath>
#include <cstring>

#include "qps/field_ops.hpp"
#include "qps/spectral.hpp"

namespace qps {

double l2_norm(const WaveFunction& psi) {
  const std::vector<double> density = abs_squared(psi.values);
  return std::sqrt(integrate(std::span<const double>(density), psi.grid.dx()));
}

double l2_norm(const MomentumWaveFunction& phi) {
  const std::vector<double> density = abs_squared(phi.values);
  return std::sqrt(integrate(std::span<const double>(density), phi.p_grid.spacing));
}

WaveFunction normalize(WaveFunction psi) {
  const double norm = l2_norm(psi);
  if (!(norm > 0.0)) throw ZeroField("normalize: field has zero L2 norm");
  simd::cscale(psi.values.data(), psi.values.data(), cplx{1.0 / norm, 0.0}, psi.values.size());
  return psi;
}

void check_boundary_decay(const WaveFunction& psi) {
  const double lo = std::abs(psi.values.front());
  const double hi = std::abs(psi.values.back());
  if (lo > kBoundaryDecayThreshold || hi > kBoundaryDecayThreshold) {
    throw BoundaryDecayViolated("wavefunction magnitude at grid edges exceeds 1e-10");
  }
}

WaveFunction make_gaussian(const GaussianPacketParams& params, const SpatialGrid& grid,
                           const PhysicalConstants& constants) {
  if (!(params.sigma0 > 0.0)) throw ConfigError("make_gaussian: sigma0 must be positive");
  const double hbar = constants.hbar;
  const double u = params.p0 / constants.mass;
  const double tau = hbar * params.t / (2.0 * constants.mass * params.sigma0 * params.sigma0);
  const cplx s_t = params.sigma0 * cplx{1.0, tau};
  // (2 pi s_t^2)^(-1/4) on the branch continuous from t = 0 (Re s_t > 0).
  const cplx prefactor = std::pow(2.0 * std::numbers::pi, -0.25) * std::exp(-0.5 * std::log(s_t));

  WaveFunction psi{grid, constants, std::vector<cplx>(grid.n)};
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double xs = grid.x(j) - u * params.t;
    const cplx arg = -xs * xs / (4.0 * params.sigma0 * s_t) +
                     cplx{0.0, params.p0 * (grid.x(j) - 0.5 * u * params.t) / hbar};
    psi.values[j] = prefactor * std::exp(arg);
  }
  check_boundary_decay(psi);
  return psi;
}

MomentumWaveFunction to_momentum(const WaveFunction& psi) {
  const UniformGrid xg = psi.grid.as_uniform();
  std::vector<cplx> freq = to_dual(psi.values, xg, -1);
  const double hbar = psi.constants.hbar;
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
  simd::cscale(freq.data(), freq.data(), cplx{scale, 0.0}, freq.size());
  const UniformGrid xi = xg.dual();
  return MomentumWaveFunction{{xi.min * hbar, xi.spacing * hbar, xi.n}, psi.constants,
                              std::move(freq)};
}

WaveFunction from_momentum(const MomentumWaveFunction& phi, const SpatialGrid& grid) {
  const double hbar = phi.constants.hbar;
  std::vector<cplx> freq(phi.values);
  const double scale = std::sqrt(2.0 * std::numbers::pi * hbar);
  simd::cscale(freq.data(), freq.data(), cplx{scale, 0.0}, freq.size());
  std::vector<cplx> values = from_dual(freq, grid.as_uniform(), +1);
  return WaveFunction{grid, phi.constants, std::move(values)};
}

std::vector<cplx> momentum_amplitude_on(const WaveFunction& psi, const UniformGrid& p_grid) {
  const double hbar = psi.constants.hbar;
  const double dx = psi.grid.dx();
  const double total = 2.0 * std::numbers::pi * hbar / (p_grid.spacing * dx);
  const auto padded_n = static_cast<std::size_t>(std::llround(total));
  if (std::abs(total - static_cast<double>(padded_n)) > 1e-9 || padded_n < psi.grid.n) {
    throw ConfigError("momentum_amplitude_on: p grid is not a refinement of the dual grid");
  }

  std::vector<cplx> padded(padded_n, cplx{0.0, 0.0});
  std::copy(psi.values.begin(), psi.values.end(), padded.begin());
  const UniformGrid padded_grid{psi.grid.x_min, dx, padded_n};
  std::vector<cplx> freq = to_dual(padded, padded_grid, -1);

  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
  std::vector<cplx> out(p_grid.n);
  const std::size_t offset = padded_n / 2 - p_grid.n / 2;
  for (std::size_t l = 0; l < p_grid.n; ++l) out[l] = scale * freq[offset + l];
  return out;
}

std::uint64_t state_digest(const WaveFunction& psi) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const double meta[4] = {psi.grid.x_min, psi.grid.x_max, psi.constants.hbar, psi.constants.mass};
  mix(meta, sizeof(meta));
  mix(&psi.grid.n, sizeof(psi.grid.n));
  mix(psi.values.data(), psi.values.size() * sizeof(cplx));
  return h;
}

}  // namespace qps
