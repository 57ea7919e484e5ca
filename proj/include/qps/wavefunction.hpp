#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qps/grid.hpp"

namespace qps {

using cplx = std::complex<double>;

// Periodic spectral grids require decayed amplitudes at the edges; this is
// a checked precondition of every transform, not a silent error source.
inline constexpr double kBoundaryDecayThreshold = 1e-10;

struct WaveFunction {
  SpatialGrid grid;
  PhysicalConstants constants;
  std::vector<cplx> values;
};

// Wavefunction in the momentum representation, on the hbar-scaled dual grid.
struct MomentumWaveFunction {
  UniformGrid p_grid;
  PhysicalConstants constants;
  std::vector<cplx> values;
};

// Free Gaussian packet parameters: width sigma0 at t = 0, mean momentum p0,
// evaluated after free evolution for a lapse t.
struct GaussianPacketParams {
  double sigma0 = 1.0;
  double p0 = 0.0;
  double t = 0.0;
};

double l2_norm(const WaveFunction& psi);
double l2_norm(const MomentumWaveFunction& phi);

// Rescales to unit L2 norm.  Throws ZeroField on an all-zero field.
WaveFunction normalize(WaveFunction psi);

// Throws BoundaryDecayViolated unless |psi| at both edges is below
// kBoundaryDecayThreshold.
void check_boundary_decay(const WaveFunction& psi);

// Samples the freely evolved Gaussian packet on the grid.
// Throws BoundaryDecayViolated if the packet does not fit.
WaveFunction make_gaussian(const GaussianPacketParams& params, const SpatialGrid& grid,
                           const PhysicalConstants& constants);

// phi(p) = (2 pi hbar)^(-1/2) Integral psi(x) exp(-i x p / hbar) dx,
// on the natural dual grid (spacing 2 pi hbar / (n dx)).
MomentumWaveFunction to_momentum(const WaveFunction& psi);

// Inverse of to_momentum back onto `grid`.
WaveFunction from_momentum(const MomentumWaveFunction& phi, const SpatialGrid& grid);

// phi(p) evaluated on an arbitrary zero-centered p grid whose spacing is an
// integer refinement of the natural one (used for phase-space p grids).
std::vector<cplx> momentum_amplitude_on(const WaveFunction& psi, const UniformGrid& p_grid);

// FNV-1a digest of grid metadata and sample bytes; identifies source states
// in exported metadata.
std::uint64_t state_digest(const WaveFunction& psi);

}  // namespace qps
