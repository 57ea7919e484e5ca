#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qps/grid.hpp"
#include "qps/wavefunction.hpp"

namespace qps {

// Polar form psi = R exp(i S / hbar).  S is the unwrapped phase scaled by
// hbar, anchored so that S at the amplitude maximum equals the principal
// argument there (times hbar).  Points with R below the node threshold are
// masked; phase information is unreliable there.
struct PolarFields {
  SpatialGrid grid;
  PhysicalConstants constants;
  std::vector<double> amplitude;       // R
  std::vector<double> action;          // S
  std::vector<std::uint8_t> node_mask;
  double node_threshold = 0.0;  // absolute threshold applied

  bool masked(std::size_t j) const { return node_mask[j] != 0; }
  WaveFunction recombine() const;
};

// node_threshold_rel is relative to max R.
PolarFields polar_decompose(const WaveFunction& psi, double node_threshold_rel = 1e-8);

struct QuantumPotentialField {
  SpatialGrid grid;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;

  double at(std::size_t j) const {
    if (mask[j]) throw MaskedRegion("quantum potential requested at a masked point");
    return values[j];
  }
};

// Q = -(hbar^2 / 2m) R'' / R, amplitude form (spectral second derivative).
QuantumPotentialField quantum_potential(const PolarFields& pf, const PhysicalConstants& c);
// Same quantity from the probability density P = R^2.
QuantumPotentialField quantum_potential_from_density(const PolarFields& pf,
                                                     const PhysicalConstants& c);

// dS/dx computed as hbar * Im(conj(psi) psi') / R^2 with a spectral psi'.
// This avoids differentiating the non-periodic S directly.  Masked points
// are zero.
std::vector<double> action_derivative(const PolarFields& pf);

struct BohmResiduals {
  double continuity_linf = 0.0;
  double hamilton_jacobi_linf = 0.0;
};

// L-infinity residuals of the continuity and quantum Hamilton-Jacobi
// equations over a uniformly sampled series (central differences in time,
// spectral x-derivatives).  Evaluated where R >= trust_rel * max R.
BohmResiduals bohm_residuals(const std::vector<PolarFields>& series, std::span<const double> V,
                             const PhysicalConstants& c, double dt, double trust_rel = 1e-3);

// Section form of F^B(x, p) = R^2(x) delta(p - dS/dx(x)): the singular
// distribution is stored as (density, momentum section), not rasterized.
struct BohmDistribution {
  SpatialGrid grid;
  std::vector<double> density;
  std::vector<double> momentum_section;
  std::vector<std::uint8_t> mask;

  double section_at(std::size_t j) const {
    if (mask[j]) throw MaskedRegion("momentum section requested at a masked point");
    return momentum_section[j];
  }
};

BohmDistribution bohm_distribution(const PolarFields& pf);

// Lossy export: each x column's mass assigned to the nearest p bin.
std::vector<double> rasterize(const BohmDistribution& bd, const PhaseSpaceGrid& grid);

struct TrajectoryEnsemble {
  std::vector<double> times;
  std::vector<double> initial_positions;
  std::vector<std::vector<double>> positions;  // positions[i][k] at times[k]
};

// Integrates m dx/dt = dS/dx along a sampled series of polar fields
// (RK4, cubic spatial interpolation, linear temporal interpolation).
// Distinct ordered trajectories must stay ordered.
TrajectoryEnsemble bohmian_trajectories(const std::vector<PolarFields>& series, double dt_fields,
                                        std::span<const double> initial_xs);

// Transports the section form along the characteristics of H + Q.
// `potential_plus_q` holds V + Q sampled at uniform dt_fields over
// [0, t_final].
BohmDistribution evolve_bohm_distribution(const BohmDistribution& bd0,
                                          const std::vector<std::vector<double>>& potential_plus_q,
                                          double dt_fields, double t_final,
                                          const SpatialGrid& grid, const PhysicalConstants& c,
                                          double trust_rel = 1e-8);

}  // namespace qps
