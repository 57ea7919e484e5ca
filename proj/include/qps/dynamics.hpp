#pragma once

#include <cstddef>
#include <vector>

#include "qps/cohen.hpp"
#include "qps/grid.hpp"
#include "qps/wavefunction.hpp"

namespace qps {

// Sampled potential with an optional exact quadratic description
// V = a + b x + c x^2 (the Moyal bracket closes on classical flow for these).
struct Potential {
  SpatialGrid grid;
  std::vector<double> values;
  bool quadratic = false;
  double a = 0.0, b = 0.0, c = 0.0;

  static Potential free_particle(const SpatialGrid& grid);
  static Potential quadratic_potential(const SpatialGrid& grid, double a, double b, double c);
  // V = (1/2) m omega^2 (x - center)^2
  static Potential harmonic(const SpatialGrid& grid, const PhysicalConstants& constants,
                            double omega, double center = 0.0);
  static Potential from_samples(const SpatialGrid& grid, std::vector<double> samples);
};

struct StabilityReport {
  double potential_phase_per_step = 0.0;  // dt max|V| / hbar
  double kinetic_phase_per_step = 0.0;    // dt hbar k_max^2 / (2 m)
  bool ok = false;                        // advisory: potential phase below 0.5 rad
};

struct EvolutionResult {
  std::vector<WaveFunction> snapshots;  // t = 0 first, final state last
  std::vector<double> times;
  StabilityReport stability;
  double norm_drift = 0.0;
};

// Strang-split kinetic/potential stepping.  Snapshots every
// `snapshot_every` steps (0 keeps only the endpoints).  Aborts with
// BoundaryDecayViolated (and the step index) if the state reaches the grid
// edges mid-run.
EvolutionResult split_step_evolve(const WaveFunction& psi0, const Potential& V, double dt,
                                  std::size_t steps, std::size_t snapshot_every = 0);

enum class TransportMethod { spectral_shear, bilinear };

// Wigner evolution for quadratic Hamiltonians: transport along the backward
// classical flow.  spectral_shear realizes the affine flow exactly (to
// spectral accuracy) as FFT-based shear/shift passes; bilinear interpolates
// on the source grid (O(h^2), kept for comparison runs).
QuasiDistribution moyal_evolve_quadratic(const QuasiDistribution& F0, const Potential& V,
                                         double t,
                                         TransportMethod method = TransportMethod::spectral_shear);

}  // namespace qps
