#pragma once

#include <cstddef>
#include <numbers>

#include "qps/errors.hpp"

namespace qps {

// A uniform 1D grid: points value(i) = min + i*spacing, i = 0..n-1.
struct UniformGrid {
  double min = 0.0;
  double spacing = 1.0;
  std::size_t n = 0;

  double value(std::size_t i) const { return min + static_cast<double>(i) * spacing; }
  double max() const { return value(n - 1); }
  double length() const { return spacing * static_cast<double>(n); }

  // Symmetric grid of n points centered on zero: (i - n/2)*spacing.
  static UniformGrid centered(std::size_t n, double spacing) {
    return {-(static_cast<double>(n / 2)) * spacing, spacing, n};
  }

  // Fourier-dual grid under the convention spacing_dual * spacing * n = 2*pi.
  // Dual grids are always zero-centered.
  UniformGrid dual() const {
    const double dual_spacing = 2.0 * std::numbers::pi / (spacing * static_cast<double>(n));
    return centered(n, dual_spacing);
  }

  bool operator==(const UniformGrid&) const = default;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Spatial grid over [x_min, x_max) with n a power of two (transform efficiency).
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  SpatialGrid() = default;
  SpatialGrid(double xmin, double xmax, std::size_t npts) : x_min(xmin), x_max(xmax), n(npts) {
    if (!(x_max > x_min)) throw ConfigError("SpatialGrid: x_max must exceed x_min");
    if (!is_power_of_two(n)) throw ConfigError("SpatialGrid: n must be a power of two");
  }

  double dx() const { return (x_max - x_min) / static_cast<double>(n); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double length() const { return x_max - x_min; }

  UniformGrid as_uniform() const { return {x_min, dx(), n}; }
  // Dual frequency grid (xi), zero-centered, spacing 2*pi/(n*dx).
  UniformGrid xi_grid() const { return as_uniform().dual(); }

  bool operator==(const SpatialGrid&) const = default;
};

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalConstants() = default;
  PhysicalConstants(double hb, double m) : hbar(hb), mass(m) {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw ConfigError("PhysicalConstants: hbar and mass must be positive");
  }

  bool operator==(const PhysicalConstants&) const = default;
};

// Phase-space grid used by quasi-distributions.
//
// The p axis is the transform dual of the integer-shift variable
// y (spacing dy = 2*dx/hbar), so dp = pi*hbar/(n*dx) and the p grid is
// zero-centered with n points.  This makes half-shifted products
// psi*(x - hbar*y/2) psi(x + hbar*y/2) exact grid evaluations.
struct PhaseSpaceGrid {
  SpatialGrid x;
  double hbar = 1.0;

  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(const SpatialGrid& xg, double hb) : x(xg), hbar(hb) {
    if (!(hbar > 0.0)) throw ConfigError("PhaseSpaceGrid: hbar must be positive");
  }

  UniformGrid y_grid() const { return UniformGrid::centered(x.n, 2.0 * x.dx() / hbar); }
  UniformGrid p_grid() const { return y_grid().dual(); }
  double dp() const { return p_grid().spacing; }

  std::size_t size() const { return x.n * x.n; }
  // Row-major storage, x outer: index(ix, ip) = ix*n + ip.
  std::size_t index(std::size_t ix, std::size_t ip) const { return ix * x.n + ip; }

  bool operator==(const PhaseSpaceGrid&) const = default;
};

}  // namespace qps
