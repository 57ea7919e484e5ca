#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qps/bohm.hpp"
#include "qps/cohen.hpp"
#include "qps/grid.hpp"
#include "qps/star_poly.hpp"

namespace qps::star {

// Partial-Fourier representation in p: a complex field K(x, y) with
//   F(x, p) = (dy / 2 pi) sum_m K(x, y_m) exp(-i y_m p).
// x-major storage: values[j * ny + m].  `valid` marks entries whose shifted
// evaluations stayed inside the domain.
struct MixedField {
  UniformGrid x_grid;  // possibly a sub-window of the spatial grid
  UniformGrid y_grid;
  std::vector<qps::cplx> values;
  std::vector<std::uint8_t> valid;

  std::size_t index(std::size_t ix, std::size_t iy) const { return ix * y_grid.n + iy; }
};

// Transforms a MixedField on the full phase-space y grid to (x, p).
std::vector<qps::cplx> mixed_to_phase_space(const MixedField& mf);

// Standard-order star-delta  delta(p - dS/dx)  in the y representation:
//   K(x, y) = exp( (i/hbar) [S(x + hbar y) - S(x)] ),
// the resummed form of the derivative series in the exponent.  Shifted
// arguments must stay in the domain: evaluated on the x window
// [x_begin, x_end); throws YRangeInsufficient otherwise.
MixedField star_delta_standard(const qps::PolarFields& pf, const UniformGrid& y_grid,
                               std::size_t x_begin, std::size_t x_end);

// R(x) *_S' delta *_S' R(x) carried to the (x, p) grid.  The left factor is
// pointwise (R is p-free under the standard-dual product); the right factor
// shifts R's argument by hbar y.  Out-of-domain shifts contribute zero
// (suppressed by the boundary-decayed amplitude).
qps::QuasiDistribution sandwich_standard(const qps::PolarFields& pf);

// Weyl-route counterparts used by the theorem checks:
// delta kernel exp((i/hbar)[S(x + hbar y/2) - S(x - hbar y/2)]) and the full
// R(x - hbar y/2) R(x + hbar y/2) * delta kernel.
MixedField weyl_delta_kernel(const qps::PolarFields& pf);
MixedField weyl_sandwich_kernel(const qps::PolarFields& pf);

// y-kernel of the left star product p *_S' G = p G + i hbar dG/dx, i.e.
// -i dK/dy + i hbar dK/dx with 6th-order centered differences; validity
// shrinks by 3 entries at the window borders.
MixedField left_star_multiply_p(const MixedField& G, const qps::PhysicalConstants& c);

// Left star product by a p-free symbol g(x): pointwise multiplication.
MixedField left_star_multiply_xfree(const MixedField& G, std::span<const double> g);

// hbar-expansion data of the Weyl star-delta for A = p - dS/dx:
// Theta1 vanishes identically and Theta2 = -S''' (finite differences on the
// sampled phase).
struct StarDeltaExpansion {
  std::vector<double> theta1;
  std::vector<double> theta2;
  unsigned order = 2;  // retained order in hbar^2
};
StarDeltaExpansion star_delta_weyl_expansion(std::span<const double> S, const SpatialGrid& grid);

// Exact route for polynomial symbols A(x, p):
//   Theta1 = A_xx A_pp - A_xp^2
//   Theta2 = A_xx A_p^2 - 2 A_xp A_x A_p + A_pp A_x^2
struct SymbolStarDeltaExpansion {
  ExactPolynomial theta1;
  ExactPolynomial theta2;
};
SymbolStarDeltaExpansion star_delta_weyl_expansion(const ExactPolynomial& A);

}  // namespace qps::star
