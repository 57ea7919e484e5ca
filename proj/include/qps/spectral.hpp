#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qps/grid.hpp"

namespace qps {

using cplx = std::complex<double>;

// Unnormalized in-place DFT of length n (power of two enforced by grids).
// sign = -1: sum_j g[j] e^{-2 pi i j k / n}  (FFTW forward)
// sign = +1: sum_j g[j] e^{+2 pi i j k / n}
void dft_inplace(cplx* data, std::size_t n, int sign);

// Continuous-convention transform onto the dual grid of `src`:
//   out[m] = src.spacing * sum_j g[j] exp(sign * i * k_m * x_j)
// with k_m = src.dual().value(m), x_j = src.value(j).
std::vector<cplx> to_dual(std::span<const cplx> g, const UniformGrid& src, int sign);

// Inverse of to_dual (with the opposite sign):
//   out[j] = (dual.spacing / 2 pi) * sum_m G[m] exp(sign * i * k_m * x_j)
std::vector<cplx> from_dual(std::span<const cplx> G, const UniformGrid& src, int sign);

// Spectral derivative of a periodic field sampled on `grid`.
// The Nyquist mode is zeroed for odd orders.
std::vector<cplx> spectral_derivative(std::span<const cplx> g, const UniformGrid& grid,
                                      unsigned order);
std::vector<double> spectral_derivative(std::span<const double> g, const UniformGrid& grid,
                                        unsigned order);

enum class OutOfRange { error, clamp, zero };

// 4-point (cubic Lagrange) interpolation on a uniform grid.
double cubic_interpolate(std::span<const double> values, const UniformGrid& grid, double x,
                         OutOfRange policy = OutOfRange::error);

// Derivative of the same cubic interpolant (exact for polynomials <= 3).
double cubic_interpolate_derivative(std::span<const double> values, const UniformGrid& grid,
                                    double x);

// 4th-order finite-difference first derivative with one-sided 5-point edge
// stencils; safe for non-periodic fields (exact on polynomials <= 4).
std::vector<double> fd_derivative(std::span<const double> f, double dx);

// Chunked parallel loop; degree <= 1 runs inline.  Chunks are disjoint
// index ranges, so writers to disjoint output slices need no locking.
void parallel_for(std::size_t count, unsigned degree,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Parallelism degree used by grid transforms (default: hardware concurrency;
// override with set_parallel_degree or the QPS_THREADS environment variable).
unsigned parallel_degree();
void set_parallel_degree(unsigned d);

}  // namespace qps
