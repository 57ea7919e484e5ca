#include "qps/star_grid.hpp"

#include <cmath>

#include "qps/spectral.hpp"

namespace qps::star {
namespace {

using qps::cplx;

// hbar * y must be an integer number of grid steps.
std::ptrdiff_t shift_steps(double hbar_y, double dx) {
  const double steps = hbar_y / dx;
  const auto s = static_cast<std::ptrdiff_t>(std::llround(steps));
  if (std::abs(steps - static_cast<double>(s)) > 1e-9)
    throw qps::ConfigError("star grid: y grid is not commensurate with the spatial grid");
  return s;
}

cplx polar_value(const qps::PolarFields& pf, std::ptrdiff_t j) {
  const double theta = pf.action[static_cast<std::size_t>(j)] / pf.constants.hbar;
  return pf.amplitude[static_cast<std::size_t>(j)] * cplx{std::cos(theta), std::sin(theta)};
}

}  // namespace

std::vector<cplx> mixed_to_phase_space(const MixedField& mf) {
  const std::size_t n = mf.x_grid.n;
  const std::size_t ny = mf.y_grid.n;
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
  std::vector<cplx> out(n * ny);
  qps::parallel_for(n, qps::parallel_degree(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      std::vector<cplx> row(mf.values.begin() + static_cast<std::ptrdiff_t>(j * ny),
                            mf.values.begin() + static_cast<std::ptrdiff_t>((j + 1) * ny));
      std::vector<cplx> prow = qps::to_dual(row, mf.y_grid, -1);
      for (std::size_t l = 0; l < ny; ++l) out[j * ny + l] = inv_two_pi * prow[l];
    }
  });
  return out;
}

MixedField star_delta_standard(const qps::PolarFields& pf, const UniformGrid& y_grid,
                               std::size_t x_begin, std::size_t x_end) {
  const SpatialGrid& grid = pf.grid;
  const double dx = grid.dx();
  const double hbar = pf.constants.hbar;
  if (x_end > grid.n || x_begin >= x_end)
    throw qps::ConfigError("star_delta_standard: bad x window");

  const double y_max = std::max(std::abs(y_grid.value(0)), std::abs(y_grid.value(y_grid.n - 1)));
  const double margin_left = grid.x(x_begin) - grid.x_min;
  const double margin_right = grid.x(grid.n - 1) - grid.x(x_end - 1);
  if (hbar * y_max > std::min(margin_left, margin_right) + 1e-12) {
    throw qps::YRangeInsufficient(
        "star_delta_standard: hbar * y_max exceeds the window's distance to the grid edge");
  }

  MixedField out{UniformGrid{grid.x(x_begin), dx, x_end - x_begin}, y_grid,
                 std::vector<cplx>((x_end - x_begin) * y_grid.n),
                 std::vector<std::uint8_t>((x_end - x_begin) * y_grid.n, 1)};

  for (std::size_t jw = 0; jw < x_end - x_begin; ++jw) {
    const std::size_t j = x_begin + jw;
    for (std::size_t m = 0; m < y_grid.n; ++m) {
      const std::ptrdiff_t s = shift_steps(hbar * y_grid.value(m), dx);
      const auto js = static_cast<std::ptrdiff_t>(j) + s;
      if (js < 0 || js >= static_cast<std::ptrdiff_t>(grid.n))
        throw qps::YRangeInsufficient("star_delta_standard: shifted evaluation left the domain");
      const double dS = pf.action[static_cast<std::size_t>(js)] - pf.action[j];
      const double phase = dS / hbar;
      out.values[jw * y_grid.n + m] = cplx{std::cos(phase), std::sin(phase)};
    }
  }
  return out;
}

qps::QuasiDistribution sandwich_standard(const qps::PolarFields& pf) {
  const SpatialGrid& grid = pf.grid;
  const std::size_t n = grid.n;
  const double hbar = pf.constants.hbar;
  const qps::PhaseSpaceGrid ps(grid, hbar);
  const UniformGrid yg = ps.y_grid();
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);

  qps::QuasiDistribution out{ps, pf.constants, qps::CohenKernel::standard(hbar),
                             std::vector<cplx>(n * n), 0};
  const auto sn = static_cast<std::ptrdiff_t>(n);
  qps::parallel_for(n, qps::parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n);
    for (std::size_t j = begin; j < end; ++j) {
      const cplx left = std::conj(polar_value(pf, static_cast<std::ptrdiff_t>(j)));
      for (std::size_t m = 0; m < n; ++m) {
        // hbar * y_m = 2 (m - n/2) dx exactly on this y grid.
        const std::ptrdiff_t s = 2 * (static_cast<std::ptrdiff_t>(m) - sn / 2);
        const std::ptrdiff_t js = static_cast<std::ptrdiff_t>(j) + s;
        row[m] = (js >= 0 && js < sn) ? left * polar_value(pf, js) : cplx{0.0, 0.0};
      }
      std::vector<cplx> prow = qps::to_dual(row, yg, -1);
      for (std::size_t l = 0; l < n; ++l) out.values[j * n + l] = inv_two_pi * prow[l];
    }
  });
  return out;
}

MixedField weyl_delta_kernel(const qps::PolarFields& pf) {
  const SpatialGrid& grid = pf.grid;
  const std::size_t n = grid.n;
  const double hbar = pf.constants.hbar;
  const qps::PhaseSpaceGrid ps(grid, hbar);
  const UniformGrid yg = ps.y_grid();
  MixedField out{grid.as_uniform(), yg, std::vector<cplx>(n * n, cplx{0.0, 0.0}),
                 std::vector<std::uint8_t>(n * n, 0)};
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(m) - sn / 2;  // hbar y/2 = h dx
      const std::ptrdiff_t jm = static_cast<std::ptrdiff_t>(j) - h;
      const std::ptrdiff_t jp = static_cast<std::ptrdiff_t>(j) + h;
      if (jm < 0 || jm >= sn || jp < 0 || jp >= sn) continue;
      const double phase = (pf.action[static_cast<std::size_t>(jp)] -
                            pf.action[static_cast<std::size_t>(jm)]) /
                           hbar;
      out.values[j * n + m] = cplx{std::cos(phase), std::sin(phase)};
      out.valid[j * n + m] = 1;
    }
  }
  return out;
}

MixedField weyl_sandwich_kernel(const qps::PolarFields& pf) {
  MixedField out = weyl_delta_kernel(pf);
  const std::size_t n = pf.grid.n;
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      if (!out.valid[j * n + m]) continue;
      const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(m) - sn / 2;
      const std::ptrdiff_t jm = static_cast<std::ptrdiff_t>(j) - h;
      const std::ptrdiff_t jp = static_cast<std::ptrdiff_t>(j) + h;
      out.values[j * n + m] *= pf.amplitude[static_cast<std::size_t>(jm)] *
                               pf.amplitude[static_cast<std::size_t>(jp)];
    }
  }
  return out;
}

namespace {

// 6th-order centered first derivative along one stride.
void fd6_along(const std::vector<cplx>& in, std::vector<cplx>& dst, std::size_t count,
               std::size_t stride, std::size_t fixed_count, std::size_t fixed_stride, double h) {
  const double c1 = 3.0 / 4.0, c2 = -3.0 / 20.0, c3 = 1.0 / 60.0;
  for (std::size_t f = 0; f < fixed_count; ++f) {
    for (std::size_t i = 3; i + 3 < count; ++i) {
      const std::size_t base = f * fixed_stride + i * stride;
      dst[base] = (c1 * (in[base + stride] - in[base - stride]) +
                   c2 * (in[base + 2 * stride] - in[base - 2 * stride]) +
                   c3 * (in[base + 3 * stride] - in[base - 3 * stride])) /
                  h;
    }
  }
}

}  // namespace

MixedField left_star_multiply_p(const MixedField& G, const qps::PhysicalConstants& c) {
  const std::size_t nx = G.values.size() / G.y_grid.n;
  const std::size_t ny = G.y_grid.n;
  MixedField out{G.x_grid, G.y_grid, std::vector<cplx>(G.values.size(), cplx{0.0, 0.0}),
                 std::vector<std::uint8_t>(G.values.size(), 0)};

  std::vector<cplx> dKdy(G.values.size(), cplx{0.0, 0.0});
  std::vector<cplx> dKdx(G.values.size(), cplx{0.0, 0.0});
  fd6_along(G.values, dKdy, ny, 1, nx, ny, G.y_grid.spacing);
  fd6_along(G.values, dKdx, nx, ny, ny, 1, G.x_grid.spacing);

  const cplx mi{0.0, -1.0};
  const cplx ih{0.0, c.hbar};
  for (std::size_t j = 0; j < nx; ++j) {
    for (std::size_t m = 0; m < ny; ++m) {
      const std::size_t idx = j * ny + m;
      const bool interior = j >= 3 && j + 3 < nx && m >= 3 && m + 3 < ny;
      if (!interior || !G.valid[idx]) continue;
      out.values[idx] = mi * dKdy[idx] + ih * dKdx[idx];
      out.valid[idx] = 1;
    }
  }
  return out;
}

MixedField left_star_multiply_xfree(const MixedField& G, std::span<const double> g) {
  MixedField out = G;
  const std::size_t ny = G.y_grid.n;
  const std::size_t nx = G.values.size() / ny;
  for (std::size_t j = 0; j < nx; ++j) {
    for (std::size_t m = 0; m < ny; ++m) out.values[j * ny + m] *= g[j];
  }
  return out;
}

StarDeltaExpansion star_delta_weyl_expansion(std::span<const double> S, const SpatialGrid& grid) {
  const double dx = grid.dx();
  // S''' by three exact-on-polynomial first-derivative passes.
  std::vector<double> d1 = qps::fd_derivative(S, dx);
  std::vector<double> d2 = qps::fd_derivative(d1, dx);
  std::vector<double> d3 = qps::fd_derivative(d2, dx);
  StarDeltaExpansion out;
  out.theta1.assign(grid.n, 0.0);  // A = p - S'(x): A_pp = A_xp = 0
  out.theta2.resize(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) out.theta2[j] = -d3[j];
  return out;
}

SymbolStarDeltaExpansion star_delta_weyl_expansion(const ExactPolynomial& A) {
  const ExactPolynomial a_x = A.derivative_x();
  const ExactPolynomial a_p = A.derivative_p();
  const ExactPolynomial a_xx = a_x.derivative_x();
  const ExactPolynomial a_xp = a_x.derivative_p();
  const ExactPolynomial a_pp = a_p.derivative_p();
  SymbolStarDeltaExpansion out;
  out.theta1 = a_xx * a_pp - a_xp * a_xp;
  out.theta2 = a_xx * (a_p * a_p) - (a_xp * a_x * a_p).scaled(RationalComplex{2}) +
               a_pp * (a_x * a_x);
  return out;
}

}  // namespace qps::star
