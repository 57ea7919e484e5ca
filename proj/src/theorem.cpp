#include "qps/theorem.hpp"

#include <algorithm>
#include <cmath>

#include "qps/field_ops.hpp"
#include "qps/spectral.hpp"

namespace qps {

std::pair<bool, bool> verify_kernel_constraints(const CohenKernel& kernel,
                                                const UniformGrid& xi_grid,
                                                const UniformGrid& eta_grid, double tol) {
  bool row_one = true;
  for (std::size_t k = 0; k < xi_grid.n; ++k) {
    if (std::abs(kernel.evaluate(xi_grid.value(k), 0.0) - cplx{1.0, 0.0}) > tol) {
      row_one = false;
      break;
    }
  }
  const double h = eta_grid.spacing;
  const cplx deriv = (kernel.evaluate(0.0, h) - kernel.evaluate(0.0, -h)) / (2.0 * h);
  return {row_one, std::abs(deriv) <= tol};
}

QuasiDistribution causal_form(const PolarFields& pf, const CohenKernel& kernel) {
  const PhaseSpaceGrid ps(pf.grid, pf.constants.hbar);
  const auto flags = verify_kernel_constraints(kernel, pf.grid.xi_grid(), ps.y_grid());
  if (!flags.first || !flags.second) {
    throw KernelConstraintsViolated("causal_form: kernel fails f(xi,0)=1 or df/deta(0,0)=0");
  }
  QuasiDistribution standard = star::sandwich_standard(pf);
  if (kernel.tag() == KernelTag::standard) return standard;
  return gauge_transform(standard, kernel);
}

CausalFormReport causal_form_report(const WaveFunction& psi, const CohenKernel& kernel) {
  CausalFormReport report;
  report.kernel_name = kernel.name();
  report.hbar = psi.constants.hbar;
  report.grid = psi.grid;
  const PhaseSpaceGrid ps(psi.grid, psi.constants.hbar);
  report.constraints = verify_kernel_constraints(kernel, psi.grid.xi_grid(), ps.y_grid());
  if (!report.constraints.first || !report.constraints.second) {
    report.skipped = true;
    return report;
  }
  const PolarFields pf = polar_decompose(psi);
  const QuasiDistribution causal = causal_form(pf, kernel);
  const QuasiDistribution direct = cohen_transform(psi, kernel);
  report.linf = linf_diff(std::span<const cplx>(causal.values), std::span<const cplx>(direct.values));
  report.l2 = l2_diff(std::span<const cplx>(causal.values), std::span<const cplx>(direct.values),
                      ps.x.dx() * ps.dp());
  return report;
}

ExpansionReport hbar_expansion_check(const PolarFields& pf, std::span<const double> hbar_list,
                                     double y_max, std::size_t n_y, double x_trust_rel) {
  const SpatialGrid& grid = pf.grid;
  const UniformGrid xg = grid.as_uniform();
  const std::size_t n = grid.n;

  const double max_r = linf(std::span<const double>(pf.amplitude));
  const double r_floor = x_trust_rel * max_r;
  double hbar_max = 0.0;
  for (double h : hbar_list) hbar_max = std::max(hbar_max, h);
  const double max_shift = 0.5 * hbar_max * y_max;

  std::vector<std::size_t> xs;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.x(j);
    if (pf.amplitude[j] >= r_floor && x - max_shift > grid.x_min &&
        x + max_shift < grid.x(n - 1)) {
      xs.push_back(j);
    }
  }
  if (xs.empty()) throw ConfigError("hbar_expansion_check: empty evaluation window");

  ExpansionReport report;
  for (double hbar : hbar_list) {
    double dev = 0.0;
    for (std::size_t j : xs) {
      const double x = grid.x(j);
      const double r0 = pf.amplitude[j];
      const double sx = cubic_interpolate_derivative(pf.action, xg, x);
      for (std::size_t iy = 0; iy < n_y; ++iy) {
        const double y = -y_max + 2.0 * y_max * static_cast<double>(iy) /
                                      static_cast<double>(n_y - 1);
        const double shift = 0.5 * hbar * y;
        const double r_minus = cubic_interpolate(pf.amplitude, xg, x - shift);
        const double r_plus = cubic_interpolate(pf.amplitude, xg, x + shift);
        const double s_minus = cubic_interpolate(pf.action, xg, x - shift);
        const double s_plus = cubic_interpolate(pf.action, xg, x + shift);
        const double phase_w = (s_plus - s_minus) / hbar;
        const cplx k_wigner = r_minus * r_plus * cplx{std::cos(phase_w), std::sin(phase_w)};
        const double phase_b = y * sx;
        const cplx k_bohm = r0 * r0 * cplx{std::cos(phase_b), std::sin(phase_b)};
        dev = std::max(dev, std::abs(k_wigner - k_bohm));
      }
    }
    report.points.push_back({hbar, dev});
  }

  // Least-squares slope of log D against log hbar.
  bool all_positive = true;
  for (const auto& pt : report.points) all_positive = all_positive && pt.deviation > 0.0;
  if (all_positive && report.points.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto m = static_cast<double>(report.points.size());
    for (const auto& pt : report.points) {
      const double lx = std::log(pt.hbar);
      const double ly = std::log(pt.deviation);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    report.slope_defined = true;
  }
  return report;
}

BohmDistribution classical_limit_distribution(const SpatialGrid& grid,
                                              std::span<const double> R_cl,
                                              std::span<const double> S_cl) {
  if (R_cl.size() != grid.n || S_cl.size() != grid.n)
    throw ConfigError("classical_limit_distribution: field sizes do not match the grid");
  BohmDistribution bd{grid, std::vector<double>(grid.n), fd_derivative(S_cl, grid.dx()),
                      std::vector<std::uint8_t>(grid.n, 0)};
  for (std::size_t j = 0; j < grid.n; ++j) bd.density[j] = R_cl[j] * R_cl[j];
  return bd;
}

}  // namespace qps
