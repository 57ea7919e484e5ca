#include "qps/bohm.hpp"

#include <algorithm>
#include <cmath>

#include "qps/field_ops.hpp"
#include "qps/spectral.hpp"

namespace qps {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Local cubic interpolation through 4 consecutive (xs, ys) samples of a
// strictly increasing abscissa list (Neville's scheme).
double cubic_nonuniform(std::span<const double> xs, std::span<const double> ys, double x) {
  const std::size_t n = xs.size();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  auto cell = static_cast<std::ptrdiff_t>(it - xs.begin()) - 1;
  cell = std::clamp<std::ptrdiff_t>(cell, 0, static_cast<std::ptrdiff_t>(n) - 2);
  std::ptrdiff_t i0 = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  double px[4], py[4];
  for (int r = 0; r < 4; ++r) {
    px[r] = xs[static_cast<std::size_t>(i0 + r)];
    py[r] = ys[static_cast<std::size_t>(i0 + r)];
  }
  for (int level = 1; level < 4; ++level) {
    for (int r = 0; r < 4 - level; ++r) {
      py[r] = ((x - px[r + level]) * py[r] + (px[r] - x) * py[r + 1]) / (px[r] - px[r + level]);
    }
  }
  return py[0];
}

}  // namespace

WaveFunction PolarFields::recombine() const {
  WaveFunction psi{grid, constants, std::vector<cplx>(grid.n)};
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double theta = action[j] / constants.hbar;
    psi.values[j] = amplitude[j] * cplx{std::cos(theta), std::sin(theta)};
  }
  return psi;
}

PolarFields polar_decompose(const WaveFunction& psi, double node_threshold_rel) {
  const std::size_t n = psi.grid.n;
  PolarFields pf{psi.grid, psi.constants, std::vector<double>(n), std::vector<double>(n),
                 std::vector<std::uint8_t>(n), 0.0};

  double max_r = 0.0;
  std::size_t argmax = 0;
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) {
    pf.amplitude[j] = std::abs(psi.values[j]);
    theta[j] = std::arg(psi.values[j]);
    if (pf.amplitude[j] > max_r) {
      max_r = pf.amplitude[j];
      argmax = j;
    }
  }
  if (!(max_r > 0.0)) throw ZeroField("polar_decompose: zero field");
  pf.node_threshold = node_threshold_rel * max_r;
  for (std::size_t j = 0; j < n; ++j) pf.node_mask[j] = pf.amplitude[j] < pf.node_threshold;

  // Interior masked gaps split the domain into regions across which the
  // unwrap is ambiguous.  Masked bands touching the edges are fine (decay).
  std::size_t runs = 0;
  bool in_run = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (!pf.node_mask[j] && !in_run) {
      ++runs;
      in_run = true;
    } else if (pf.node_mask[j]) {
      in_run = false;
    }
  }
  if (runs == 0) throw ZeroField("polar_decompose: all points below the node threshold");
  if (runs > 1) throw NodeSplitsDomain("polar_decompose: node separates the unmasked domain");

  // 1D cumulative unwrap with 2 pi jump removal, then anchor at argmax R.
  std::vector<double> unwrapped(n);
  unwrapped[0] = theta[0];
  for (std::size_t j = 1; j < n; ++j) {
    double delta = theta[j] - theta[j - 1];
    delta -= kTwoPi * std::round(delta / kTwoPi);
    unwrapped[j] = unwrapped[j - 1] + delta;
  }
  const double offset = theta[argmax] - unwrapped[argmax];
  const double hbar = psi.constants.hbar;
  for (std::size_t j = 0; j < n; ++j) pf.action[j] = hbar * (unwrapped[j] + offset);
  return pf;
}

QuantumPotentialField quantum_potential(const PolarFields& pf, const PhysicalConstants& c) {
  const std::size_t n = pf.grid.n;
  const std::vector<double> r_xx =
      spectral_derivative(std::span<const double>(pf.amplitude), pf.grid.as_uniform(), 2);
  QuantumPotentialField q{pf.grid, std::vector<double>(n, 0.0), pf.node_mask};
  const double factor = -c.hbar * c.hbar / (2.0 * c.mass);
  for (std::size_t j = 0; j < n; ++j) {
    if (!q.mask[j]) q.values[j] = factor * r_xx[j] / pf.amplitude[j];
  }
  return q;
}

QuantumPotentialField quantum_potential_from_density(const PolarFields& pf,
                                                     const PhysicalConstants& c) {
  const std::size_t n = pf.grid.n;
  std::vector<double> density(n);
  for (std::size_t j = 0; j < n; ++j) density[j] = pf.amplitude[j] * pf.amplitude[j];
  const UniformGrid xg = pf.grid.as_uniform();
  const std::vector<double> d1 = spectral_derivative(std::span<const double>(density), xg, 1);
  const std::vector<double> d2 = spectral_derivative(std::span<const double>(density), xg, 2);
  QuantumPotentialField q{pf.grid, std::vector<double>(n, 0.0), pf.node_mask};
  const double factor = -c.hbar * c.hbar / (4.0 * c.mass);
  for (std::size_t j = 0; j < n; ++j) {
    if (q.mask[j]) continue;
    const double p = density[j];
    q.values[j] = factor * (d2[j] / p - 0.5 * d1[j] * d1[j] / (p * p));
  }
  return q;
}

std::vector<double> action_derivative(const PolarFields& pf) {
  const std::size_t n = pf.grid.n;
  const WaveFunction psi = pf.recombine();
  const std::vector<cplx> dpsi =
      spectral_derivative(std::span<const cplx>(psi.values), pf.grid.as_uniform(), 1);
  std::vector<double> out(n, 0.0);
  const double hbar = pf.constants.hbar;
  for (std::size_t j = 0; j < n; ++j) {
    if (pf.node_mask[j]) continue;
    const double r2 = pf.amplitude[j] * pf.amplitude[j];
    out[j] = hbar * (std::conj(psi.values[j]) * dpsi[j]).imag() / r2;
  }
  return out;
}

BohmResiduals bohm_residuals(const std::vector<PolarFields>& series, std::span<const double> V,
                             const PhysicalConstants& c, double dt, double trust_rel) {
  if (series.size() < 3)
    throw InsufficientSamples("bohm_residuals: need at least 3 uniformly spaced samples");
  const std::size_t n = series.front().grid.n;
  const UniformGrid xg = series.front().grid.as_uniform();
  const double hbar = c.hbar;

  // Re-anchor the action series in time: each snapshot's S is defined up to
  // 2 pi hbar; make it continuous at the t = 0 amplitude maximum.
  std::size_t anchor = 0;
  double max_r = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (series[0].amplitude[j] > max_r) {
      max_r = series[0].amplitude[j];
      anchor = j;
    }
  }
  std::vector<double> anchor_shift(series.size(), 0.0);
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double prev = series[k - 1].action[anchor] + anchor_shift[k - 1];
    const double raw = series[k].action[anchor];
    anchor_shift[k] = kTwoPi * hbar * std::round((prev - raw) / (kTwoPi * hbar));
  }

  BohmResiduals res;
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    const PolarFields& pf = series[k];
    std::vector<double> density(n), density_prev(n), density_next(n);
    for (std::size_t j = 0; j < n; ++j) {
      density[j] = pf.amplitude[j] * pf.amplitude[j];
      density_prev[j] = series[k - 1].amplitude[j] * series[k - 1].amplitude[j];
      density_next[j] = series[k + 1].amplitude[j] * series[k + 1].amplitude[j];
    }
    // flux = P dS/dx / m = hbar Im(conj(psi) psi') / m decays, so its
    // spectral derivative is safe.
    const WaveFunction psi = pf.recombine();
    const std::vector<cplx> dpsi = spectral_derivative(std::span<const cplx>(psi.values), xg, 1);
    std::vector<double> flux(n);
    for (std::size_t j = 0; j < n; ++j)
      flux[j] = hbar * (std::conj(psi.values[j]) * dpsi[j]).imag() / c.mass;
    const std::vector<double> dflux = spectral_derivative(std::span<const double>(flux), xg, 1);

    const std::vector<double> sx = action_derivative(pf);
    const QuantumPotentialField q = quantum_potential(pf, c);

    const double max_amp = *std::max_element(pf.amplitude.begin(), pf.amplitude.end());
    const double threshold = trust_rel * max_amp;
    for (std::size_t j = 0; j < n; ++j) {
      if (pf.amplitude[j] < threshold || pf.node_mask[j]) continue;
      const double dpdt = (density_next[j] - density_prev[j]) / (2.0 * dt);
      res.continuity_linf = std::max(res.continuity_linf, std::abs(dpdt + dflux[j]));
      const double dsdt = ((series[k + 1].action[j] + anchor_shift[k + 1]) -
                           (series[k - 1].action[j] + anchor_shift[k - 1])) /
                          (2.0 * dt);
      const double hj = dsdt + sx[j] * sx[j] / (2.0 * c.mass) + V[j] + q.values[j];
      res.hamilton_jacobi_linf = std::max(res.hamilton_jacobi_linf, std::abs(hj));
    }
  }
  return res;
}

BohmDistribution bohm_distribution(const PolarFields& pf) {
  const std::size_t n = pf.grid.n;
  BohmDistribution bd{pf.grid, std::vector<double>(n), action_derivative(pf), pf.node_mask};
  for (std::size_t j = 0; j < n; ++j) bd.density[j] = pf.amplitude[j] * pf.amplitude[j];
  return bd;
}

std::vector<double> rasterize(const BohmDistribution& bd, const PhaseSpaceGrid& grid) {
  const std::size_t n = grid.x.n;
  if (bd.grid != grid.x) throw ConfigError("rasterize: mismatched spatial grid");
  const UniformGrid pg = grid.p_grid();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (bd.mask[j]) continue;
    const auto l =
        static_cast<std::ptrdiff_t>(std::llround((bd.momentum_section[j] - pg.min) / pg.spacing));
    if (l < 0 || l >= static_cast<std::ptrdiff_t>(n)) continue;
    out[grid.index(j, static_cast<std::size_t>(l))] += bd.density[j] / pg.spacing;
  }
  return out;
}

TrajectoryEnsemble bohmian_trajectories(const std::vector<PolarFields>& series, double dt_fields,
                                        std::span<const double> initial_xs) {
  if (series.size() < 2)
    throw InsufficientSamples("bohmian_trajectories: need at least 2 field samples");
  const SpatialGrid& grid = series.front().grid;
  const UniformGrid xg = grid.as_uniform();
  const double mass = series.front().constants.mass;
  const std::size_t frames = series.size();

  std::vector<std::vector<double>> velocity(frames);
  for (std::size_t k = 0; k < frames; ++k) {
    velocity[k] = action_derivative(series[k]);
    for (double& v : velocity[k]) v /= mass;
  }

  for (double x0 : initial_xs) {
    const auto j = static_cast<std::ptrdiff_t>(std::llround((x0 - grid.x_min) / grid.dx()));
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(grid.n))
      throw LeftDomain("bohmian_trajectories: initial point outside the grid");
    if (series[0].node_mask[static_cast<std::size_t>(j)])
      throw MaskedRegion("bohmian_trajectories: initial point masked at t = 0");
  }

  const auto eval_velocity = [&](double x, double t) {
    double frame = t / dt_fields;
    frame = std::clamp(frame, 0.0, static_cast<double>(frames - 1));
    auto k = static_cast<std::size_t>(frame);
    if (k + 1 >= frames) k = frames - 2;
    const double w = frame - static_cast<double>(k);
    const double v0 = cubic_interpolate(velocity[k], xg, x);
    const double v1 = cubic_interpolate(velocity[k + 1], xg, x);
    return (1.0 - w) * v0 + w * v1;
  };

  TrajectoryEnsemble ens;
  ens.initial_positions.assign(initial_xs.begin(), initial_xs.end());
  ens.times.resize(frames);
  for (std::size_t k = 0; k < frames; ++k) ens.times[k] = dt_fields * static_cast<double>(k);
  ens.positions.assign(initial_xs.size(), std::vector<double>(frames));

  for (std::size_t i = 0; i < initial_xs.size(); ++i) {
    double x = initial_xs[i];
    ens.positions[i][0] = x;
    for (std::size_t k = 0; k + 1 < frames; ++k) {
      const double t = ens.times[k];
      const double h = dt_fields;
      const double k1 = eval_velocity(x, t);
      const double k2 = eval_velocity(x + 0.5 * h * k1, t + 0.5 * h);
      const double k3 = eval_velocity(x + 0.5 * h * k2, t + 0.5 * h);
      const double k4 = eval_velocity(x + h * k3, t + h);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ens.positions[i][k + 1] = x;
    }
  }

  // Single-valuedness of dS/dx: ordered starting points stay ordered.
  for (std::size_t k = 0; k < frames; ++k) {
    for (std::size_t i = 0; i + 1 < ens.positions.size(); ++i) {
      if (ens.initial_positions[i] < ens.initial_positions[i + 1] &&
          ens.positions[i][k] >= ens.positions[i + 1][k]) {
        throw TrajectoryCrossing("bohmian_trajectories: trajectories crossed");
      }
    }
  }
  return ens;
}

BohmDistribution evolve_bohm_distribution(const BohmDistribution& bd0,
                                          const std::vector<std::vector<double>>& potential_plus_q,
                                          double dt_fields, double t_final,
                                          const SpatialGrid& grid, const PhysicalConstants& c,
                                          double trust_rel) {
  const std::size_t n = grid.n;
  const UniformGrid xg = grid.as_uniform();
  const std::size_t frames = potential_plus_q.size();
  if (frames < 2 && t_final > 0.0)
    throw InsufficientSamples("evolve_bohm_distribution: need fields over [0, t]");

  std::vector<std::vector<double>> force(frames);
  for (std::size_t k = 0; k < frames; ++k) {
    force[k] = fd_derivative(potential_plus_q[k], grid.dx());
    for (double& f : force[k]) f = -f;
  }
  const auto eval_force = [&](double x, double t) {
    double frame = t / dt_fields;
    frame = std::clamp(frame, 0.0, static_cast<double>(frames - 1));
    auto k = static_cast<std::size_t>(frame);
    if (k + 1 >= frames) k = frames - 2;
    const double w = frame - static_cast<double>(k);
    const double f0 = cubic_interpolate(force[k], xg, x);
    const double f1 = cubic_interpolate(force[k + 1], xg, x);
    return (1.0 - w) * f0 + w * f1;
  };

  // Characteristic starting points: columns carrying non-negligible mass.
  const double max_density = linf(std::span<const double>(bd0.density));
  const double threshold = trust_rel * max_density;
  std::vector<std::size_t> sel;
  for (std::size_t j = 0; j < n; ++j) {
    if (!bd0.mask[j] && bd0.density[j] >= threshold) sel.push_back(j);
  }
  if (sel.size() < 4)
    throw InsufficientSamples("evolve_bohm_distribution: too few unmasked columns");

  const std::size_t steps =
      t_final > 0.0 ? static_cast<std::size_t>(std::llround(t_final / dt_fields)) : 0;
  std::vector<double> xs(sel.size()), ps(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) {
    xs[i] = grid.x(sel[i]);
    ps[i] = bd0.momentum_section[sel[i]];
  }
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = dt_fields * static_cast<double>(step);
    const double h = dt_fields;
    for (std::size_t i = 0; i < sel.size(); ++i) {
      const double x1 = xs[i], p1 = ps[i];
      const double ax1 = eval_force(x1, t);
      const double x2 = x1 + 0.5 * h * p1 / c.mass, p2 = p1 + 0.5 * h * ax1;
      const double ax2 = eval_force(x2, t + 0.5 * h);
      const double x3 = x1 + 0.5 * h * p2 / c.mass, p3 = p1 + 0.5 * h * ax2;
      const double ax3 = eval_force(x3, t + 0.5 * h);
      const double x4 = x1 + h * p3 / c.mass, p4 = p1 + h * ax3;
      const double ax4 = eval_force(x4, t + h);
      xs[i] = x1 + h / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4) / c.mass;
      ps[i] = p1 + h / 6.0 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4);
    }
  }

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] >= xs[i + 1])
      throw TrajectoryCrossing("evolve_bohm_distribution: characteristics crossed (caustic)");
  }

  // Transported density via the flow Jacobian, then resample onto the grid.
  std::vector<double> jac(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const std::size_t lo = (i == 0) ? 0 : i - 1;
    const std::size_t hi = (i + 1 == sel.size()) ? i : i + 1;
    const double dx0 = grid.x(sel[hi]) - grid.x(sel[lo]);
    jac[i] = (xs[hi] - xs[lo]) / dx0;
  }
  std::vector<double> transported_density(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i)
    transported_density[i] = bd0.density[sel[i]] / jac[i];

  BohmDistribution out{grid, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       std::vector<std::uint8_t>(n, 1)};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.x(j);
    if (x < xs.front() || x > xs.back()) continue;
    out.density[j] = cubic_nonuniform(xs, transported_density, x);
    out.momentum_section[j] = cubic_nonuniform(xs, ps, x);
    out.mask[j] = 0;
  }
  return out;
}

}  // namespace qps
