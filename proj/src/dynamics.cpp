#include "qps/dynamics.hpp"

#include <cmath>
#include <string>

#include "qps/field_ops.hpp"
#include "qps/spectral.hpp"

namespace qps {
namespace {

constexpr double kQuadraticFlagTol = 1e-12;

// Spectral shift of a sampled row: g(x) -> g(x + shift), periodic.
void spectral_shift_row(std::vector<cplx>& row, const UniformGrid& grid, double shift) {
  if (shift == 0.0) return;
  std::vector<cplx> freq = to_dual(row, grid, -1);
  const UniformGrid dual = grid.dual();
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double phase = dual.value(k) * shift;
    freq[k] *= cplx{std::cos(phase), std::sin(phase)};
  }
  row = from_dual(freq, grid, +1);
}

}  // namespace

Potential Potential::free_particle(const SpatialGrid& grid) {
  return Potential{grid, std::vector<double>(grid.n, 0.0), true, 0.0, 0.0, 0.0};
}

Potential Potential::quadratic_potential(const SpatialGrid& grid, double a, double b, double c) {
  Potential v{grid, std::vector<double>(grid.n), true, a, b, c};
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.x(j);
    v.values[j] = a + b * x + c * x * x;
  }
  return v;
}

Potential Potential::harmonic(const SpatialGrid& grid, const PhysicalConstants& constants,
                              double omega, double center) {
  const double c = 0.5 * constants.mass * omega * omega;
  return quadratic_potential(grid, c * center * center, -2.0 * c * center, c);
}

Potential Potential::from_samples(const SpatialGrid& grid, std::vector<double> samples) {
  if (samples.size() != grid.n) throw ConfigError("Potential: sample count mismatch");
  return Potential{grid, std::move(samples), false, 0.0, 0.0, 0.0};
}

EvolutionResult split_step_evolve(const WaveFunction& psi0, const Potential& V, double dt,
                                  std::size_t steps, std::size_t snapshot_every) {
  if (V.grid != psi0.grid) throw ConfigError("split_step_evolve: potential grid mismatch");
  if (V.quadratic) {
    for (std::size_t j = 0; j < V.grid.n; ++j) {
      const double x = V.grid.x(j);
      if (std::abs(V.values[j] - (V.a + V.b * x + V.c * x * x)) > kQuadraticFlagTol)
        throw ConfigError("split_step_evolve: quadratic flag inconsistent with samples");
    }
  }
  check_boundary_decay(psi0);

  const std::size_t n = psi0.grid.n;
  const double hbar = psi0.constants.hbar;
  const double mass = psi0.constants.mass;
  const double dk = 2.0 * std::numbers::pi / (psi0.grid.length());

  std::vector<cplx> v_half(n), kinetic(n);
  double vmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    vmax = std::max(vmax, std::abs(V.values[j]));
    const double phase = -V.values[j] * dt / (2.0 * hbar);
    v_half[j] = cplx{std::cos(phase), std::sin(phase)};
  }
  // FFT-natural ordering; the round-trip 1/n normalization is folded in.
  double kmax = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double k = (m <= n / 2 ? static_cast<double>(m)
                                 : static_cast<double>(m) - static_cast<double>(n)) *
                     dk;
    kmax = std::max(kmax, std::abs(k));
    const double phase = -hbar * k * k * dt / (2.0 * mass);
    kinetic[m] = cplx{std::cos(phase), std::sin(phase)} / static_cast<double>(n);
  }

  EvolutionResult result;
  result.stability.potential_phase_per_step = vmax * dt / hbar;
  result.stability.kinetic_phase_per_step = hbar * kmax * kmax * dt / (2.0 * mass);
  result.stability.ok = result.stability.potential_phase_per_step < 0.5;

  const double norm0 = l2_norm(psi0);
  WaveFunction psi = psi0;
  result.snapshots.push_back(psi);
  result.times.push_back(0.0);

  for (std::size_t step = 1; step <= steps; ++step) {
    simd::cmul(psi.values.data(), psi.values.data(), v_half.data(), n);
    dft_inplace(psi.values.data(), n, -1);
    simd::cmul(psi.values.data(), psi.values.data(), kinetic.data(), n);
    dft_inplace(psi.values.data(), n, +1);
    simd::cmul(psi.values.data(), psi.values.data(), v_half.data(), n);

    if (std::abs(psi.values.front()) > kBoundaryDecayThreshold ||
        std::abs(psi.values.back()) > kBoundaryDecayThreshold) {
      throw BoundaryDecayViolated("split_step_evolve: boundary decay violated at step " +
                                  std::to_string(step));
    }
    if ((snapshot_every != 0 && step % snapshot_every == 0) || step == steps) {
      result.snapshots.push_back(psi);
      result.times.push_back(dt * static_cast<double>(step));
    }
  }
  result.norm_drift = std::abs(l2_norm(result.snapshots.back()) - norm0);
  return result;
}

namespace {

// Pullback by the x-shear (x, p) -> (x + alpha p + shift, p).
void apply_x_shear(std::vector<cplx>& F, const PhaseSpaceGrid& ps, double alpha, double shift) {
  const std::size_t n = ps.x.n;
  const UniformGrid xg = ps.x.as_uniform();
  const UniformGrid pg = ps.p_grid();
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> col(n);
    for (std::size_t l = begin; l < end; ++l) {
      for (std::size_t j = 0; j < n; ++j) col[j] = F[j * n + l];
      spectral_shift_row(col, xg, alpha * pg.value(l) + shift);
      for (std::size_t j = 0; j < n; ++j) F[j * n + l] = col[j];
    }
  });
}

// Pullback by the p-shear (x, p) -> (x, p + beta (x - center) + shift).
void apply_p_shear(std::vector<cplx>& F, const PhaseSpaceGrid& ps, double beta, double center,
                   double shift) {
  const std::size_t n = ps.x.n;
  const UniformGrid pg = ps.p_grid();
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n);
    for (std::size_t j = begin; j < end; ++j) {
      for (std::size_t l = 0; l < n; ++l) row[l] = F[j * n + l];
      spectral_shift_row(row, pg, beta * (ps.x.x(j) - center) + shift);
      for (std::size_t l = 0; l < n; ++l) F[j * n + l] = row[l];
    }
  });
}

struct BackwardFlow {
  // (x, p) at time t maps back to (X, P) at time 0.
  double m11, m12, m21, m22;  // centered linear part
  double center;              // expansion point (x_c, 0)
};

BackwardFlow backward_flow(const Potential& V, const PhysicalConstants& c, double t) {
  BackwardFlow f{1.0, 0.0, 0.0, 1.0, 0.0};
  if (V.c == 0.0) {
    // Handled separately (free + uniform force); not used here.
    throw ConfigError("backward_flow: quadratic coefficient required");
  }
  f.center = -V.b / (2.0 * V.c);
  const double w2 = 2.0 * V.c / c.mass;
  if (w2 > 0.0) {
    const double w = std::sqrt(w2);
    const double th = w * t;
    f.m11 = std::cos(th);
    f.m12 = -std::sin(th) / (c.mass * w);
    f.m21 = c.mass * w * std::sin(th);
    f.m22 = std::cos(th);
  } else {
    const double k = std::sqrt(-w2);
    const double th = k * t;
    f.m11 = std::cosh(th);
    f.m12 = -std::sinh(th) / (c.mass * k);
    f.m21 = -c.mass * k * std::sinh(th);
    f.m22 = std::cosh(th);
  }
  return f;
}

QuasiDistribution evolve_bilinear(const QuasiDistribution& F0, const Potential& V, double t) {
  const PhaseSpaceGrid& ps = F0.grid;
  const std::size_t n = ps.x.n;
  const UniformGrid pg = ps.p_grid();
  const PhysicalConstants& c = F0.constants;

  QuasiDistribution out = F0;
  const auto backward = [&](double x, double p, double& X, double& P) {
    if (V.c == 0.0) {
      P = p + V.b * t;
      X = x - p * t / c.mass - V.b * t * t / (2.0 * c.mass);
    } else {
      const BackwardFlow f = backward_flow(V, c, t);
      const double xi = x - f.center;
      X = f.center + f.m11 * xi + f.m12 * p;
      P = f.m21 * xi + f.m22 * p;
    }
  };

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      double X, P;
      backward(ps.x.x(j), pg.value(l), X, P);
      const double tx = (X - ps.x.x_min) / ps.x.dx();
      const double tp = (P - pg.min) / pg.spacing;
      cplx value{0.0, 0.0};
      if (tx >= 0.0 && tx <= static_cast<double>(n - 1) && tp >= 0.0 &&
          tp <= static_cast<double>(n - 1)) {
        auto jx = static_cast<std::size_t>(tx);
        auto lp = static_cast<std::size_t>(tp);
        if (jx >= n - 1) jx = n - 2;
        if (lp >= n - 1) lp = n - 2;
        const double wx = tx - static_cast<double>(jx);
        const double wp = tp - static_cast<double>(lp);
        const cplx f00 = F0.values[jx * n + lp];
        const cplx f01 = F0.values[jx * n + lp + 1];
        const cplx f10 = F0.values[(jx + 1) * n + lp];
        const cplx f11 = F0.values[(jx + 1) * n + lp + 1];
        value = (1.0 - wx) * ((1.0 - wp) * f00 + wp * f01) + wx * ((1.0 - wp) * f10 + wp * f11);
      }
      out.values[j * n + l] = value;
    }
  }
  return out;
}

}  // namespace

QuasiDistribution moyal_evolve_quadratic(const QuasiDistribution& F0, const Potential& V,
                                         double t, TransportMethod method) {
  if (!V.quadratic)
    throw NotQuadratic("moyal_evolve_quadratic: potential lacks the quadratic flag");
  if (F0.kernel.tag() != KernelTag::wigner)
    throw UnsupportedKernel("moyal_evolve_quadratic: Wigner-kernel distributions only");
  if (V.grid != F0.grid.x) throw ConfigError("moyal_evolve_quadratic: grid mismatch");
  if (t == 0.0) return F0;
  if (method == TransportMethod::bilinear) return evolve_bilinear(F0, V, t);

  const PhysicalConstants& c = F0.constants;
  QuasiDistribution out = F0;

  if (V.c == 0.0) {
    // Backward map: P = p + b t, X = x - p t / m - b t^2 / (2 m).
    if (V.b != 0.0) apply_p_shear(out.values, out.grid, 0.0, 0.0, V.b * t);
    apply_x_shear(out.values, out.grid, -t / c.mass, -V.b * t * t / (2.0 * c.mass));
    return out;
  }

  // The shear decomposition below is singular near half periods of the
  // rotation; split the interval until the angle is shear-friendly.
  if (V.c > 0.0) {
    const double theta = std::sqrt(2.0 * V.c / c.mass) * t;
    if (std::abs(theta) > 0.7 && std::abs(std::sin(theta)) < 0.7) {
      const QuasiDistribution half = moyal_evolve_quadratic(F0, V, 0.5 * t, method);
      return moyal_evolve_quadratic(half, V, 0.5 * t, method);
    }
  }

  // Centered backward rotation decomposed into shear passes:
  // M = A(alpha) B(beta) A(alpha), alpha = (m11 - 1)/m21, beta = m21.
  const BackwardFlow f = backward_flow(V, c, t);
  if (std::abs(f.m21) < 1e-300) return out;  // whole periods: identity
  const double alpha = (f.m11 - 1.0) / f.m21;
  const double beta = f.m21;
  // x-shear passes include the center offset: x + alpha p acts on centered
  // coordinates identically for any center.
  apply_x_shear(out.values, out.grid, alpha, 0.0);
  apply_p_shear(out.values, out.grid, beta, f.center, 0.0);
  apply_x_shear(out.values, out.grid, alpha, 0.0);
  return out;
}

}  // namespace qps
