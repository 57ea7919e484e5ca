#include "qps/cohen.hpp"

#include <cmath>

#include "qps/field_ops.hpp"
#include "qps/spectral.hpp"

namespace qps {
namespace {

constexpr double kConstraintTol = 1e-10;
constexpr double kKernelMagnitudeLimit = 1e100;
constexpr double kVanishingKernel = 1e-13;

// Shifted bilinear row  conj(psi[j - h]) * psi[j + h]  with out-of-range
// factors read as zero (boundary decay makes the dropped wrap negligible;
// it is a checked precondition of every state entering here).
void correlation_row(const std::vector<cplx>& psi, std::ptrdiff_t h, std::vector<cplx>& row) {
  const auto n = static_cast<std::ptrdiff_t>(psi.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t jm = j - h;
    const std::ptrdiff_t jp = j + h;
    row[static_cast<std::size_t>(j)] =
        (jm >= 0 && jm < n && jp >= 0 && jp < n)
            ? std::conj(psi[static_cast<std::size_t>(jm)]) * psi[static_cast<std::size_t>(jp)]
            : cplx{0.0, 0.0};
  }
}

void check_kernel_value(const cplx& w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
      std::abs(w) > kKernelMagnitudeLimit) {
    throw KernelNotFinite("Cohen function overflows on the dual grid");
  }
}

}  // namespace

CohenKernel::CohenKernel(KernelTag tag, std::string name, double hbar)
    : tag_(tag), name_(std::move(name)), hbar_(hbar) {
  if (!(hbar > 0.0)) throw ConfigError("CohenKernel: hbar must be positive");
}

void CohenKernel::compute_flags(double probe_xi, double probe_eta) {
  bool row_one = true;
  for (int i = -4; i <= 4; ++i) {
    const cplx v = evaluate(probe_xi * static_cast<double>(i) / 4.0, 0.0);
    if (std::abs(v - cplx{1.0, 0.0}) > kConstraintTol) row_one = false;
  }
  const double h = probe_eta;
  const cplx deriv = (evaluate(0.0, h) - evaluate(0.0, -h)) / (2.0 * h);
  flags_ = {row_one, std::abs(deriv) <= kConstraintTol};
}

CohenKernel CohenKernel::wigner(double hbar) {
  CohenKernel k(KernelTag::wigner, "wigner", hbar);
  k.eval_ = [](double, double) { return cplx{1.0, 0.0}; };
  k.compute_flags(1.0, 1e-3);
  return k;
}

CohenKernel CohenKernel::standard(double hbar) {
  CohenKernel k(KernelTag::standard, "standard", hbar);
  k.eval_ = [hbar](double xi, double eta) {
    const double w = -0.5 * hbar * xi * eta;
    return cplx{std::cos(w), std::sin(w)};
  };
  k.compute_flags(1.0, 1e-3);
  return k;
}

CohenKernel CohenKernel::antistandard(double hbar) {
  CohenKernel k(KernelTag::antistandard, "antistandard", hbar);
  k.eval_ = [hbar](double xi, double eta) {
    const double w = 0.5 * hbar * xi * eta;
    return cplx{std::cos(w), std::sin(w)};
  };
  k.compute_flags(1.0, 1e-3);
  return k;
}

CohenKernel CohenKernel::born_jordan(double hbar) {
  CohenKernel k(KernelTag::bornjordan, "bornjordan", hbar);
  k.eval_ = [hbar](double xi, double eta) {
    const double w = 0.5 * hbar * xi * eta;
    // value 1 at xi*eta = 0 by continuity
    if (std::abs(w) < 1e-8) return cplx{1.0 - w * w / 6.0, 0.0};
    return cplx{std::sin(w) / w, 0.0};
  };
  k.compute_flags(1.0, 1e-3);
  return k;
}

CohenKernel CohenKernel::custom(std::string name, std::function<cplx(double, double)> f,
                                double hbar) {
  CohenKernel k(KernelTag::custom, std::move(name), hbar);
  k.eval_ = std::move(f);
  k.compute_flags(1.0, 1e-3);
  return k;
}

CohenKernel CohenKernel::custom_sampled(std::string name, const UniformGrid& xi_grid,
                                        const UniformGrid& eta_grid, std::vector<cplx> samples,
                                        double hbar) {
  if (samples.size() != xi_grid.n * eta_grid.n)
    throw ConfigError("custom_sampled: sample count does not match the dual grid");
  CohenKernel k(KernelTag::custom, std::move(name), hbar);
  k.sampled_xi_ = xi_grid;
  k.sampled_eta_ = eta_grid;
  k.samples_ = std::move(samples);
  k.compute_flags(xi_grid.spacing, eta_grid.spacing);
  return k;
}

cplx CohenKernel::evaluate(double xi, double eta) const {
  if (eval_) return eval_(xi, eta);
  const UniformGrid& xg = *sampled_xi_;
  const UniformGrid& eg = *sampled_eta_;
  const double ki = (xi - xg.min) / xg.spacing;
  const double mi = (eta - eg.min) / eg.spacing;
  const auto k = static_cast<std::ptrdiff_t>(std::llround(ki));
  const auto m = static_cast<std::ptrdiff_t>(std::llround(mi));
  if (std::abs(ki - static_cast<double>(k)) > 1e-6 ||
      std::abs(mi - static_cast<double>(m)) > 1e-6 || k < 0 ||
      k >= static_cast<std::ptrdiff_t>(xg.n) || m < 0 || m >= static_cast<std::ptrdiff_t>(eg.n)) {
    throw ConfigError("sampled kernel queried off its dual grid");
  }
  return samples_[static_cast<std::size_t>(m) * xg.n + static_cast<std::size_t>(k)];
}

cplx QuasiDistribution::total_integral() const {
  return integrate(std::span<const cplx>(values), grid.x.dx() * grid.dp());
}

AmbiguityFunction ambiguity(const WaveFunction& psi) {
  check_boundary_decay(psi);
  const std::size_t n = psi.grid.n;
  const PhaseSpaceGrid ps(psi.grid, psi.constants.hbar);
  const UniformGrid xg = psi.grid.as_uniform();

  AmbiguityFunction out{psi.grid.xi_grid(), ps.y_grid(), psi.constants.hbar,
                        std::vector<cplx>(n * n)};
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n);
    for (std::size_t m = begin; m < end; ++m) {
      const auto h = static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(n / 2);
      correlation_row(psi.values, h, row);
      std::vector<cplx> freq = to_dual(row, xg, +1);
      std::copy(freq.begin(), freq.end(), out.values.begin() + static_cast<std::ptrdiff_t>(m * n));
    }
  });
  return out;
}

QuasiDistribution cohen_transform(const WaveFunction& psi, const CohenKernel& kernel) {
  const std::size_t n = psi.grid.n;
  const PhaseSpaceGrid ps(psi.grid, psi.constants.hbar);
  const UniformGrid xg = psi.grid.as_uniform();
  const UniformGrid yg = ps.y_grid();
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);

  AmbiguityFunction amb = ambiguity(psi);

  // Multiply by f(xi, eta), then carry the xi rows back to x.
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n);
    for (std::size_t m = begin; m < end; ++m) {
      const double eta = amb.eta_grid.value(m);
      cplx* base = amb.values.data() + m * n;
      for (std::size_t k = 0; k < n; ++k) {
        const cplx w = kernel.evaluate(amb.xi_grid.value(k), eta);
        check_kernel_value(w);
        row[k] = base[k] * w;
      }
      std::vector<cplx> xrow = from_dual(row, xg, -1);
      std::copy(xrow.begin(), xrow.end(), base);
    }
  });

  // eta -> p along each x column.
  QuasiDistribution out{ps, psi.constants, kernel, std::vector<cplx>(n * n), state_digest(psi)};
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> col(n);
    for (std::size_t j = begin; j < end; ++j) {
      for (std::size_t m = 0; m < n; ++m) col[m] = amb.values[m * n + j];
      std::vector<cplx> prow = to_dual(col, yg, -1);
      cplx* dst = out.values.data() + j * n;
      simd::cscale(dst, prow.data(), cplx{inv_two_pi, 0.0}, n);
    }
  });
  return out;
}

QuasiDistribution wigner_direct(const WaveFunction& psi) {
  check_boundary_decay(psi);
  const std::size_t n = psi.grid.n;
  const PhaseSpaceGrid ps(psi.grid, psi.constants.hbar);
  const UniformGrid yg = ps.y_grid();
  const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);

  QuasiDistribution out{ps, psi.constants, CohenKernel::wigner(psi.constants.hbar),
                        std::vector<cplx>(n * n), state_digest(psi)};
  const auto sn = static_cast<std::ptrdiff_t>(n);
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> row(n);
    for (std::size_t j = begin; j < end; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        const auto h = static_cast<std::ptrdiff_t>(m) - sn / 2;
        const std::ptrdiff_t jm = static_cast<std::ptrdiff_t>(j) - h;
        const std::ptrdiff_t jp = static_cast<std::ptrdiff_t>(j) + h;
        row[m] = (jm >= 0 && jm < sn && jp >= 0 && jp < sn)
                     ? std::conj(psi.values[static_cast<std::size_t>(jm)]) *
                           psi.values[static_cast<std::size_t>(jp)]
                     : cplx{0.0, 0.0};
      }
      std::vector<cplx> prow = to_dual(row, yg, -1);
      simd::cscale(out.values.data() + j * n, prow.data(), cplx{inv_two_pi, 0.0}, n);
    }
  });
  return out;
}

QuasiDistribution mehta(const WaveFunction& psi) {
  check_boundary_decay(psi);
  const std::size_t n = psi.grid.n;
  const PhaseSpaceGrid ps(psi.grid, psi.constants.hbar);
  const UniformGrid pg = ps.p_grid();
  const double hbar = psi.constants.hbar;
  const std::vector<cplx> phi = momentum_amplitude_on(psi, pg);
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);

  QuasiDistribution out{ps, psi.constants, CohenKernel::standard(hbar), std::vector<cplx>(n * n),
                        state_digest(psi)};
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const cplx left = scale * std::conj(psi.values[j]);
      const double x = psi.grid.x(j);
      cplx* dst = out.values.data() + j * n;
      for (std::size_t l = 0; l < n; ++l) {
        const double phase = x * pg.value(l) / hbar;
        dst[l] = left * phi[l] * cplx{std::cos(phase), std::sin(phase)};
      }
    }
  });
  return out;
}

QuasiDistribution gauge_transform(const QuasiDistribution& F, const CohenKernel& target) {
  const std::size_t n = F.grid.x.n;
  const UniformGrid xg = F.grid.x.as_uniform();
  const UniformGrid pg = F.grid.p_grid();
  const UniformGrid xig = F.grid.x.xi_grid();
  const UniformGrid etag = F.grid.y_grid();

  // Forward to ambiguity space: G = Atilde * f_source.
  std::vector<cplx> work(F.values);
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      std::vector<cplx> row(work.begin() + static_cast<std::ptrdiff_t>(j * n),
                            work.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
      std::vector<cplx> freq = to_dual(row, pg, +1);
      std::copy(freq.begin(), freq.end(), work.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
  });
  std::vector<cplx> amb(n * n);  // eta-major
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> col(n);
    for (std::size_t m = begin; m < end; ++m) {
      for (std::size_t j = 0; j < n; ++j) col[j] = work[j * n + m];
      std::vector<cplx> freq = to_dual(col, xg, +1);
      std::copy(freq.begin(), freq.end(), amb.begin() + static_cast<std::ptrdiff_t>(m * n));
    }
  });

  // Multiplicative kernel change with a vanishing-source guard.
  double max_abs = 0.0;
  for (const cplx& v : amb) max_abs = std::max(max_abs, std::abs(v));
  const double guard = 1e-12 * max_abs;
  for (std::size_t m = 0; m < n; ++m) {
    const double eta = etag.value(m);
    for (std::size_t k = 0; k < n; ++k) {
      const double xi = xig.value(k);
      const cplx fs = F.kernel.evaluate(xi, eta);
      const cplx ft = target.evaluate(xi, eta);
      check_kernel_value(ft);
      cplx& v = amb[m * n + k];
      if (std::abs(fs) < kVanishingKernel) {
        if (std::abs(v) * std::abs(ft) > guard)
          throw DivisionByVanishingKernel("gauge_transform: source kernel vanishes where the "
                                          "ambiguity content is non-negligible");
        v = cplx{0.0, 0.0};
      } else {
        v = v * (ft / fs);
      }
    }
  }

  // Back to (x, p).
  QuasiDistribution out{F.grid, F.constants, target, std::vector<cplx>(n * n), F.source_digest};
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      std::vector<cplx> row(amb.begin() + static_cast<std::ptrdiff_t>(m * n),
                            amb.begin() + static_cast<std::ptrdiff_t>((m + 1) * n));
      std::vector<cplx> xrow = from_dual(row, xg, -1);
      std::copy(xrow.begin(), xrow.end(), amb.begin() + static_cast<std::ptrdiff_t>(m * n));
    }
  });
  parallel_for(n, parallel_degree(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> col(n);
    for (std::size_t j = begin; j < end; ++j) {
      for (std::size_t m = 0; m < n; ++m) col[m] = amb[m * n + j];
      std::vector<cplx> prow = from_dual(col, pg, -1);
      std::copy(prow.begin(), prow.end(), out.values.begin() + static_cast<std::ptrdiff_t>(j * n));
    }
  });
  return out;
}

Marginals marginals(const QuasiDistribution& F) {
  const std::size_t n = F.grid.x.n;
  Marginals out{std::vector<double>(n), std::vector<double>(n)};
  std::vector<cplx> col_acc(n, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* row = F.values.data() + j * n;
    out.x[j] = (F.grid.dp() * simd::csum(row, n)).real();
    simd::cadd(col_acc.data(), row, n);
  }
  for (std::size_t l = 0; l < n; ++l) out.p[l] = (F.grid.x.dx() * col_acc[l]).real();
  return out;
}

cplx expectation(const QuasiDistribution& F, const star::PolynomialSymbol& symbol) {
  const std::size_t n = F.grid.x.n;
  const UniformGrid pg = F.grid.p_grid();
  std::vector<cplx> weighted(n);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = F.grid.x.x(j);
    for (std::size_t l = 0; l < n; ++l)
      weighted[l] = star::evaluate(symbol, x, pg.value(l));
    const cplx* row = F.values.data() + j * n;
    std::vector<cplx> prod(n);
    simd::cmul(prod.data(), row, weighted.data(), n);
    acc += simd::csum(prod.data(), n);
  }
  return acc * (F.grid.x.dx() * F.grid.dp());
}

double probability_linear(const QuasiDistribution& F, double a, double b, double value) {
  if (a == 0.0 && b == 0.0)
    throw DegenerateObservable("probability_linear: observable a*x + b*p is identically zero");
  if (F.kernel.tag() != KernelTag::wigner)
    throw UnsupportedKernel("probability_linear: implemented for the Wigner kernel only");
  const std::size_t n = F.grid.x.n;
  const UniformGrid pg = F.grid.p_grid();

  if (b == 0.0) {
    // P(a x = value): x marginal at the nearest bin, scaled by 1/|a|.
    const double xq = value / a;
    const auto j = static_cast<std::ptrdiff_t>(std::llround((xq - F.grid.x.x_min) / F.grid.x.dx()));
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) return 0.0;
    const cplx* row = F.values.data() + static_cast<std::size_t>(j) * n;
    return (F.grid.dp() * simd::csum(row, n)).real() / std::abs(a);
  }

  // Line integral over p = (value - a x)/b, linear interpolation in p.
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double pq = (value - a * F.grid.x.x(j)) / b;
    const double t = (pq - pg.min) / pg.spacing;
    if (t < 0.0 || t > static_cast<double>(n - 1)) continue;
    const auto l0 = static_cast<std::size_t>(t);
    const double w = t - static_cast<double>(l0);
    const cplx* row = F.values.data() + j * n;
    const double f0 = row[l0].real();
    const double f1 = (l0 + 1 < n) ? row[l0 + 1].real() : 0.0;
    acc += (1.0 - w) * f0 + w * f1;
  }
  return acc * F.grid.x.dx() / std::abs(b);
}

}  // namespace qps
