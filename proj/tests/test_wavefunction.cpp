#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles/oracles.hpp"
#include "qps/field_ops.hpp"
#include "qps/wavefunction.hpp"

using namespace qps;

namespace {
const SpatialGrid kGrid{-20.0, 20.0, 256};
const PhysicalConstants kConst{1.0, 1.0};
}  // namespace

TEST_CASE("gaussian at t=0: peak density and symmetry") {
  const WaveFunction psi = make_gaussian({1.0, 0.0, 0.0}, kGrid, kConst);
  // |psi(0)|^2 = (2 pi)^(-1/2)
  const std::size_t j0 = kGrid.n / 2;
  CHECK(kGrid.x(j0) == doctest::Approx(0.0));
  CHECK(std::norm(psi.values[j0]) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
  for (std::size_t d = 1; d < 100; ++d) {
    CHECK(std::norm(psi.values[j0 + d]) ==
          doctest::Approx(std::norm(psi.values[j0 - d])).epsilon(1e-12));
  }
}

TEST_CASE("gaussian normalization and free-spreading width") {
  for (double t : {0.0, 0.7, 2.0}) {
    const WaveFunction psi = make_gaussian({1.0, 1.0, t}, kGrid, kConst);
    CHECK(l2_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // t = 2, sigma0 = p0 = hbar = m = 1: density is a Gaussian centered at
  // x = 2 with width |s_t| = sqrt(2).
  const WaveFunction psi = make_gaussian({1.0, 1.0, 2.0}, kGrid, kConst);
  const oracle::GoldenGaussian gold{{1.0, 1.0, 2.0}, kConst};
  CHECK(gold.sigma() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  double max_density = 0.0;
  double argmax = 0.0;
  for (std::size_t j = 0; j < kGrid.n; ++j) {
    if (std::norm(psi.values[j]) > max_density) {
      max_density = std::norm(psi.values[j]);
      argmax = kGrid.x(j);
    }
  }
  CHECK(std::abs(argmax - 2.0) <= 0.5 * kGrid.dx());
  for (std::size_t j = 0; j < kGrid.n; ++j) {
    const double expected = gold.amplitude(kGrid.x(j));
    CHECK(std::abs(psi.values[j]) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("make_gaussian rejects packets that do not fit") {
  const SpatialGrid narrow{-3.0, 3.0, 64};
  CHECK_THROWS_AS(make_gaussian({1.0, 0.0, 0.0}, narrow, kConst), BoundaryDecayViolated);
}

TEST_CASE("normalize: scale-out, idempotence, zero field") {
  WaveFunction psi = make_gaussian({1.0, 0.5, 0.0}, kGrid, kConst);
  WaveFunction doubled = psi;
  for (auto& v : doubled.values) v *= 2.0;
  const WaveFunction renorm = normalize(doubled);
  CHECK(linf_diff(std::span<const cplx>(renorm.values), std::span<const cplx>(psi.values)) <
        1e-14);
  const WaveFunction again = normalize(renorm);
  CHECK(linf_diff(std::span<const cplx>(again.values), std::span<const cplx>(renorm.values)) <
        1e-14);
  WaveFunction zero{kGrid, kConst, std::vector<cplx>(kGrid.n, cplx{0.0, 0.0})};
  CHECK_THROWS_AS(normalize(zero), ZeroField);
}

TEST_CASE("momentum transform: Parseval, round trip, shift theorem") {
  const WaveFunction psi = make_gaussian({1.2, 0.4, 0.3}, kGrid, kConst);
  const MomentumWaveFunction phi = to_momentum(psi);
  CHECK(l2_norm(phi) == doctest::Approx(l2_norm(psi)).epsilon(1e-12));

  const WaveFunction back = from_momentum(phi, kGrid);
  double rel = linf_diff(std::span<const cplx>(back.values), std::span<const cplx>(psi.values)) /
               linf(std::span<const cplx>(psi.values));
  CHECK(rel < 1e-12);

  // Multiplying by exp(i p0 x / hbar) shifts phi by p0.
  const double p0 = 2.0 * std::numbers::pi / kGrid.length() * 16.0;  // 16 grid momentum bins
  WaveFunction shifted = psi;
  for (std::size_t j = 0; j < kGrid.n; ++j) {
    const double phase = p0 * kGrid.x(j) / kConst.hbar;
    shifted.values[j] *= cplx{std::cos(phase), std::sin(phase)};
  }
  const MomentumWaveFunction phi_shifted = to_momentum(shifted);
  for (std::size_t k = 16; k < kGrid.n; ++k) {
    CHECK(std::abs(phi_shifted.values[k] - phi.values[k - 16]) < 1e-10);
  }
}

TEST_CASE("momentum amplitude matches direct quadrature of the defining integral") {
  const WaveFunction psi = make_gaussian({1.0, 0.0, 0.0}, kGrid, kConst);
  const MomentumWaveFunction phi = to_momentum(psi);
  for (std::size_t k : {96u, 128u, 140u, 160u}) {
    const double p = phi.p_grid.value(k);
    cplx slow{0.0, 0.0};
    for (std::size_t j = 0; j < kGrid.n; ++j) {
      const double phase = -kGrid.x(j) * p / kConst.hbar;
      slow += psi.values[j] * cplx{std::cos(phase), std::sin(phase)};
    }
    slow *= kGrid.dx() / std::sqrt(2.0 * std::numbers::pi * kConst.hbar);
    CHECK(std::abs(phi.values[k] - slow) < 1e-12);
    // Gaussian in p centered at 0 with width hbar / (2 sigma0)
    const double expected = std::pow(2.0 * std::numbers::pi * 0.25, -0.25) *
                            std::exp(-p * p / (4.0 * 0.25));
    CHECK(std::abs(phi.values[k]) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("norms are stable under grid refinement") {
  const SpatialGrid fine{-20.0, 20.0, 512};
  const WaveFunction coarse = make_gaussian({1.0, 1.0, 0.0}, kGrid, kConst);
  const WaveFunction refined = make_gaussian({1.0, 1.0, 0.0}, fine, kConst);
  CHECK(std::abs(l2_norm(coarse) - l2_norm(refined)) < 1e-10);
}

TEST_CASE("recombined polar form matches the golden closed forms") {
  const oracle::GoldenGaussian gold{{1.0, 1.0, 2.0}, kConst};
  const WaveFunction psi = make_gaussian({1.0, 1.0, 2.0}, kGrid, kConst);
  for (std::size_t j = 60; j < 200; ++j) {
    const double x = kGrid.x(j);
    CHECK(std::abs(psi.values[j] - gold.psi(x)) < 1e-12);
  }
  // dS/dx stays linear in x for all t.
  const double s1 = gold.action_derivative(-1.0);
  const double s2 = gold.action_derivative(0.0);
  const double s3 = gold.action_derivative(1.0);
  CHECK(s3 - s2 == doctest::Approx(s2 - s1).epsilon(1e-13));
}
