#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qps/grid.hpp"
#include "qps/star_poly.hpp"
#include "qps/wavefunction.hpp"

namespace qps {

using star::KernelTag;

// A Cohen function f(xi, eta) with its constraint flags
//   (1) f(xi, 0) = 1   (2) df/deta(0, 0) = 0
// evaluated numerically at construction (tolerance 1e-10).
class CohenKernel {
 public:
  static CohenKernel wigner(double hbar = 1.0);
  static CohenKernel standard(double hbar = 1.0);
  static CohenKernel antistandard(double hbar = 1.0);
  static CohenKernel born_jordan(double hbar = 1.0);
  static CohenKernel custom(std::string name, std::function<cplx(double, double)> f,
                            double hbar = 1.0);
  // Sampled array on a fixed dual grid (eta-major storage).
  static CohenKernel custom_sampled(std::string name, const UniformGrid& xi_grid,
                                    const UniformGrid& eta_grid, std::vector<cplx> samples,
                                    double hbar = 1.0);

  KernelTag tag() const { return tag_; }
  const std::string& name() const { return name_; }
  double hbar() const { return hbar_; }
  // (f(xi,0) = 1, df/deta(0,0) = 0)
  std::pair<bool, bool> constraint_flags() const { return flags_; }
  bool satisfies_constraints() const { return flags_.first && flags_.second; }

  cplx evaluate(double xi, double eta) const;

 private:
  CohenKernel(KernelTag tag, std::string name, double hbar);
  void compute_flags(double probe_xi, double probe_eta);

  KernelTag tag_;
  std::string name_;
  double hbar_;
  std::function<cplx(double, double)> eval_;
  std::optional<UniformGrid> sampled_xi_, sampled_eta_;
  std::vector<cplx> samples_;
  std::pair<bool, bool> flags_{true, true};
};

// Interior bilinear form of Eq-space: Atilde(xi, eta), eta-major storage
// values[m * n + k].  Atilde(0,0) = ||psi||^2.
struct AmbiguityFunction {
  UniformGrid xi_grid;
  UniformGrid eta_grid;
  double hbar = 1.0;
  std::vector<cplx> values;

  cplx at(std::size_t eta_index, std::size_t xi_index) const {
    return values[eta_index * xi_grid.n + xi_index];
  }
};

// Phase-space quasi-distribution F^f on the (x, p) grid, x-major storage.
struct QuasiDistribution {
  PhaseSpaceGrid grid;
  PhysicalConstants constants;
  CohenKernel kernel;
  std::vector<cplx> values;
  std::uint64_t source_digest = 0;

  cplx at(std::size_t ix, std::size_t ip) const { return values[grid.index(ix, ip)]; }
  // Total integral (complex; imaginary part is a numerical-quality signal).
  cplx total_integral() const;
};

struct Marginals {
  std::vector<double> x;  // integral over p, on the spatial grid
  std::vector<double> p;  // integral over x, on the phase-space p grid
};

AmbiguityFunction ambiguity(const WaveFunction& psi);

// General Cohen transform: inverse 2D transform of Atilde * f.
QuasiDistribution cohen_transform(const WaveFunction& psi, const CohenKernel& kernel);

// Direct Wigner transform (independent code path from cohen_transform).
QuasiDistribution wigner_direct(const WaveFunction& psi);

// Closed-form standard-ordering (Mehta) distribution.
QuasiDistribution mehta(const WaveFunction& psi);

// Kernel change performed multiplicatively in ambiguity space.
QuasiDistribution gauge_transform(const QuasiDistribution& F, const CohenKernel& target);

Marginals marginals(const QuasiDistribution& F);

// Grid quadrature of F * symbol; the symbol must already be in F's
// representation (use star::symbol_transform to convert).
cplx expectation(const QuasiDistribution& F, const star::PolynomialSymbol& symbol);

// Probability density of the linear observable a*x + b*p at `value`
// (Wigner kernel only; the star-delta reduces to the ordinary delta).
double probability_linear(const QuasiDistribution& F, double a, double b, double value);

}  // namespace qps
