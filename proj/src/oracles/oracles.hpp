#pragma once

// Independent brute-force oracles and closed-form golden data.  Everything
// here is deliberately slow and simple (pointwise quadrature, exact
// commutator algebra) and shares no code with the fast transform paths.

#include <cstddef>

#include "qps/star_poly.hpp"
#include "qps/wavefunction.hpp"

namespace qps::oracle {

// Closed forms of the freely evolving Gaussian packet.
struct GoldenGaussian {
  GaussianPacketParams params;
  PhysicalConstants constants;

  double u() const { return params.p0 / constants.mass; }
  double tau() const {
    return constants.hbar * params.t / (2.0 * constants.mass * params.sigma0 * params.sigma0);
  }
  double sigma() const { return params.sigma0 * std::sqrt(1.0 + tau() * tau()); }

  cplx psi(double x) const;
  double amplitude(double x) const;          // R(x, t)
  double action(double x) const;             // S(x, t)
  double action_derivative(double x) const;  // dS/dx, linear in x
  double quantum_potential(double x) const;  // V = 0 case
  double wigner(double x, double p) const;
  // Position at time t2 of the trajectory through x0 (measured at t = 0).
  double trajectory(double x0, double t2) const;
};

// Single-point Wigner value by direct slow quadrature over the half-shift
// lattice of the sampled state (no FFT).
cplx wigner_quadrature(const WaveFunction& psi, std::size_t x_index, double p);

enum class Ordering { weyl, standard, antistandard };

// Exact f-symbol of the operator word x^m p^n under the given ordering,
// computed by repeated commutator reduction [x, p] = i hbar (and, for the
// Weyl case, expansion in fully symmetrized monomials).  m, n <= 6.
star::ExactPolynomial ordering_symbol(unsigned m, unsigned n, Ordering ordering,
                                      const star::Rat& hbar);

}  // namespace qps::oracle
