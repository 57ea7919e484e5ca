#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qps/bohm.hpp"
#include "qps/cohen.hpp"
#include "qps/star_grid.hpp"

namespace qps {

// Numeric check of the two kernel hypotheses
//   f(xi, 0) = 1  and  df/deta(0, 0) = 0
// on the given dual grids (tolerance tol).
std::pair<bool, bool> verify_kernel_constraints(const CohenKernel& kernel,
                                                const UniformGrid& xi_grid,
                                                const UniformGrid& eta_grid, double tol = 1e-10);

// Causal form F^f = R *_f' delta_*'(p - dS/dx) *_f' R, built through the
// standard-ordering sandwich followed by a gauge transform (the Lemma
// route).  Throws KernelConstraintsViolated when the kernel fails the
// hypotheses above.
QuasiDistribution causal_form(const PolarFields& pf, const CohenKernel& kernel);

// Deviation report between the causal form and the direct Cohen transform.
struct CausalFormReport {
  std::string kernel_name;
  double linf = 0.0;
  double l2 = 0.0;
  std::pair<bool, bool> constraints{false, false};
  bool skipped = false;  // kernel failed the constraints; no comparison run
  double hbar = 1.0;
  SpatialGrid grid;
};

CausalFormReport causal_form_report(const WaveFunction& psi, const CohenKernel& kernel);

// Deviation D(hbar) between the Wigner y-kernel psi*(x - h y/2) psi(x + h y/2)
// and the Bohm y-kernel R^2(x) exp(i y dS/dx) over a fixed window, with a
// log-log slope fit.  (R, S) are held fixed while hbar varies.
struct ExpansionPoint {
  double hbar = 0.0;
  double deviation = 0.0;
};
struct ExpansionReport {
  std::vector<ExpansionPoint> points;
  double slope = 0.0;
  bool slope_defined = false;
};

ExpansionReport hbar_expansion_check(const PolarFields& pf, std::span<const double> hbar_list,
                                     double y_max, std::size_t n_y = 65,
                                     double x_trust_rel = 0.05);

// Classical pure state R_cl^2(x) delta(p - dS_cl/dx) in section form.
BohmDistribution classical_limit_distribution(const SpatialGrid& grid,
                                              std::span<const double> R_cl,
                                              std::span<const double> S_cl);

}  // namespace qps
