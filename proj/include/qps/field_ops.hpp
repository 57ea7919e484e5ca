#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "qps/simd/simd.hpp"

namespace qps {

using cplx = std::complex<double>;

// Reductions below go through the dispatched kernels, whose fixed lane
// order keeps results identical across backends and thread counts.

inline double field_sum(std::span<const double> a) { return simd::sum(a.data(), a.size()); }

inline cplx field_sum(std::span<const cplx> a) { return simd::csum(a.data(), a.size()); }

inline double integrate(std::span<const double> f, double weight) {
  return weight * simd::sum(f.data(), f.size());
}

inline cplx integrate(std::span<const cplx> f, double weight) {
  return weight * simd::csum(f.data(), f.size());
}

inline std::vector<double> abs_squared(std::span<const cplx> a) {
  std::vector<double> out(a.size());
  simd::abs2(out.data(), a.data(), a.size());
  return out;
}

inline double linf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double linf(std::span<const cplx> a) {
  double m = 0.0;
  for (const cplx& v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double linf_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double linf_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l2_diff(std::span<const cplx> a, std::span<const cplx> b, double weight) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc * weight);
}

}  // namespace qps
