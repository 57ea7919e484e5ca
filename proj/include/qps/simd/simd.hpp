#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace qps::simd {

// Runtime-dispatched arithmetic kernels for the grid inner loops.
//
// Every kernel has a scalar reference implementation and (on x86-64)
// an AVX2 variant.  The two are arithmetically identical: the same
// per-element operations in the same order, and reductions use a fixed
// lane-accumulator scheme shared by both paths, so results are
// bit-identical regardless of the selected backend.  Equivalence is
// enforced by tests/test_simd.cpp.

enum class Backend { scalar, avx2 };

// Active backend: detected at first use (AVX2 when the CPU supports it),
// overridable with the QPS_SIMD environment variable ("scalar"/"avx2")
// or set_backend().
Backend active_backend();
void set_backend(Backend b);
bool backend_available(Backend b);
std::string backend_name(Backend b);

using cplx = std::complex<double>;

// dst[i] = a[i] * b[i]
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
// dst[i] = conj(a[i]) * b[i]
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
// dst[i] = a[i] * s
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n);
// dst[i] += a[i]
void cadd(cplx* dst, const cplx* a, std::size_t n);
// dst[i] = |a[i]|^2
void abs2(double* dst, const cplx* a, std::size_t n);

// Reductions (fixed 4-lane accumulation order in both backends).
double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
cplx csum(const cplx* a, std::size_t n);
cplx csum_mul_real(const cplx* a, const double* w, std::size_t n);

}  // namespace qps::simd
