#include "qps/simd/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernel_table.hpp"

namespace qps::simd {
namespace {

bool cpu_has_avx2() {
#if QPS_SIMD_HAVE_AVX2_TU
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend detect_backend() {
  if (const char* env = std::getenv("QPS_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

const detail::KernelTable& table() {
#if QPS_SIMD_HAVE_AVX2_TU
  if (backend_slot().load(std::memory_order_relaxed) == Backend::avx2)
    return detail::avx2_table();
#endif
  return detail::scalar_table();
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) return;
  backend_slot().store(b, std::memory_order_relaxed);
}

bool backend_available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) { table().cmul(dst, a, b, n); }
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  table().cmul_conj(dst, a, b, n);
}
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n) { table().cscale(dst, a, s, n); }
void cadd(cplx* dst, const cplx* a, std::size_t n) { table().cadd(dst, a, n); }
void abs2(double* dst, const cplx* a, std::size_t n) { table().abs2(dst, a, n); }
double sum(const double* a, std::size_t n) { return table().sum(a, n); }
double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
cplx csum(const cplx* a, std::size_t n) { return table().csum(a, n); }
cplx csum_mul_real(const cplx* a, const double* w, std::size_t n) {
  return table().csum_mul_real(a, w, n);
}

}  // namespace qps::simd
