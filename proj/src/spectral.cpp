#include "qps/spectral.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "qps/simd/simd.hpp"

namespace qps {
namespace {

// FFTW plans are cached per (n, sign).  Planning is serialized; execution
// via the new-array interface is thread-safe.  FFTW_ESTIMATE keeps plan
// selection deterministic, FFTW_UNALIGNED lets plans run on any buffer.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    const std::pair<std::size_t, int> key{n, sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

unsigned default_degree() {
  if (const char* env = std::getenv("QPS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

std::atomic<unsigned>& degree_slot() {
  static std::atomic<unsigned> slot{default_degree()};
  return slot;
}

}  // namespace

void dft_inplace(cplx* data, std::size_t n, int sign) {
  fftw_plan plan = plan_cache().get(n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

std::vector<cplx> to_dual(std::span<const cplx> g, const UniformGrid& src, int sign) {
  const std::size_t n = src.n;
  const UniformGrid dual = src.dual();
  // exp(s i k_m x_j) = exp(s i k_m x_min) * (-1)^j * exp(s 2 pi i m j / n)
  std::vector<cplx> work(n);
  for (std::size_t j = 0; j < n; ++j) work[j] = (j % 2 == 0) ? g[j] : -g[j];
  dft_inplace(work.data(), n, sign);
  for (std::size_t m = 0; m < n; ++m) {
    const double phase = sign * dual.value(m) * src.min;
    work[m] *= src.spacing * cplx{std::cos(phase), std::sin(phase)};
  }
  return work;
}

std::vector<cplx> from_dual(std::span<const cplx> G, const UniformGrid& src, int sign) {
  const std::size_t n = src.n;
  const UniformGrid dual = src.dual();
  std::vector<cplx> work(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double phase = sign * dual.value(m) * src.min;
    work[m] = G[m] * cplx{std::cos(phase), std::sin(phase)};
  }
  dft_inplace(work.data(), n, sign);
  const double scale = dual.spacing / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    work[j] *= (j % 2 == 0) ? scale : -scale;
  }
  return work;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> g, const UniformGrid& grid,
                                      unsigned order) {
  std::vector<cplx> freq = to_dual(g, grid, -1);
  const UniformGrid dual = grid.dual();
  for (std::size_t m = 0; m < grid.n; ++m) {
    const double k = dual.value(m);
    if (order % 2 == 1 && m == 0) {  // Nyquist mode sits at index 0 (k = -n/2 * dk)
      freq[m] = 0.0;
      continue;
    }
    cplx factor{1.0, 0.0};
    for (unsigned r = 0; r < order; ++r) factor *= cplx{0.0, k};
    freq[m] *= factor;
  }
  return from_dual(freq, grid, +1);
}

std::vector<double> spectral_derivative(std::span<const double> g, const UniformGrid& grid,
                                        unsigned order) {
  std::vector<cplx> gc(g.begin(), g.end());
  std::vector<cplx> dc = spectral_derivative(gc, grid, order);
  std::vector<double> out(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) out[j] = dc[j].real();
  return out;
}

double cubic_interpolate(std::span<const double> values, const UniformGrid& grid, double x,
                         OutOfRange policy) {
  const double t = (x - grid.min) / grid.spacing;
  const auto n = static_cast<std::ptrdiff_t>(grid.n);
  if (t < 0.0 || t > static_cast<double>(n - 1)) {
    switch (policy) {
      case OutOfRange::error:
        throw LeftDomain("cubic_interpolate: point outside grid");
      case OutOfRange::clamp:
        return values[t < 0.0 ? 0 : grid.n - 1];
      case OutOfRange::zero:
        return 0.0;
    }
  }
  std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(std::floor(t));
  if (i1 > n - 2) i1 = n - 2;
  std::ptrdiff_t i0 = i1 - 1;
  const double u = t - static_cast<double>(i1);
  if (i0 < 0) i0 = 0;
  if (i0 > n - 4) i0 = n - 4;
  const double s = u + static_cast<double>(i1 - i0 - 1);  // offset from node i0+1
  const double v0 = values[static_cast<std::size_t>(i0)];
  const double v1 = values[static_cast<std::size_t>(i0 + 1)];
  const double v2 = values[static_cast<std::size_t>(i0 + 2)];
  const double v3 = values[static_cast<std::size_t>(i0 + 3)];
  // Lagrange basis on nodes {-1, 0, 1, 2} evaluated at s.
  const double a = s + 1.0, b = s, c = s - 1.0, d = s - 2.0;
  return v0 * (-b * c * d / 6.0) + v1 * (a * c * d / 2.0) + v2 * (-a * b * d / 2.0) +
         v3 * (a * b * c / 6.0);
}

double cubic_interpolate_derivative(std::span<const double> values, const UniformGrid& grid,
                                    double x) {
  const double t = (x - grid.min) / grid.spacing;
  const auto n = static_cast<std::ptrdiff_t>(grid.n);
  if (t < 0.0 || t > static_cast<double>(n - 1))
    throw LeftDomain("cubic_interpolate_derivative: point outside grid");
  std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(std::floor(t));
  if (i1 > n - 2) i1 = n - 2;
  std::ptrdiff_t i0 = i1 - 1;
  const double u = t - static_cast<double>(i1);
  if (i0 < 0) i0 = 0;
  if (i0 > n - 4) i0 = n - 4;
  const double s = u + static_cast<double>(i1 - i0 - 1);
  const double v0 = values[static_cast<std::size_t>(i0)];
  const double v1 = values[static_cast<std::size_t>(i0 + 1)];
  const double v2 = values[static_cast<std::size_t>(i0 + 2)];
  const double v3 = values[static_cast<std::size_t>(i0 + 3)];
  const double a = s + 1.0, b = s, c = s - 1.0, d = s - 2.0;
  const double deriv = v0 * (-(b * c + b * d + c * d) / 6.0) +
                       v1 * ((a * c + a * d + c * d) / 2.0) +
                       v2 * (-(a * b + a * d + b * d) / 2.0) + v3 * ((a * b + a * c + b * c) / 6.0);
  return deriv / grid.spacing;
}

std::vector<double> fd_derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 5) throw ConfigError("fd_derivative: need at least 5 samples");
  std::vector<double> out(n);
  for (std::size_t j = 2; j + 2 < n; ++j) {
    out[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * dx);
  }
  const auto edge = [&](std::size_t j, std::ptrdiff_t dir) {
    const auto at = [&](std::ptrdiff_t k) {
      return f[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) + dir * k)];
    };
    return static_cast<double>(dir) *
           (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) /
           (12.0 * dx);
  };
  out[0] = edge(0, +1);
  out[1] = edge(1, +1);
  out[n - 2] = edge(n - 2, -1);
  out[n - 1] = edge(n - 1, -1);
  return out;
}

void parallel_for(std::size_t count, unsigned degree,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  if (degree <= 1 || count == 1) {
    body(0, count);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(degree, count);
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : threads) t.join();
}

unsigned parallel_degree() { return degree_slot().load(std::memory_order_relaxed); }

void set_parallel_degree(unsigned d) {
  degree_slot().store(d == 0 ? 1 : d, std::memory_order_relaxed);
}

}  // namespace qps
