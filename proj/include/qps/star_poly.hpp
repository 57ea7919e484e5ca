#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qps/errors.hpp"

namespace qps::star {

using cplx = std::complex<double>;
using Rat = boost::rational<long long>;

// Exact complex-rational coefficient.  Keeps the star-product algebra laws
// testable as identities rather than tolerance checks.
struct RationalComplex {
  Rat re{0};
  Rat im{0};

  RationalComplex() = default;
  RationalComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit RationalComplex(long long r) : re(r), im(0) {}

  static RationalComplex unit_i() { return {Rat(0), Rat(1)}; }

  bool is_zero() const { return re == Rat(0) && im == Rat(0); }

  RationalComplex operator+(const RationalComplex& o) const { return {re + o.re, im + o.im}; }
  RationalComplex operator-(const RationalComplex& o) const { return {re - o.re, im - o.im}; }
  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex operator*(const RationalComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RationalComplex operator/(const RationalComplex& o) const {
    const Rat d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  RationalComplex div_int(long long k) const { return {re / k, im / k}; }
  bool operator==(const RationalComplex&) const = default;
};

template <typename C>
struct CoeffOps;

template <>
struct CoeffOps<RationalComplex> {
  static RationalComplex zero() { return RationalComplex{}; }
  static RationalComplex one() { return RationalComplex{1}; }
  static RationalComplex unit_i() { return RationalComplex::unit_i(); }
  static bool is_zero(const RationalComplex& c) { return c.is_zero(); }
  static RationalComplex div_int(const RationalComplex& c, long long k) { return c.div_int(k); }
};

template <>
struct CoeffOps<cplx> {
  static cplx zero() { return {0.0, 0.0}; }
  static cplx one() { return {1.0, 0.0}; }
  static cplx unit_i() { return {0.0, 1.0}; }
  static bool is_zero(const cplx& c) { return c == cplx{0.0, 0.0}; }
  static cplx div_int(const cplx& c, long long k) { return c / static_cast<double>(k); }
};

// Sparse polynomial in the phase-space variables: sum of c * x^m * p^n.
// Canonical form: no stored zero coefficients.
template <typename C>
class Polynomial {
 public:
  using Key = std::pair<unsigned, unsigned>;  // (x degree, p degree)

  Polynomial() = default;

  static Polynomial monomial(unsigned m, unsigned n, C c) {
    Polynomial out;
    out.add_term(m, n, std::move(c));
    return out;
  }
  static Polynomial constant(C c) { return monomial(0, 0, std::move(c)); }
  static Polynomial x() { return monomial(1, 0, CoeffOps<C>::one()); }
  static Polynomial p() { return monomial(0, 1, CoeffOps<C>::one()); }

  void add_term(unsigned m, unsigned n, C c) {
    if (CoeffOps<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(Key{m, n}, std::move(c));
    if (!inserted) {
      it->second = it->second + c;
      if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  const std::map<Key, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff(unsigned m, unsigned n) const {
    auto it = terms_.find(Key{m, n});
    return it == terms_.end() ? CoeffOps<C>::zero() : it->second;
  }

  unsigned degree_x() const {
    unsigned d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first);
    return d;
  }
  unsigned degree_p() const {
    unsigned d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second);
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
    return d;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
    return out;
  }
  Polynomial operator-(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, -c);
    return out;
  }
  Polynomial operator*(const Polynomial& o) const {
    Polynomial out;
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : o.terms_)
        out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
  }
  Polynomial scaled(const C& s) const {
    Polynomial out;
    for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c * s);
    return out;
  }

  // k-th partial derivative in x (resp. p); exact falling-factorial weights.
  Polynomial derivative_x(unsigned k = 1) const {
    Polynomial out;
    for (const auto& [key, c] : terms_) {
      if (key.first < k) continue;
      C w = c;
      for (unsigned r = 0; r < k; ++r) w = w * C(static_cast<long long>(key.first - r));
      out.add_term(key.first - k, key.second, w);
    }
    return out;
  }
  Polynomial derivative_p(unsigned k = 1) const {
    Polynomial out;
    for (const auto& [key, c] : terms_) {
      if (key.second < k) continue;
      C w = c;
      for (unsigned r = 0; r < k; ++r) w = w * C(static_cast<long long>(key.second - r));
      out.add_term(key.first, key.second - k, w);
    }
    return out;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  std::map<Key, C> terms_;
};

using ExactPolynomial = Polynomial<RationalComplex>;
using PolynomialSymbol = Polynomial<cplx>;

cplx evaluate(const PolynomialSymbol& poly, double x, double p);
PolynomialSymbol to_floating(const ExactPolynomial& poly);

enum class StarProductKind { weyl, standard, antistandard, standard_dual };

// Bidifferential star product, exact and terminating on polynomials:
//   weyl:          A exp((i hbar / 2) J) B, J the Poisson bidifferential
//   standard:      A exp(-i hbar d/dp_left d/dx_right) B
//   antistandard:  A exp(+i hbar d/dx_left d/dp_right) B
//   standard_dual: A exp(+i hbar d/dp_left d/dx_right) B
template <typename C>
Polynomial<C> poly_star(const Polynomial<C>& A, const Polynomial<C>& B, StarProductKind kind,
                        const C& hbar) {
  using Ops = CoeffOps<C>;
  Polynomial<C> out;

  if (kind == StarProductKind::weyl) {
    const unsigned kmax = std::min(A.total_degree(), B.total_degree());
    C prefactor = Ops::one();  // (i hbar / 2)^k / k!
    for (unsigned k = 0; k <= kmax; ++k) {
      if (k > 0) prefactor = Ops::div_int(prefactor * Ops::unit_i() * hbar, 2 * k);
      // J^k expands with binomial weights and alternating signs.
      long long binom = 1;
      for (unsigned j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * (k - j + 1) / j;
        Polynomial<C> left = A.derivative_x(j).derivative_p(k - j);
        Polynomial<C> right = B.derivative_p(j).derivative_x(k - j);
        if (left.is_zero() || right.is_zero()) continue;
        C w = prefactor * C(binom);
        if ((k - j) % 2 == 1) w = -w;
        out = out + (left * right).scaled(w);
      }
    }
    return out;
  }

  // The three directional products share the single-ladder structure
  //   sum_k (c hbar)^k / k! (D_left^k A)(D_right^k B).
  C step = Ops::unit_i();  // multiplies hbar once per order
  bool left_p = false;     // which variable the left derivative hits
  switch (kind) {
    case StarProductKind::standard:
      step = -Ops::unit_i();
      left_p = true;
      break;
    case StarProductKind::antistandard:
      step = Ops::unit_i();
      left_p = false;
      break;
    case StarProductKind::standard_dual:
      step = Ops::unit_i();
      left_p = true;
      break;
    default:
      break;
  }
  const unsigned kmax = std::min(left_p ? A.degree_p() : A.degree_x(),
                                 left_p ? B.degree_x() : B.degree_p());
  C prefactor = Ops::one();
  for (unsigned k = 0; k <= kmax; ++k) {
    if (k > 0) prefactor = Ops::div_int(prefactor * step * hbar, k);
    Polynomial<C> left = left_p ? A.derivative_p(k) : A.derivative_x(k);
    Polynomial<C> right = left_p ? B.derivative_x(k) : B.derivative_p(k);
    if (left.is_zero() || right.is_zero()) continue;
    out = out + (left * right).scaled(prefactor);
  }
  return out;
}

template <typename C>
Polynomial<C> moyal_bracket(const Polynomial<C>& A, const Polynomial<C>& B, const C& hbar) {
  return poly_star(A, B, StarProductKind::weyl, hbar) -
         poly_star(B, A, StarProductKind::weyl, hbar);
}

enum class KernelTag { wigner, standard, antistandard, bornjordan, custom };

// Power series of the built-in Cohen functions in w = hbar * xi * eta,
// to order `order` inclusive.
template <typename C>
std::vector<C> kernel_series(KernelTag tag, unsigned order) {
  using Ops = CoeffOps<C>;
  std::vector<C> c(order + 1, Ops::zero());
  c[0] = Ops::one();
  switch (tag) {
    case KernelTag::wigner:
      break;
    case KernelTag::standard:  // exp(-i w / 2)
      for (unsigned k = 1; k <= order; ++k)
        c[k] = Ops::div_int(c[k - 1] * (-Ops::unit_i()), 2 * k);
      break;
    case KernelTag::antistandard:  // exp(+i w / 2)
      for (unsigned k = 1; k <= order; ++k) c[k] = Ops::div_int(c[k - 1] * Ops::unit_i(), 2 * k);
      break;
    case KernelTag::bornjordan:  // sin(w/2)/(w/2)
      for (unsigned k = 2; k <= order; k += 2) {
        // c[k] = -c[k-2] / (4 (k+1) k)
        c[k] = Ops::div_int(-c[k - 2], static_cast<long long>(4) * (k + 1) * k);
      }
      break;
    case KernelTag::custom:
      throw UnsupportedKernel("kernel_series: sampled custom kernels have no series");
  }
  return c;
}

// Reciprocal of a power series with unit constant term.
template <typename C>
std::vector<C> series_reciprocal(const std::vector<C>& f) {
  using Ops = CoeffOps<C>;
  std::vector<C> g(f.size(), Ops::zero());
  g[0] = Ops::one();
  for (std::size_t k = 1; k < f.size(); ++k) {
    C acc = Ops::zero();
    for (std::size_t j = 1; j <= k; ++j) acc = acc + f[j] * g[k - j];
    g[k] = -acc;
  }
  return g;
}

// Ordering change of an observable symbol:
//   A_to = f_to^{-1}(-i d/dx, -i d/dp) f_from(-i d/dx, -i d/dp) A_from,
// realized as the finite series sum_k g_k (-hbar)^k d^k/dx^k d^k/dp^k with
// g the composite series f_to^{-1} * f_from in w = hbar xi eta.
template <typename C>
Polynomial<C> symbol_transform(const Polynomial<C>& A, KernelTag from, KernelTag to,
                               const C& hbar) {
  using Ops = CoeffOps<C>;
  if (from == KernelTag::custom || to == KernelTag::custom)
    throw UnsupportedKernel("symbol_transform: built-in kernels only");
  const unsigned order = std::min(A.degree_x(), A.degree_p());
  const std::vector<C> f_from = kernel_series<C>(from, order);
  const std::vector<C> f_to_inv = series_reciprocal(kernel_series<C>(to, order));
  std::vector<C> g(order + 1, Ops::zero());
  for (unsigned k = 0; k <= order; ++k)
    for (unsigned j = 0; j <= k; ++j) g[k] = g[k] + f_to_inv[j] * f_from[k - j];

  Polynomial<C> out;
  C hbar_pow = Ops::one();  // (-hbar)^k
  for (unsigned k = 0; k <= order; ++k) {
    if (k > 0) hbar_pow = hbar_pow * (-hbar);
    const Polynomial<C> dA = A.derivative_x(k).derivative_p(k);
    if (dA.is_zero()) continue;
    out = out + dA.scaled(g[k] * hbar_pow);
  }
  return out;
}

// Term-list grammar used by the CLI: terms `c*x^m*p^n` joined by `+`,
// complex coefficients printed as `(re,im)`.
std::string to_string(const PolynomialSymbol& poly);
PolynomialSymbol parse_symbol(const std::string& text);

}  // namespace qps::star
