#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace qps::oracle {

cplx GoldenGaussian::psi(double x) const {
  const double theta = action(x) / constants.hbar;
  return amplitude(x) * cplx{std::cos(theta), std::sin(theta)};
}

double GoldenGaussian::amplitude(double x) const {
  const double s = sigma();
  const double xs = x - u() * params.t;
  return std::pow(2.0 * std::numbers::pi * s * s, -0.25) * std::exp(-xs * xs / (4.0 * s * s));
}

double GoldenGaussian::action(double x) const {
  const double hbar = constants.hbar;
  const double s = sigma();
  const double xs = x - u() * params.t;
  return -0.5 * hbar * std::atan(tau()) + params.p0 * (x - 0.5 * u() * params.t) +
         hbar * hbar * params.t * xs * xs /
             (8.0 * constants.mass * params.sigma0 * params.sigma0 * s * s);
}

double GoldenGaussian::action_derivative(double x) const {
  const double hbar = constants.hbar;
  const double s = sigma();
  return params.p0 + hbar * hbar * params.t * (x - u() * params.t) /
                         (4.0 * constants.mass * params.sigma0 * params.sigma0 * s * s);
}

double GoldenGaussian::quantum_potential(double x) const {
  const double hbar = constants.hbar;
  const double s = sigma();
  const double xs = x - u() * params.t;
  return hbar * hbar / (4.0 * constants.mass * s * s) * (1.0 - xs * xs / (2.0 * s * s));
}

double GoldenGaussian::wigner(double x, double p) const {
  const double hbar = constants.hbar;
  const double s0 = params.sigma0;
  const double xb = x - p * params.t / constants.mass;
  const double dp = p - params.p0;
  return std::exp(-xb * xb / (2.0 * s0 * s0) - 2.0 * s0 * s0 * dp * dp / (hbar * hbar)) /
         (std::numbers::pi * hbar);
}

double GoldenGaussian::trajectory(double x0, double t2) const {
  const double tau2 = constants.hbar * t2 / (2.0 * constants.mass * params.sigma0 * params.sigma0);
  return u() * t2 + x0 * std::sqrt(1.0 + tau2 * tau2);
}

cplx wigner_quadrature(const WaveFunction& psi, std::size_t x_index, double p) {
  const auto n = static_cast<std::ptrdiff_t>(psi.grid.n);
  const double dy = 2.0 * psi.grid.dx() / psi.constants.hbar;
  cplx acc{0.0, 0.0};
  for (std::ptrdiff_t h = -n / 2; h < n / 2; ++h) {
    const std::ptrdiff_t jm = static_cast<std::ptrdiff_t>(x_index) - h;
    const std::ptrdiff_t jp = static_cast<std::ptrdiff_t>(x_index) + h;
    if (jm < 0 || jm >= n || jp < 0 || jp >= n) continue;
    const double y = dy * static_cast<double>(h);
    const cplx corr = std::conj(psi.values[static_cast<std::size_t>(jm)]) *
                      psi.values[static_cast<std::size_t>(jp)];
    acc += corr * cplx{std::cos(y * p), -std::sin(y * p)};
  }
  return acc * dy / (2.0 * std::numbers::pi);
}

namespace {

using star::ExactPolynomial;
using star::Rat;
using star::RationalComplex;

// Operators in x-before-p normal form: map (a, b) -> coefficient of x^a p^b.
using NormalForm = std::map<std::pair<unsigned, unsigned>, RationalComplex>;

void add_to(NormalForm& dst, const std::pair<unsigned, unsigned>& key, const RationalComplex& c) {
  auto [it, inserted] = dst.emplace(key, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) dst.erase(it);
  }
}

// Normal-orders a word of letters 'x' and 'p' by p x -> x p - i hbar.
NormalForm normal_order_word(const std::string& word, const RationalComplex& i_hbar) {
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k] == 'p' && word[k + 1] == 'x') {
      std::string swapped = word;
      swapped[k] = 'x';
      swapped[k + 1] = 'p';
      std::string contracted = word.substr(0, k) + word.substr(k + 2);
      NormalForm out = normal_order_word(swapped, i_hbar);
      const NormalForm rest = normal_order_word(contracted, i_hbar);
      for (const auto& [key, c] : rest) add_to(out, key, -(i_hbar)*c);
      return out;
    }
  }
  unsigned a = 0, b = 0;
  for (char ch : word) (ch == 'x' ? a : b) += 1;
  NormalForm out;
  add_to(out, {a, b}, RationalComplex{1});
  return out;
}

// Anti-normal form (p before x) by x p -> p x + i hbar; key (a, b) still
// counts x^a p^b but in the order p^b x^a.
NormalForm anti_normal_order_word(const std::string& word, const RationalComplex& i_hbar) {
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (word[k] == 'x' && word[k + 1] == 'p') {
      std::string swapped = word;
      swapped[k] = 'p';
      swapped[k + 1] = 'x';
      std::string contracted = word.substr(0, k) + word.substr(k + 2);
      NormalForm out = anti_normal_order_word(swapped, i_hbar);
      const NormalForm rest = anti_normal_order_word(contracted, i_hbar);
      for (const auto& [key, c] : rest) add_to(out, key, i_hbar * c);
      return out;
    }
  }
  unsigned a = 0, b = 0;
  for (char ch : word) (ch == 'x' ? a : b) += 1;
  NormalForm out;
  add_to(out, {a, b}, RationalComplex{1});
  return out;
}

// Normal form of the fully symmetrized monomial S(x^a p^b): the average of
// all distinct letter orderings.
NormalForm symmetrized_normal_form(unsigned a, unsigned b, const RationalComplex& i_hbar) {
  std::string word(a, 'x');
  word += std::string(b, 'p');
  std::sort(word.begin(), word.end());
  NormalForm acc;
  long long count = 0;
  do {
    const NormalForm nf = normal_order_word(word, i_hbar);
    for (const auto& [key, c] : nf) add_to(acc, key, c);
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  NormalForm out;
  for (const auto& [key, c] : acc) add_to(out, key, c.div_int(count));
  return out;
}

}  // namespace

star::ExactPolynomial ordering_symbol(unsigned m, unsigned n, Ordering ordering,
                                      const star::Rat& hbar) {
  if (m > 6 || n > 6) throw ConfigError("ordering_symbol: degrees above 6 unsupported");
  const RationalComplex i_hbar{Rat(0), hbar};

  ExactPolynomial out;
  switch (ordering) {
    case Ordering::standard: {
      // x^m p^n is already standard-ordered.
      out.add_term(m, n, RationalComplex{1});
      break;
    }
    case Ordering::antistandard: {
      const NormalForm anti = anti_normal_order_word(
          std::string(m, 'x') + std::string(n, 'p'), i_hbar);
      for (const auto& [key, c] : anti) out.add_term(key.first, key.second, c);
      break;
    }
    case Ordering::weyl: {
      // Express x^m p^n in the symmetrized basis; the Weyl symbol of
      // S(x^a p^b) is x^a p^b.
      NormalForm target;
      add_to(target, {m, n}, RationalComplex{1});
      for (unsigned k = 0; k <= std::min(m, n); ++k) {
        const auto key = std::pair<unsigned, unsigned>{m - k, n - k};
        auto it = target.find(key);
        if (it == target.end()) continue;
        const RationalComplex c = it->second;
        out.add_term(key.first, key.second, c);
        const NormalForm basis = symmetrized_normal_form(key.first, key.second, i_hbar);
        for (const auto& [bkey, bc] : basis) add_to(target, bkey, -(c * bc));
      }
      if (!target.empty()) throw Error("ordering_symbol: triangular reduction failed");
      break;
    }
  }
  return out;
}

}  // namespace qps::oracle
