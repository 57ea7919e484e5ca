#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "qps/bohm.hpp"
#include "qps/field_ops.hpp"
#include "qps/star_grid.hpp"
#include "qps/star_poly.hpp"

using namespace qps;
using star::ExactPolynomial;
using star::KernelTag;
using star::PolynomialSymbol;
using star::Rat;
using star::RationalComplex;
using star::StarProductKind;

namespace {

const RationalComplex kOne{1};
const RationalComplex kI = RationalComplex::unit_i();

ExactPolynomial random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<unsigned> deg(0, 4);
  ExactPolynomial p;
  for (int term = 0; term < 4; ++term) {
    const unsigned m = deg(rng);
    const unsigned n = deg(rng) % (5 - m < 1 ? 1 : 5 - m);  // total degree <= 4
    p.add_term(m, n, RationalComplex{Rat(coeff(rng)), Rat(coeff(rng))});
  }
  return p;
}

}  // namespace

TEST_CASE("weyl star product basics") {
  const RationalComplex hbar{1};
  const auto x = ExactPolynomial::x();
  const auto p = ExactPolynomial::p();

  // x *_W p = xp + i hbar / 2, exactly.
  ExactPolynomial expected = x * p;
  expected.add_term(0, 0, RationalComplex{Rat(0), Rat(1, 2)});
  CHECK(poly_star(x, p, StarProductKind::weyl, hbar) == expected);

  // A *_W 1 = A.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ExactPolynomial a = random_poly(rng);
    CHECK(poly_star(a, ExactPolynomial::constant(kOne), StarProductKind::weyl, hbar) == a);
    CHECK(poly_star(ExactPolynomial::constant(kOne), a, StarProductKind::weyl, hbar) == a);
  }

  // p-free left factor under the standard-dual product: ordinary product.
  const ExactPolynomial r = ExactPolynomial::monomial(3, 0, RationalComplex{2}) +
                            ExactPolynomial::monomial(1, 0, RationalComplex{-1});
  for (int trial = 0; trial < 5; ++trial) {
    const ExactPolynomial b = random_poly(rng);
    CHECK(poly_star(r, b, StarProductKind::standard_dual, hbar) == r * b);
  }
}

TEST_CASE("star products are associative on random degree<=4 triples") {
  const RationalComplex hbar{Rat(1, 2), Rat(0)};
  std::mt19937 rng(2024);
  for (StarProductKind kind : {StarProductKind::weyl, StarProductKind::standard,
                               StarProductKind::antistandard, StarProductKind::standard_dual}) {
    for (int trial = 0; trial < 25; ++trial) {
      const ExactPolynomial a = random_poly(rng);
      const ExactPolynomial b = random_poly(rng);
      const ExactPolynomial c = random_poly(rng);
      const ExactPolynomial left = poly_star(poly_star(a, b, kind, hbar), c, kind, hbar);
      const ExactPolynomial right = poly_star(a, poly_star(b, c, kind, hbar), kind, hbar);
      CHECK(left == right);
    }
  }
}

TEST_CASE("hbar -> 0 reduces every star product to the pointwise product") {
  const RationalComplex zero{};
  std::mt19937 rng(5);
  for (StarProductKind kind : {StarProductKind::weyl, StarProductKind::standard,
                               StarProductKind::antistandard, StarProductKind::standard_dual}) {
    for (int trial = 0; trial < 5; ++trial) {
      const ExactPolynomial a = random_poly(rng);
      const ExactPolynomial b = random_poly(rng);
      CHECK(poly_star(a, b, kind, zero) == a * b);
    }
  }
}

TEST_CASE("moyal bracket: canonical pair, quadratics, antisymmetry, Poisson limit") {
  const RationalComplex hbar{1};
  const auto x = ExactPolynomial::x();
  const auto p = ExactPolynomial::p();

  // [x, p]_M = i hbar.
  CHECK(star::moyal_bracket(x, p, hbar) == ExactPolynomial::constant(kI));

  // [x^2, p^2]_M = 4 i hbar x p (first sine term only for quadratics).
  const auto x2 = ExactPolynomial::monomial(2, 0, kOne);
  const auto p2 = ExactPolynomial::monomial(0, 2, kOne);
  CHECK(star::moyal_bracket(x2, p2, hbar) ==
        ExactPolynomial::monomial(1, 1, RationalComplex{Rat(0), Rat(4)}));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ExactPolynomial a = random_poly(rng);
    CHECK(star::moyal_bracket(a, a, hbar).is_zero());
  }

  // For degree <= 2 symbols the bracket is exactly i hbar {A, B}.
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    ExactPolynomial a, b;
    for (unsigned m = 0; m <= 2; ++m) {
      for (unsigned n = 0; n + m <= 2; ++n) {
        a.add_term(m, n, RationalComplex{Rat(coeff(rng)), Rat(0)});
        b.add_term(m, n, RationalComplex{Rat(coeff(rng)), Rat(0)});
      }
    }
    const ExactPolynomial poisson =
        a.derivative_x() * b.derivative_p() - a.derivative_p() * b.derivative_x();
    CHECK(star::moyal_bracket(a, b, hbar) == poisson.scaled(kI * hbar));
  }
}

TEST_CASE("symbol_transform matches the operator-ordering oracle") {
  const RationalComplex hbar{1};
  const auto xp = ExactPolynomial::monomial(1, 1, kOne);

  // standard symbol xp -> weyl symbol xp + i hbar/2.
  const ExactPolynomial weyl_of_xp =
      star::symbol_transform(xp, KernelTag::standard, KernelTag::wigner, hbar);
  CHECK(weyl_of_xp == oracle::ordering_symbol(1, 1, oracle::Ordering::weyl, Rat(1)));

  // Higher monomials against the commutator-reduction oracle.
  for (auto [m, n] : {std::pair<unsigned, unsigned>{2, 1}, {1, 3}, {2, 2}, {3, 2}}) {
    const auto standard_symbol = ExactPolynomial::monomial(m, n, kOne);
    const ExactPolynomial to_weyl =
        star::symbol_transform(standard_symbol, KernelTag::standard, KernelTag::wigner, hbar);
    CHECK(to_weyl == oracle::ordering_symbol(m, n, oracle::Ordering::weyl, Rat(1)));
    const ExactPolynomial to_anti =
        star::symbol_transform(standard_symbol, KernelTag::standard, KernelTag::antistandard,
                               hbar);
    CHECK(to_anti == oracle::ordering_symbol(m, n, oracle::Ordering::antistandard, Rat(1)));
  }

  // from == to is the identity; round trips cancel exactly.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const ExactPolynomial a = random_poly(rng);
    for (KernelTag tag : {KernelTag::wigner, KernelTag::standard, KernelTag::bornjordan}) {
      CHECK(star::symbol_transform(a, tag, tag, hbar) == a);
    }
    const ExactPolynomial there =
        star::symbol_transform(a, KernelTag::wigner, KernelTag::bornjordan, hbar);
    CHECK(star::symbol_transform(there, KernelTag::bornjordan, KernelTag::wigner, hbar) == a);
  }

  // p-free symbols are unaltered under every constraint-compliant pair.
  const auto x3 = ExactPolynomial::monomial(3, 0, kOne);
  for (KernelTag from : {KernelTag::wigner, KernelTag::standard, KernelTag::bornjordan}) {
    for (KernelTag to : {KernelTag::wigner, KernelTag::antistandard, KernelTag::bornjordan}) {
      CHECK(star::symbol_transform(x3, from, to, hbar) == x3);
    }
  }
}

TEST_CASE("ordering oracle sanity") {
  // Standard symbol of the standard-ordered word is the plain monomial.
  CHECK(oracle::ordering_symbol(2, 3, oracle::Ordering::standard, Rat(1)) ==
        ExactPolynomial::monomial(2, 3, kOne));
  // p-free words have the same symbol in every ordering.
  for (auto ord : {oracle::Ordering::weyl, oracle::Ordering::standard,
                   oracle::Ordering::antistandard}) {
    CHECK(oracle::ordering_symbol(3, 0, ord, Rat(1)) == ExactPolynomial::monomial(3, 0, kOne));
  }
  // Weyl symbol of x p: xp + i hbar / 2.
  ExactPolynomial expected = ExactPolynomial::monomial(1, 1, kOne);
  expected.add_term(0, 0, RationalComplex{Rat(0), Rat(1, 2)});
  CHECK(oracle::ordering_symbol(1, 1, oracle::Ordering::weyl, Rat(1)) == expected);
  // Antistandard symbol of x p: xp + i hbar.
  ExactPolynomial anti = ExactPolynomial::monomial(1, 1, kOne);
  anti.add_term(0, 0, RationalComplex{Rat(0), Rat(1)});
  CHECK(oracle::ordering_symbol(1, 1, oracle::Ordering::antistandard, Rat(1)) == anti);
}

TEST_CASE("weyl star-delta expansion: polynomial route") {
  // A = p - dS/dx for S = x^3: Theta1 = 0, Theta2 = -6.
  ExactPolynomial a = ExactPolynomial::p();
  a.add_term(2, 0, RationalComplex{-3});  // p - 3 x^2
  const auto exp_cubic = star::star_delta_weyl_expansion(a);
  CHECK(exp_cubic.theta1.is_zero());
  CHECK(exp_cubic.theta2 == ExactPolynomial::constant(RationalComplex{-6}));

  // Quadratic S: both corrections vanish.
  ExactPolynomial aq = ExactPolynomial::p();
  aq.add_term(1, 0, RationalComplex{-4});  // S = 2x^2
  aq.add_term(0, 0, RationalComplex{-1});  // + x
  const auto exp_quad = star::star_delta_weyl_expansion(aq);
  CHECK(exp_quad.theta1.is_zero());
  CHECK(exp_quad.theta2.is_zero());

  // Linear symbol x - x0: the star-exponential series is the ordinary one,
  // because A *_W A = A^2 exactly for linear symbols.
  ExactPolynomial linear = ExactPolynomial::x();
  linear.add_term(0, 0, RationalComplex{-2});
  const auto exp_linear = star::star_delta_weyl_expansion(linear);
  CHECK(exp_linear.theta1.is_zero());
  CHECK(exp_linear.theta2.is_zero());
  ExactPolynomial power = ExactPolynomial::constant(kOne);
  ExactPolynomial plain = ExactPolynomial::constant(kOne);
  const RationalComplex hbar{1};
  for (int k = 1; k <= 8; ++k) {
    power = poly_star(power, linear, StarProductKind::weyl, hbar);
    plain = plain * linear;
    CHECK(power == plain);
  }
}

TEST_CASE("weyl star-delta expansion: sampled-field route") {
  const SpatialGrid grid{-4.0, 4.0, 128};
  std::vector<double> s_cubic(grid.n), s_quad(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) {
    const double x = grid.x(j);
    s_cubic[j] = x * x * x;
    s_quad[j] = 1.0 + 2.0 * x - 0.7 * x * x;
  }
  const auto exp_cubic = star::star_delta_weyl_expansion(s_cubic, grid);
  CHECK(linf(std::span<const double>(exp_cubic.theta1)) == 0.0);
  for (double t2 : exp_cubic.theta2) CHECK(t2 == doctest::Approx(-6.0).epsilon(1e-9));
  const auto exp_quad = star::star_delta_weyl_expansion(s_quad, grid);
  CHECK(linf(std::span<const double>(exp_quad.theta2)) < 1e-9);
}

namespace {

PolarFields synthetic_polar(const SpatialGrid& grid, const PhysicalConstants& constants,
                            const std::function<double(double)>& amplitude,
                            const std::function<double(double)>& action) {
  PolarFields pf{grid, constants, std::vector<double>(grid.n), std::vector<double>(grid.n),
                 std::vector<std::uint8_t>(grid.n, 0), 0.0};
  for (std::size_t j = 0; j < grid.n; ++j) {
    pf.amplitude[j] = amplitude(grid.x(j));
    pf.action[j] = action(grid.x(j));
  }
  return pf;
}

}  // namespace

TEST_CASE("standard star-delta: linear phase gives the ordinary delta kernel") {
  const SpatialGrid grid{-20.0, 20.0, 512};
  const PhysicalConstants constants{1.0, 1.0};
  const double p0 = 1.25;
  const PolarFields pf = synthetic_polar(
      grid, constants, [](double) { return 1.0; }, [p0](double x) { return p0 * x; });
  const PhaseSpaceGrid ps(grid, constants.hbar);
  const UniformGrid y_window = UniformGrid::centered(64, ps.y_grid().spacing);

  const std::size_t jb = grid.n / 4, je = 3 * grid.n / 4;
  const star::MixedField delta = star::star_delta_standard(pf, y_window, jb, je);
  // exact kernel: exp(i y p0)
  double max_err = 0.0;
  for (std::size_t jw = 0; jw < je - jb; ++jw) {
    for (std::size_t m = 0; m < y_window.n; ++m) {
      const double y = y_window.value(m);
      const cplx expect{std::cos(y * p0), std::sin(y * p0)};
      max_err = std::max(max_err, std::abs(delta.values[jw * y_window.n + m] - expect));
    }
  }
  CHECK(max_err < 1e-12);

  // YRangeInsufficient when the window cannot host the shifts.
  const UniformGrid huge = UniformGrid::centered(512, ps.y_grid().spacing);
  CHECK_THROWS_AS(star::star_delta_standard(pf, huge, 0, grid.n), YRangeInsufficient);
}

TEST_CASE("star-genvalue: (p - S'(x)) annihilates the standard star-delta") {
  const PhysicalConstants constants{1.0, 1.0};
  double previous_residual = 0.0;
  for (std::size_t n : {512u, 1024u}) {
    const SpatialGrid grid{-20.0, 20.0, n};
    const double p0 = 1.0;
    const PolarFields pf = synthetic_polar(
        grid, constants, [](double) { return 1.0; }, [p0](double x) { return p0 * x; });
    const PhaseSpaceGrid ps(grid, constants.hbar);
    const UniformGrid y_window = UniformGrid::centered(64, ps.y_grid().spacing);
    const std::size_t jb = grid.n / 4, je = 3 * grid.n / 4;
    const star::MixedField delta = star::star_delta_standard(pf, y_window, jb, je);

    const star::MixedField p_star = star::left_star_multiply_p(delta, constants);
    std::vector<double> sx(je - jb, p0);
    const star::MixedField s_star = star::left_star_multiply_xfree(delta, sx);

    double residual = 0.0;
    for (std::size_t i = 0; i < p_star.values.size(); ++i) {
      if (!p_star.valid[i]) continue;
      residual = std::max(residual, std::abs(p_star.values[i] - s_star.values[i]));
    }
    // 6th-order differences: |p0|^7 dy^6 / 140 plus round-off.
    const double dy = y_window.spacing;
    const double bound = 4.0 * std::pow(dy, 6) / 140.0 + 1e-12;
    CHECK(residual < bound);
    if (previous_residual > 0.0) CHECK(previous_residual / residual > 30.0);
    previous_residual = residual;
  }
}

TEST_CASE("star-genvalue holds for a chirped (quadratic) phase") {
  const PhysicalConstants constants{1.0, 1.0};
  const SpatialGrid grid{-20.0, 20.0, 512};
  const double b = 1.0, c = 0.1;
  const PolarFields pf = synthetic_polar(
      grid, constants, [](double) { return 1.0; },
      [b, c](double x) { return b * x + c * x * x; });
  const PhaseSpaceGrid ps(grid, constants.hbar);
  const UniformGrid y_window = UniformGrid::centered(64, ps.y_grid().spacing);
  const std::size_t jb = grid.n / 2 - 16, je = grid.n / 2 + 16;
  const star::MixedField delta = star::star_delta_standard(pf, y_window, jb, je);

  const star::MixedField p_star = star::left_star_multiply_p(delta, constants);
  std::vector<double> sx(je - jb);
  for (std::size_t jw = 0; jw < sx.size(); ++jw) {
    const double x = grid.x(jb + jw);
    sx[jw] = b + 2.0 * c * x;
  }
  const star::MixedField s_star = star::left_star_multiply_xfree(delta, sx);
  double residual = 0.0;
  for (std::size_t i = 0; i < p_star.values.size(); ++i) {
    if (!p_star.valid[i]) continue;
    residual = std::max(residual, std::abs(p_star.values[i] - s_star.values[i]));
  }
  CHECK(residual < 5e-4);
}

TEST_CASE("lemma: sandwich_standard equals mehta on Gaussian fixtures") {
  const SpatialGrid grid{-20.0, 20.0, 256};
  const PhysicalConstants constants{1.0, 1.0};
  for (double t : {0.0, 1.0, 2.0}) {
    const WaveFunction psi = make_gaussian({1.0, 1.0, t}, grid, constants);
    const PolarFields pf = polar_decompose(psi);
    const QuasiDistribution sandwich = star::sandwich_standard(pf);
    const QuasiDistribution closed = mehta(psi);
    CHECK(linf_diff(std::span<const cplx>(sandwich.values),
                    std::span<const cplx>(closed.values)) < 1e-9);
    // x marginal: R^2.
    const Marginals m = marginals(sandwich);
    std::vector<double> r2(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) r2[j] = pf.amplitude[j] * pf.amplitude[j];
    CHECK(linf_diff(m.x, r2) < 1e-9);
  }
}

TEST_CASE("sandwich of a plane-wave-phase state concentrates at p = p0") {
  const SpatialGrid grid{-20.0, 20.0, 256};
  const PhysicalConstants constants{1.0, 1.0};
  const WaveFunction psi = make_gaussian({2.0, 1.0, 0.0}, grid, constants);  // S = p0 x
  const PolarFields pf = polar_decompose(psi);
  const QuasiDistribution f = star::sandwich_standard(pf);
  const UniformGrid pg = f.grid.p_grid();
  const std::size_t j = grid.n / 2;
  std::size_t argmax = 0;
  double best = 0.0;
  for (std::size_t l = 0; l < grid.n; ++l) {
    if (std::abs(f.at(j, l)) > best) {
      best = std::abs(f.at(j, l));
      argmax = l;
    }
  }
  CHECK(std::abs(pg.value(argmax) - 1.0) <= 0.5 * pg.spacing + 1e-12);
}

TEST_CASE("weyl sandwich kernel transforms to the direct Wigner function") {
  const SpatialGrid grid{-20.0, 20.0, 256};
  const PhysicalConstants constants{1.0, 1.0};
  const WaveFunction psi = make_gaussian({1.0, 1.0, 1.0}, grid, constants);
  const PolarFields pf = polar_decompose(psi);
  const star::MixedField kernel = star::weyl_sandwich_kernel(pf);
  const std::vector<cplx> f = star::mixed_to_phase_space(kernel);
  const QuasiDistribution direct = wigner_direct(psi);
  CHECK(linf_diff(std::span<const cplx>(f), std::span<const cplx>(direct.values)) < 1e-11);
}

TEST_CASE("polynomial text grammar round trips") {
  const PolynomialSymbol p = star::parse_symbol("(1,0)*x^2*p + (0,-0.5)*p^3 + 2.5");
  CHECK(star::evaluate(p, 2.0, 1.0) ==
        cplx{2.0 * 2.0 * 1.0 + 2.5, -0.5 * 1.0});
  const std::string text = star::to_string(p);
  const PolynomialSymbol reparsed = star::parse_symbol(text);
  CHECK(reparsed == p);
  CHECK_THROWS_AS(star::parse_symbol("(1,0)*q"), ConfigError);
}
