// Golden-data regression: every frozen value must be reproduced by its
// oracle, and the fast implementation paths must agree with the oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>

#include "oracles/oracles.hpp"
#include "qps/bohm.hpp"
#include "qps/cohen.hpp"

using namespace qps;
using nlohmann::json;

namespace {

json load(const char* name) {
  const std::filesystem::path path = std::filesystem::path(QPS_GOLDEN_DIR) / name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file ", path.string());
  json doc;
  in >> doc;
  return doc;
}

star::Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  REQUIRE(slash != std::string::npos);
  return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
}

star::ExactPolynomial parse_symbol_json(const json& terms) {
  star::ExactPolynomial poly;
  for (const auto& term : terms) {
    poly.add_term(term.at("m").get<unsigned>(), term.at("n").get<unsigned>(),
                  {parse_rat(term.at("re").get<std::string>()),
                   parse_rat(term.at("im").get<std::string>())});
  }
  return poly;
}

const SpatialGrid kGrid{-20.0, 20.0, 256};
const PhysicalConstants kConst{1.0, 1.0};

}  // namespace

TEST_CASE("wigner quadrature golden data") {
  const json doc = load("wigner_quadrature.json");
  REQUIRE(doc.at("oracle") == "wigner_quadrature");
  const WaveFunction psi = make_gaussian({1.0, 0.0, 0.0}, kGrid, kConst);
  const QuasiDistribution fw = wigner_direct(psi);
  const UniformGrid pg = fw.grid.p_grid();

  for (const auto& probe : doc.at("outputs")) {
    const auto j = probe.at("x_index").get<std::size_t>();
    const double p = probe.at("p").get<double>();
    const cplx frozen{probe.at("re").get<double>(), probe.at("im").get<double>()};

    // The oracle reproduces the frozen value bit-for-bit.
    const cplx recomputed = oracle::wigner_quadrature(psi, j, p);
    CHECK(recomputed.real() == frozen.real());
    CHECK(recomputed.imag() == frozen.imag());

    // The fast path agrees when p sits on the distribution grid.
    const double bin = (p - pg.min) / pg.spacing;
    const auto l = static_cast<std::size_t>(std::llround(bin));
    if (std::abs(bin - static_cast<double>(l)) < 1e-12) {
      CHECK(std::abs(fw.at(j, l) - frozen) < 1e-8);
    }
  }
}

TEST_CASE("gaussian closed-form golden data") {
  const json doc = load("gaussian_closed_forms.json");
  REQUIRE(doc.at("oracle") == "golden_gaussian");
  for (const auto& probe : doc.at("outputs")) {
    const double t = probe.at("t").get<double>();
    const double x = probe.at("x").get<double>();
    const oracle::GoldenGaussian gold{{1.0, 1.0, t}, kConst};
    CHECK(gold.amplitude(x) == probe.at("amplitude").get<double>());
    CHECK(gold.action(x) == probe.at("action").get<double>());
    CHECK(gold.action_derivative(x) == probe.at("action_derivative").get<double>());
    CHECK(gold.quantum_potential(x) == probe.at("quantum_potential").get<double>());
    CHECK(gold.wigner(x, probe.at("wigner_p").get<double>()) ==
          probe.at("wigner_value").get<double>());

    // Implementation cross-check at the grid point hosting x.
    const auto j = static_cast<std::size_t>(std::llround((x - kGrid.x_min) / kGrid.dx()));
    REQUIRE(kGrid.x(j) == doctest::Approx(x).epsilon(1e-15));
    const WaveFunction psi = make_gaussian({1.0, 1.0, t}, kGrid, kConst);
    CHECK(std::abs(psi.values[j]) ==
          doctest::Approx(probe.at("amplitude").get<double>()).epsilon(1e-12));
    const PolarFields pf = polar_decompose(psi);
    const QuantumPotentialField q = quantum_potential(pf, kConst);
    CHECK(q.values[j] ==
          doctest::Approx(probe.at("quantum_potential").get<double>()).epsilon(1e-8));
    const BohmDistribution bd = bohm_distribution(pf);
    CHECK(bd.momentum_section[j] ==
          doctest::Approx(probe.at("action_derivative").get<double>()).epsilon(1e-9));
  }
}

TEST_CASE("ordering-symbol golden data") {
  const json doc = load("ordering_symbols.json");
  REQUIRE(doc.at("oracle") == "ordering_symbol");
  for (const auto& probe : doc.at("outputs")) {
    const auto m = probe.at("m").get<unsigned>();
    const auto n = probe.at("n").get<unsigned>();
    const std::string name = probe.at("ordering").get<std::string>();
    const oracle::Ordering ord = name == "weyl"       ? oracle::Ordering::weyl
                                 : name == "standard" ? oracle::Ordering::standard
                                                      : oracle::Ordering::antistandard;
    const star::ExactPolynomial frozen = parse_symbol_json(probe.at("symbol"));
    CHECK(oracle::ordering_symbol(m, n, ord, star::Rat(1)) == frozen);

    // symbol_transform from the standard representation must match.
    const star::RationalComplex hbar{1};
    const auto standard = star::ExactPolynomial::monomial(m, n, star::RationalComplex{1});
    if (name == "weyl") {
      CHECK(star::symbol_transform(standard, star::KernelTag::standard, star::KernelTag::wigner,
                                   hbar) == frozen);
    } else if (name == "antistandard") {
      CHECK(star::symbol_transform(standard, star::KernelTag::standard,
                                   star::KernelTag::antistandard, hbar) == frozen);
    }
  }
}
