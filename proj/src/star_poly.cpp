#include "qps/star_poly.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace qps::star {
namespace {

std::string format_double(double v) {
  char buf[32];
  v += 0.0;  // normalize negative zero
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ConfigError("polynomial parse: bad number '" + s + "'");
  return v;
}

unsigned parse_power(const std::string& factor, char var) {
  if (factor.size() == 1) return 1;
  if (factor.size() < 3 || factor[1] != '^')
    throw ConfigError(std::string("polynomial parse: bad factor '") + factor + "'");
  const long deg = std::strtol(factor.c_str() + 2, nullptr, 10);
  if (deg < 0) throw ConfigError(std::string("polynomial parse: negative power of ") + var);
  return static_cast<unsigned>(deg);
}

}  // namespace

cplx evaluate(const PolynomialSymbol& poly, double x, double p) {
  cplx acc{0.0, 0.0};
  for (const auto& [key, c] : poly.terms()) {
    double mono = 1.0;
    for (unsigned r = 0; r < key.first; ++r) mono *= x;
    for (unsigned r = 0; r < key.second; ++r) mono *= p;
    acc += c * mono;
  }
  return acc;
}

PolynomialSymbol to_floating(const ExactPolynomial& poly) {
  PolynomialSymbol out;
  for (const auto& [key, c] : poly.terms()) {
    out.add_term(key.first, key.second,
                 cplx{boost::rational_cast<double>(c.re), boost::rational_cast<double>(c.im)});
  }
  return out;
}

std::string to_string(const PolynomialSymbol& poly) {
  if (poly.terms().empty()) return "(0,0)";
  std::string out;
  for (const auto& [key, c] : poly.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
    if (key.first == 1)
      out += "*x";
    else if (key.first > 1)
      out += "*x^" + std::to_string(key.first);
    if (key.second == 1)
      out += "*p";
    else if (key.second > 1)
      out += "*p^" + std::to_string(key.second);
  }
  return out;
}

PolynomialSymbol parse_symbol(const std::string& text) {
  PolynomialSymbol out;
  std::vector<std::string> terms;
  std::string current;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      terms.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  terms.push_back(current);

  for (const std::string& raw : terms) {
    const std::string term = trim(raw);
    if (term.empty()) throw ConfigError("polynomial parse: empty term");
    cplx coeff{1.0, 0.0};
    unsigned m = 0, n = 0;
    std::string factor;
    std::vector<std::string> factors;
    int d = 0;
    for (char ch : term) {
      if (ch == '(') ++d;
      if (ch == ')') --d;
      if (ch == '*' && d == 0) {
        factors.push_back(factor);
        factor.clear();
      } else {
        factor += ch;
      }
    }
    factors.push_back(factor);
    for (const std::string& rawf : factors) {
      const std::string f = trim(rawf);
      if (f.empty()) throw ConfigError("polynomial parse: empty factor in '" + term + "'");
      if (f.front() == '(') {
        if (f.back() != ')') throw ConfigError("polynomial parse: unbalanced '(' in '" + f + "'");
        const auto comma = f.find(',');
        if (comma == std::string::npos)
          throw ConfigError("polynomial parse: complex coefficient needs '(re,im)'");
        coeff *= cplx{parse_double(trim(f.substr(1, comma - 1))),
                      parse_double(trim(f.substr(comma + 1, f.size() - comma - 2)))};
      } else if (f.front() == 'x') {
        m += parse_power(f, 'x');
      } else if (f.front() == 'p') {
        n += parse_power(f, 'p');
      } else {
        coeff *= cplx{parse_double(f), 0.0};
      }
    }
    out.add_term(m, n, coeff);
  }
  return out;
}

}  // namespace qps::star
