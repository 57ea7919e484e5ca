#include "qps/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qps::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string quasi_csv(const QuasiDistribution& F) {
  const std::size_t n = F.grid.x.n;
  const UniformGrid pg = F.grid.p_grid();
  std::string out = "x,p,re,im\n";
  out.reserve(n * n * 40);
  for (std::size_t j = 0; j < n; ++j) {
    const std::string xs = format_double(F.grid.x.x(j));
    for (std::size_t l = 0; l < n; ++l) {
      const cplx v = F.values[j * n + l];
      out += xs;
      out += ',';
      out += format_double(pg.value(l));
      out += ',';
      out += format_double(v.real());
      out += ',';
      out += format_double(v.imag());
      out += '\n';
    }
  }
  return out;
}

std::string quasi_metadata_json(const QuasiDistribution& F, const std::string& generated_by) {
  const cplx norm = F.total_integral();
  json meta = {
      {"grid",
       {{"x_min", F.grid.x.x_min},
        {"x_max", F.grid.x.x_max},
        {"n", F.grid.x.n},
        {"dp", F.grid.dp()}}},
      {"hbar", F.constants.hbar},
      {"mass", F.constants.mass},
      {"kernel_tag", F.kernel.name()},
      {"norm", {{"re", norm.real()}, {"im", norm.imag()}}},
      {"source_digest", F.source_digest},
      {"generated_by", generated_by},
  };
  return meta.dump(2) + "\n";
}

std::string marginals_csv(const QuasiDistribution& F, const Marginals& m) {
  const std::size_t n = F.grid.x.n;
  const UniformGrid pg = F.grid.p_grid();
  std::string out = "x,px,p,pp\n";
  for (std::size_t j = 0; j < n; ++j) {
    out += format_double(F.grid.x.x(j));
    out += ',';
    out += format_double(m.x[j]);
    out += ',';
    out += format_double(pg.value(j));
    out += ',';
    out += format_double(m.p[j]);
    out += '\n';
  }
  return out;
}

std::string wavefunction_csv(const WaveFunction& psi) {
  std::string out = "x,re,im\n";
  for (std::size_t j = 0; j < psi.grid.n; ++j) {
    out += format_double(psi.grid.x(j));
    out += ',';
    out += format_double(psi.values[j].real());
    out += ',';
    out += format_double(psi.values[j].imag());
    out += '\n';
  }
  return out;
}

std::string trajectories_csv(const TrajectoryEnsemble& ens) {
  std::string out = "t";
  for (std::size_t i = 0; i < ens.positions.size(); ++i) out += ",x_" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < ens.times.size(); ++k) {
    out += format_double(ens.times[k]);
    for (const auto& traj : ens.positions) {
      out += ',';
      out += format_double(traj[k]);
    }
    out += '\n';
  }
  return out;
}

std::string causal_report_json(const CausalFormReport& report) {
  json j = {
      {"kernel", report.kernel_name},
      {"linf", report.linf},
      {"l2", report.l2},
      {"constraints", {report.constraints.first, report.constraints.second}},
      {"skipped", report.skipped},
      {"hbar", report.hbar},
      {"grid", {{"x_min", report.grid.x_min}, {"x_max", report.grid.x_max}, {"n", report.grid.n}}},
  };
  return j.dump(2) + "\n";
}

std::string expansion_report_json(const ExpansionReport& report) {
  json points = json::array();
  for (const auto& pt : report.points)
    points.push_back({{"hbar", pt.hbar}, {"deviation", pt.deviation}});
  json j = {
      {"points", points},
      {"slope", report.slope},
      {"slope_defined", report.slope_defined},
  };
  return j.dump(2) + "\n";
}

CohenKernel load_custom_kernel(const std::filesystem::path& path, double hbar) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open kernel file " + path.string());
  json j;
  in >> j;
  const auto grid_of = [](const json& g) {
    return UniformGrid{g.at("min").get<double>(), g.at("spacing").get<double>(),
                       g.at("n").get<std::size_t>()};
  };
  const UniformGrid xi = grid_of(j.at("xi"));
  const UniformGrid eta = grid_of(j.at("eta"));
  std::vector<cplx> values;
  values.reserve(j.at("values").size());
  for (const auto& entry : j.at("values")) {
    values.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
  }
  const std::string name = j.value("name", std::string("custom"));
  return CohenKernel::custom_sampled(name, xi, eta, std::move(values), hbar);
}

WaveFunction load_wavefunction_csv(const std::filesystem::path& path, const SpatialGrid& grid,
                                   const PhysicalConstants& constants) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open state file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,re,im")
    throw ConfigError("state file must start with header 'x,re,im'");
  WaveFunction psi{grid, constants, {}};
  psi.values.reserve(grid.n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string x_s, re_s, im_s;
    if (!std::getline(row, x_s, ',') || !std::getline(row, re_s, ',') ||
        !std::getline(row, im_s))
      throw ConfigError("bad state row: " + line);
    psi.values.emplace_back(std::stod(re_s), std::stod(im_s));
  }
  if (psi.values.size() != grid.n)
    throw ConfigError("state sample count does not match grid.n");
  return psi;
}

}  // namespace qps::io
