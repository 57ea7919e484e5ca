// qps: batch front end for phase-space quasi-distribution computations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "qps/bohm.hpp"
#include "qps/cohen.hpp"
#include "qps/dynamics.hpp"
#include "qps/field_ops.hpp"
#include "qps/io.hpp"
#include "qps/simd/simd.hpp"
#include "qps/spectral.hpp"
#include "qps/star_poly.hpp"
#include "qps/theorem.hpp"

namespace {

using namespace qps;
using nlohmann::json;

constexpr const char* kGeneratedBy = "qps 1.0";

// Flat typed key-value configuration: `key = value` lines, '#' comments.
// Unknown keys are rejected once a command has declared everything it reads.
class Config {
 public:
  static Config from_file(const std::filesystem::path& path) {
    Config cfg;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      cfg.values_[key] = value;
    }
    return cfg;
  }

  void apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + assignment + "'");
    values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string require_string(const std::string& key) const {
    accessed_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required config key '" + key + "'");
    return it->second;
  }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    accessed_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }
  double require_double(const std::string& key) const {
    return parse_double(key, require_string(key));
  }
  double get_double(const std::string& key, double fallback) const {
    accessed_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
  }
  std::size_t require_size(const std::string& key) const {
    const double v = require_double(key);
    if (v < 0 || v != std::floor(v))
      throw ConfigError("config key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v);
  }
  std::size_t get_size(const std::string& key, std::size_t fallback) const {
    accessed_.insert(key);
    if (!has(key)) return fallback;
    return require_size(key);
  }
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const {
    accessed_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ConfigError("config key '" + key + "' holds an empty list");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : values_) {
      if (!accessed_.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }
  static double parse_double(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
      throw ConfigError("config key '" + key + "': bad number '" + text + "'");
    return v;
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> accessed_;
};

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  unsigned threads = 0;
  std::string simd_backend;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "configuration file")->required();
  cmd->add_option("--set", opts.overrides, "override a config key (key=value, repeatable)");
  cmd->add_option("-o,--out", opts.out_dir, "output directory (overrides QPS_OUT and output.dir)");
  cmd->add_option("--threads", opts.threads, "internal parallelism degree");
  cmd->add_option("--simd", opts.simd_backend, "kernel backend: scalar or avx2");
}

Config load_config(const CommonOptions& opts) {
  Config cfg = Config::from_file(opts.config_path);
  for (const auto& assignment : opts.overrides) cfg.apply_override(assignment);
  if (opts.threads != 0) set_parallel_degree(opts.threads);
  const std::size_t threads_key = cfg.get_size("threads", 0);
  if (opts.threads == 0 && threads_key != 0)
    set_parallel_degree(static_cast<unsigned>(threads_key));
  if (!opts.simd_backend.empty()) {
    if (opts.simd_backend == "scalar")
      simd::set_backend(simd::Backend::scalar);
    else if (opts.simd_backend == "avx2" && simd::backend_available(simd::Backend::avx2))
      simd::set_backend(simd::Backend::avx2);
    else
      throw ConfigError("unavailable simd backend '" + opts.simd_backend + "'");
  }
  return cfg;
}

std::filesystem::path resolve_out_dir(const Config& cfg, const CommonOptions& opts) {
  std::string dir = cfg.get_string("output.dir", "out");
  if (const char* env = std::getenv("QPS_OUT")) dir = env;
  if (!opts.out_dir.empty()) dir = opts.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

SpatialGrid build_grid(const Config& cfg) {
  return SpatialGrid(cfg.require_double("grid.xmin"), cfg.require_double("grid.xmax"),
                     cfg.require_size("grid.n"));
}

PhysicalConstants build_constants(const Config& cfg) {
  return PhysicalConstants(cfg.get_double("constants.hbar", 1.0),
                           cfg.get_double("constants.mass", 1.0));
}

WaveFunction build_state(const Config& cfg, const SpatialGrid& grid,
                         const PhysicalConstants& constants) {
  const std::string type = cfg.get_string("state.type", "gaussian");
  if (type == "gaussian") {
    GaussianPacketParams params{cfg.get_double("state.sigma0", 1.0),
                                cfg.get_double("state.p0", 0.0), cfg.get_double("state.t", 0.0)};
    return make_gaussian(params, grid, constants);
  }
  if (type == "sampled") {
    WaveFunction psi =
        io::load_wavefunction_csv(cfg.require_string("state.file"), grid, constants);
    psi = normalize(std::move(psi));
    check_boundary_decay(psi);
    return psi;
  }
  throw ConfigError("state.type must be 'gaussian' or 'sampled'");
}

CohenKernel build_kernel(const Config& cfg, const std::string& name, double hbar) {
  if (name == "wigner") return CohenKernel::wigner(hbar);
  if (name == "standard") return CohenKernel::standard(hbar);
  if (name == "antistandard") return CohenKernel::antistandard(hbar);
  if (name == "bornjordan") return CohenKernel::born_jordan(hbar);
  if (name == "custom") return io::load_custom_kernel(cfg.require_string("kernel.file"), hbar);
  throw ConfigError("unknown kernel '" + name + "'");
}

Potential build_potential(const Config& cfg, const SpatialGrid& grid,
                          const PhysicalConstants& constants, const std::string& prefix) {
  const std::string kind = cfg.get_string(prefix + ".potential", "free");
  if (kind == "free") return Potential::free_particle(grid);
  if (kind == "harmonic") {
    return Potential::harmonic(grid, constants, cfg.get_double(prefix + ".omega", 1.0),
                               cfg.get_double(prefix + ".center", 0.0));
  }
  if (kind == "quadratic") {
    return Potential::quadratic_potential(grid, cfg.get_double(prefix + ".a", 0.0),
                                          cfg.get_double(prefix + ".b", 0.0),
                                          cfg.get_double(prefix + ".c", 0.0));
  }
  throw ConfigError("unknown potential '" + kind + "'");
}

void write_distribution_files(const std::filesystem::path& dir, const std::string& stem,
                              const QuasiDistribution& f) {
  io::write_text_atomic(dir / (stem + ".csv"), io::quasi_csv(f));
  io::write_text_atomic(dir / (stem + "_meta.json"), io::quasi_metadata_json(f, kGeneratedBy));
  io::write_text_atomic(dir / (stem + "_marginals.csv"), io::marginals_csv(f, marginals(f)));
}

int cmd_wigner(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();
  write_distribution_files(dir, "fw", wigner_direct(psi));
  return 0;
}

int cmd_mehta(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();
  write_distribution_files(dir, "fs", mehta(psi));
  return 0;
}

int cmd_cohen(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const CohenKernel kernel = build_kernel(cfg, cfg.get_string("kernel", "wigner"), constants.hbar);
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();

  const QuasiDistribution f = cohen_transform(psi, kernel);
  write_distribution_files(dir, "ff", f);

  // Constraint checks plus the identity gauge round trip.
  const PhaseSpaceGrid ps(grid, constants.hbar);
  const auto flags = verify_kernel_constraints(kernel, grid.xi_grid(), ps.y_grid());
  const QuasiDistribution same = gauge_transform(f, kernel);
  const double round_trip =
      linf_diff(std::span<const cplx>(same.values), std::span<const cplx>(f.values));
  const json report = {
      {"kernel", kernel.name()},
      {"constraints", {flags.first, flags.second}},
      {"identity_gauge_round_trip_linf", round_trip},
  };
  io::write_text_atomic(dir / "constraints.json", report.dump(2) + "\n");
  return 0;
}

int cmd_verify_theorem(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const double threshold = cfg.get_double("verify.threshold", 1e-8);
  std::vector<std::string> kernel_names;
  {
    std::stringstream ss(
        cfg.get_string("verify.kernels", "wigner,standard,antistandard,bornjordan"));
    std::string item;
    while (std::getline(ss, item, ',')) kernel_names.push_back(item);
  }
  std::vector<CohenKernel> kernels;
  for (const std::string& name : kernel_names)
    kernels.push_back(build_kernel(cfg, name, constants.hbar));
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();

  bool failed = false;
  for (const CohenKernel& kernel : kernels) {
    const CausalFormReport report = causal_form_report(psi, kernel);
    io::write_text_atomic(dir / ("report_" + kernel.name() + ".json"),
                          io::causal_report_json(report));
    if (report.skipped) {
      std::cout << "kernel=" << kernel.name() << " SKIPPED (constraints violated)\n";
      continue;
    }
    const bool pass = report.linf <= threshold;
    failed = failed || !pass;
    std::cout << "kernel=" << kernel.name() << " linf=" << io::format_double(report.linf)
              << " l2=" << io::format_double(report.l2) << (pass ? " PASS" : " FAIL") << "\n";
  }
  if (failed) throw VerificationFailure("causal form deviates beyond the threshold");
  return 0;
}

int cmd_evolve(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const Potential v = build_potential(cfg, grid, constants, "evolve");
  const double dt = cfg.require_double("evolve.dt");
  const std::size_t steps = cfg.require_size("evolve.steps");
  const std::size_t cadence = cfg.get_size("evolve.snapshot_every", 0);
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();

  const EvolutionResult result = split_step_evolve(psi, v, dt, steps, cadence);
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "psi_%06zu.csv", k);
    io::write_text_atomic(dir / name, io::wavefunction_csv(result.snapshots[k]));
  }
  json times = json::array();
  for (double t : result.times) times.push_back(t);
  const json meta = {
      {"times", times},
      {"norm_drift", result.norm_drift},
      {"stability",
       {{"potential_phase_per_step", result.stability.potential_phase_per_step},
        {"kinetic_phase_per_step", result.stability.kinetic_phase_per_step},
        {"ok", result.stability.ok}}},
      {"generated_by", kGeneratedBy},
  };
  io::write_text_atomic(dir / "evolve_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_trajectories(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const Potential v = build_potential(cfg, grid, constants, "trajectories");
  const double dt = cfg.require_double("trajectories.dt");
  const std::size_t steps = cfg.require_size("trajectories.steps");
  const std::vector<double> starts = cfg.get_double_list("trajectories.initial", {});
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();

  const EvolutionResult evolution = split_step_evolve(psi, v, dt, steps, 1);
  std::vector<PolarFields> series;
  series.reserve(evolution.snapshots.size());
  for (const WaveFunction& snapshot : evolution.snapshots)
    series.push_back(polar_decompose(snapshot));
  const TrajectoryEnsemble ens = bohmian_trajectories(series, dt, starts);
  io::write_text_atomic(dir / "trajectories.csv", io::trajectories_csv(ens));
  return 0;
}

int cmd_expansion(const CommonOptions& opts) {
  const Config cfg = load_config(opts);
  const SpatialGrid grid = build_grid(cfg);
  const PhysicalConstants constants = build_constants(cfg);
  const WaveFunction psi = build_state(cfg, grid, constants);
  const std::vector<double> hbars =
      cfg.get_double_list("expansion.hbar_list", {0.2, 0.1, 0.05, 0.025});
  double hbar_max = 0.0;
  for (double h : hbars) hbar_max = std::max(hbar_max, h);
  const double y_max =
      cfg.get_double("expansion.y_max", cfg.get_double("state.sigma0", 1.0) / hbar_max);
  const std::filesystem::path dir = resolve_out_dir(cfg, opts);
  cfg.reject_unknown();

  const PolarFields pf = polar_decompose(psi);
  const ExpansionReport report = hbar_expansion_check(pf, hbars, y_max);
  io::write_text_atomic(dir / "expansion.json", io::expansion_report_json(report));
  std::cout << "slope=" << io::format_double(report.slope) << "\n";
  return 0;
}

star::StarProductKind parse_kind(const std::string& name) {
  if (name == "weyl") return star::StarProductKind::weyl;
  if (name == "standard") return star::StarProductKind::standard;
  if (name == "antistandard") return star::StarProductKind::antistandard;
  if (name == "standard-dual") return star::StarProductKind::standard_dual;
  throw ConfigError("unknown star product kind '" + name + "'");
}

star::KernelTag parse_tag(const std::string& name) {
  if (name == "wigner") return star::KernelTag::wigner;
  if (name == "standard") return star::KernelTag::standard;
  if (name == "antistandard") return star::KernelTag::antistandard;
  if (name == "bornjordan") return star::KernelTag::bornjordan;
  throw ConfigError("unknown kernel '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-space quasi-distribution toolkit"};
  app.require_subcommand(1);

  CommonOptions wigner_opts, cohen_opts, mehta_opts, verify_opts, evolve_opts, traj_opts,
      expansion_opts;
  add_common(app.add_subcommand("wigner", "Wigner function of the configured state"), wigner_opts);
  add_common(app.add_subcommand("cohen", "Cohen-class quasi-distribution"), cohen_opts);
  add_common(app.add_subcommand("mehta", "Mehta (standard-ordering) function"), mehta_opts);
  add_common(app.add_subcommand("verify-theorem", "causal form vs direct Cohen transform"),
             verify_opts);
  add_common(app.add_subcommand("evolve", "split-step Schroedinger evolution"), evolve_opts);
  add_common(app.add_subcommand("trajectories", "Bohmian trajectory integration"), traj_opts);
  add_common(app.add_subcommand("expansion", "hbar-expansion scaling report"), expansion_opts);

  auto* star_cmd = app.add_subcommand("star", "polynomial symbol arithmetic");
  std::string star_op = "product", star_kind = "weyl", star_from = "standard", star_to = "wigner";
  double star_hbar = 1.0;
  std::vector<std::string> star_symbols;
  star_cmd->add_option("--op", star_op, "product | bracket | transform");
  star_cmd->add_option("--kind", star_kind, "weyl | standard | antistandard | standard-dual");
  star_cmd->add_option("--from", star_from, "source kernel for transform");
  star_cmd->add_option("--to", star_to, "target kernel for transform");
  star_cmd->add_option("--hbar", star_hbar, "value of hbar");
  star_cmd->add_option("symbols", star_symbols, "term-list symbols, e.g. '(1,0)*x^2*p'")
      ->expected(1, 2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("wigner")) return cmd_wigner(wigner_opts);
    if (app.got_subcommand("cohen")) return cmd_cohen(cohen_opts);
    if (app.got_subcommand("mehta")) return cmd_mehta(mehta_opts);
    if (app.got_subcommand("verify-theorem")) return cmd_verify_theorem(verify_opts);
    if (app.got_subcommand("evolve")) return cmd_evolve(evolve_opts);
    if (app.got_subcommand("trajectories")) return cmd_trajectories(traj_opts);
    if (app.got_subcommand("expansion")) return cmd_expansion(expansion_opts);
    if (app.got_subcommand("star")) {
      const cplx hb{star_hbar, 0.0};
      if (star_op == "product" || star_op == "bracket") {
        if (star_symbols.size() != 2) throw ConfigError("star: need two symbols");
        const auto a = star::parse_symbol(star_symbols[0]);
        const auto b = star::parse_symbol(star_symbols[1]);
        const auto result = star_op == "product"
                                ? star::poly_star(a, b, parse_kind(star_kind), hb)
                                : star::moyal_bracket(a, b, hb);
        std::cout << star::to_string(result) << "\n";
      } else if (star_op == "transform") {
        if (star_symbols.size() != 1) throw ConfigError("star: need one symbol");
        const auto a = star::parse_symbol(star_symbols[0]);
        const auto result =
            star::symbol_transform(a, parse_tag(star_from), parse_tag(star_to), hb);
        std::cout << star::to_string(result) << "\n";
      } else {
        throw ConfigError("star: unknown --op '" + star_op + "'");
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const NumericPreconditionError& e) {
    std::cerr << "numeric precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
