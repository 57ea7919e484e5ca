#pragma once

#include <filesystem>
#include <string>

#include "qps/bohm.hpp"
#include "qps/cohen.hpp"
#include "qps/theorem.hpp"

namespace qps::io {

// Shortest round-trip decimal representation (17 significant digits max).
std::string format_double(double v);

// Writes via a temporary file in the same directory, then renames, so a
// failed run leaves no partial artifact behind.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Quasi-distribution CSV: header `x,p,re,im`, row-major with x outer.
std::string quasi_csv(const QuasiDistribution& F);
// Companion metadata (no timestamps: byte-stable for identical configs).
std::string quasi_metadata_json(const QuasiDistribution& F, const std::string& generated_by);

std::string marginals_csv(const QuasiDistribution& F, const Marginals& m);

// Wavefunction CSV: header `x,re,im`.
std::string wavefunction_csv(const WaveFunction& psi);

// Trajectory CSV: header `t,x_0,x_1,...`.
std::string trajectories_csv(const TrajectoryEnsemble& ens);

std::string causal_report_json(const CausalFormReport& report);
std::string expansion_report_json(const ExpansionReport& report);

// Sampled custom kernel from JSON:
// {"name": ..., "xi": {"min","spacing","n"}, "eta": {...}, "values": [[re,im],...]}
CohenKernel load_custom_kernel(const std::filesystem::path& path, double hbar);

// Sampled wavefunction from a `x,re,im` CSV (grid must match).
WaveFunction load_wavefunction_csv(const std::filesystem::path& path, const SpatialGrid& grid,
                                   const PhysicalConstants& constants);

}  // namespace qps::io
