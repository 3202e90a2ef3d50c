#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtmph/diagram.hpp"
#include "dtmph/dtm.hpp"
#include "dtmph/metric.hpp"
#include "dtmph/persistence.hpp"
#include "dtmph/sparse_rips.hpp"
#include "dtmph/weighted_rips.hpp"

namespace dtmph {

// 116 points regularly sampled on the edges of the unit cube (corners plus 9
// interior points per edge at spacing 0.1) and 4 outliers at the centers of
// the faces orthogonal to the x and y axes.
std::vector<std::vector<double>> gen_cube_skeleton();

// n points on a curve winding `windings` times around the torus of radii
// (R, r), uniform in the curve parameter.
std::vector<std::vector<double>> gen_torus_spiral(std::size_t n, double R = 2.0, double r = 0.5,
                                                  int windings = 20);

// Isotropic Gaussian noise, one independent normal draw per coordinate.
// Deterministic under seed: mt19937_64 driving a Box-Muller transform.
std::vector<std::vector<double>> add_gaussian_noise(const std::vector<std::vector<double>>& pts,
                                                    double sigma, std::uint64_t seed);

enum class FiltrationMode { Rips, WeightedRips, SparseRips, SparseWeightedRips, Witnessed };

std::string to_string(FiltrationMode mode);
FiltrationMode mode_from_string(const std::string& s);

struct ExperimentConfig {
	// exactly one of input_path / generator
	std::string input_path;
	std::string generator;  // "cube-skeleton" | "torus-spiral"
	std::size_t generator_n = 10000;

	MetricKind metric = MetricKind::L2;
	std::optional<double> mass;   // m in (0,1]
	std::optional<double> k;      // direct neighbor count
	double epsilon = 0.5;
	int max_dim = 2;
	double alpha_max = std::numeric_limits<double>::infinity();
	std::vector<FiltrationMode> modes;
	double noise_sigma = 0.0;
	std::uint64_t seed = 0;
	std::string out_dir;

	std::vector<std::pair<int, int>> snr_requests;  // (dim, j)
	std::vector<double> epsilon_sweep;              // nonempty enables the sweep
};

struct FiltrationStats {
	std::string mode;
	double epsilon = 0.0;
	std::size_t n = 0;
	std::vector<std::size_t> simplices_per_dim;
	double build_ms = 0.0;
};

struct PipelineResult {
	std::vector<std::string> mode_names;
	std::map<std::string, PersistenceDiagram> diagrams;
	std::vector<FiltrationStats> stats;
	// pairwise distance matrices per homology dimension
	std::map<int, std::vector<std::vector<double>>> bottleneck_matrix;
	std::map<int, std::vector<std::vector<double>>> log_bottleneck_matrix;
	std::map<std::string, std::map<std::pair<int, int>, double>> snr_tables;
};

// Build the requested filtrations, reduce them, and (when out_dir is set)
// write diagram CSVs, comparison matrices, SNR tables, and stats JSON.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

// One filtration build + stats, shared by run_pipeline and the CLI.
Filtration build_mode_filtration(const MetricSpace& M, const ExperimentConfig& cfg,
                                 FiltrationMode mode, FiltrationStats* stats = nullptr);

}  // namespace dtmph
