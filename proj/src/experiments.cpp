#include "dtmph/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace dtmph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<std::vector<double>> gen_cube_skeleton() {
	std::vector<std::vector<double>> pts;
	// 8 corners
	for (int x = 0; x <= 1; ++x)
		for (int y = 0; y <= 1; ++y)
			for (int z = 0; z <= 1; ++z) pts.push_back({(double)x, (double)y, (double)z});
	// 9 interior points per edge, spacing 0.1
	for (int axis = 0; axis < 3; ++axis) {
		for (int u = 0; u <= 1; ++u)
			for (int v = 0; v <= 1; ++v)
				for (int i = 1; i <= 9; ++i) {
					std::vector<double> p(3);
					p[axis] = 0.1 * i;
					p[(axis + 1) % 3] = u;
					p[(axis + 2) % 3] = v;
					pts.push_back(p);
				}
	}
	// outliers at the centers of the four faces orthogonal to x and y
	pts.push_back({0.0, 0.5, 0.5});
	pts.push_back({1.0, 0.5, 0.5});
	pts.push_back({0.5, 0.0, 0.5});
	pts.push_back({0.5, 1.0, 0.5});
	return pts;
}

std::vector<std::vector<double>> gen_torus_spiral(std::size_t n, double R, double r,
                                                  int windings) {
	if (n < 1 || !(R > r) || !(r > 0.0) || windings < 1)
		throw std::invalid_argument("gen_torus_spiral: invalid parameters");
	std::vector<std::vector<double>> pts;
	pts.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		const double theta = 2.0 * std::numbers::pi * (double)i / (double)n;
		const double phi = windings * theta;
		const double rad = R + r * std::cos(phi);
		pts.push_back({rad * std::cos(theta), rad * std::sin(theta), r * std::sin(phi)});
	}
	return pts;
}

std::vector<std::vector<double>> add_gaussian_noise(const std::vector<std::vector<double>>& pts,
                                                    double sigma, std::uint64_t seed) {
	if (sigma < 0.0) throw std::invalid_argument("add_gaussian_noise: negative sigma");
	std::mt19937_64 rng(seed);
	// Box-Muller on explicit mt19937_64 draws: std::normal_distribution is not
	// specified bit-exactly across standard libraries.
	double spare = 0.0;
	bool have_spare = false;
	auto uniform = [&rng]() { return ((rng() >> 11) + 0.5) * 0x1.0p-53; };
	auto normal = [&]() {
		if (have_spare) {
			have_spare = false;
			return spare;
		}
		const double u1 = uniform(), u2 = uniform();
		const double mag = std::sqrt(-2.0 * std::log(u1));
		const double ang = 2.0 * std::numbers::pi * u2;
		spare = mag * std::sin(ang);
		have_spare = true;
		return mag * std::cos(ang);
	};
	auto out = pts;
	for (auto& p : out)
		for (auto& c : p) c += sigma * normal();
	return out;
}

std::string to_string(FiltrationMode mode) {
	switch (mode) {
		case FiltrationMode::Rips: return "rips";
		case FiltrationMode::WeightedRips: return "weighted-rips";
		case FiltrationMode::SparseRips: return "sparse-rips";
		case FiltrationMode::SparseWeightedRips: return "sparse-weighted-rips";
		case FiltrationMode::Witnessed: return "witnessed";
	}
	throw std::logic_error("unknown mode");
}

FiltrationMode mode_from_string(const std::string& s) {
	if (s == "rips") return FiltrationMode::Rips;
	if (s == "weighted-rips") return FiltrationMode::WeightedRips;
	if (s == "sparse-rips") return FiltrationMode::SparseRips;
	if (s == "sparse-weighted-rips") return FiltrationMode::SparseWeightedRips;
	if (s == "witnessed") return FiltrationMode::Witnessed;
	throw std::invalid_argument("unknown mode: " + s);
}

namespace {

double resolve_k(const ExperimentConfig& cfg, std::size_t n) {
	if (cfg.k && cfg.mass)
		throw std::invalid_argument("config: give either mass or k, not both");
	if (cfg.k) return *cfg.k;
	if (cfg.mass) return MassParameter::from_mass(*cfg.mass, n).k;
	throw std::invalid_argument("config: a weighted mode needs mass or k");
}

std::vector<std::vector<double>> load_points(const ExperimentConfig& cfg) {
	if (!cfg.input_path.empty() && !cfg.generator.empty())
		throw std::invalid_argument("config: give either input or generator");
	std::vector<std::vector<double>> pts;
	if (!cfg.input_path.empty()) {
		pts = read_points_csv(cfg.input_path);
	} else if (cfg.generator == "cube-skeleton") {
		pts = gen_cube_skeleton();
	} else if (cfg.generator == "torus-spiral") {
		pts = gen_torus_spiral(cfg.generator_n);
	} else {
		throw std::invalid_argument("config: unknown generator: " + cfg.generator);
	}
	if (cfg.noise_sigma > 0.0) pts = add_gaussian_noise(pts, cfg.noise_sigma, cfg.seed);
	return pts;
}

}  // namespace

Filtration build_mode_filtration(const MetricSpace& M, const ExperimentConfig& cfg,
                                 FiltrationMode mode, FiltrationStats* stats) {
	const auto ids = all_ids(M);
	const auto t0 = std::chrono::steady_clock::now();
	Filtration F;
	switch (mode) {
		case FiltrationMode::Rips: {
			std::vector<double> zeros(ids.size(), 0.0);
			F = build_weighted_rips(M, ids, zeros, cfg.max_dim, cfg.alpha_max);
			break;
		}
		case FiltrationMode::WeightedRips: {
			const auto W = dtm_weights(M, ids, MassParameter::from_count(resolve_k(cfg, ids.size())));
			F = build_weighted_rips(M, W, cfg.max_dim, cfg.alpha_max);
			break;
		}
		case FiltrationMode::SparseRips:
			F = build_sparse_rips(M, ids, cfg.epsilon, cfg.max_dim, cfg.seed % ids.size(),
			                      cfg.alpha_max);
			break;
		case FiltrationMode::SparseWeightedRips: {
			const auto W = dtm_weights(M, ids, MassParameter::from_count(resolve_k(cfg, ids.size())));
			F = build_sparse_weighted_rips(M, W.ids, W.weights, cfg.epsilon, cfg.max_dim,
			                               cfg.seed % ids.size(), cfg.alpha_max);
			break;
		}
		case FiltrationMode::Witnessed: {
			// weighted Rips over the witness barycenters with weights sqrt(E^C)
			const long k = (long)std::llround(resolve_k(cfg, ids.size()));
			std::vector<std::vector<double>> barys;
			std::vector<double> weights;
			for (std::size_t p : ids) {
				const auto info = barycenter_and_energy(M, ids, k, QueryPoint::at_id(p));
				barys.push_back(info.barycenter);
				weights.push_back(std::sqrt(std::max(0.0, info.cell_energy)));
			}
			const auto W = MetricSpace::from_points(std::move(barys), MetricKind::L2);
			F = build_weighted_rips(W, all_ids(W), weights, cfg.max_dim, cfg.alpha_max);
			break;
		}
	}
	if (stats) {
		const auto t1 = std::chrono::steady_clock::now();
		stats->mode = to_string(mode);
		stats->epsilon =
		    (mode == FiltrationMode::SparseRips || mode == FiltrationMode::SparseWeightedRips)
		        ? cfg.epsilon
		        : 0.0;
		stats->n = M.size();
		stats->simplices_per_dim = F.count_per_dim();
		stats->build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
	}
	return F;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
	namespace fs = std::filesystem;
	const auto pts = load_points(cfg);
	const auto M = MetricSpace::from_points(pts, cfg.metric);
	PipelineResult result;

	const bool write = !cfg.out_dir.empty();
	if (write) fs::create_directories(cfg.out_dir);

	for (FiltrationMode mode : cfg.modes) {
		FiltrationStats st;
		const Filtration F = build_mode_filtration(M, cfg, mode, &st);
		result.stats.push_back(st);
		const auto D = reduce(F, cfg.max_dim - 1);
		const std::string name = to_string(mode);
		result.mode_names.push_back(name);
		result.diagrams[name] = D;
		if (write) {
			std::ofstream out(fs::path(cfg.out_dir) / ("diagram_" + name + ".csv"));
			write_diagram_csv(out, D);
		}
		for (auto [dim, j] : cfg.snr_requests)
			result.snr_tables[name][{dim, j}] = snr(D, dim, j);
	}

	const std::size_t nm = result.mode_names.size();
	if (nm > 1) {
		for (int dim = 0; dim + 1 <= cfg.max_dim; ++dim) {
			std::vector<std::vector<double>> B(nm, std::vector<double>(nm, 0.0));
			std::vector<std::vector<double>> L(nm, std::vector<double>(nm, 0.0));
			for (std::size_t i = 0; i < nm; ++i)
				for (std::size_t j = i + 1; j < nm; ++j) {
					const auto& Di = result.diagrams[result.mode_names[i]];
					const auto& Dj = result.diagrams[result.mode_names[j]];
					B[i][j] = B[j][i] = bottleneck(Di, Dj, dim);
					double lb = kInf;
					try {
						lb = log_bottleneck(Di, Dj, dim);
					} catch (const std::invalid_argument&) {
						// zero births (plain Rips) have no log scale
					}
					L[i][j] = L[j][i] = lb;
				}
			result.bottleneck_matrix[dim] = B;
			result.log_bottleneck_matrix[dim] = L;
			if (write) {
				const std::pair<std::string, const std::vector<std::vector<double>>*> tables[] = {
				    {"bottleneck", &B}, {"log_bottleneck", &L}};
				for (const auto& [tag, mat] : tables) {
					std::ofstream out(fs::path(cfg.out_dir) /
					                  (tag + "_dim" + std::to_string(dim) + ".csv"));
					out.precision(17);
					out << "diagram";
					for (const auto& n : result.mode_names) out << ',' << n;
					out << '\n';
					for (std::size_t i = 0; i < nm; ++i) {
						out << result.mode_names[i];
						for (std::size_t j = 0; j < nm; ++j) out << ',' << (*mat)[i][j];
						out << '\n';
					}
				}
			}
		}
	}

	if (write && !cfg.snr_requests.empty()) {
		std::ofstream out(fs::path(cfg.out_dir) / "snr.csv");
		out.precision(17);
		out << "diagram,dim,j,snr\n";
		for (const auto& name : result.mode_names)
			for (auto [dim, j] : cfg.snr_requests)
				out << name << ',' << dim << ',' << j << ','
				    << result.snr_tables[name][{dim, j}] << '\n';
	}

	// epsilon sweep of the sparse construction
	if (!cfg.epsilon_sweep.empty()) {
		nlohmann::json sweep = nlohmann::json::array();
		for (double eps : cfg.epsilon_sweep) {
			ExperimentConfig c = cfg;
			c.epsilon = eps;
			FiltrationStats st;
			const FiltrationMode mode = (cfg.mass || cfg.k) ? FiltrationMode::SparseWeightedRips
			                                                : FiltrationMode::SparseRips;
			(void)build_mode_filtration(M, c, mode, &st);
			result.stats.push_back(st);
			nlohmann::json rec;
			rec["mode"] = st.mode;
			rec["epsilon"] = st.epsilon;
			rec["n"] = st.n;
			rec["simplices_per_dim"] = st.simplices_per_dim;
			rec["build_ms"] = st.build_ms;
			sweep.push_back(rec);
		}
		if (write) {
			std::ofstream out(fs::path(cfg.out_dir) / "sweep.json");
			out << sweep.dump(2) << '\n';
		}
	}

	if (write) {
		nlohmann::json stats = nlohmann::json::array();
		for (const auto& st : result.stats) {
			nlohmann::json rec;
			rec["mode"] = st.mode;
			rec["epsilon"] = st.epsilon;
			rec["n"] = st.n;
			rec["simplices_per_dim"] = st.simplices_per_dim;
			rec["build_ms"] = st.build_ms;
			stats.push_back(rec);
		}
		std::ofstream out(fs::path(cfg.out_dir) / "stats.json");
		out << stats.dump(2) << '\n';
	}
	return result;
}

}  // namespace dtmph
