#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtmph/experiments.hpp"
#include "json.hpp"

using namespace dtmph;

namespace {

MetricKind parse_metric(const std::string& s) {
	if (s == "l2") return MetricKind::L2;
	if (s == "l1") return MetricKind::L1;
	if (s == "matrix") return MetricKind::Matrix;
	throw CLI::ValidationError("--metric must be one of l2, l1, matrix");
}

MetricSpace load_space(const std::string& input, const std::string& metric) {
	const MetricKind kind = parse_metric(metric);
	if (kind == MetricKind::Matrix) return MetricSpace::from_matrix(read_matrix_csv(input));
	return MetricSpace::from_points(read_points_csv(input), kind);
}

struct SharedFlags {
	std::string input, metric = "l2", mode = "weighted-rips", out;
	double mass = 0.0, k = 0.0, epsilon = 0.5, alpha_max = 0.0;
	int max_dim = 2;
	std::uint64_t seed = 0;

	void attach(CLI::App* cmd, bool with_mode = true) {
		cmd->add_option("--input", input, "points CSV (or matrix CSV with --metric matrix)");
		cmd->add_option("--metric", metric, "l2, l1 or matrix");
		cmd->add_option("--mass", mass, "mass parameter m in (0,1]");
		cmd->add_option("--k", k, "neighbor count k (alternative to --mass)");
		cmd->add_option("--epsilon", epsilon, "sparsification parameter in (0,1)");
		cmd->add_option("--max-dim", max_dim, "maximal simplex dimension");
		cmd->add_option("--alpha-max", alpha_max, "truncate the filtration at this value");
		cmd->add_option("--seed", seed, "rng / greedy seed");
		cmd->add_option("--out", out, "output path");
		if (with_mode)
			cmd->add_option("--mode", mode,
			                "rips, weighted-rips, sparse-rips, sparse-weighted-rips, witnessed");
	}

	ExperimentConfig to_config() const {
		ExperimentConfig cfg;
		cfg.input_path = input;
		cfg.metric = parse_metric(metric);
		if (mass > 0.0) cfg.mass = mass;
		if (k > 0.0) cfg.k = k;
		cfg.epsilon = epsilon;
		cfg.max_dim = max_dim;
		if (alpha_max > 0.0) cfg.alpha_max = alpha_max;
		cfg.seed = seed;
		return cfg;
	}
};

std::ostream& output_or_stdout(std::ofstream& file, const std::string& path) {
	if (path.empty()) return std::cout;
	file.open(path);
	if (!file) throw std::runtime_error("cannot open " + path);
	return file;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"robust persistent homology of point clouds via distance-to-measure filtrations"};
	app.require_subcommand(1);

	// gen
	auto* gen = app.add_subcommand("gen", "generate a dataset");
	std::string gen_name = "cube-skeleton", gen_out;
	std::size_t gen_n = 10000;
	double gen_sigma = 0.0;
	std::uint64_t gen_seed = 0;
	gen->add_option("--generator", gen_name, "cube-skeleton or torus-spiral")->required();
	gen->add_option("--n", gen_n, "point count (torus-spiral)");
	gen->add_option("--sigma", gen_sigma, "gaussian noise standard deviation");
	gen->add_option("--seed", gen_seed, "noise seed");
	gen->add_option("--out", gen_out, "points CSV output");

	// dtm
	auto* dtm_cmd = app.add_subcommand("dtm", "DTM weights of every point");
	SharedFlags dtm_flags;
	dtm_flags.attach(dtm_cmd, false);

	// filtration
	auto* filt = app.add_subcommand("filtration", "build a filtration");
	SharedFlags filt_flags;
	filt_flags.attach(filt);
	std::string filt_stats;
	filt->add_option("--stats", filt_stats, "stats JSON output");

	// persist
	auto* persist = app.add_subcommand("persist", "reduce a filtration to a diagram");
	std::string persist_in, persist_out;
	int persist_dim = 1;
	persist->add_option("--input", persist_in, "filtration text file")->required();
	persist->add_option("--max-dim", persist_dim, "maximal homology dimension reported");
	persist->add_option("--out", persist_out, "diagram CSV output");

	// compare
	auto* compare = app.add_subcommand("compare", "pairwise diagram distances");
	std::vector<std::string> cmp_files;
	int cmp_dim = 1;
	bool cmp_log = false;
	std::string cmp_out;
	compare->add_option("--diagrams", cmp_files, "diagram CSV files")->required()->expected(2, -1);
	compare->add_option("--dim", cmp_dim, "homology dimension");
	compare->add_flag("--log", cmp_log, "log-bottleneck instead of bottleneck");
	compare->add_option("--out", cmp_out, "matrix CSV output");

	// snr
	auto* snr_cmd = app.add_subcommand("snr", "signal-to-noise ratio of a diagram");
	std::string snr_in;
	int snr_dim = 1, snr_j = 1;
	snr_cmd->add_option("--input", snr_in, "diagram CSV")->required();
	snr_cmd->add_option("--dim", snr_dim, "homology dimension");
	snr_cmd->add_option("--j", snr_j, "expected feature count");

	// sweep
	auto* sweep = app.add_subcommand("sweep", "filtration size across epsilon values");
	SharedFlags sweep_flags;
	sweep_flags.attach(sweep, false);
	std::vector<double> sweep_eps;
	std::string sweep_gen;
	std::size_t sweep_n = 2000;
	sweep->add_option("--epsilons", sweep_eps, "epsilon values")->expected(1, -1);
	sweep->add_option("--generator", sweep_gen, "generator instead of --input");
	sweep->add_option("--n", sweep_n, "generator point count");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*gen) {
			std::vector<std::vector<double>> pts;
			if (gen_name == "cube-skeleton")
				pts = gen_cube_skeleton();
			else if (gen_name == "torus-spiral")
				pts = gen_torus_spiral(gen_n);
			else
				throw std::runtime_error("unknown generator: " + gen_name);
			if (gen_sigma > 0.0) pts = add_gaussian_noise(pts, gen_sigma, gen_seed);
			if (gen_out.empty()) {
				for (const auto& p : pts) {
					for (std::size_t i = 0; i < p.size(); ++i)
						std::cout << (i ? "," : "") << p[i];
					std::cout << '\n';
				}
			} else {
				write_points_csv(gen_out, pts);
			}
		} else if (*dtm_cmd) {
			const auto M = load_space(dtm_flags.input, dtm_flags.metric);
			const auto cfg = dtm_flags.to_config();
			const double k = cfg.k ? *cfg.k : MassParameter::from_mass(cfg.mass.value(), M.size()).k;
			const auto W = dtm_weights(M, all_ids(M), MassParameter::from_count(k));
			std::ofstream file;
			auto& out = output_or_stdout(file, dtm_flags.out);
			out.precision(17);
			for (std::size_t i = 0; i < W.ids.size(); ++i)
				out << W.ids[i] << ',' << W.weights[i] << '\n';
		} else if (*filt) {
			const auto M = load_space(filt_flags.input, filt_flags.metric);
			auto cfg = filt_flags.to_config();
			FiltrationStats st;
			const auto F =
			    build_mode_filtration(M, cfg, mode_from_string(filt_flags.mode), &st);
			std::ofstream file;
			auto& out = output_or_stdout(file, filt_flags.out);
			write_filtration(out, F);
			if (!filt_stats.empty()) {
				nlohmann::json rec;
				rec["mode"] = st.mode;
				rec["epsilon"] = st.epsilon;
				rec["n"] = st.n;
				rec["simplices_per_dim"] = st.simplices_per_dim;
				rec["build_ms"] = st.build_ms;
				std::ofstream sout(filt_stats);
				sout << rec.dump(2) << '\n';
			}
		} else if (*persist) {
			std::ifstream in(persist_in);
			if (!in) throw std::runtime_error("cannot open " + persist_in);
			const auto F = read_filtration(in);
			const auto D = reduce(F, persist_dim);
			std::ofstream file;
			auto& out = output_or_stdout(file, persist_out);
			write_diagram_csv(out, D);
		} else if (*compare) {
			std::vector<PersistenceDiagram> ds;
			for (const auto& f : cmp_files) {
				std::ifstream in(f);
				if (!in) throw std::runtime_error("cannot open " + f);
				ds.push_back(read_diagram_csv(in));
			}
			std::ofstream file;
			auto& out = output_or_stdout(file, cmp_out);
			out.precision(17);
			out << "diagram";
			for (const auto& f : cmp_files) out << ',' << f;
			out << '\n';
			for (std::size_t i = 0; i < ds.size(); ++i) {
				out << cmp_files[i];
				for (std::size_t j = 0; j < ds.size(); ++j) {
					const double v = i == j ? 0.0
					                        : (cmp_log ? log_bottleneck(ds[i], ds[j], cmp_dim)
					                                   : bottleneck(ds[i], ds[j], cmp_dim));
					out << ',' << v;
				}
				out << '\n';
			}
		} else if (*snr_cmd) {
			std::ifstream in(snr_in);
			if (!in) throw std::runtime_error("cannot open " + snr_in);
			const auto D = read_diagram_csv(in);
			std::cout.precision(17);
			std::cout << snr(D, snr_dim, snr_j) << '\n';
		} else if (*sweep) {
			auto cfg = sweep_flags.to_config();
			cfg.generator = sweep_gen;
			cfg.generator_n = sweep_n;
			cfg.epsilon_sweep = sweep_eps.empty()
			                        ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}
			                        : sweep_eps;
			cfg.out_dir = sweep_flags.out;
			cfg.modes = {};
			run_pipeline(cfg);
		}
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
