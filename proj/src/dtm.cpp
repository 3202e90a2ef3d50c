#include "dtmph/dtm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dtmph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MassParameter MassParameter::from_mass(double m, std::size_t n) {
	if (!(m > 0.0) || m > 1.0) throw std::invalid_argument("mass parameter must be in (0,1]");
	return MassParameter{m * static_cast<double>(n)};
}

MassParameter MassParameter::from_count(double k) {
	if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
	return MassParameter{k};
}

double DiscreteMeasure::total_mass() const {
	return std::accumulate(masses.begin(), masses.end(), 0.0);
}

void DiscreteMeasure::validate() const {
	if (ids.empty() || ids.size() != masses.size())
		throw std::invalid_argument("measure: empty or inconsistent support");
	for (double m : masses)
		if (!(m >= 0.0) || !std::isfinite(m))
			throw std::invalid_argument("measure: masses must be nonnegative and finite");
}

double dtm_eval(const MetricSpace& M, std::span<const std::size_t> P, MassParameter mass,
                const QueryPoint& x) {
	if (P.empty()) throw std::invalid_argument("dtm_eval: empty point set");
	const double k = mass.k;
	if (k > static_cast<double>(P.size()) + 1e-12)
		throw std::invalid_argument("dtm_eval: k exceeds |P|");
	const std::size_t kc = static_cast<std::size_t>(std::min<double>(std::ceil(k - 1e-12), P.size()));
	const auto nb = knn(M, P, x, kc);
	const std::size_t kf = static_cast<std::size_t>(std::floor(k + 1e-12));
	double acc = 0.0;
	for (std::size_t i = 0; i < std::min(kf, kc); ++i) acc += nb[i].dist * nb[i].dist;
	if (kc > kf) acc += (k - static_cast<double>(kf)) * nb[kc - 1].dist * nb[kc - 1].dist;
	return std::sqrt(acc / k);
}

WeightedPointSet dtm_weights(const MetricSpace& M, std::span<const std::size_t> P,
                             MassParameter mass) {
	WeightedPointSet W;
	W.ids.assign(P.begin(), P.end());
	W.weights.reserve(P.size());
	for (std::size_t p : P) W.weights.push_back(dtm_eval(M, P, mass, QueryPoint::at_id(p)));
	W.lipschitz = 1.0;
	return W;
}

double power_distance_eval(const MetricSpace& M, const WeightedPointSet& W,
                           const QueryPoint& x) {
	if (W.ids.empty()) throw std::invalid_argument("power_distance_eval: empty weighted set");
	double best = kInf;
	for (std::size_t i = 0; i < W.ids.size(); ++i) {
		const double d = M.distance(x, W.ids[i]);
		best = std::min(best, d * d + W.weights[i] * W.weights[i]);
	}
	return std::sqrt(best);
}

double dp_eval(const MetricSpace& M, std::span<const std::size_t> P, MassParameter mass,
               const QueryPoint& x) {
	return power_distance_eval(M, dtm_weights(M, P, mass), x);
}

BarycenterInfo barycenter_and_energy(const MetricSpace& M, std::span<const std::size_t> P,
                                     long k, const QueryPoint& x) {
	if (M.kind() != MetricKind::L2)
		throw std::invalid_argument("barycenter_and_energy: requires Euclidean metric");
	if (k < 1 || static_cast<std::size_t>(k) > P.size())
		throw std::invalid_argument("barycenter_and_energy: k out of range");
	const auto nb = knn(M, P, x, static_cast<std::size_t>(k));
	const std::size_t dim = M.dim();
	BarycenterInfo info;
	info.barycenter.assign(dim, 0.0);
	for (const auto& n : nb) {
		const auto& p = M.point(n.id);
		for (std::size_t c = 0; c < dim; ++c) info.barycenter[c] += p[c];
	}
	for (std::size_t c = 0; c < dim; ++c) info.barycenter[c] /= static_cast<double>(k);
	double energy = 0.0;
	for (const auto& n : nb) {
		const auto& p = M.point(n.id);
		double sq = 0.0;
		for (std::size_t c = 0; c < dim; ++c) {
			const double d = p[c] - info.barycenter[c];
			sq += d * d;
		}
		energy += sq;
	}
	info.cell_energy = energy / static_cast<double>(k);
	return info;
}

double witnessed_kdistance_eval(const MetricSpace& M, std::span<const std::size_t> P,
                                long k, const QueryPoint& x) {
	if (M.kind() != MetricKind::L2)
		throw std::invalid_argument("witnessed_kdistance_eval: requires Euclidean metric");
	const std::size_t dim = M.dim();
	std::vector<double> xc;
	if (x.is_id)
		xc = M.point(x.id);
	else
		xc = x.coords;
	double best = kInf;
	for (std::size_t p : P) {
		const auto info = barycenter_and_energy(M, P, k, QueryPoint::at_id(p));
		double sq = 0.0;
		for (std::size_t c = 0; c < dim; ++c) {
			const double d = info.barycenter[c] - xc[c];
			sq += d * d;
		}
		best = std::min(best, info.cell_energy + sq);
	}
	return std::sqrt(best);
}

// Exact transportation solve by the transportation simplex (northwest-corner
// start, MODI pivoting). Supports are tiny (<= 512); robustness over speed.
double wasserstein2(const MetricSpace& M, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
	mu.validate();
	nu.validate();
	const double total = mu.total_mass();
	if (std::abs(total - nu.total_mass()) > 1e-9 * std::max(1.0, total))
		throw std::invalid_argument("wasserstein2: total masses differ");
	const std::size_t n = mu.ids.size(), m = nu.ids.size();
	if (n > 512 || m > 512) throw std::invalid_argument("wasserstein2: support too large");

	std::vector<std::vector<double>> cost(n, std::vector<double>(m));
	double cmax = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < m; ++j) {
			const double d = M.distance(mu.ids[i], nu.ids[j]);
			cost[i][j] = d * d;
			cmax = std::max(cmax, cost[i][j]);
		}

	// northwest-corner basic feasible solution: exactly n+m-1 basic cells,
	// advancing one side per step even on degenerate ties
	std::vector<std::vector<double>> flow(n, std::vector<double>(m, 0.0));
	std::vector<std::vector<char>> basic(n, std::vector<char>(m, 0));
	{
		std::vector<double> a(mu.masses), b(nu.masses);
		std::size_t i = 0, j = 0;
		while (true) {
			const double f = std::min(a[i], b[j]);
			flow[i][j] = f;
			basic[i][j] = 1;
			a[i] -= f;
			b[j] -= f;
			if (i + 1 == n && j + 1 == m) break;
			if (j + 1 == m)
				++i;
			else if (i + 1 == n)
				++j;
			else if (a[i] <= b[j])
				++i;
			else
				++j;
		}
	}

	const double tol = 1e-12 * std::max(1.0, cmax);
	// adjacency of the basis tree: per row the basic columns, per column the
	// basic rows (rebuilt lazily each pivot; sizes are tiny)
	for (std::size_t iter = 0;; ++iter) {
		if (iter > 200000) throw std::runtime_error("wasserstein2: pivot limit exceeded");
		// duals from the basis tree (connected by construction)
		std::vector<double> u(n, kInf), v(m, kInf);
		u[0] = 0.0;
		for (bool changed = true; changed;) {
			changed = false;
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = 0; j < m; ++j) {
					if (!basic[i][j]) continue;
					if (std::isfinite(u[i]) && !std::isfinite(v[j]))
						v[j] = cost[i][j] - u[i], changed = true;
					else if (std::isfinite(v[j]) && !std::isfinite(u[i]))
						u[i] = cost[i][j] - v[j], changed = true;
				}
		}

		// entering cell: most negative reduced cost
		double best = -tol;
		std::size_t ei = n, ej = m;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < m; ++j) {
				if (basic[i][j]) continue;
				const double rc = cost[i][j] - u[i] - v[j];
				if (rc < best) best = rc, ei = i, ej = j;
			}
		if (ei == n) break;  // optimal

		// unique cycle: path from row ei to column ej through the basis tree
		// (BFS over tree nodes: rows 0..n-1, columns n..n+m-1)
		std::vector<int> parent(n + m, -1);
		std::vector<char> seen(n + m, 0);
		std::vector<std::size_t> queue{ei};
		seen[ei] = 1;
		while (!queue.empty()) {
			const std::size_t x = queue.back();
			queue.pop_back();
			if (x < n) {
				for (std::size_t j = 0; j < m; ++j)
					if (basic[x][j] && !seen[n + j]) {
						seen[n + j] = 1;
						parent[n + j] = (int)x;
						queue.push_back(n + j);
					}
			} else {
				for (std::size_t i = 0; i < n; ++i)
					if (basic[i][x - n] && !seen[i]) {
						seen[i] = 1;
						parent[i] = (int)x;
						queue.push_back(i);
					}
			}
		}
		// walk back from column ej to row ei, collecting the alternating cycle
		std::vector<std::pair<std::size_t, std::size_t>> cycle{{ei, ej}};
		for (std::size_t x = n + ej; x != ei;) {
			const std::size_t p = (std::size_t)parent[x];
			cycle.push_back(x < n ? std::pair{x, p - n} : std::pair{p, x - n});
			x = p;
		}
		// odd positions of the cycle lose flow
		double theta = kInf;
		std::size_t li = 0, lj = 0;
		for (std::size_t t = 1; t < cycle.size(); t += 2) {
			const auto [i, j] = cycle[t];
			if (flow[i][j] < theta) theta = flow[i][j], li = i, lj = j;
		}
		for (std::size_t t = 0; t < cycle.size(); ++t) {
			const auto [i, j] = cycle[t];
			flow[i][j] += (t % 2 == 0) ? theta : -theta;
		}
		flow[li][lj] = 0.0;
		basic[li][lj] = 0;
		basic[ei][ej] = 1;
	}

	double c = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < m; ++j) c += flow[i][j] * cost[i][j];
	return std::sqrt(std::max(0.0, c));
}

DiscreteMeasure read_measure_csv(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path);
	DiscreteMeasure mu;
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		std::stringstream ss(line);
		std::string a, b;
		if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
			throw std::runtime_error("measure CSV: malformed line: " + line);
		mu.ids.push_back(std::stoul(a));
		mu.masses.push_back(std::stod(b));
	}
	mu.validate();
	return mu;
}

void write_measure_csv(const std::string& path, const DiscreteMeasure& mu) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open " + path);
	out.precision(17);
	for (std::size_t i = 0; i < mu.ids.size(); ++i)
		out << mu.ids[i] << ',' << mu.masses[i] << '\n';
}

}  // namespace dtmph
