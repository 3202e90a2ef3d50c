#include "dtmph/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dtmph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Pt {
	double b, d;
	double pers_half() const { return (d - b) / 2.0; }
};

double linf(const Pt& a, const Pt& b) {
	return std::max(std::abs(a.b - b.b), std::abs(a.d - b.d));
}

// Hopcroft-Karp style augmenting-path matching on the augmented bipartite
// graph: left = D points + |E| diagonal slots, right = E points + |D|
// diagonal slots. Checks for a perfect matching with all edge costs <= r.
struct Feasibility {
	const std::vector<Pt>& D;
	const std::vector<Pt>& E;

	bool feasible(double r) const {
		const std::size_t n = D.size(), m = E.size(), total = n + m;
		// adjacency implicitly: left i < n is real, i >= n is a diagonal slot
		std::vector<int> match_l(total, -1), match_r(total, -1);
		auto allowed = [&](std::size_t l, std::size_t rgt) {
			const bool lreal = l < n, rreal = rgt < m;
			if (lreal && rreal) return linf(D[l], E[rgt]) <= r;
			if (lreal) return D[l].pers_half() <= r;
			if (rreal) return E[rgt].pers_half() <= r;
			return true;
		};
		std::vector<bool> visited;
		std::function<bool(std::size_t)> augment = [&](std::size_t l) -> bool {
			for (std::size_t rgt = 0; rgt < total; ++rgt) {
				if (visited[rgt] || !allowed(l, rgt)) continue;
				visited[rgt] = true;
				if (match_r[rgt] < 0 || augment((std::size_t)match_r[rgt])) {
					match_l[l] = (int)rgt;
					match_r[rgt] = (int)l;
					return true;
				}
			}
			return false;
		};
		for (std::size_t l = 0; l < total; ++l) {
			visited.assign(total, false);
			if (!augment(l)) return false;
		}
		return true;
	}
};

double finite_bottleneck(const std::vector<Pt>& D, const std::vector<Pt>& E) {
	if (D.empty() && E.empty()) return 0.0;
	std::vector<double> candidates{0.0};
	for (const auto& p : D) candidates.push_back(p.pers_half());
	for (const auto& q : E) candidates.push_back(q.pers_half());
	for (const auto& p : D)
		for (const auto& q : E) candidates.push_back(linf(p, q));
	std::sort(candidates.begin(), candidates.end());
	candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

	Feasibility f{D, E};
	std::size_t lo = 0, hi = candidates.size() - 1;
	while (lo < hi) {
		const std::size_t mid = (lo + hi) / 2;
		if (f.feasible(candidates[mid]))
			hi = mid;
		else
			lo = mid + 1;
	}
	return candidates[lo];
}

// Infinite-death points pair among themselves by birth; matching sorted
// births in order minimizes the max gap.
double essential_cost(std::vector<double> a, std::vector<double> b) {
	if (a.size() != b.size()) return kInf;
	std::sort(a.begin(), a.end());
	std::sort(b.begin(), b.end());
	double cost = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i) cost = std::max(cost, std::abs(a[i] - b[i]));
	return cost;
}

double bottleneck_impl(const PersistenceDiagram& D, const PersistenceDiagram& E, int dim,
                       bool log_scale) {
	std::vector<Pt> df, ef;
	std::vector<double> dinf, einf;
	auto collect = [&](const PersistenceDiagram& X, std::vector<Pt>& fin,
	                   std::vector<double>& ess) {
		for (const auto& p : X.points) {
			if (p.dim != dim) continue;
			double b = p.birth, d = p.death;
			if (log_scale) {
				if (!(b > 0.0) || (!p.infinite() && !(d > 0.0)))
					throw std::invalid_argument(
					    "log_bottleneck: births and finite deaths must be positive");
				b = std::log(b);
				if (!p.infinite()) d = std::log(d);
			}
			if (p.infinite())
				ess.push_back(b);
			else
				fin.push_back({b, d});
		}
	};
	collect(D, df, dinf);
	collect(E, ef, einf);
	const double ec = essential_cost(std::move(dinf), std::move(einf));
	if (std::isinf(ec)) return kInf;
	return std::max(ec, finite_bottleneck(df, ef));
}

}  // namespace

double bottleneck(const PersistenceDiagram& D, const PersistenceDiagram& E, int dim) {
	return bottleneck_impl(D, E, dim, false);
}

double log_bottleneck(const PersistenceDiagram& D, const PersistenceDiagram& E, int dim) {
	return bottleneck_impl(D, E, dim, true);
}

double snr(const PersistenceDiagram& D, int dim, int j) {
	if (j < 1) throw std::invalid_argument("snr: j must be >= 1");
	std::vector<double> spans;
	for (const auto& p : D.points)
		if (p.dim == dim) spans.push_back(p.death - p.birth);
	std::sort(spans.begin(), spans.end(), std::greater<>());
	// fewer than j features: the signal itself is missing, the worst outcome
	if ((int)spans.size() < j) return 0.0;
	// exactly j features: a noiseless diagram
	if ((int)spans.size() == j) return kInf;
	if (std::isinf(spans[j - 1])) return kInf;
	if (spans[j] == 0.0) return kInf;
	return spans[j - 1] / spans[j];
}

}  // namespace dtmph
