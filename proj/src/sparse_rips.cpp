#include "dtmph/sparse_rips.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dtmph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GreedyPermutation greedy_permutation(const MetricSpace& M, std::span<const std::size_t> P,
                                     std::size_t seed_id) {
	if (P.empty()) throw std::invalid_argument("greedy_permutation: empty point set");
	const std::size_t n = P.size();
	std::size_t seed_pos = n;
	for (std::size_t i = 0; i < n; ++i)
		if (P[i] == seed_id) {
			seed_pos = i;
			break;
		}
	if (seed_pos == n) throw std::invalid_argument("greedy_permutation: seed not in P");

	GreedyPermutation G;
	G.order.reserve(n);
	G.lambda.reserve(n);
	G.lambda_of.assign(n, 0.0);

	std::vector<double> dist_to_prefix(n, kInf);
	std::vector<bool> taken(n, false);
	std::size_t cur = seed_pos;
	double cur_lambda = kInf;
	for (std::size_t step = 0; step < n; ++step) {
		taken[cur] = true;
		G.order.push_back(P[cur]);
		G.lambda.push_back(cur_lambda);
		G.lambda_of[cur] = cur_lambda;
		std::size_t next = n;
		double best = -1.0;
		for (std::size_t i = 0; i < n; ++i) {
			if (taken[i]) continue;
			dist_to_prefix[i] = std::min(dist_to_prefix[i], M.distance(P[i], P[cur]));
			if (dist_to_prefix[i] > best ||
			    (dist_to_prefix[i] == best && P[i] < P[next])) {
				best = dist_to_prefix[i];
				next = i;
			}
		}
		if (next == n) break;
		cur = next;
		cur_lambda = best;
	}
	return G;
}

double perturbation_s(double lambda, double eps, double alpha) {
	if (std::isinf(lambda)) return 0.0;
	const double b1 = lambda / eps;
	if (alpha <= b1) return 0.0;
	const double b2 = lambda / (eps * (1.0 - eps));
	if (alpha >= b2) return eps * alpha;
	return alpha - b1;
}

SparseEdge sparse_edge_birth(double d, double lp, double lq, double eps) {
	auto deficit = [&](double a) {
		return 2.0 * a - perturbation_s(lp, eps, a) - perturbation_s(lq, eps, a) - d;
	};
	// breakpoints of the piecewise-linear deficit
	std::vector<double> bps;
	for (double l : {lp, lq}) {
		if (std::isinf(l)) continue;
		bps.push_back(l / eps);
		bps.push_back(l / (eps * (1.0 - eps)));
	}
	std::sort(bps.begin(), bps.end());
	bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

	double birth;
	double prev = 0.0, gprev = deficit(0.0);
	if (gprev >= 0.0) {
		birth = 0.0;
	} else {
		birth = -1.0;
		for (double bp : bps) {
			const double gb = deficit(bp);
			if (gb >= 0.0) {
				birth = prev + (bp - prev) * (-gprev) / (gb - gprev);
				break;
			}
			prev = bp;
			gprev = gb;
		}
		if (birth < 0.0) {
			// final piece, slope 2 - eps per finite endpoint
			double slope = 2.0;
			if (!std::isinf(lp)) slope -= eps;
			if (!std::isinf(lq)) slope -= eps;
			birth = prev + (-gprev) / slope;
		}
	}

	const double lmin = std::min(lp, lq);
	const double cap = std::isinf(lmin) ? kInf : lmin / (eps * (1.0 - eps));
	// presence: the deficit reaches 0 while both endpoints are still in the net
	const bool present =
	    std::isinf(cap) || deficit(cap) >= -1e-12 * std::max(1.0, std::abs(d));
	return SparseEdge{birth, present};
}

namespace {

// Shared clique enumeration for the sparse complexes. A simplex belongs to
// the complex iff its max edge birth is at most its min vertex cap; values
// come from the callback so the weighted variant can take the max with the
// weighted-Rips value.
struct SparseBuild {
	std::size_t n;
	std::vector<double> cap;                         // per vertex
	std::vector<std::vector<vertex_t>> adj;          // higher present neighbors
	std::vector<std::vector<double>> sbirth;         // sparse edge birth
	std::vector<std::vector<double>> rbirth;         // weighted edge birth (weighted mode)
	bool weighted = false;
	std::span<const double> weights;
	double alpha_max = kInf;
	int max_dim = 1;

	bool edge_lookup(vertex_t a, vertex_t b, double& sb, double& rb) const {
		const auto lo = std::min(a, b), hi = std::max(a, b);
		auto it = std::lower_bound(adj[lo].begin(), adj[lo].end(), hi);
		if (it == adj[lo].end() || *it != hi) return false;
		const std::size_t k = it - adj[lo].begin();
		sb = sbirth[lo][k];
		rb = weighted ? rbirth[lo][k] : 0.0;
		return true;
	}

	Filtration run() {
		Filtration F;
		for (std::size_t v = 0; v < n; ++v) {
			const double value = weighted ? weights[v] : 0.0;
			if (value <= alpha_max) F.entries.push_back({{(vertex_t)v}, value});
		}
		if (max_dim >= 1) {
			Simplex members;
			std::function<void(std::vector<vertex_t>, double, double, double)> rec =
			    [&](std::vector<vertex_t> candidates, double max_sbirth, double min_cap,
			        double max_rval) {
				    if ((int)members.size() - 1 >= max_dim) return;
				    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
					    const vertex_t u = candidates[ci];
					    double msb = max_sbirth, mrv = max_rval;
					    bool ok = true;
					    for (vertex_t c : members) {
						    double sb, rb;
						    if (!edge_lookup(c, u, sb, rb)) {
							    ok = false;
							    break;
						    }
						    msb = std::max(msb, sb);
						    mrv = std::max(mrv, rb);
					    }
					    if (!ok) continue;
					    const double mc = std::min(min_cap, cap[u]);
					    if (msb > mc) continue;  // no single Q_alpha contains it
					    if (weighted) mrv = std::max(mrv, weights[u]);
					    const double value = std::max(msb, mrv);
					    if (value > alpha_max) continue;
					    members.push_back(u);
					    F.entries.push_back({members, value});
					    std::vector<vertex_t> next;
					    for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj) {
						    const vertex_t w = candidates[cj];
						    if (std::binary_search(adj[u].begin(), adj[u].end(), w))
							    next.push_back(w);
					    }
					    rec(std::move(next), msb, mc, mrv);
					    members.pop_back();
				    }
			    };
			for (std::size_t v = 0; v < n; ++v) {
				const double vval = weighted ? weights[v] : 0.0;
				if (vval > alpha_max) continue;
				members.assign(1, (vertex_t)v);
				rec(adj[v], 0.0, cap[v], vval);
				members.pop_back();
			}
		}
		F.sort_canonical();
		return F;
	}
};

Filtration build_sparse_common(const MetricSpace& M, std::span<const std::size_t> ids,
                               std::span<const double> weights, bool weighted, double eps,
                               int max_dim, std::size_t seed_id, double alpha_max) {
	if (!(eps > 0.0) || !(eps < 1.0))
		throw std::invalid_argument("sparse Rips: epsilon must be in (0,1)");
	if (max_dim < 0) throw std::invalid_argument("sparse Rips: max_dim < 0");
	const std::size_t n = ids.size();
	const auto G = greedy_permutation(M, ids, seed_id);

	SparseBuild B;
	B.n = n;
	B.weighted = weighted;
	B.weights = weights;
	B.alpha_max = alpha_max;
	B.max_dim = max_dim;
	B.cap.resize(n);
	for (std::size_t v = 0; v < n; ++v)
		B.cap[v] = std::isinf(G.lambda_of[v]) ? kInf : G.lambda_of[v] / (eps * (1.0 - eps));
	B.adj.resize(n);
	B.sbirth.resize(n);
	if (weighted) B.rbirth.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i + 1; j < n; ++j) {
			const double d = M.distance(ids[i], ids[j]);
			const auto e = sparse_edge_birth(d, G.lambda_of[i], G.lambda_of[j], eps);
			if (!e.present) continue;
			if (!weighted && e.birth > alpha_max) continue;
			double rb = 0.0;
			if (weighted) {
				rb = edge_birth(d, weights[i], weights[j]);
				if (std::max(e.birth, rb) > alpha_max) continue;
			}
			B.adj[i].push_back((vertex_t)j);
			B.sbirth[i].push_back(e.birth);
			if (weighted) B.rbirth[i].push_back(rb);
		}
	}
	return B.run();
}

}  // namespace

Filtration build_sparse_rips(const MetricSpace& M, std::span<const std::size_t> P, double eps,
                             int max_dim, std::size_t seed_id, double alpha_max) {
	return build_sparse_common(M, P, {}, false, eps, max_dim, seed_id, alpha_max);
}

Filtration build_sparse_weighted_rips(const MetricSpace& M, std::span<const std::size_t> ids,
                                      std::span<const double> weights, double eps, int max_dim,
                                      std::size_t seed_id, double alpha_max) {
	if (ids.size() != weights.size())
		throw std::invalid_argument("build_sparse_weighted_rips: ids/weights size mismatch");
	return build_sparse_common(M, ids, weights, true, eps, max_dim, seed_id, alpha_max);
}

}  // namespace dtmph
