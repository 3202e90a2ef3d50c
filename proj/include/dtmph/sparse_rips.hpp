#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "dtmph/weighted_rips.hpp"

namespace dtmph {

// Furthest-point ordering with insertion radii; lambda of the seed is
// infinite. Each prefix of the order is a lambda_i-net.
struct GreedyPermutation {
	std::vector<std::size_t> order;       // point ids in insertion order
	std::vector<double> lambda;           // insertion radius, parallel to order
	std::vector<double> lambda_of;        // insertion radius indexed by position in the subset
};

GreedyPermutation greedy_permutation(const MetricSpace& M, std::span<const std::size_t> P,
                                     std::size_t seed_id);

struct SparseParams {
	double epsilon;
	double lipschitz = 1.0;

	double kappa() const {
		return (1.0 + std::sqrt(1.0 + lipschitz * lipschitz) * epsilon) / (1.0 - epsilon);
	}
};

// Piecewise-linear scale perturbation: 0 up to lambda/eps, then slope 1, then
// eps*alpha from lambda/(eps(1-eps)) on. Continuous, nondecreasing,
// 1-Lipschitz; infinite lambda gives 0 everywhere.
double perturbation_s(double lambda, double eps, double alpha);

struct SparseEdge {
	double birth;   // min alpha with d + s_p(alpha) + s_q(alpha) <= 2 alpha
	bool present;   // birth <= min(lp,lq)/(eps(1-eps)), i.e. both endpoints
	                // still in the net when the edge can first appear
};

SparseEdge sparse_edge_birth(double d, double lp, double lq, double eps);

// Sparse Rips filtration: vertices at 0, present edges at their birth, a
// higher simplex included iff its max edge birth is at most its min vertex
// cap (membership in a single Q_alpha), valued at the max edge birth.
Filtration build_sparse_rips(const MetricSpace& M, std::span<const std::size_t> P,
                             double eps, int max_dim, std::size_t seed_id = 0,
                             double alpha_max = std::numeric_limits<double>::infinity());

// Sparse weighted Rips: same simplex set as the sparse complex, each simplex
// valued at max(sparse value, weighted-Rips value). Vertices at w_p.
Filtration build_sparse_weighted_rips(const MetricSpace& M, std::span<const std::size_t> ids,
                                      std::span<const double> weights, double eps, int max_dim,
                                      std::size_t seed_id = 0,
                                      double alpha_max = std::numeric_limits<double>::infinity());

}  // namespace dtmph
