#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "dtmph/dtm.hpp"
#include "dtmph/metric.hpp"

namespace dtmph {

using vertex_t = std::uint32_t;
// Strictly increasing vertex ids; dimension = size - 1.
using Simplex = std::vector<vertex_t>;

struct FiltrationEntry {
	Simplex simplex;
	double value;
};

// Ordered list of (simplex, value), key (value, dimension, lexicographic
// vertices); the order respects faces-before-cofaces.
struct Filtration {
	std::vector<FiltrationEntry> entries;

	void sort_canonical();
	// throws if some listed simplex has an unlisted face or a face with a
	// larger value
	void validate() const;
	std::vector<std::size_t> count_per_dim() const;
};

// Infimum alpha at which the balls of radii r_p(alpha) = sqrt(alpha^2 - w^2)
// around two points at distance d touch (closed-sublevel convention).
double edge_birth(double d, double wp, double wq);

// Weighted Rips filtration as a flag complex: vertices at w_p, edges at
// edge_birth, higher simplices at the max over their faces. Vertices are
// positions 0..|ids|-1 into `ids`.
Filtration build_weighted_rips(const MetricSpace& M, std::span<const std::size_t> ids,
                               std::span<const double> weights, int max_dim,
                               double alpha_max = std::numeric_limits<double>::infinity());

inline Filtration build_weighted_rips(const MetricSpace& M, const WeightedPointSet& W,
                                      int max_dim,
                                      double alpha_max = std::numeric_limits<double>::infinity()) {
	return build_weighted_rips(M, W.ids, W.weights, max_dim, alpha_max);
}

// Text format: "v1 v2 ... vk ; value", one simplex per line, canonical order,
// 17 significant digits.
void write_filtration(std::ostream& out, const Filtration& F);
Filtration read_filtration(std::istream& in);

}  // namespace dtmph
