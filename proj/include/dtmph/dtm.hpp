#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtmph/metric.hpp"

namespace dtmph {

// Mass parameter m in (0,1], carried as the (possibly fractional) neighbor
// count k = m*n.
struct MassParameter {
	double k = 0.0;

	static MassParameter from_mass(double m, std::size_t n);
	static MassParameter from_count(double k);
};

// Points paired with nonnegative weights, e.g. DTM values. `lipschitz` is the
// asserted Lipschitz constant of the weight function (1 for DTM weights).
struct WeightedPointSet {
	std::vector<std::size_t> ids;
	std::vector<double> weights;
	double lipschitz = 1.0;
};

struct DiscreteMeasure {
	std::vector<std::size_t> ids;
	std::vector<double> masses;

	double total_mass() const;
	void validate() const;  // nonnegative masses, nonempty support
};

// Distance to the empirical measure on P at mass k. For fractional k:
//   dtm(x)^2 = (1/k) (sum_{i<=floor(k)} d_i(x)^2 + (k - floor(k)) d_ceil(k)(x)^2).
double dtm_eval(const MetricSpace& M, std::span<const std::size_t> P,
                MassParameter mass, const QueryPoint& x);

// DTM evaluated at every point of P; output carries lipschitz = 1.
WeightedPointSet dtm_weights(const MetricSpace& M, std::span<const std::size_t> P,
                             MassParameter mass);

// f(x) = sqrt(min_p d(p,x)^2 + w_p^2).
double power_distance_eval(const MetricSpace& M, const WeightedPointSet& W,
                           const QueryPoint& x);

// Power distance with DTM weights.
double dp_eval(const MetricSpace& M, std::span<const std::size_t> P,
               MassParameter mass, const QueryPoint& x);

struct BarycenterInfo {
	std::vector<double> barycenter;
	double cell_energy;
};

// Euclidean only, integer k: mean of the k nearest neighbors and the mean
// squared distance of those neighbors to it.
BarycenterInfo barycenter_and_energy(const MetricSpace& M, std::span<const std::size_t> P,
                                     long k, const QueryPoint& x);

// min_p sqrt(E^C(bary(p)) + |bary(p) - x|^2), Euclidean only, integer k.
double witnessed_kdistance_eval(const MetricSpace& M, std::span<const std::size_t> P,
                                long k, const QueryPoint& x);

// Exact quadratic Wasserstein distance between two discrete measures of equal
// total mass, supports <= 512. Test oracle, not a performance path.
double wasserstein2(const MetricSpace& M, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Measure CSV: lines of "point_id,mass".
DiscreteMeasure read_measure_csv(const std::string& path);
void write_measure_csv(const std::string& path, const DiscreteMeasure& mu);

}  // namespace dtmph
