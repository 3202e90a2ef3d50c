#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dtmph {

enum class MetricKind { L2, L1, Matrix };

// A query location: one of the space's own points (by id), or an arbitrary
// coordinate vector when the space is in coordinate mode.
struct QueryPoint {
	bool is_id = false;
	std::size_t id = 0;
	std::vector<double> coords;

	static QueryPoint at_id(std::size_t i) {
		QueryPoint q;
		q.is_id = true;
		q.id = i;
		return q;
	}
	static QueryPoint at(std::vector<double> x) {
		QueryPoint q;
		q.coords = std::move(x);
		return q;
	}
};

// Point cloud with a distance oracle. Either coordinate mode (L2 or L1) or an
// explicit symmetric distance matrix. Immutable after construction; all
// queries are const and safe to run concurrently.
class MetricSpace {
public:
	static MetricSpace from_points(std::vector<std::vector<double>> pts,
	                               MetricKind kind = MetricKind::L2);
	// validate_triangle runs the O(n^3) triangle-inequality check (n <= 500).
	static MetricSpace from_matrix(std::vector<std::vector<double>> mat,
	                               bool validate_triangle = false);

	std::size_t size() const { return n_; }
	std::size_t dim() const { return dim_; }
	MetricKind kind() const { return kind_; }
	bool coordinate_mode() const { return kind_ != MetricKind::Matrix; }

	const std::vector<double>& point(std::size_t i) const;

	double distance(std::size_t i, std::size_t j) const;
	double distance(const QueryPoint& x, std::size_t j) const;

private:
	MetricSpace() = default;
	std::size_t n_ = 0;
	std::size_t dim_ = 0;
	MetricKind kind_ = MetricKind::L2;
	std::vector<std::vector<double>> points_;
	std::vector<std::vector<double>> matrix_;
};

struct Neighbor {
	std::size_t id;
	double dist;
};

// The j nearest points of `subset` to x, distances nondecreasing, ties broken
// by ascending point id.
std::vector<Neighbor> knn(const MetricSpace& M, std::span<const std::size_t> subset,
                          const QueryPoint& x, std::size_t j);

double hausdorff(const MetricSpace& M, std::span<const std::size_t> P,
                 std::span<const std::size_t> Q);

// Points CSV: one point per line, comma-separated coordinates, no header.
std::vector<std::vector<double>> read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const std::vector<std::vector<double>>& pts);
// Matrix CSV: n lines of n comma-separated entries.
std::vector<std::vector<double>> read_matrix_csv(const std::string& path);

// All ids 0..n-1, convenience for whole-cloud operations.
std::vector<std::size_t> all_ids(const MetricSpace& M);

}  // namespace dtmph
