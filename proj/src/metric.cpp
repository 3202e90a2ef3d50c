#include "dtmph/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dtmph {

MetricSpace MetricSpace::from_points(std::vector<std::vector<double>> pts, MetricKind kind) {
	if (kind == MetricKind::Matrix)
		throw std::invalid_argument("from_points: use from_matrix for explicit matrices");
	MetricSpace M;
	M.kind_ = kind;
	M.n_ = pts.size();
	M.dim_ = pts.empty() ? 0 : pts.front().size();
	for (const auto& p : pts)
		if (p.size() != M.dim_)
			throw std::invalid_argument("from_points: inconsistent point dimensions");
	M.points_ = std::move(pts);
	return M;
}

MetricSpace MetricSpace::from_matrix(std::vector<std::vector<double>> mat, bool validate_triangle) {
	MetricSpace M;
	M.kind_ = MetricKind::Matrix;
	M.n_ = mat.size();
	const std::size_t n = M.n_;
	for (std::size_t i = 0; i < n; ++i) {
		if (mat[i].size() != n) throw std::invalid_argument("from_matrix: matrix not square");
		if (mat[i][i] != 0.0) throw std::invalid_argument("from_matrix: nonzero diagonal");
		for (std::size_t j = 0; j < n; ++j) {
			if (mat[i][j] < 0.0) throw std::invalid_argument("from_matrix: negative entry");
			if (std::abs(mat[i][j] - mat[j][i]) > 1e-12 * std::max(1.0, std::abs(mat[i][j])))
				throw std::invalid_argument("from_matrix: matrix not symmetric");
		}
	}
	if (validate_triangle) {
		if (n > 500) throw std::invalid_argument("from_matrix: triangle check limited to n <= 500");
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				for (std::size_t k = 0; k < n; ++k)
					if (mat[i][j] > mat[i][k] + mat[k][j] + 1e-12)
						throw std::invalid_argument("from_matrix: triangle inequality violated");
	}
	M.matrix_ = std::move(mat);
	return M;
}

const std::vector<double>& MetricSpace::point(std::size_t i) const {
	if (!coordinate_mode()) throw std::logic_error("point(): no coordinates in matrix mode");
	if (i >= n_) throw std::out_of_range("point(): id out of range");
	return points_[i];
}

namespace {

double coord_dist(const std::vector<double>& a, std::span<const double> b, MetricKind kind) {
	if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
	double acc = 0.0;
	if (kind == MetricKind::L2) {
		for (std::size_t i = 0; i < a.size(); ++i) {
			const double d = a[i] - b[i];
			acc += d * d;
		}
		return std::sqrt(acc);
	}
	for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
	return acc;
}

}  // namespace

double MetricSpace::distance(std::size_t i, std::size_t j) const {
	if (i >= n_ || j >= n_) throw std::out_of_range("distance: id out of range");
	if (kind_ == MetricKind::Matrix) return matrix_[i][j];
	return coord_dist(points_[i], points_[j], kind_);
}

double MetricSpace::distance(const QueryPoint& x, std::size_t j) const {
	if (x.is_id) return distance(x.id, j);
	if (!coordinate_mode())
		throw std::invalid_argument("distance: coordinate query in matrix mode");
	if (j >= n_) throw std::out_of_range("distance: id out of range");
	return coord_dist(points_[j], x.coords, kind_);
}

std::vector<Neighbor> knn(const MetricSpace& M, std::span<const std::size_t> subset,
                          const QueryPoint& x, std::size_t j) {
	if (j < 1 || j > subset.size()) throw std::invalid_argument("knn: j out of range");
	std::vector<Neighbor> all;
	all.reserve(subset.size());
	for (std::size_t id : subset) all.push_back({id, M.distance(x, id)});
	std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
		if (a.dist != b.dist) return a.dist < b.dist;
		return a.id < b.id;
	});
	all.resize(j);
	return all;
}

double hausdorff(const MetricSpace& M, std::span<const std::size_t> P,
                 std::span<const std::size_t> Q) {
	if (P.empty() || Q.empty()) throw std::invalid_argument("hausdorff: empty set");
	double h = 0.0;
	for (std::size_t p : P) {
		double best = std::numeric_limits<double>::infinity();
		for (std::size_t q : Q) best = std::min(best, M.distance(p, q));
		h = std::max(h, best);
	}
	for (std::size_t q : Q) {
		double best = std::numeric_limits<double>::infinity();
		for (std::size_t p : P) best = std::min(best, M.distance(p, q));
		h = std::max(h, best);
	}
	return h;
}

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path);
	std::vector<std::vector<double>> rows;
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		std::vector<double> row;
		std::stringstream ss(line);
		std::string cell;
		while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
		rows.push_back(std::move(row));
	}
	return rows;
}

}  // namespace

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
	return read_csv_rows(path);
}

void write_points_csv(const std::string& path, const std::vector<std::vector<double>>& pts) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open " + path);
	out.precision(17);
	for (const auto& p : pts) {
		for (std::size_t i = 0; i < p.size(); ++i) {
			if (i) out << ',';
			out << p[i];
		}
		out << '\n';
	}
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
	return read_csv_rows(path);
}

std::vector<std::size_t> all_ids(const MetricSpace& M) {
	std::vector<std::size_t> ids(M.size());
	for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
	return ids;
}

}  // namespace dtmph
