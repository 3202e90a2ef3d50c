#pragma once

// Shared test utilities: small independent oracles kept deliberately naive so
// that they cannot share bugs with the library implementations.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dtmph/persistence.hpp"
#include "dtmph/weighted_rips.hpp"

namespace testutil {

using dtmph::Filtration;
using dtmph::Simplex;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
	return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::vector<std::vector<double>> random_cloud(std::mt19937_64& g, std::size_t n,
                                                     std::size_t dim, double lo = -1.0,
                                                     double hi = 1.0) {
	std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
	for (auto& p : pts)
		for (auto& c : p) c = uniform(g, lo, hi);
	return pts;
}

// Bisection oracle for the weighted edge birth: smallest alpha with
// r_p(alpha) + r_q(alpha) >= d, radii clamped to 0 below the weight.
inline double edge_birth_bisect(double d, double wp, double wq) {
	auto radius = [](double alpha, double w) {
		return alpha <= w ? 0.0 : std::sqrt(alpha * alpha - w * w);
	};
	double lo = std::max(wp, wq);
	if (radius(lo, wp) + radius(lo, wq) >= d) return lo;
	double hi = lo + d + 1.0;
	while (radius(hi, wp) + radius(hi, wq) < d) hi = 2.0 * hi + 1.0;
	for (int it = 0; it < 200; ++it) {
		const double mid = 0.5 * (lo + hi);
		if (radius(mid, wp) + radius(mid, wq) >= d)
			hi = mid;
		else
			lo = mid;
	}
	return hi;
}

// GF(2) rank of a 0/1 matrix (rows of column indices).
inline std::size_t gf2_rank(std::vector<std::vector<int>> rows, std::size_t ncols) {
	std::size_t rank = 0;
	for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
		std::size_t pivot = rows.size();
		for (std::size_t r = rank; r < rows.size(); ++r)
			if (rows[r][col]) {
				pivot = r;
				break;
			}
		if (pivot == rows.size()) continue;
		std::swap(rows[rank], rows[pivot]);
		for (std::size_t r = 0; r < rows.size(); ++r)
			if (r != rank && rows[r][col])
				for (std::size_t c = 0; c < ncols; ++c) rows[r][c] ^= rows[rank][c];
		++rank;
	}
	return rank;
}

// Betti number of the subcomplex {simplices with value <= alpha} computed from
// scratch: beta_k = dim ker d_k - rank d_{k+1}.
inline int betti_brute(const Filtration& F, int dim, double alpha) {
	std::vector<Simplex> simplices;
	for (const auto& e : F.entries)
		if (e.value <= alpha) simplices.push_back(e.simplex);
	auto of_dim = [&](int d) {
		std::vector<Simplex> out;
		for (const auto& s : simplices)
			if ((int)s.size() == d + 1) out.push_back(s);
		std::sort(out.begin(), out.end());
		return out;
	};
	const auto cells = of_dim(dim), faces = of_dim(dim - 1), cofaces = of_dim(dim + 1);
	auto boundary_rank = [&](const std::vector<Simplex>& top, const std::vector<Simplex>& bot) {
		if (top.empty() || bot.empty()) return std::size_t{0};
		std::vector<std::vector<int>> rows(top.size(), std::vector<int>(bot.size(), 0));
		for (std::size_t i = 0; i < top.size(); ++i)
			for (std::size_t f = 0; f < top[i].size(); ++f) {
				Simplex face = top[i];
				face.erase(face.begin() + (long)f);
				const auto it = std::lower_bound(bot.begin(), bot.end(), face);
				rows[i][(std::size_t)(it - bot.begin())] = 1;
			}
		return gf2_rank(std::move(rows), bot.size());
	};
	const std::size_t rank_dk = dim == 0 ? 0 : boundary_rank(cells, faces);
	const std::size_t rank_dk1 = boundary_rank(cofaces, cells);
	return (int)(cells.size() - rank_dk - rank_dk1);
}

}  // namespace testutil
