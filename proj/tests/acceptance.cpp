// End-to-end acceptance suite. Each test case covers one numbered criterion
// and prints a single PASS/FAIL line; tolerances are pinned inline.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "dtmph/experiments.hpp"
#include "helpers.hpp"

using namespace dtmph;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void report(int id, const char* what, bool ok) {
	std::printf("[acceptance] %2d %-38s %s\n", id, what, ok ? "PASS" : "FAIL");
	CHECK_MESSAGE(ok, what);
}

double now_ms(std::chrono::steady_clock::time_point t0) {
	return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
	    .count();
}

// 2d points at +-e_i in the L1 plane, plus helpers for the tightness family.
MetricSpace cross_space(int d, bool with_q) {
	std::vector<std::vector<double>> pts;
	for (int axis = 0; axis < d; ++axis)
		for (double sign : {1.0, -1.0}) {
			std::vector<double> p((std::size_t)d, 0.0);
			p[(std::size_t)axis] = sign;
			pts.push_back(p);
		}
	if (with_q) {
		std::vector<double> q((std::size_t)d, 0.0);
		q[0] = -3.0;
		pts.push_back(q);
	}
	return MetricSpace::from_points(std::move(pts), MetricKind::L1);
}

}  // namespace

TEST_CASE("criterion 1: tight Euclidean ratio") {
	auto M = MetricSpace::from_points({{-1.0}, {1.0}});
	auto P = all_ids(M);
	const auto mass = MassParameter::from_count(2);
	const auto o = QueryPoint::at({0.0});
	// warm-up, then time the measured evaluation
	(void)dp_eval(M, P, mass, o);
	const auto t0 = std::chrono::steady_clock::now();
	const double ratio = dp_eval(M, P, mass, o) / dtm_eval(M, P, mass, o);
	const double ms = now_ms(t0);
	const bool ok = std::abs(ratio / std::sqrt(3.0) - 1.0) <= 1e-12 && ms < 1.0;
	report(1, "tight Euclidean ratio sqrt(3)", ok);
}

TEST_CASE("criterion 2: L1 tightness family") {
	bool values_ok = true, mono_ok = true;
	double prev_o = 0.0, prev_q = kInf;
	for (int d = 2; d <= 10; ++d) {
		auto M = cross_space(d, false);
		auto P = all_ids(M);
		const auto mass = MassParameter::from_count(2.0 * d);
		std::vector<double> o((std::size_t)d, 0.0), q((std::size_t)d, 0.0);
		q[0] = -3.0;
		const double dtm_o = dtm_eval(M, P, mass, QueryPoint::at(o));
		const double dp_o = dp_eval(M, P, mass, QueryPoint::at(o));
		const double dtm_q = dtm_eval(M, P, mass, QueryPoint::at(q));
		const double dp_q = dp_eval(M, P, mass, QueryPoint::at(q));
		values_ok &= std::abs(dtm_o - 1.0) <= 1e-9;
		values_ok &= std::abs(dp_o * dp_o - (5.0 - 2.0 / d)) <= 1e-9;
		values_ok &= std::abs(dtm_q * dtm_q - (16.0 - 6.0 / d)) <= 1e-9;
		values_ok &= std::abs(dp_q * dp_q - (8.0 - 2.0 / d)) <= 1e-9;
		const double ratio_o = dp_o / dtm_o, ratio_q = dp_q / dtm_q;
		mono_ok &= ratio_o > prev_o;       // increases toward sqrt(5)
		mono_ok &= ratio_q < prev_q;       // decreases toward 1/sqrt(2)
		mono_ok &= ratio_o < std::sqrt(5.0) + 1e-12;
		mono_ok &= ratio_q > 1.0 / std::sqrt(2.0) - 1e-12;
		prev_o = ratio_o;
		prev_q = ratio_q;
	}
	report(2, "L1 tightness family d=2..10", values_ok && mono_ok);
}

TEST_CASE("criterion 3: sandwich properties") {
	auto g = testutil::rng(101);
	bool ok = true;
	for (int trial = 0; trial < 200; ++trial) {
		const std::size_t n = 5 + (std::size_t)testutil::uniform(g, 0, 45);
		auto pts = testutil::random_cloud(g, n, 3);
		auto Me = MetricSpace::from_points(pts);
		std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) mat[i][j] = Me.distance(i, j);
		auto Mm = MetricSpace::from_matrix(mat);
		auto P = all_ids(Me);
		const double kf = testutil::uniform(g, 1.0, (double)n);
		const auto mass = MassParameter::from_count(kf);
		const long ki = 1 + (long)testutil::uniform(g, 0, (double)n - 1.0);

		const auto xq = QueryPoint::at(
		    {testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2)});
		const std::size_t xi = (std::size_t)testutil::uniform(g, 0, (double)n - 0.001);

		// general metric bounds, matrix mode (queries restricted to sample points)
		const double dtm_m = dtm_eval(Mm, P, mass, QueryPoint::at_id(xi));
		const double dp_m = dp_eval(Mm, P, mass, QueryPoint::at_id(xi));
		ok &= dp_m >= dtm_m / std::sqrt(2.0) - 1e-9;
		ok &= dp_m <= std::sqrt(5.0) * dtm_m + 1e-9;

		// Euclidean improvement and witnessed bounds at an arbitrary query
		const double dtm_e = dtm_eval(Me, P, mass, xq);
		const double dp_e = dp_eval(Me, P, mass, xq);
		ok &= dp_e >= dtm_e / std::sqrt(2.0) - 1e-9;
		ok &= dp_e <= std::sqrt(3.0) * dtm_e + 1e-9;

		const double dtm_w = dtm_eval(Me, P, MassParameter::from_count((double)ki), xq);
		const double dw = witnessed_kdistance_eval(Me, P, ki, xq);
		ok &= dw >= dtm_w - 1e-9;
		ok &= dw <= std::sqrt(6.0) * dtm_w + 1e-9;
	}
	report(3, "power/witnessed distance sandwiches", ok);
}

TEST_CASE("criterion 4: witnessed lower-bound construction") {
	const int d = 2;
	const double eps = 0.1;
	const double outer = 1.0 + std::sqrt(2.0) - eps;
	std::vector<std::vector<double>> pts;
	for (int axis = 0; axis < d; ++axis)
		for (double sign : {1.0, -1.0}) {
			std::vector<double> unit((std::size_t)d, 0.0), far((std::size_t)d, 0.0);
			unit[(std::size_t)axis] = sign;
			far[(std::size_t)axis] = sign * outer;
			pts.push_back(unit);
			for (int copy = 0; copy < 2 * d - 1; ++copy) pts.push_back(far);
		}
	REQUIRE(pts.size() == (std::size_t)(4 * d * d));
	auto M = MetricSpace::from_points(std::move(pts));
	auto P = all_ids(M);
	std::vector<double> o((std::size_t)d, 0.0);
	const double dtm_o = dtm_eval(M, P, MassParameter::from_count(2.0 * d), QueryPoint::at(o));
	const double dw = witnessed_kdistance_eval(M, P, 2 * d, QueryPoint::at(o));
	const double expect =
	    1.0 / (2.0 * d) + ((2.0 * d - 1.0) / (2.0 * d)) * (1.0 + std::sqrt(2.0) - eps) *
	                          (1.0 + std::sqrt(2.0) - eps);
	const bool ok = std::abs(dtm_o - 1.0) <= 1e-9 && std::abs(dw * dw - expect) <= 1e-9;
	report(4, "witnessed lower-bound dataset", ok);
}

TEST_CASE("criterion 5: edge birth vs bisection oracle") {
	auto g = testutil::rng(103);
	std::vector<std::array<double, 3>> cases;
	for (int i = 0; i < 10000; ++i)
		cases.push_back({testutil::uniform(g, 0.0, 5.0), testutil::uniform(g, 0.0, 3.0),
		                 testutil::uniform(g, 0.0, 3.0)});
	std::size_t touching = 0, bridging = 0;
	bool ok = true;
	const auto t0 = std::chrono::steady_clock::now();
	for (const auto& [dd, wp, wq] : cases) {
		const double a = std::min(wp, wq), b = std::max(wp, wq);
		(dd * dd <= b * b - a * a ? touching : bridging)++;
		const double got = edge_birth(dd, wp, wq);
		const double want = testutil::edge_birth_bisect(dd, wp, wq);
		ok &= std::abs(got - want) <= 1e-9 * std::max(1.0, want);
	}
	const double ms = now_ms(t0);
	ok &= touching >= 1000 && bridging >= 1000 && ms < 1000.0;
	report(5, "edge-birth closed form (1e4 cases)", ok);
}

TEST_CASE("criterion 6: persistence correctness") {
	auto M = MetricSpace::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
	auto F = build_weighted_rips(M, all_ids(M), std::vector<double>(4, 0.0), 2);
	auto D = reduce(F, 1);
	bool square_ok = false;
	for (const auto& p : D.points)
		if (p.dim == 1) square_ok = p.birth == 0.5 && p.death == std::sqrt(2.0) / 2.0;

	// brute-force Betti equivalence on every random filtration with <= 12 simplices
	auto g = testutil::rng(107);
	bool betti_ok = true;
	std::size_t covered = 0;
	for (int trial = 0; trial < 300; ++trial) {
		const std::size_t n = 3 + (std::size_t)testutil::uniform(g, 0, 2.0);
		auto pts = testutil::random_cloud(g, n, 2);
		auto Mr = MetricSpace::from_points(pts);
		std::vector<double> w(n);
		for (auto& x : w) x = testutil::uniform(g, 0.0, 0.4);
		const double cut = testutil::uniform(g, 0.3, 1.5);
		auto Fr = build_weighted_rips(Mr, all_ids(Mr), w, 2, cut);
		if (Fr.entries.size() > 12 || Fr.entries.empty()) continue;
		covered++;
		auto Dr = reduce(Fr, 2, true);
		for (double alpha : {0.2, 0.4, 0.7, 1.0, 1.4})
			for (int dim = 0; dim <= 2; ++dim)
				betti_ok &= betti_at(Dr, dim, alpha) == testutil::betti_brute(Fr, dim, alpha);
	}
	report(6, "persistence vs brute-force Betti", square_ok && betti_ok && covered >= 30);
}

TEST_CASE("criterion 7: weighted Rips stability") {
	auto g = testutil::rng(109);
	bool ok = true;
	for (int trial = 0; trial < 50; ++trial) {
		const std::size_t n = 10 + (std::size_t)testutil::uniform(g, 0, 30);
		auto P = testutil::random_cloud(g, n, 2);
		const double delta = testutil::uniform(g, 0.005, 0.05);
		auto Q = P;
		for (auto& p : Q) {
			const double ang = testutil::uniform(g, 0.0, 2.0 * 3.14159265358979323846);
			const double rad = testutil::uniform(g, 0.0, delta);
			p[0] += rad * std::cos(ang);
			p[1] += rad * std::sin(ang);
		}
		auto build = [&](const std::vector<std::vector<double>>& pts) {
			auto M = MetricSpace::from_points(pts);
			auto W = dtm_weights(M, all_ids(M), MassParameter::from_count(3));
			return reduce(build_weighted_rips(M, W, 2), 1);
		};
		const auto DP = build(P), DQ = build(Q);
		for (int dim = 0; dim <= 1; ++dim) ok &= bottleneck(DP, DQ, dim) <= 2.0 * delta + 1e-9;
	}
	report(7, "stability under delta-perturbation", ok);
}

TEST_CASE("criterion 8: sparse interleaving") {
	auto g = testutil::rng(113);
	bool ok = true;
	const auto t0 = std::chrono::steady_clock::now();
	for (int trial = 0; trial < 30; ++trial) {
		const std::size_t n = 10 + (std::size_t)testutil::uniform(g, 0, 30);
		auto pts = testutil::random_cloud(g, n, 2);
		auto M = MetricSpace::from_points(pts);
		auto W = dtm_weights(M, all_ids(M), MassParameter::from_count(3));
		const auto R = reduce(build_weighted_rips(M, W, 2), 1);
		for (double eps : {0.1, 0.3, 0.5}) {
			const auto T = reduce(build_sparse_weighted_rips(M, W.ids, W.weights, eps, 2), 1);
			const double bound = std::log((1.0 + std::sqrt(2.0) * eps) / (1.0 - eps));
			for (int dim = 0; dim <= 1; ++dim)
				ok &= log_bottleneck(T, R, dim) <= bound + 1e-9;
		}
	}
	ok &= now_ms(t0) < 120000.0;
	report(8, "sparse interleaving log-bound", ok);
}

TEST_CASE("criterion 9: Wasserstein stability of the DTM") {
	auto g = testutil::rng(127);
	bool ok = true;
	for (int trial = 0; trial < 30; ++trial) {
		const std::size_t na = 3 + (std::size_t)testutil::uniform(g, 0, 12);
		const std::size_t nb = 3 + (std::size_t)testutil::uniform(g, 0, 12);
		auto pts = testutil::random_cloud(g, na + nb, 2);
		auto M = MetricSpace::from_points(pts);
		std::vector<std::size_t> A, B;
		DiscreteMeasure mu, nu;
		for (std::size_t i = 0; i < na; ++i) {
			A.push_back(i);
			mu.ids.push_back(i);
			mu.masses.push_back(1.0 / (double)na);
		}
		for (std::size_t i = 0; i < nb; ++i) {
			B.push_back(na + i);
			nu.ids.push_back(na + i);
			nu.masses.push_back(1.0 / (double)nb);
		}
		const double w2 = wasserstein2(M, mu, nu);
		for (double m : {0.2, 0.5, 1.0}) {
			double sup = 0.0;
			for (double x = -1.0; x <= 1.0; x += 0.25)
				for (double y = -1.0; y <= 1.0; y += 0.25) {
					const auto q = QueryPoint::at({x, y});
					const double da = dtm_eval(M, A, MassParameter::from_mass(m, na), q);
					const double db = dtm_eval(M, B, MassParameter::from_mass(m, nb), q);
					sup = std::max(sup, std::abs(da - db));
				}
			ok &= sup <= w2 / std::sqrt(m) + 1e-9;
		}
	}
	report(9, "DTM Wasserstein stability", ok);
}

TEST_CASE("criterion 10: linear-size behavior and epsilon sweep") {
	auto edges_sparse = [](std::size_t n) {
		auto M = MetricSpace::from_points(gen_torus_spiral(n));
		auto F = build_sparse_rips(M, all_ids(M), 0.5, 2);
		return F.count_per_dim()[1];
	};
	auto edges_full = [](std::size_t n) {
		auto M = MetricSpace::from_points(gen_torus_spiral(n));
		auto F = build_weighted_rips(M, all_ids(M), std::vector<double>(n, 0.0), 1);
		return F.count_per_dim()[1];
	};
	const double sparse_ratio = (double)edges_sparse(2000) / (double)edges_sparse(1000);
	const double full_ratio = (double)edges_full(2000) / (double)edges_full(1000);
	bool ok = sparse_ratio <= 2.2 && std::abs(full_ratio - 4.0) <= 0.1;

	// size-vs-epsilon sweep: an interior minimum region
	auto M = MetricSpace::from_points(gen_torus_spiral(2000));
	auto P = all_ids(M);
	std::vector<std::size_t> sizes;
	for (double eps : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
		sizes.push_back(build_sparse_rips(M, P, eps, 2).entries.size());
	const std::size_t smallest = *std::min_element(sizes.begin() + 1, sizes.end() - 1);
	ok &= smallest < sizes.front() && smallest < sizes.back();
	report(10, "linear size and sweep minimum", ok);
}

TEST_CASE("criterion 11: cube-skeleton inference") {
	const auto t0 = std::chrono::steady_clock::now();
	auto M = MetricSpace::from_points(gen_cube_skeleton());
	auto ids = all_ids(M);
	auto W = dtm_weights(M, ids, MassParameter::from_count(5));

	const auto DW = reduce(build_sparse_weighted_rips(M, W.ids, W.weights, 0.5, 3), 2);
	const auto DU = reduce(build_sparse_rips(M, ids, 0.5, 3), 2);

	const double snr1 = snr(DW, 1, 5);
	const double snr2 = snr(DW, 2, 1);
	const double snr2u = snr(DU, 2, 1);
	const double ms = now_ms(t0);
	const bool ok = snr1 >= 5.0 && snr2 >= 5.0 && snr2u <= 2.0 && ms < 60000.0;
	std::printf("[acceptance]    cube snr: dim1 j5=%.3g dim2 j1=%.3g unweighted dim2 j1=%.3g\n",
	            snr1, snr2, snr2u);
	report(11, "cube-skeleton SNR inference", ok);
}
