#include "dtmph/weighted_rips.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dtmph {

namespace {

bool entry_less(const FiltrationEntry& a, const FiltrationEntry& b) {
	if (a.value != b.value) return a.value < b.value;
	if (a.simplex.size() != b.simplex.size()) return a.simplex.size() < b.simplex.size();
	return a.simplex < b.simplex;
}

}  // namespace

void Filtration::sort_canonical() {
	std::sort(entries.begin(), entries.end(), entry_less);
}

void Filtration::validate() const {
	std::map<Simplex, double> value_of;
	for (const auto& e : entries) value_of[e.simplex] = e.value;
	for (const auto& e : entries) {
		if (e.simplex.empty()) throw std::invalid_argument("filtration: empty simplex");
		if (!std::is_sorted(e.simplex.begin(), e.simplex.end()) ||
		    std::adjacent_find(e.simplex.begin(), e.simplex.end()) != e.simplex.end())
			throw std::invalid_argument("filtration: simplex vertices not strictly increasing");
		if (e.simplex.size() == 1) continue;
		for (std::size_t skip = 0; skip < e.simplex.size(); ++skip) {
			Simplex face;
			for (std::size_t i = 0; i < e.simplex.size(); ++i)
				if (i != skip) face.push_back(e.simplex[i]);
			auto it = value_of.find(face);
			if (it == value_of.end()) throw std::invalid_argument("filtration: unlisted face");
			if (it->second > e.value + 1e-12)
				throw std::invalid_argument("filtration: face after coface");
		}
	}
}

std::vector<std::size_t> Filtration::count_per_dim() const {
	std::vector<std::size_t> counts;
	for (const auto& e : entries) {
		const std::size_t d = e.simplex.size() - 1;
		if (counts.size() <= d) counts.resize(d + 1, 0);
		++counts[d];
	}
	return counts;
}

double edge_birth(double d, double wp, double wq) {
	if (d < 0.0 || wp < 0.0 || wq < 0.0)
		throw std::invalid_argument("edge_birth: negative input");
	const double a = std::min(wp, wq);
	const double b = std::max(wp, wq);
	// At alpha = b the lighter ball has radius sqrt(b^2 - a^2); if that already
	// covers d, the edge appears with the heavier vertex.
	if (d * d <= b * b - a * a) return b;
	// equal weights meet halfway; the closed form below would round d*d/(2*d)
	if (a == b) return a == 0.0 ? d / 2.0 : std::sqrt(a * a + d * d / 4.0);
	const double h = (d * d + a * a - b * b) / (2.0 * d);
	return std::sqrt(b * b + h * h);
}

namespace {

// Clique expansion over a filtered graph. `clique_value(u, members)` returns
// the value of members+{u} or infinity to reject; enumeration is depth-first
// over higher-numbered candidates so each clique is produced once.
struct FlagExpander {
	std::size_t n;
	const std::vector<std::vector<vertex_t>>& adj;  // higher-numbered neighbors
	int max_dim;
	Filtration& out;

	void expand(Simplex& members, std::vector<vertex_t> candidates,
	            const std::function<double(vertex_t, const Simplex&)>& value_of,
	            double current_value) {
		if ((int)members.size() - 1 >= max_dim) return;
		for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
			const vertex_t u = candidates[ci];
			const double v = value_of(u, members);
			if (!std::isfinite(v)) continue;
			members.push_back(u);
			out.entries.push_back({members, std::max(current_value, v)});
			std::vector<vertex_t> next;
			for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj) {
				const vertex_t w = candidates[cj];
				if (std::binary_search(adj[u].begin(), adj[u].end(), w)) next.push_back(w);
			}
			expand(members, std::move(next), value_of, std::max(current_value, v));
			members.pop_back();
		}
	}
};

}  // namespace

Filtration build_weighted_rips(const MetricSpace& M, std::span<const std::size_t> ids,
                               std::span<const double> weights, int max_dim,
                               double alpha_max) {
	if (max_dim < 0) throw std::invalid_argument("build_weighted_rips: max_dim < 0");
	if (ids.size() != weights.size())
		throw std::invalid_argument("build_weighted_rips: ids/weights size mismatch");
	const std::size_t n = ids.size();
	Filtration F;
	for (std::size_t i = 0; i < n; ++i)
		if (weights[i] <= alpha_max) F.entries.push_back({{(vertex_t)i}, weights[i]});
	if (max_dim >= 1) {
		// edge births, then flag expansion over the kept edges
		std::vector<std::vector<vertex_t>> adj(n);
		std::vector<std::vector<double>> birth(n);
		for (std::size_t i = 0; i < n; ++i) {
			for (std::size_t j = i + 1; j < n; ++j) {
				const double b = edge_birth(M.distance(ids[i], ids[j]), weights[i], weights[j]);
				if (b <= alpha_max) {
					adj[i].push_back((vertex_t)j);
					birth[i].push_back(b);
				}
			}
		}
		auto edge_value = [&](vertex_t u, const Simplex& members) -> double {
			double v = weights[u];
			for (vertex_t w : members) {
				const auto lo = std::min<vertex_t>(w, u), hi = std::max<vertex_t>(w, u);
				auto it = std::lower_bound(adj[lo].begin(), adj[lo].end(), hi);
				if (it == adj[lo].end() || *it != hi)
					return std::numeric_limits<double>::infinity();
				v = std::max(v, birth[lo][it - adj[lo].begin()]);
			}
			return v;
		};
		FlagExpander ex{n, adj, max_dim, F};
		Simplex members;
		for (std::size_t i = 0; i < n; ++i) {
			if (weights[i] > alpha_max) continue;
			members.assign(1, (vertex_t)i);
			ex.expand(members, adj[i], edge_value, weights[i]);
		}
	}
	F.sort_canonical();
	return F;
}

void write_filtration(std::ostream& out, const Filtration& F) {
	out.precision(17);
	for (const auto& e : F.entries) {
		for (std::size_t i = 0; i < e.simplex.size(); ++i) {
			if (i) out << ' ';
			out << e.simplex[i];
		}
		out << " ; " << e.value << '\n';
	}
}

Filtration read_filtration(std::istream& in) {
	Filtration F;
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		std::stringstream ss(line);
		FiltrationEntry e;
		std::string tok;
		bool seen_sep = false;
		while (ss >> tok) {
			if (tok == ";") {
				seen_sep = true;
				ss >> e.value;
				break;
			}
			e.simplex.push_back((vertex_t)std::stoul(tok));
		}
		if (!seen_sep) throw std::runtime_error("filtration text: missing separator");
		F.entries.push_back(std::move(e));
	}
	return F;
}

}  // namespace dtmph
