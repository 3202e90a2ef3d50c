#include "dtmph/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dtmph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SimplexHash {
	std::size_t operator()(const Simplex& s) const {
		std::size_t h = 146527;
		for (vertex_t v : s) h = h * 1000003u ^ (std::size_t)v;
		return h;
	}
};

// xor-merge of two sorted index columns
void add_column(std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
	std::vector<std::size_t> out;
	out.reserve(a.size() + b.size());
	std::size_t i = 0, j = 0;
	while (i < a.size() && j < b.size()) {
		if (a[i] < b[j])
			out.push_back(a[i++]);
		else if (b[j] < a[i])
			out.push_back(b[j++]);
		else {
			++i;
			++j;
		}
	}
	out.insert(out.end(), a.begin() + i, a.end());
	out.insert(out.end(), b.begin() + j, b.end());
	a.swap(out);
}

}  // namespace

bool DiagramPoint::infinite() const { return std::isinf(death); }

PersistenceDiagram reduce(const Filtration& F, int max_dim, bool keep_zero) {
	const std::size_t n = F.entries.size();
	std::unordered_map<Simplex, std::size_t, SimplexHash> index_of;
	index_of.reserve(n * 2);
	for (std::size_t i = 0; i < n; ++i) {
		const auto& e = F.entries[i];
		if (i > 0) {
			const auto& prev = F.entries[i - 1];
			const bool ordered =
			    prev.value < e.value ||
			    (prev.value == e.value && (prev.simplex.size() < e.simplex.size() ||
			                               (prev.simplex.size() == e.simplex.size() &&
			                                prev.simplex <= e.simplex)));
			if (!ordered) throw std::invalid_argument("reduce: filtration not in canonical order");
		}
		index_of.emplace(e.simplex, i);
	}

	std::vector<std::vector<std::size_t>> reduced(n);
	std::vector<std::size_t> owner_of_low(n, n);  // n = none
	std::vector<bool> paired(n, false);
	PersistenceDiagram D;

	for (std::size_t j = 0; j < n; ++j) {
		const auto& s = F.entries[j].simplex;
		if (s.size() == 1) continue;  // vertex, empty boundary
		std::vector<std::size_t> col;
		Simplex face(s.size() - 1);
		for (std::size_t skip = 0; skip < s.size(); ++skip) {
			std::size_t w = 0;
			for (std::size_t i = 0; i < s.size(); ++i)
				if (i != skip) face[w++] = s[i];
			auto it = index_of.find(face);
			if (it == index_of.end()) throw std::invalid_argument("reduce: unlisted face");
			col.push_back(it->second);
		}
		std::sort(col.begin(), col.end());
		while (!col.empty() && owner_of_low[col.back()] != n)
			add_column(col, reduced[owner_of_low[col.back()]]);
		if (!col.empty()) {
			const std::size_t low = col.back();
			owner_of_low[low] = j;
			paired[low] = true;
			paired[j] = true;
			const int dim = (int)F.entries[low].simplex.size() - 1;
			const double birth = F.entries[low].value;
			const double death = F.entries[j].value;
			if (dim <= max_dim && (keep_zero || death > birth))
				D.points.push_back({dim, birth, death});
			reduced[j] = std::move(col);
		}
	}
	for (std::size_t j = 0; j < n; ++j) {
		if (paired[j]) continue;
		const int dim = (int)F.entries[j].simplex.size() - 1;
		if (dim <= max_dim) D.points.push_back({dim, F.entries[j].value, kInf});
	}
	std::sort(D.points.begin(), D.points.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
		if (a.dim != b.dim) return a.dim < b.dim;
		if (a.birth != b.birth) return a.birth < b.birth;
		return a.death < b.death;
	});
	return D;
}

int betti_at(const PersistenceDiagram& D, int dim, double alpha) {
	int count = 0;
	for (const auto& p : D.points)
		if (p.dim == dim && p.birth <= alpha && alpha < p.death) ++count;
	return count;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& D) {
	out.precision(17);
	out << "dim,birth,death\n";
	for (const auto& p : D.points) {
		out << p.dim << ',' << p.birth << ',';
		if (p.infinite())
			out << "inf";
		else
			out << p.death;
		out << '\n';
	}
}

PersistenceDiagram read_diagram_csv(std::istream& in) {
	PersistenceDiagram D;
	std::string line;
	if (!std::getline(in, line) || line.rfind("dim,birth,death", 0) != 0)
		throw std::runtime_error("diagram CSV: missing header");
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		std::stringstream ss(line);
		std::string d, b, dd;
		if (!std::getline(ss, d, ',') || !std::getline(ss, b, ',') || !std::getline(ss, dd, ','))
			throw std::runtime_error("diagram CSV: malformed line: " + line);
		DiagramPoint p;
		p.dim = std::stoi(d);
		p.birth = std::stod(b);
		p.death = dd == "inf" ? kInf : std::stod(dd);
		D.points.push_back(p);
	}
	return D;
}

}  // namespace dtmph
