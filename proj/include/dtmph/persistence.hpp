#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dtmph/weighted_rips.hpp"

namespace dtmph {

struct DiagramPoint {
	int dim;
	double birth;
	double death;  // +infinity for essential classes

	bool infinite() const;
};

struct PersistenceDiagram {
	std::vector<DiagramPoint> points;  // sorted by (dim, birth, death)
};

// Persistence by boundary-matrix column reduction over Z/2. Points with
// death == birth are dropped unless keep_zero. Output restricted to
// dimensions <= max_dim.
PersistenceDiagram reduce(const Filtration& F, int max_dim, bool keep_zero = false);

// Number of classes alive at alpha: birth <= alpha < death.
int betti_at(const PersistenceDiagram& D, int dim, double alpha);

// Diagram CSV: header "dim,birth,death"; infinite deaths as "inf".
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& D);
PersistenceDiagram read_diagram_csv(std::istream& in);

}  // namespace dtmph
