#pragma once

#include "dtmph/persistence.hpp"

namespace dtmph {

// Exact bottleneck distance between the dim-slices of two diagrams. Finite
// points may be matched to each other or to the diagonal; infinite-death
// points match only among themselves (by birth), a count mismatch gives
// infinity.
double bottleneck(const PersistenceDiagram& D, const PersistenceDiagram& E, int dim);

// Bottleneck after (b, d) -> (ln b, ln d). Throws on nonpositive births or
// finite nonpositive deaths.
double log_bottleneck(const PersistenceDiagram& D, const PersistenceDiagram& E, int dim);

// Ratio of the j-th largest lifespan to the (j+1)-th in the given dimension.
// Exactly j features (no noise), an essential signal, or zero noise lifespan
// give infinity; fewer than j features (no signal to infer) give 0.
double snr(const PersistenceDiagram& D, int dim, int j);

}  // namespace dtmph
