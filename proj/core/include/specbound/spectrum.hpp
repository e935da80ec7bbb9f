#pragma once

#include <vector>

namespace specbound {

/// A finite list of Dirichlet Laplacian energies E_k (units 1/length^2),
/// sorted ascending, counted with multiplicity.
struct EigenvalueSpectrum {
    enum class Exactness { exact, numerical };

    std::vector<double> values;
    Exactness exactness = Exactness::exact;
    double grid_spacing = 0.0;  // set when exactness == numerical
};

/// Lengths |J_k| of the open intervals forming a one-dimensional section.
struct IntervalPartition {
    std::vector<double> lengths;
};

}  // namespace specbound
