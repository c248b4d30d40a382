#pragma once

#include <utility>
#include <vector>

#include "lehier/measurement.hpp"
#include "lehier/negativity.hpp"
#include "lehier/qlinalg.hpp"

namespace lehier {

enum class Method { RLE, LE };

/// Optimizer knobs for the continuous LE maximization. Defaults follow a
/// coarse-grid + simplex-refinement scheme; the four-qubit default grid is
/// smaller to keep one evaluation cheap.
struct OptimizerOptions {
    int grid_theta = 16;   // steps over [0, pi), sampled at cell centers
    int grid_phi = 16;     // steps over [0, 2*pi), sampled from the 0 edge
    int starts = 5;        // best grid cells kept as refinement starts
    int max_evals = 2000;  // per simplex run
    double tol = 1e-7;     // simplex diameter convergence

    static OptimizerOptions defaults_for(int num_qubits);
};

struct LocalizationResult {
    double value = 0.0;
    MeasurementSetting best_setting;
    std::vector<std::pair<double, double>> branch_values;  // (p_k, E_k)
    Method method = Method::RLE;
};

/// Average negativity localized on the two retained qubits by the given
/// measurement setting: sum over branches of p_k * E(state_k).
double average_entanglement(const DensityMatrix& rho, const MeasurementSetting& setting);

/// Exact maximum over all 3^(N-2) Pauli measurement configurations.
/// Ties resolve to the lexicographically smallest axis multi-index (X<Y<Z).
LocalizationResult rle(const DensityMatrix& rho, std::pair<int, int> pair);

/// Continuous-angle maximization seeded with the RLE arg-max plus the best
/// coarse-grid cells, refined by Nelder-Mead. Never below rle() - 1e-9.
LocalizationResult le(const DensityMatrix& rho, std::pair<int, int> pair, const OptimizerOptions& opts);
LocalizationResult le(const DensityMatrix& rho, std::pair<int, int> pair);

/// le - rle for the same state and pair.
double epsilon(const DensityMatrix& rho, std::pair<int, int> pair, const OptimizerOptions& opts);
double epsilon(const DensityMatrix& rho, std::pair<int, int> pair);

}  // namespace lehier
