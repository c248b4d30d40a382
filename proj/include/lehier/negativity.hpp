#pragma once

#include "lehier/qlinalg.hpp"

namespace lehier {

/// Negativity of a two-qubit state: absolute sum of the negative eigenvalues
/// of the partial transpose. Ranges over [0, 1/2] in this convention; the
/// trace-norm form is exactly twice this value.
double negativity(const DensityMatrix& rho);

/// Same computation on a raw 4x4 density matrix (skips the DensityMatrix
/// validity machinery).
double negativity_raw(const ComplexMatrix& rho4);

/// Allocation-free variant for the optimizer inner loop: `rho4` points at 16
/// row-major entries of a Hermitian 4x4 matrix, which may be unnormalized
/// (negativity is 1-homogeneous in the state). Agrees with negativity_raw.
double negativity_raw4(const cplx* rho4);

constexpr double kNegativeEigTol = 1e-12;

}  // namespace lehier
