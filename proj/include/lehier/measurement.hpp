#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "lehier/qlinalg.hpp"

namespace lehier {

/// Bloch-sphere angles of a rank-1 projective basis on one qubit.
struct AngleBasis {
    double theta = 0.0;  // [0, pi)
    double phi = 0.0;    // [0, 2*pi]
};

enum class PauliAxis : int { X = 0, Y = 1, Z = 2 };

AngleBasis angles_of(PauliAxis axis);

using BasisChoice = std::variant<AngleBasis, PauliAxis>;

/// One basis choice per measured qubit. The first listed qubit owns the
/// most significant bit of the outcome multi-index.
struct MeasurementSetting {
    std::vector<int> measured_set;
    std::vector<BasisChoice> bases;
};

struct Branch {
    uint32_t outcome = 0;
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // null when probability < 1e-12
};

/// Basis ket |k> of the (theta, phi) basis as a 2-vector.
std::array<cplx, 2> basis_ket(const AngleBasis& basis, int outcome);

/// Rank-1 projector |k><k| for the angle basis.
ComplexMatrix projector(const AngleBasis& basis, int outcome);

/// (I + (-1)^k sigma^axis)/2; coincides with `projector` at the axis angles.
ComplexMatrix pauli_projector(PauliAxis axis, int outcome);

/// All 2^|R| measurement branches: outcome probability and the normalized
/// reduced post-measurement state on the retained qubits.
std::vector<Branch> measurement_branches(const DensityMatrix& rho, const MeasurementSetting& setting);

constexpr double kBranchProbFloor = 1e-12;

}  // namespace lehier
