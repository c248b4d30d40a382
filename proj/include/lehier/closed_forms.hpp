#pragma once

#include <string>

namespace lehier {

/// Noise placements for the 3-qubit gGHZ analytic results, named by the
/// 1-indexed noisy qubits; entanglement is always localized on the pair (1,2).
enum class GGHZConfigLabel {
    Rho123,
    Rho12,
    Rho13,
    Rho23,
    Rho1,
    Rho2,
    Rho3,
    Noiseless,
};

/// Number of noisy qubits for the label.
int label_cardinality(GGHZConfigLabel label);
/// Noisy-qubit bitmask in the register convention (qubit 1 = MSB of 3).
int label_mask(GGHZConfigLabel label);
const char* label_name(GGHZConfigLabel label);

struct ClosedFormResult {
    double value = 0.0;  // clamped at 0
    double raw = 0.0;    // pre-clamp value, used for root finding
    bool clamped = false;
    std::string valid_domain;
};

/// Dephasing: (1/2)(1-p)^m sin(alpha). alpha in [0, pi/2].
ClosedFormResult pf_rle(GGHZConfigLabel label, double alpha, double p);

/// Bit flip. alpha in [0, pi/2], beta in [0, 2pi].
ClosedFormResult bf_rle(GGHZConfigLabel label, double alpha, double beta, double p);

/// Smallest p in (0,1] where the bit-flip two-noisy-qubit expression hits 0;
/// 1 if it stays positive. Bisection to 1e-10.
double bf_critical(double alpha, double beta);

/// Depolarizing. alpha in [0, pi/2].
ClosedFormResult dp_rle(GGHZConfigLabel label, double alpha, double p);

/// Smallest p in (0,1] where the depolarizing expression vanishes.
double dp_critical(GGHZConfigLabel label, double alpha);

/// Amplitude damping. alpha in [0, pi].
ClosedFormResult ad_rle(GGHZConfigLabel label, double alpha, double p);

/// Crossing point of the one- and two-noisy-qubit amplitude-damping curves:
/// min[1, (2 sin a - sqrt(4 sin a (sin a + cos a - 1))) / (2(1 - cos a))].
double ad_crossing(double alpha);

}  // namespace lehier
