#pragma once

#include <cstdint>

#include "lehier/qlinalg.hpp"

namespace lehier {

enum class EnsembleKind { GHZClass3, WClass3, Generic4 };

/// Counter-based stream: (master_seed, stream_index, sample index) fully
/// determines every variate, so samples can be drawn in any order and from
/// any number of workers with identical results.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    /// k-th 64-bit word of sample `index` on this stream.
    std::uint64_t word(std::uint64_t index, std::uint64_t k) const;
    /// uniform double in (0, 1]
    double uniform(std::uint64_t index, std::uint64_t k) const;
    /// standard normal via Box-Muller; consumes words 2k and 2k+1
    double normal(std::uint64_t index, std::uint64_t k) const;
};

/// cos(alpha/2)|000> + e^{i beta} sin(alpha/2)|111>, alpha in [0,pi],
/// beta in [0,2pi].
PureState gghz(double alpha, double beta);

/// cos(alpha)|001> + e^{i g1} sin(alpha)cos(beta)|010>
///                 + e^{i g2} sin(alpha)sin(beta)|100>.
PureState gw(double alpha, double beta, double gamma1, double gamma2);

/// Haar-style draw: i.i.d. standard complex Gaussian amplitudes on the
/// ensemble's support, globally normalized.
PureState sample(EnsembleKind kind, const RngStream& rng, std::uint64_t index);

int ensemble_qubits(EnsembleKind kind);

}  // namespace lehier
