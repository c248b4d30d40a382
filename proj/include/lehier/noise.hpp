#pragma once

#include <string>
#include <vector>

#include "lehier/qlinalg.hpp"

namespace lehier {

enum class ChannelKind { BitFlip, PhaseFlip, Depolarizing, AmplitudeDamping };

std::string to_string(ChannelKind kind);             // "bf" | "pf" | "dp" | "ad"
ChannelKind channel_kind_from_string(const std::string& s);

/// Local single-qubit noise of one kind and strength, acting independently
/// on every qubit listed in noisy_set.
struct NoiseConfig {
    ChannelKind kind = ChannelKind::BitFlip;
    double strength = 0.0;
    std::vector<int> noisy_set;  // ascending, duplicate-free

    NoiseConfig() = default;
    NoiseConfig(ChannelKind k, double p, std::vector<int> qubits);
};

/// Single-qubit Kraus operators; 2 for BF/PF/AD, 4 for DP.
/// Completeness sum K^dagger K = I holds by construction.
std::vector<ComplexMatrix> kraus_operators(ChannelKind kind, double p);

/// Applies the uncorrelated channel qubit by qubit over cfg.noisy_set.
/// Equivalent to the full multi-index operator sum over d^m Kraus strings.
DensityMatrix apply_local_noise(const DensityMatrix& rho, const NoiseConfig& cfg);

/// Which side(s) of the retained pair the noise touches.
enum class Scenario { None, OneOfPair, BothOfPair };

struct TaggedNoiseConfig {
    NoiseConfig config;
    int cardinality = 0;       // |L|
    Scenario scenario = Scenario::None;
    uint32_t subset_mask = 0;  // bit (n-1-q) set when qubit q is noisy
};

/// All 2^n subsets L (including the empty set), tagged with |L| and the
/// scenario of the unmeasured pair: neither / exactly one / both in L.
std::vector<TaggedNoiseConfig> enumerate_noise_configs(int n, std::pair<int, int> unmeasured_pair,
                                                       ChannelKind kind, double p);

uint32_t subset_mask(const std::vector<int>& qubits, int n);

}  // namespace lehier
