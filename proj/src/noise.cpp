#include "lehier/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lehier {

std::string to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::BitFlip: return "bf";
        case ChannelKind::PhaseFlip: return "pf";
        case ChannelKind::Depolarizing: return "dp";
        case ChannelKind::AmplitudeDamping: return "ad";
    }
    throw std::logic_error("unknown ChannelKind");
}

ChannelKind channel_kind_from_string(const std::string& s) {
    if (s == "bf") return ChannelKind::BitFlip;
    if (s == "pf") return ChannelKind::PhaseFlip;
    if (s == "dp") return ChannelKind::Depolarizing;
    if (s == "ad") return ChannelKind::AmplitudeDamping;
    throw std::invalid_argument("unknown channel kind: " + s);
}

NoiseConfig::NoiseConfig(ChannelKind k, double p, std::vector<int> qubits)
    : kind(k), strength(p), noisy_set(std::move(qubits)) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("NoiseConfig: strength outside [0,1]");
    std::sort(noisy_set.begin(), noisy_set.end());
    if (std::adjacent_find(noisy_set.begin(), noisy_set.end()) != noisy_set.end()) {
        throw std::domain_error("NoiseConfig: duplicate qubit in noisy set");
    }
}

std::vector<ComplexMatrix> kraus_operators(ChannelKind kind, double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("kraus_operators: p outside [0,1]");
    std::vector<ComplexMatrix> ks;
    switch (kind) {
        case ChannelKind::BitFlip:
            ks.push_back(std::sqrt(1.0 - p / 2.0) * identity2());
            ks.push_back(std::sqrt(p / 2.0) * pauli_x());
            break;
        case ChannelKind::PhaseFlip:
            ks.push_back(std::sqrt(1.0 - p / 2.0) * identity2());
            ks.push_back(std::sqrt(p / 2.0) * pauli_z());
            break;
        case ChannelKind::Depolarizing:
            ks.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * identity2());
            ks.push_back(std::sqrt(p / 4.0) * pauli_x());
            ks.push_back(std::sqrt(p / 4.0) * pauli_y());
            ks.push_back(std::sqrt(p / 4.0) * pauli_z());
            break;
        case ChannelKind::AmplitudeDamping:
            ks.push_back(ComplexMatrix(2, {1.0, 0.0, 0.0, std::sqrt(1.0 - p)}));
            ks.push_back(ComplexMatrix(2, {0.0, std::sqrt(p), 0.0, 0.0}));
            break;
    }
    return ks;
}

DensityMatrix apply_local_noise(const DensityMatrix& rho, const NoiseConfig& cfg) {
    const int n = rho.num_qubits();
    for (int q : cfg.noisy_set) {
        if (q < 0 || q >= n) throw std::domain_error("apply_local_noise: qubit index out of range");
    }
    if (cfg.noisy_set.empty()) return rho;

    const auto local = kraus_operators(cfg.kind, cfg.strength);
    ComplexMatrix m = rho.matrix();
    for (int q : cfg.noisy_set) {
        ComplexMatrix next(m.dim());
        for (const ComplexMatrix& k : local) {
            const ComplexMatrix big = embed_local(k, q, n);
            next += big * m * big.adjoint();
        }
        m = std::move(next);
    }
    return DensityMatrix(n, std::move(m));
}

uint32_t subset_mask(const std::vector<int>& qubits, int n) {
    uint32_t mask = 0;
    for (int q : qubits) mask |= 1u << (n - 1 - q);
    return mask;
}

std::vector<TaggedNoiseConfig> enumerate_noise_configs(int n, std::pair<int, int> unmeasured_pair,
                                                       ChannelKind kind, double p) {
    if (n != 3 && n != 4) throw std::domain_error("enumerate_noise_configs: n must be 3 or 4");
    std::vector<TaggedNoiseConfig> out;
    out.reserve(1u << n);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> qubits;
        for (int q = 0; q < n; ++q) {
            if (mask & (1u << (n - 1 - q))) qubits.push_back(q);
        }
        TaggedNoiseConfig tc;
        tc.config = NoiseConfig(kind, p, qubits);
        tc.cardinality = static_cast<int>(qubits.size());
        tc.subset_mask = mask;
        const bool first = std::find(qubits.begin(), qubits.end(), unmeasured_pair.first) != qubits.end();
        const bool second = std::find(qubits.begin(), qubits.end(), unmeasured_pair.second) != qubits.end();
        tc.scenario = (first && second) ? Scenario::BothOfPair
                      : (first || second) ? Scenario::OneOfPair
                                          : Scenario::None;
        out.push_back(std::move(tc));
    }
    return out;
}

}  // namespace lehier
