#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lehier/localizable.hpp"
#include "lehier/noise.hpp"

namespace lehier {

/// Localized-entanglement values of one state for every noise placement at a
/// fixed channel kind and strength. Keys are noisy-subset bitmasks in the
/// register convention (qubit q contributes bit N-1-q).
struct LEProfile {
    int num_qubits = 0;
    std::pair<int, int> pair{0, 1};
    Method method = Method::RLE;
    ChannelKind kind = ChannelKind::PhaseFlip;
    double p = 0.0;
    std::map<int, double> values;

    double at(int subset_mask) const;  // throws if the subset is missing
};

/// Build the full 2^N-subset profile of a state.
LEProfile build_profile(const DensityMatrix& rho, std::pair<int, int> pair, ChannelKind kind,
                        double p, Method method, const OptimizerOptions& opts);

struct HierarchyVerdict {
    double slack = 0.0;
    // (label, holds, worst margin); margin = min over constituent
    // comparisons of (rhs - lhs), so holds == (margin >= -slack)
    std::vector<std::string> labels;
    std::vector<bool> holds;
    std::vector<double> margins;

    bool operator[](const std::string& label) const;
    double margin(const std::string& label) const;
};

/// Default comparison slacks: exact Pauli enumeration vs optimizer output.
constexpr double kSlackRLE = 1e-9;
constexpr double kSlackLE = 1e-6;

/// Three-qubit predicates: Env (both envelope inequalities), A, B, C
/// (cardinality chain including the noiseless state).
HierarchyVerdict verdict3(const LEProfile& profile, double slack);

/// Four-qubit predicates H1-H5; H2 is the combined two-inequality form.
HierarchyVerdict verdict4(const LEProfile& profile, double slack);

/// min{E(rho_1), E(rho_2)} - max{E(rho_13), E(rho_23)}; negative values
/// witness a violation of hierarchy B.
double delta_b(const LEProfile& profile);

}  // namespace lehier
