#include "lehier/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace lehier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Worst margin of the chain comparison max(lhs) <= min(rhs).
double chain_margin(const std::vector<double>& lhs, const std::vector<double>& rhs) {
    const double l = *std::max_element(lhs.begin(), lhs.end());
    const double r = *std::min_element(rhs.begin(), rhs.end());
    return r - l;
}

void push(HierarchyVerdict& v, const std::string& label, double margin) {
    v.labels.push_back(label);
    v.margins.push_back(margin);
    v.holds.push_back(margin >= -v.slack);
}

int mask_of(int n, std::initializer_list<int> qubits) {
    int m = 0;
    for (int q : qubits) m |= 1 << (n - 1 - q);
    return m;
}

}  // namespace

double LEProfile::at(int subset_mask) const {
    const auto it = values.find(subset_mask);
    if (it == values.end()) {
        throw std::domain_error("LEProfile: missing noise subset mask " +
                                std::to_string(subset_mask));
    }
    return it->second;
}

LEProfile build_profile(const DensityMatrix& rho, std::pair<int, int> pair, ChannelKind kind,
                        double p, Method method, const OptimizerOptions& opts) {
    LEProfile prof;
    prof.num_qubits = rho.num_qubits();
    prof.pair = pair;
    prof.method = method;
    prof.kind = kind;
    prof.p = p;
    for (const TaggedNoiseConfig& tc : enumerate_noise_configs(prof.num_qubits, pair, kind, p)) {
        const DensityMatrix noisy = apply_local_noise(rho, tc.config);
        const double val = (method == Method::RLE) ? rle(noisy, pair).value
                                                   : le(noisy, pair, opts).value;
        prof.values[static_cast<int>(tc.subset_mask)] = val;
    }
    return prof;
}

bool HierarchyVerdict::operator[](const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return holds[i];
    }
    throw std::domain_error("HierarchyVerdict: unknown label " + label);
}

double HierarchyVerdict::margin(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return margins[i];
    }
    throw std::domain_error("HierarchyVerdict: unknown label " + label);
}

HierarchyVerdict verdict3(const LEProfile& prof, double slack) {
    if (prof.num_qubits != 3) throw std::domain_error("verdict3: three-qubit profile required");
    const int n = 3;
    const int a = prof.pair.first, b = prof.pair.second;
    int c = 0;
    while (c == a || c == b) ++c;
    const auto E = [&](std::initializer_list<int> qs) { return prof.at(mask_of(n, qs)); };

    const double e_abc = E({a, b, c}), e_ab = E({a, b});
    const double e_ac = E({a, c}), e_bc = E({b, c});
    const double e_a = E({a}), e_b = E({b}), e_c = E({c});
    const double e_none = E({});

    HierarchyVerdict v;
    v.slack = slack;
    const double env1 = chain_margin({e_abc, e_ab}, {e_ac, e_bc, e_a, e_b});
    const double env2 = chain_margin({e_ac, e_bc, e_a, e_b}, {e_c});
    push(v, "Env", std::min(env1, env2));
    push(v, "A", e_ab - e_abc);
    push(v, "B", chain_margin({e_ac, e_bc}, {e_a, e_b}));
    const double c1 = chain_margin({e_abc}, {e_ab, e_ac, e_bc});
    const double c2 = chain_margin({e_ab, e_ac, e_bc}, {e_a, e_b, e_c});
    const double c3 = chain_margin({e_a, e_b, e_c}, {e_none});
    push(v, "C", std::min({c1, c2, c3}));
    return v;
}

HierarchyVerdict verdict4(const LEProfile& prof, double slack) {
    if (prof.num_qubits != 4) throw std::domain_error("verdict4: four-qubit profile required");
    const int n = 4;
    const int a = prof.pair.first, b = prof.pair.second;
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
        if (q != a && q != b) rest.push_back(q);
    const int r0 = rest[0], r1 = rest[1];
    const auto E = [&](std::initializer_list<int> qs) { return prof.at(mask_of(n, qs)); };

    // group the sixteen placements by scenario (how much of the retained
    // pair is noisy) and by cardinality within the scenario
    const std::vector<double> i1{E({r0}), E({r1})};
    const std::vector<double> i2{E({r0, r1})};
    const std::vector<double> ii1{E({a}), E({b})};
    const std::vector<double> ii2{E({a, r0}), E({a, r1}), E({b, r0}), E({b, r1})};
    const std::vector<double> ii3{E({a, r0, r1}), E({b, r0, r1})};
    const std::vector<double> iii2{E({a, b})};
    const std::vector<double> iii3{E({a, b, r0}), E({a, b, r1})};
    const std::vector<double> iii4{E({a, b, r0, r1})};

    HierarchyVerdict v;
    v.slack = slack;
    push(v, "H1", chain_margin(i2, i1));
    push(v, "H2", std::min(chain_margin(ii3, ii2), chain_margin(ii2, ii1)));
    push(v, "H3", std::min(chain_margin(iii4, iii3), chain_margin(iii3, iii2)));

    std::vector<double> all_i = i1, all_ii = ii1, all_iii = iii2;
    all_i.insert(all_i.end(), i2.begin(), i2.end());
    all_ii.insert(all_ii.end(), ii2.begin(), ii2.end());
    all_ii.insert(all_ii.end(), ii3.begin(), ii3.end());
    all_iii.insert(all_iii.end(), iii3.begin(), iii3.end());
    all_iii.insert(all_iii.end(), iii4.begin(), iii4.end());
    push(v, "H4", std::min(chain_margin(all_iii, all_ii), chain_margin(all_ii, all_i)));

    std::vector<std::vector<double>> by_card(n + 1);
    for (const auto& [mask, val] : prof.values) {
        by_card[__builtin_popcount(static_cast<unsigned>(mask))].push_back(val);
    }
    double h5 = kInf;
    for (int m = 1; m <= n; ++m) h5 = std::min(h5, chain_margin(by_card[m], by_card[m - 1]));
    push(v, "H5", h5);
    return v;
}

double delta_b(const LEProfile& prof) {
    if (prof.num_qubits != 3) throw std::domain_error("delta_b: three-qubit profile required");
    const int a = prof.pair.first, b = prof.pair.second;
    int c = 0;
    while (c == a || c == b) ++c;
    const auto E = [&](std::initializer_list<int> qs) { return prof.at(mask_of(3, qs)); };
    return std::min(E({a}), E({b})) - std::max(E({a, c}), E({b, c}));
}

}  // namespace lehier
