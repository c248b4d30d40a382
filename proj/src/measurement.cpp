#include "lehier/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lehier {

AngleBasis angles_of(PauliAxis axis) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    switch (axis) {
        case PauliAxis::X: return {half_pi, 0.0};
        case PauliAxis::Y: return {half_pi, half_pi};
        case PauliAxis::Z: return {0.0, 0.0};
    }
    throw std::logic_error("unknown PauliAxis");
}

std::array<cplx, 2> basis_ket(const AngleBasis& basis, int outcome) {
    const double c = std::cos(basis.theta / 2.0);
    const double s = std::sin(basis.theta / 2.0);
    const cplx phase = std::polar(1.0, basis.phi);
    if (outcome == 0) return {c, phase * s};
    return {s, -phase * c};
}

ComplexMatrix projector(const AngleBasis& basis, int outcome) {
    const auto v = basis_ket(basis, outcome);
    ComplexMatrix out(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = v[r] * std::conj(v[c]);
    return out;
}

ComplexMatrix pauli_projector(PauliAxis axis, int outcome) {
    const ComplexMatrix* sigma = nullptr;
    switch (axis) {
        case PauliAxis::X: sigma = &pauli_x(); break;
        case PauliAxis::Y: sigma = &pauli_y(); break;
        case PauliAxis::Z: sigma = &pauli_z(); break;
    }
    const double sign = (outcome == 0) ? 1.0 : -1.0;
    ComplexMatrix out = identity2();
    out += sign * ComplexMatrix(*sigma);
    out *= 0.5;
    return out;
}

std::vector<Branch> measurement_branches(const DensityMatrix& rho, const MeasurementSetting& setting) {
    const int n = rho.num_qubits();
    const auto& measured = setting.measured_set;
    if (setting.bases.size() != measured.size()) {
        throw std::invalid_argument("measurement_branches: one basis per measured qubit required");
    }
    const int nr = static_cast<int>(measured.size());
    if (nr >= n) throw std::invalid_argument("measurement_branches: retained set must be nonempty");
    for (int q : measured) {
        if (q < 0 || q >= n) throw std::domain_error("measurement_branches: qubit out of range");
    }

    std::vector<bool> is_measured(n, false);
    for (int q : measured) is_measured[q] = true;
    std::vector<int> retained;
    for (int q = 0; q < n; ++q)
        if (!is_measured[q]) retained.push_back(q);
    const int ns = static_cast<int>(retained.size());

    // full-index contribution of each retained / measured bit pattern
    const int ds = 1 << ns, dr = 1 << nr;
    std::vector<int> sidx(ds, 0), ridx(dr, 0);
    for (int s = 0; s < ds; ++s)
        for (int i = 0; i < ns; ++i)
            if (s & (1 << (ns - 1 - i))) sidx[s] |= 1 << (n - 1 - retained[i]);
    for (int r = 0; r < dr; ++r)
        for (int i = 0; i < nr; ++i)
            if (r & (1 << (nr - 1 - i))) ridx[r] |= 1 << (n - 1 - measured[i]);

    const ComplexMatrix& m = rho.matrix();
    std::vector<Branch> out;
    out.reserve(dr);
    std::vector<cplx> w(dr);
    for (uint32_t k = 0; k < static_cast<uint32_t>(dr); ++k) {
        // product ket over the measured qubits for this outcome string
        for (int r = 0; r < dr; ++r) {
            cplx amp = 1.0;
            for (int i = 0; i < nr; ++i) {
                const AngleBasis ang = std::holds_alternative<PauliAxis>(setting.bases[i])
                                           ? angles_of(std::get<PauliAxis>(setting.bases[i]))
                                           : std::get<AngleBasis>(setting.bases[i]);
                const auto ket = basis_ket(ang, (k >> (nr - 1 - i)) & 1);
                amp *= ket[(r >> (nr - 1 - i)) & 1];
            }
            w[r] = amp;
        }

        ComplexMatrix red(ds);
        for (int si = 0; si < ds; ++si)
            for (int sj = 0; sj < ds; ++sj) {
                cplx acc = 0.0;
                for (int ri = 0; ri < dr; ++ri) {
                    const cplx wi = std::conj(w[ri]);
                    if (wi == 0.0) continue;
                    for (int rj = 0; rj < dr; ++rj)
                        acc += wi * m(sidx[si] | ridx[ri], sidx[sj] | ridx[rj]) * w[rj];
                }
                red(si, sj) = acc;
            }

        Branch b;
        b.outcome = k;
        b.probability = red.trace().real();
        if (b.probability >= kBranchProbFloor) {
            red *= 1.0 / b.probability;
            b.state = DensityMatrix(ns, std::move(red));
        } else {
            b.probability = std::max(b.probability, 0.0);
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace lehier
