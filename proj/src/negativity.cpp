#include "lehier/negativity.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lehier {

double negativity_raw4(const cplx* rho4) {
    // partial transpose on the first qubit: swap the off-diagonal 2x2 blocks
    std::array<cplx, 16> a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const int rs = (r & 1) | (c & 2);
            const int cs = (c & 1) | (r & 2);
            a[r * 4 + c] = rho4[rs * 4 + cs];
        }

    // cyclic complex Jacobi sweeps, sized for the fixed 4x4 case
    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += std::norm(a[p * 4 + q]);
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a[p * 4 + q];
                const double absapq = std::abs(apq);
                if (absapq < 1e-300) continue;
                const cplx phase = apq / absapq;
                const double tau = (a[q * 4 + q].real() - a[p * 4 + p].real()) / (2.0 * absapq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;
                for (int k = 0; k < 4; ++k) {
                    const cplx akp = a[k * 4 + p];
                    const cplx akq = a[k * 4 + q];
                    a[k * 4 + p] = c * akp - std::conj(s) * akq;
                    a[k * 4 + q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const cplx apk = a[p * 4 + k];
                    const cplx aqk = a[q * 4 + k];
                    a[p * 4 + k] = c * apk - s * aqk;
                    a[q * 4 + k] = std::conj(s) * apk + c * aqk;
                }
            }
        }
    }

    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double e = a[i * 4 + i].real();
        if (e < -kNegativeEigTol) sum -= e;
    }
    return sum;
}

double negativity_raw(const ComplexMatrix& rho4) {
    const ComplexMatrix pt = partial_transpose(rho4, Subsystem::First);
    const auto ev = hermitian_eigenvalues(pt);
    double sum = 0.0;
    int negatives = 0;
    for (double e : ev) {
        if (e < -kNegativeEigTol) {
            sum += -e;
            ++negatives;
        }
    }
    // a two-qubit partial transpose has at most one negative eigenvalue
    if (negatives > 1) throw std::logic_error("negativity: more than one negative PT eigenvalue");
    return sum;
}

double negativity(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) throw std::domain_error("negativity: two-qubit states only");
    return negativity_raw(rho.matrix());
}

}  // namespace lehier
