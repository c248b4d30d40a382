#include "lehier/qlinalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace lehier {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kJacobiStop = 1e-14;

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(dim) * dim) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match dim*dim");
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const cplx ark = a(r, k);
            if (ark == 0.0) continue;
            for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
    return m;
}

const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

const ComplexMatrix& identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            const cplx v = a(ra, ca);
            if (v == 0.0) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = v * b(rb, cb);
        }
    return out;
}

ComplexMatrix embed_local(const ComplexMatrix& op, int target, int n) {
    if (op.dim() != 2) throw std::domain_error("embed_local: operator must be 2x2");
    if (target < 0 || target >= n) throw std::domain_error("embed_local: target qubit out of range");
    const int dim = 1 << n;
    const int shift = n - 1 - target;  // qubit 0 is the most significant bit
    ComplexMatrix out(dim);
    for (int r = 0; r < dim; ++r) {
        const int rb = (r >> shift) & 1;
        const int rest = r & ~(1 << shift);
        for (int cb = 0; cb < 2; ++cb) {
            const cplx v = op(rb, cb);
            if (v == 0.0) continue;
            out(r, rest | (cb << shift)) = v;
        }
    }
    return out;
}

PureState::PureState(int n, std::vector<cplx> amps) : num_qubits(n), amplitudes(std::move(amps)) {
    if (amplitudes.size() != (1u << n)) {
        throw std::invalid_argument("PureState: amplitude count must be 2^n");
    }
    if (std::abs(norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("PureState: not normalized");
    }
}

double PureState::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

DensityMatrix::DensityMatrix(int num_qubits, ComplexMatrix m) : num_qubits_(num_qubits), m_(std::move(m)) {
    if (!is_power_of_two(m_.dim()) || m_.dim() != (1 << num_qubits)) {
        throw std::invalid_argument("DensityMatrix: dim must be 2^num_qubits");
    }
    if (m_.hermiticity_defect() > 1e-8) {
        throw std::domain_error("DensityMatrix: not Hermitian within tolerance");
    }
    // absorb floating-point drift from channel application
    for (int r = 0; r < m_.dim(); ++r)
        for (int c = r; c < m_.dim(); ++c) {
            const cplx v = 0.5 * (m_(r, c) + std::conj(m_(c, r)));
            m_(r, c) = v;
            m_(c, r) = std::conj(v);
        }
    if (std::abs(m_.trace().real() - 1.0) > kTraceTol) {
        throw std::domain_error("DensityMatrix: trace != 1");
    }
}

DensityMatrix::DensityMatrix(const PureState& psi) : num_qubits_(psi.num_qubits) {
    const int dim = 1 << psi.num_qubits;
    m_ = ComplexMatrix(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m_(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
}

void DensityMatrix::validate_psd() const {
    const auto ev = hermitian_eigenvalues(m_);
    if (!ev.empty() && ev.front() < -kPsdTol) {
        throw std::domain_error("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& remove) {
    const int n = rho.num_qubits();
    uint32_t mask = 0;
    for (int q : remove) {
        if (q < 0 || q >= n) throw std::domain_error("partial_trace: qubit index out of range");
        mask |= 1u << (n - 1 - q);
    }
    const int nr = static_cast<int>(std::popcount(mask));
    if (nr == n) throw std::domain_error("partial_trace: cannot remove all qubits");
    const int nk = n - nr;

    // bit positions (from msb side) of kept and removed qubits
    std::vector<int> keep_shift, rem_shift;
    for (int q = 0; q < n; ++q) {
        const int shift = n - 1 - q;
        if (mask & (1u << shift)) rem_shift.push_back(shift);
        else keep_shift.push_back(shift);
    }

    const int dk = 1 << nk, dr = 1 << nr;
    auto expand = [](int bits, const std::vector<int>& shifts) {
        int out = 0;
        for (size_t i = 0; i < shifts.size(); ++i) {
            if (bits & (1 << (shifts.size() - 1 - i))) out |= 1 << shifts[i];
        }
        return out;
    };

    ComplexMatrix out(dk);
    const ComplexMatrix& m = rho.matrix();
    for (int r = 0; r < dk; ++r) {
        const int rk = expand(r, keep_shift);
        for (int c = 0; c < dk; ++c) {
            const int ck = expand(c, keep_shift);
            cplx acc = 0.0;
            for (int t = 0; t < dr; ++t) {
                const int tr = expand(t, rem_shift);
                acc += m(rk | tr, ck | tr);
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(nk, std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem which) {
    if (rho.dim() != 4) throw std::domain_error("partial_transpose: expected a 4x4 two-qubit state");
    ComplexMatrix out(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) {
                    const cplx v = rho(a * 2 + b, ap * 2 + bp);
                    if (which == Subsystem::First) out(ap * 2 + b, a * 2 + bp) = v;
                    else out(a * 2 + bp, ap * 2 + b) = v;
                }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
    return partial_transpose(rho.matrix(), which);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.hermiticity_defect() > kHermTol) {
        throw std::domain_error("hermitian_eigenvalues: input not Hermitian within 1e-10");
    }
    const int n = m.dim();
    // work on the symmetrized copy
    ComplexMatrix a(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    // cyclic complex Jacobi sweeps
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) < kJacobiStop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double absapq = std::abs(apq);
                if (absapq < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = apq / absapq;

                const double tau = (aqq - app) / (2.0 * absapq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;

                // A <- J^dagger A J with the rotation in the (p,q) plane
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - std::conj(s) * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = std::conj(s) * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace lehier
