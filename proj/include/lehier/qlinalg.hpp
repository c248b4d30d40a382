#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace lehier {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions stay tiny here
/// (at most 16x16 for four qubits), so everything is plain O(n^3) code.
class ComplexMatrix {
public:
    ComplexMatrix() : dim_(0) {}
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<cplx> entries);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const std::vector<cplx>& data() const { return a_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;
    double hermiticity_defect() const;   // max |M - M^dagger| entrywise

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int dim_;
    std::vector<cplx> a_;
};

// Pauli matrices and friends.
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& identity2();

/// Kronecker product with `a` as the left (slow) factor.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// I (x) ... (x) op (x) ... (x) I with `op` at qubit `target` in an n-qubit
/// register. Qubit 0 is the most significant tensor factor.
ComplexMatrix embed_local(const ComplexMatrix& op, int target, int n);

/// Pure n-qubit state as a normalized amplitude vector over the 2^n
/// computational basis, qubit 0 most significant.
struct PureState {
    int num_qubits = 0;
    std::vector<cplx> amplitudes;

    PureState() = default;
    PureState(int n, std::vector<cplx> amps);
    double norm() const;
};

class DensityMatrix {
public:
    DensityMatrix() = default;
    /// Symmetrizes (M + M^dagger)/2 when the defect is within tolerance,
    /// rejects otherwise. Trace must be 1 within 1e-10.
    DensityMatrix(int num_qubits, ComplexMatrix m);
    explicit DensityMatrix(const PureState& psi);

    int num_qubits() const { return num_qubits_; }
    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

    /// Full PSD check via the eigensolver; throws on min eigenvalue < -1e-10.
    void validate_psd() const;

private:
    int num_qubits_ = 0;
    ComplexMatrix m_;
};

/// Traces out the qubits in `remove`, preserving the relative order of the
/// remaining qubits.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& remove);

enum class Subsystem { First, Second };

/// Partial transpose of a two-qubit state with respect to one qubit.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem which);
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);

/// Full real spectrum of a Hermitian matrix, ascending. Cyclic complex
/// Jacobi rotations, iterated until the off-diagonal Frobenius norm drops
/// below 1e-14. Throws if the input is not Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace lehier
