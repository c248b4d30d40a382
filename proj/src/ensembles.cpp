#include "lehier/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lehier {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        throw std::domain_error(std::string(name) + " out of range");
    }
}

}  // namespace

std::uint64_t RngStream::word(std::uint64_t index, std::uint64_t k) const {
    // three finalizer rounds decorrelate the (seed, stream, index, k) lattice
    std::uint64_t h = splitmix(master_seed);
    h = splitmix(h ^ splitmix(stream_index ^ 0xd2b74407b1ce6e93ULL));
    h = splitmix(h ^ (index * 0x9e3779b97f4a7c15ULL) ^ (k * 0xc2b2ae3d27d4eb4fULL));
    return h;
}

double RngStream::uniform(std::uint64_t index, std::uint64_t k) const {
    return (static_cast<double>(word(index, k) >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal(std::uint64_t index, std::uint64_t k) const {
    const double u1 = uniform(index, 2 * k);
    const double u2 = uniform(index, 2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

PureState gghz(double alpha, double beta) {
    check_range(alpha, 0.0, kPi, "alpha");
    check_range(beta, 0.0, 2.0 * kPi, "beta");
    PureState psi;
    psi.num_qubits = 3;
    psi.amplitudes.assign(8, 0.0);
    psi.amplitudes[0] = std::cos(alpha / 2.0);
    psi.amplitudes[7] = std::polar(std::sin(alpha / 2.0), beta);
    return psi;
}

PureState gw(double alpha, double beta, double gamma1, double gamma2) {
    check_range(alpha, 0.0, kPi, "alpha");
    check_range(beta, 0.0, kPi, "beta");
    check_range(gamma1, 0.0, 2.0 * kPi, "gamma1");
    check_range(gamma2, 0.0, 2.0 * kPi, "gamma2");
    PureState psi;
    psi.num_qubits = 3;
    psi.amplitudes.assign(8, 0.0);
    psi.amplitudes[0b001] = std::cos(alpha);
    psi.amplitudes[0b010] = std::polar(std::sin(alpha) * std::cos(beta), gamma1);
    psi.amplitudes[0b100] = std::polar(std::sin(alpha) * std::sin(beta), gamma2);
    return psi;
}

int ensemble_qubits(EnsembleKind kind) {
    return kind == EnsembleKind::Generic4 ? 4 : 3;
}

PureState sample(EnsembleKind kind, const RngStream& rng, std::uint64_t index) {
    const int n = ensemble_qubits(kind);
    const int dim = 1 << n;
    PureState psi;
    psi.num_qubits = n;
    psi.amplitudes.assign(dim, 0.0);

    static const int w_support[] = {0b000, 0b001, 0b010, 0b100};
    const int support = (kind == EnsembleKind::WClass3) ? 4 : dim;

    double norm2 = 0.0;
    for (int i = 0; i < support; ++i) {
        const int slot = (kind == EnsembleKind::WClass3) ? w_support[i] : i;
        const cplx a{rng.normal(index, 2 * i), rng.normal(index, 2 * i + 1)};
        psi.amplitudes[slot] = a;
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : psi.amplitudes) a *= inv;
    return psi;
}

}  // namespace lehier
