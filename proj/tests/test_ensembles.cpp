#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "lehier/ensembles.hpp"

using namespace lehier;

namespace {

constexpr double kPi = std::numbers::pi;

double purity_of_first_qubit(const PureState& psi) {
    // 2x2 reduced state of the leading qubit of a 3-qubit ket
    cplx r00 = 0.0, r01 = 0.0, r11 = 0.0;
    for (int j = 0; j < 4; ++j) {
        r00 += psi.amplitudes[j] * std::conj(psi.amplitudes[j]);
        r11 += psi.amplitudes[4 + j] * std::conj(psi.amplitudes[4 + j]);
        r01 += psi.amplitudes[j] * std::conj(psi.amplitudes[4 + j]);
    }
    return std::norm(r00) + std::norm(r11) + 2.0 * std::norm(r01);
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("gghz amplitudes and domain") {
    const double alpha = kPi / 3.0, beta = 0.7;
    const PureState psi = gghz(alpha, beta);
    CHECK(psi.num_qubits == 3);
    CHECK(psi.amplitudes[0].real() == doctest::Approx(std::cos(alpha / 2.0)).epsilon(1e-14));
    CHECK(std::abs(psi.amplitudes[7] - std::polar(std::sin(alpha / 2.0), beta)) < 1e-14);
    for (int i = 1; i < 7; ++i) CHECK(std::abs(psi.amplitudes[i]) == 0.0);
    CHECK_THROWS_AS(gghz(-0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(gghz(kPi + 0.1, 0.0), std::domain_error);
}

TEST_CASE("gw amplitudes sit on the single-excitation kets") {
    const double a = 0.8, b = 1.1, g1 = 0.3, g2 = 2.2;
    const PureState psi = gw(a, b, g1, g2);
    CHECK(psi.amplitudes[0b001].real() == doctest::Approx(std::cos(a)).epsilon(1e-14));
    CHECK(std::abs(psi.amplitudes[0b010] - std::polar(std::sin(a) * std::cos(b), g1)) < 1e-14);
    CHECK(std::abs(psi.amplitudes[0b100] - std::polar(std::sin(a) * std::sin(b), g2)) < 1e-14);
    for (int i : {0b000, 0b011, 0b101, 0b110, 0b111}) CHECK(std::abs(psi.amplitudes[i]) == 0.0);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sampled states are normalized with the right support") {
    RngStream s{2024, 1};
    for (uint64_t i = 0; i < 20; ++i) {
        const PureState g = sample(EnsembleKind::GHZClass3, s, i);
        CHECK(g.num_qubits == 3);
        CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-12));

        const PureState w = sample(EnsembleKind::WClass3, s, i);
        CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (int k : {0b011, 0b101, 0b110, 0b111}) CHECK(std::abs(w.amplitudes[k]) == 0.0);

        const PureState f = sample(EnsembleKind::Generic4, s, i);
        CHECK(f.num_qubits == 4);
        CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(ensemble_qubits(EnsembleKind::GHZClass3) == 3);
    CHECK(ensemble_qubits(EnsembleKind::Generic4) == 4);
}

TEST_CASE("sampling is counter-based and order independent") {
    RngStream s{77, 5};
    const PureState a = sample(EnsembleKind::GHZClass3, s, 123);
    sample(EnsembleKind::GHZClass3, s, 7);  // interleaved draw must not disturb
    const PureState b = sample(EnsembleKind::GHZClass3, s, 123);
    for (int i = 0; i < 8; ++i) CHECK(a.amplitudes[i] == b.amplitudes[i]);

    // distinct seeds, streams, and indices all decorrelate
    const PureState c = sample(EnsembleKind::GHZClass3, RngStream{78, 5}, 123);
    const PureState d = sample(EnsembleKind::GHZClass3, RngStream{77, 6}, 123);
    const PureState e = sample(EnsembleKind::GHZClass3, s, 124);
    CHECK(std::abs(a.amplitudes[0] - c.amplitudes[0]) > 1e-12);
    CHECK(std::abs(a.amplitudes[0] - d.amplitudes[0]) > 1e-12);
    CHECK(std::abs(a.amplitudes[0] - e.amplitudes[0]) > 1e-12);
}

TEST_CASE("uniform and normal variates behave statistically") {
    RngStream s{31337, 0};
    const int n = 20000;
    double usum = 0.0, nsum = 0.0, nsq = 0.0, umin = 1.0, umax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform(i, 0);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        usum += u;
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        const double z = s.normal(i, 1);
        nsum += z;
        nsq += z * z;
    }
    CHECK(usum / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(umin < 0.01);
    CHECK(umax > 0.99);
    CHECK(std::abs(nsum / n) < 0.03);
    CHECK(nsq / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("amplitude moments match the flat gaussian ensemble") {
    // mean |a_0|^2 over the 8-dim support is 1/8
    RngStream s{5150, 2};
    const int n = 20000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += std::norm(sample(EnsembleKind::GHZClass3, s, i).amplitudes[0]);
    CHECK(acc / n == doctest::Approx(1.0 / 8.0).epsilon(0.04));
}

TEST_CASE("marginal purity distribution matches a mt19937 oracle") {
    // same construction with std::mt19937 Gaussians; distributions must agree
    RngStream s{424242, 3};
    std::mt19937 gen(987);
    std::normal_distribution<double> nd;
    const int n = 10000;
    std::vector<double> mine, oracle;
    mine.reserve(n);
    oracle.reserve(n);
    for (int i = 0; i < n; ++i) {
        mine.push_back(purity_of_first_qubit(sample(EnsembleKind::GHZClass3, s, i)));
        std::vector<cplx> amps(8);
        double norm2 = 0.0;
        for (auto& a : amps) {
            a = cplx(nd(gen), nd(gen));
            norm2 += std::norm(a);
        }
        for (auto& a : amps) a /= std::sqrt(norm2);
        oracle.push_back(purity_of_first_qubit(PureState(3, amps)));
    }
    CHECK(ks_distance(mine, oracle) < 0.02);
}
