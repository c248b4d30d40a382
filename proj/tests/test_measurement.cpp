#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lehier/measurement.hpp"
#include "lehier/negativity.hpp"

using namespace lehier;

namespace {

constexpr double kPi = std::numbers::pi;

PureState random_state(std::mt19937& gen, int n) {
    std::normal_distribution<double> nd;
    std::vector<cplx> amps(1 << n);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = cplx(nd(gen), nd(gen));
        norm2 += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm2);
    return PureState(n, std::move(amps));
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix d = a;
    d -= b;
    return d.max_abs();
}

PureState ghz3() {
    std::vector<cplx> amps(8, 0.0);
    amps[0] = amps[7] = std::sqrt(0.5);
    return PureState(3, amps);
}

}  // namespace

TEST_CASE("angle bases reproduce the Pauli projectors") {
    for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        for (int outcome : {0, 1}) {
            CHECK(max_diff(projector(angles_of(axis), outcome), pauli_projector(axis, outcome)) <
                  1e-15);
        }
    }
}

TEST_CASE("basis kets are orthonormal and projectors idempotent") {
    std::mt19937 gen(21);
    std::uniform_real_distribution<double> ut(0.0, kPi), up(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 30; ++trial) {
        const AngleBasis b{ut(gen), up(gen)};
        const auto v0 = basis_ket(b, 0);
        const auto v1 = basis_ket(b, 1);
        cplx dot = 0.0;
        double n0 = 0.0, n1 = 0.0;
        for (int i = 0; i < 2; ++i) {
            dot += std::conj(v0[i]) * v1[i];
            n0 += std::norm(v0[i]);
            n1 += std::norm(v1[i]);
        }
        CHECK(std::abs(dot) < 1e-15);
        CHECK(n0 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(n1 == doctest::Approx(1.0).epsilon(1e-14));

        const ComplexMatrix p0 = projector(b, 0);
        CHECK(max_diff(p0 * p0, p0) < 1e-14);
        CHECK(p0.hermiticity_defect() < 1e-15);
        ComplexMatrix sum = p0;
        sum += projector(b, 1);
        CHECK(max_diff(sum, identity2()) < 1e-14);
    }
}

TEST_CASE("branch probabilities are complete and states valid") {
    std::mt19937 gen(22);
    std::uniform_real_distribution<double> ut(0.0, kPi), up(0.0, 2.0 * kPi);
    for (int n : {3, 4}) {
        for (int trial = 0; trial < 8; ++trial) {
            const DensityMatrix rho{random_state(gen, n)};
            MeasurementSetting setting;
            for (int q = 2; q < n; ++q) {
                setting.measured_set.push_back(q);
                if (trial % 2 == 0)
                    setting.bases.emplace_back(AngleBasis{ut(gen), up(gen)});
                else
                    setting.bases.emplace_back(static_cast<PauliAxis>(trial % 3));
            }
            const auto branches = measurement_branches(rho, setting);
            REQUIRE(branches.size() == (1u << setting.measured_set.size()));
            double total = 0.0;
            for (const auto& b : branches) {
                total += b.probability;
                if (b.state) {
                    CHECK(b.state->matrix().trace().real() ==
                          doctest::Approx(1.0).epsilon(1e-12));
                    b.state->validate_psd();
                }
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("branches match the explicit projector oracle") {
    std::mt19937 gen(23);
    std::uniform_real_distribution<double> ut(0.0, kPi), up(0.0, 2.0 * kPi);
    const int n = 3;
    const DensityMatrix rho{random_state(gen, n)};
    MeasurementSetting setting;
    setting.measured_set = {0, 2};
    const AngleBasis b0{ut(gen), up(gen)}, b1{ut(gen), up(gen)};
    setting.bases = {BasisChoice{b0}, BasisChoice{b1}};

    const auto branches = measurement_branches(rho, setting);
    for (uint32_t k = 0; k < 4; ++k) {
        // embed both projectors, apply, renormalize, trace out measured qubits
        const ComplexMatrix pk = embed_local(projector(b0, (k >> 1) & 1), 0, n) *
                                 embed_local(projector(b1, k & 1), 2, n);
        const ComplexMatrix post = pk * rho.matrix() * pk.adjoint();
        const double prob = post.trace().real();
        CHECK(branches[k].probability == doctest::Approx(prob).epsilon(1e-12));
        ComplexMatrix scaled = post;
        scaled *= 1.0 / prob;
        const DensityMatrix want = partial_trace(DensityMatrix(n, scaled), {0, 2});
        REQUIRE(branches[k].state.has_value());
        CHECK(max_diff(branches[k].state->matrix(), want.matrix()) < 1e-12);
    }
}

TEST_CASE("outcome bit order follows the measured-set listing") {
    // |101>: measuring qubits {0, 2} in Z must give outcome 0b11 surely
    PureState psi(3, [] {
        std::vector<cplx> a(8, 0.0);
        a[0b101] = 1.0;
        return a;
    }());
    MeasurementSetting setting;
    setting.measured_set = {0, 2};
    setting.bases = {BasisChoice{PauliAxis::Z}, BasisChoice{PauliAxis::Z}};
    const auto branches = measurement_branches(DensityMatrix{psi}, setting);
    CHECK(branches[0b11].probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(branches[0b00].probability == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("GHZ measurement branches") {
    const DensityMatrix rho{ghz3()};
    MeasurementSetting setting;
    setting.measured_set = {2};

    SUBCASE("x basis leaves Bell pairs") {
        setting.bases = {BasisChoice{PauliAxis::X}};
        for (const auto& b : measurement_branches(rho, setting)) {
            CHECK(b.probability == doctest::Approx(0.5).epsilon(1e-13));
            REQUIRE(b.state.has_value());
            CHECK(negativity(*b.state) == doctest::Approx(0.5).epsilon(1e-12));
        }
    }

    SUBCASE("z basis leaves products") {
        setting.bases = {BasisChoice{PauliAxis::Z}};
        for (const auto& b : measurement_branches(rho, setting)) {
            REQUIRE(b.state.has_value());
            CHECK(negativity(*b.state) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero-probability branches are flagged null") {
    // measuring |000> in the Z basis: outcome 1 on the measured qubit never occurs
    PureState psi(3, [] {
        std::vector<cplx> a(8, 0.0);
        a[0] = 1.0;
        return a;
    }());
    MeasurementSetting setting;
    setting.measured_set = {2};
    setting.bases = {BasisChoice{PauliAxis::Z}};
    const auto branches = measurement_branches(DensityMatrix{psi}, setting);
    CHECK(branches[0].probability == doctest::Approx(1.0));
    CHECK(branches[0].state.has_value());
    CHECK(branches[1].probability == 0.0);
    CHECK_FALSE(branches[1].state.has_value());
}

TEST_CASE("setting validation") {
    std::mt19937 gen(24);
    const DensityMatrix rho{random_state(gen, 3)};
    MeasurementSetting bad;
    bad.measured_set = {0, 1, 2};
    bad.bases = {BasisChoice{PauliAxis::X}, BasisChoice{PauliAxis::X}, BasisChoice{PauliAxis::X}};
    CHECK_THROWS_AS(measurement_branches(rho, bad), std::invalid_argument);
    bad.measured_set = {2};
    CHECK_THROWS_AS(measurement_branches(rho, bad), std::invalid_argument);
    bad.bases = {BasisChoice{PauliAxis::X}};
    bad.measured_set = {7};
    CHECK_THROWS_AS(measurement_branches(rho, bad), std::domain_error);
}
