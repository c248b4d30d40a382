#include <cmath>
#include <random>

#include "doctest.h"
#include "lehier/noise.hpp"

using namespace lehier;

namespace {

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

const ChannelKind kAllKinds[] = {ChannelKind::BitFlip, ChannelKind::PhaseFlip,
                                 ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping};

}  // namespace

TEST_CASE("channel kind names round-trip") {
    for (ChannelKind k : kAllKinds) CHECK(channel_kind_from_string(to_string(k)) == k);
    CHECK(to_string(ChannelKind::BitFlip) == "bf");
    CHECK(to_string(ChannelKind::PhaseFlip) == "pf");
    CHECK(to_string(ChannelKind::Depolarizing) == "dp");
    CHECK(to_string(ChannelKind::AmplitudeDamping) == "ad");
    CHECK_THROWS_AS(channel_kind_from_string("bpf"), std::invalid_argument);
}

TEST_CASE("noise config validation") {
    CHECK_THROWS_AS(NoiseConfig(ChannelKind::BitFlip, -0.1, {0}), std::domain_error);
    CHECK_THROWS_AS(NoiseConfig(ChannelKind::BitFlip, 1.1, {0}), std::domain_error);
    CHECK_THROWS_AS(NoiseConfig(ChannelKind::BitFlip, 0.5, {1, 1}), std::domain_error);
    const NoiseConfig cfg(ChannelKind::BitFlip, 0.5, {2, 0});
    CHECK(cfg.noisy_set == std::vector<int>{0, 2});
}

TEST_CASE("kraus completeness") {
    for (ChannelKind kind : kAllKinds) {
        for (double p : {0.0, 0.1, 0.35, 0.5, 0.75, 1.0}) {
            const auto ks = kraus_operators(kind, p);
            CHECK(ks.size() == (kind == ChannelKind::Depolarizing ? 4u : 2u));
            ComplexMatrix sum(2);
            for (const auto& k : ks) sum += k.adjoint() * k;
            CHECK(max_diff(sum, identity2()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(kraus_operators(ChannelKind::BitFlip, 1.5), std::domain_error);
}

TEST_CASE("known channel endpoints") {
    // bit flip at p=1 is an even mixture of identity and sigma_x
    DensityMatrix zero{PureState(1, {1.0, 0.0})};
    const DensityMatrix bf = apply_local_noise(zero, NoiseConfig(ChannelKind::BitFlip, 1.0, {0}));
    CHECK(bf.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bf.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));

    // amplitude damping at p=1 decays everything to |0>
    DensityMatrix one{PureState(1, {0.0, 1.0})};
    const DensityMatrix ad =
        apply_local_noise(one, NoiseConfig(ChannelKind::AmplitudeDamping, 1.0, {0}));
    CHECK(ad.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));

    // phase flip damps coherences by (1-p) and keeps populations
    DensityMatrix plus{PureState(1, {std::sqrt(0.5), std::sqrt(0.5)})};
    const DensityMatrix pf = apply_local_noise(plus, NoiseConfig(ChannelKind::PhaseFlip, 0.4, {0}));
    CHECK(pf.matrix()(0, 1).real() == doctest::Approx(0.5 * 0.6).epsilon(1e-13));
    CHECK(pf.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("sequential application equals the full multi-index operator sum") {
    std::mt19937 gen(11);
    for (ChannelKind kind : kAllKinds) {
        for (int trial = 0; trial < 3; ++trial) {
            const DensityMatrix rho{random_state(gen, 3)};
            const std::vector<int> noisy = trial == 0   ? std::vector<int>{1}
                                           : trial == 1 ? std::vector<int>{0, 2}
                                                        : std::vector<int>{0, 1, 2};
            const double p = 0.15 + 0.2 * trial;
            const DensityMatrix fast = apply_local_noise(rho, NoiseConfig(kind, p, noisy));

            // oracle: sum over all d^m Kraus strings built as full-register
            // operators
            const auto local = kraus_operators(kind, p);
            const int d = static_cast<int>(local.size());
            const int m = static_cast<int>(noisy.size());
            int strings = 1;
            for (int i = 0; i < m; ++i) strings *= d;
            ComplexMatrix acc(rho.dim());
            for (int s = 0; s < strings; ++s) {
                ComplexMatrix op = ComplexMatrix::identity(rho.dim());
                int rem = s;
                for (int i = 0; i < m; ++i) {
                    op = embed_local(local[rem % d], noisy[i], 3) * op;
                    rem /= d;
                }
                acc += op * rho.matrix() * op.adjoint();
            }
            CHECK(max_diff(fast.matrix(), acc) < 1e-10);
        }
    }
}

TEST_CASE("noise preserves density-matrix validity") {
    std::mt19937 gen(12);
    const DensityMatrix rho{random_state(gen, 3)};
    for (ChannelKind kind : kAllKinds) {
        const DensityMatrix out = apply_local_noise(rho, NoiseConfig(kind, 0.3, {0, 1, 2}));
        CHECK(out.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        out.validate_psd();
    }
    CHECK_THROWS_AS(apply_local_noise(rho, NoiseConfig(ChannelKind::BitFlip, 0.3, {4})),
                    std::domain_error);
}

TEST_CASE("noise-subset enumeration") {
    for (int n : {3, 4}) {
        const auto configs = enumerate_noise_configs(n, {0, 1}, ChannelKind::PhaseFlip, 0.1);
        REQUIRE(static_cast<int>(configs.size()) == 1 << n);
        for (const auto& tc : configs) {
            CHECK(tc.cardinality == static_cast<int>(tc.config.noisy_set.size()));
            CHECK(tc.subset_mask == subset_mask(tc.config.noisy_set, n));
            const bool a = tc.subset_mask & (1u << (n - 1));
            const bool b = tc.subset_mask & (1u << (n - 2));
            const Scenario want = (a && b)   ? Scenario::BothOfPair
                                  : (a || b) ? Scenario::OneOfPair
                                             : Scenario::None;
            CHECK(tc.scenario == want);
        }
        // all subsets distinct
        for (size_t i = 0; i < configs.size(); ++i) CHECK(configs[i].subset_mask == i);
    }
    CHECK_THROWS_AS(enumerate_noise_configs(5, {0, 1}, ChannelKind::PhaseFlip, 0.1),
                    std::domain_error);
}
