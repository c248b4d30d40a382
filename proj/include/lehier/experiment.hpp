#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lehier/ensembles.hpp"
#include "lehier/hierarchy.hpp"

namespace lehier {

/// Knobs shared by every subcommand. slack < 0 selects the per-method
/// default (1e-9 for RLE, 1e-6 for LE).
struct CommonOpts {
    std::uint64_t seed = 12345;
    int workers = 1;
    std::string out;  // empty = stdout only
    double slack = -1.0;
    Method method = Method::LE;
    std::pair<int, int> pair{0, 1};
    OptimizerOptions opts;
    bool opts_overridden = false;  // false = use per-size defaults
};

struct HierarchyCount {
    std::string label;
    std::uint64_t satisfied = 0;
    double percentage = 0.0;
    double wilson_lo = 0.0;  // 95% binomial interval, in percent
    double wilson_hi = 0.0;
};

struct ScanSummary {
    std::vector<HierarchyCount> rows;
    std::uint64_t samples = 0;
    double wall_seconds = 0.0;
};

/// 95% Wilson score interval for k successes out of n, in percent.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

/// Monte Carlo hierarchy scan over an ensemble at fixed noise kind and
/// strength. Emits one CSV row per sample (verdict booleans and margins);
/// restarting with the same config and output path resumes from the
/// checkpoint next to the output file.
ScanSummary cmd_scan(EnsembleKind ensemble, ChannelKind kind, double p, std::uint64_t samples,
                     const CommonOpts& common);

/// Localized entanglement of gGHZ(alpha, beta) versus p, one column per
/// noise placement, for each requested channel kind.
void cmd_dynamics(double alpha, double beta, const std::vector<ChannelKind>& kinds,
                  const std::vector<double>& ps, const CommonOpts& common);

/// LE - RLE over an (alpha, p) grid of gGHZ states, per noise placement.
void cmd_error_surface(ChannelKind kind, double beta, int grid_alpha, int grid_p,
                       const CommonOpts& common);

/// Delta_B over an (alpha, beta) grid of gW states at fixed kind and p.
void cmd_delta_b_surface(ChannelKind kind, double p, int grid_alpha, int grid_beta,
                         const CommonOpts& common);

/// Closed form vs numerical RLE over the full verification grid; writes a
/// per-kind/label report and returns the overall maximum deviation.
double cmd_closed_form_check(std::ostream& report);

}  // namespace lehier
