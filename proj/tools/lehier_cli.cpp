#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lehier/experiment.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

lehier::EnsembleKind parse_ensemble(const std::string& s) {
    if (s == "ghz3") return lehier::EnsembleKind::GHZClass3;
    if (s == "w3") return lehier::EnsembleKind::WClass3;
    if (s == "generic4") return lehier::EnsembleKind::Generic4;
    throw CLI::ValidationError("--ensemble", "expected ghz3, w3, or generic4");
}

void add_common(CLI::App* cmd, lehier::CommonOpts& common, std::string& method,
                std::vector<int>& pair) {
    cmd->add_option("--seed", common.seed, "master RNG seed");
    cmd->add_option("--workers", common.workers, "worker thread count")->check(CLI::PositiveNumber);
    cmd->add_option("--out", common.out, "output CSV path (default: stdout)");
    cmd->add_option("--slack", common.slack, "comparison slack (default: per-method)");
    cmd->add_option("--method", method, "le or rle")->check(CLI::IsMember({"le", "rle"}));
    cmd->add_option("--pair", pair, "retained qubit pair")->expected(2);
    auto opt = [&common, cmd](const char* flag, auto& field, const char* help) {
        cmd->add_option(flag, field, help)->each([&common](const std::string&) {
            common.opts_overridden = true;
        });
    };
    opt("--opt.grid-theta", common.opts.grid_theta, "coarse grid steps in theta");
    opt("--opt.grid-phi", common.opts.grid_phi, "coarse grid steps in phi");
    opt("--opt.starts", common.opts.starts, "refinement starts kept from the grid");
    opt("--opt.max-evals", common.opts.max_evals, "objective evaluations per refinement");
    opt("--opt.tol", common.opts.tol, "simplex diameter convergence tolerance");
}

void finish_common(lehier::CommonOpts& common, const std::string& method,
                   const std::vector<int>& pair) {
    common.method = method == "rle" ? lehier::Method::RLE : lehier::Method::LE;
    if (!pair.empty()) common.pair = {pair[0], pair[1]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localizable-entanglement hierarchy engine"};
    app.require_subcommand(1);

    lehier::CommonOpts common;
    std::string method = "le";
    std::vector<int> pair;

    // scan
    auto* scan = app.add_subcommand("scan", "Monte Carlo hierarchy scan over an ensemble");
    std::string ensemble = "ghz3";
    std::string noise = "pf";
    std::vector<double> p_list{0.1};
    std::uint64_t samples = 0;
    scan->add_option("--ensemble", ensemble, "ghz3, w3, or generic4")
        ->check(CLI::IsMember({"ghz3", "w3", "generic4"}));
    scan->add_option("--noise", noise, "bf, pf, dp, or ad")
        ->check(CLI::IsMember({"bf", "pf", "dp", "ad"}));
    scan->add_option("--p", p_list, "noise strength(s)");
    scan->add_option("--samples", samples, "sample count (default 5000 / 1000 for 4 qubits)");
    add_common(scan, common, method, pair);

    // dynamics
    auto* dyn = app.add_subcommand("dynamics", "gGHZ localized entanglement versus p");
    double alpha = kPi / 3.0, beta = 0.0;
    std::vector<std::string> dyn_noise{"bf", "pf", "dp", "ad"};
    std::vector<double> dyn_ps;
    int dyn_grid = 50;
    dyn->add_option("--alpha", alpha, "gGHZ alpha");
    dyn->add_option("--beta", beta, "gGHZ beta");
    dyn->add_option("--noise", dyn_noise, "channel kinds");
    dyn->add_option("--p", dyn_ps, "explicit p grid (default: uniform)");
    dyn->add_option("--grid", dyn_grid, "uniform p-grid steps when --p is absent");
    add_common(dyn, common, method, pair);

    // error-surface
    auto* surf = app.add_subcommand("error-surface", "LE - RLE over a gGHZ (alpha, p) grid");
    std::string surf_noise = "pf";
    double surf_beta = 0.0;
    int grid_alpha = 24, grid_p = 20;
    surf->add_option("--noise", surf_noise, "bf, pf, dp, or ad")
        ->check(CLI::IsMember({"bf", "pf", "dp", "ad"}));
    surf->add_option("--beta", surf_beta, "gGHZ beta");
    surf->add_option("--grid-alpha", grid_alpha, "alpha grid steps");
    surf->add_option("--grid-p", grid_p, "p grid steps");
    add_common(surf, common, method, pair);

    // delta-b
    auto* db = app.add_subcommand("delta-b", "Delta_B over a gW (alpha, beta) grid");
    std::string db_noise = "bf";
    double db_p = 0.1;
    int db_grid_alpha = 20, db_grid_beta = 20;
    db->add_option("--noise", db_noise, "bf, pf, dp, or ad")
        ->check(CLI::IsMember({"bf", "pf", "dp", "ad"}));
    db->add_option("--p", db_p, "noise strength");
    db->add_option("--grid-alpha", db_grid_alpha, "alpha grid steps");
    db->add_option("--grid-beta", db_grid_beta, "beta grid steps");
    add_common(db, common, method, pair);

    // check-closed-forms
    auto* check = app.add_subcommand("check-closed-forms",
                                     "analytic formulas vs numerical enumeration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        finish_common(common, method, pair);
        if (scan->parsed()) {
            const lehier::EnsembleKind ens = parse_ensemble(ensemble);
            if (samples == 0) samples = ens == lehier::EnsembleKind::Generic4 ? 1000 : 5000;
            const auto kind = lehier::channel_kind_from_string(noise);
            for (double p : p_list) {
                lehier::CommonOpts run = common;
                if (p_list.size() > 1 && !common.out.empty()) {
                    std::ostringstream tag;
                    tag << common.out << ".p" << p;
                    run.out = tag.str();
                }
                const lehier::ScanSummary s = lehier::cmd_scan(ens, kind, p, samples, run);
                std::printf("ensemble=%s noise=%s p=%g samples=%llu wall=%.1fs\n",
                            ensemble.c_str(), noise.c_str(), p,
                            static_cast<unsigned long long>(s.samples), s.wall_seconds);
                for (const auto& row : s.rows) {
                    std::printf("  %-4s %6.2f%%  [%6.2f, %6.2f]  (%llu/%llu)\n", row.label.c_str(),
                                row.percentage, row.wilson_lo, row.wilson_hi,
                                static_cast<unsigned long long>(row.satisfied),
                                static_cast<unsigned long long>(s.samples));
                }
            }
        } else if (dyn->parsed()) {
            if (dyn_ps.empty()) {
                for (int i = 0; i <= dyn_grid; ++i) dyn_ps.push_back(static_cast<double>(i) / dyn_grid);
            }
            std::vector<lehier::ChannelKind> kinds;
            for (const auto& s : dyn_noise) kinds.push_back(lehier::channel_kind_from_string(s));
            lehier::cmd_dynamics(alpha, beta, kinds, dyn_ps, common);
        } else if (surf->parsed()) {
            lehier::cmd_error_surface(lehier::channel_kind_from_string(surf_noise), surf_beta,
                                      grid_alpha, grid_p, common);
        } else if (db->parsed()) {
            lehier::cmd_delta_b_surface(lehier::channel_kind_from_string(db_noise), db_p,
                                        db_grid_alpha, db_grid_beta, common);
        } else if (check->parsed()) {
            const double worst = lehier::cmd_closed_form_check(std::cout);
            if (worst >= 1e-9) {
                std::cerr << "closed-form check FAILED (max deviation " << worst << ")\n";
                return 3;
            }
            std::cout << "closed-form check passed\n";
        }
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
