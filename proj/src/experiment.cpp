#include "lehier/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lehier/closed_forms.hpp"

namespace lehier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kArtifactVersion = "0.1.0";

using nlohmann::json;

double effective_slack(const CommonOpts& c) {
    if (c.slack >= 0.0) return c.slack;
    return c.method == Method::RLE ? kSlackRLE : kSlackLE;
}

OptimizerOptions effective_opts(const CommonOpts& c, int num_qubits) {
    return c.opts_overridden ? c.opts : OptimizerOptions::defaults_for(num_qubits);
}

std::string ensemble_name(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::GHZClass3: return "ghz3";
        case EnsembleKind::WClass3: return "w3";
        case EnsembleKind::Generic4: return "generic4";
    }
    throw std::logic_error("unknown ensemble");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Config echo + content hash, emitted as a '#'-prefixed JSON line.
std::string header_line(const json& cfg) {
    json j = cfg;
    j["version"] = kArtifactVersion;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.dump())));
    j["config_hash"] = hash;
    return "# " + j.dump();
}

json common_json(const CommonOpts& c, int num_qubits) {
    const OptimizerOptions o = effective_opts(c, num_qubits);
    return json{{"seed", c.seed},
                {"method", c.method == Method::RLE ? "rle" : "le"},
                {"pair", {c.pair.first, c.pair.second}},
                {"slack", effective_slack(c)},
                {"opt", {{"grid_theta", o.grid_theta},
                         {"grid_phi", o.grid_phi},
                         {"starts", o.starts},
                         {"max_evals", o.max_evals},
                         {"tol", o.tol}}}};
}

class OutputFile {
public:
    explicit OutputFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    template <typename T>
    OutputFile& operator<<(const T& v) {
        if (file_.is_open())
            file_ << v;
        else
            std::cout << v;
        return *this;
    }

private:
    std::ofstream file_;
};

/// Runs fn(i) for i in [0, n) that are not already done, across `workers`
/// threads. Exceptions propagate from the first failing index.
void parallel_for(std::uint64_t n, int workers, const std::vector<bool>& done,
                  const std::function<void(std::uint64_t)>& fn) {
    if (workers < 1) workers = 1;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::string> errors(workers);
    auto body = [&](int w) {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            if (i < done.size() && done[i]) continue;
            try {
                fn(i);
            } catch (const std::exception& e) {
                errors[w] = e.what();
                failed.store(true);
                return;
            }
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) {
        for (const auto& e : errors)
            if (!e.empty()) throw std::runtime_error(e);
    }
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
    if (n == 0) return {0.0, 100.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (ph + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {100.0 * std::max(0.0, center - half), 100.0 * std::min(1.0, center + half)};
}

ScanSummary cmd_scan(EnsembleKind ensemble, ChannelKind kind, double p, std::uint64_t samples,
                     const CommonOpts& common) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = ensemble_qubits(ensemble);
    const double slack = effective_slack(common);
    const OptimizerOptions opts = effective_opts(common, n);

    json cfg = common_json(common, n);
    cfg["command"] = "scan";
    cfg["ensemble"] = ensemble_name(ensemble);
    cfg["noise"] = to_string(kind);
    cfg["p"] = p;
    cfg["samples"] = samples;
    const std::string header = header_line(cfg);

    // verdict labels are fixed per register size
    const std::vector<std::string> labels =
        n == 3 ? std::vector<std::string>{"Env", "A", "B", "C"}
               : std::vector<std::string>{"H1", "H2", "H3", "H4", "H5"};

    // checkpoint: one completed CSV row per line, keyed by the config hash
    std::vector<std::string> rows(samples);
    std::vector<bool> done(samples, false);
    const std::string ckpt_path = common.out.empty() ? "" : common.out + ".ckpt";
    if (!ckpt_path.empty() && std::filesystem::exists(ckpt_path)) {
        std::ifstream ck(ckpt_path);
        std::string line;
        if (std::getline(ck, line) && line == header) {
            while (std::getline(ck, line)) {
                const auto comma = line.find(',');
                if (comma == std::string::npos) continue;
                const std::uint64_t idx = std::stoull(line.substr(0, comma));
                if (idx < samples) {
                    rows[idx] = line;
                    done[idx] = true;
                }
            }
        }
    }
    std::ofstream ckpt;
    std::mutex ckpt_mutex;
    if (!ckpt_path.empty()) {
        const bool fresh = !std::count(done.begin(), done.end(), true);
        ckpt.open(ckpt_path, fresh ? std::ios::trunc : std::ios::app);
        if (fresh) ckpt << header << "\n";
    }

    parallel_for(samples, common.workers, done, [&](std::uint64_t i) {
        const RngStream stream{common.seed, i};
        const PureState psi = sample(ensemble, stream, i);
        const DensityMatrix rho(psi);
        const LEProfile prof = build_profile(rho, common.pair, kind, p, common.method, opts);
        const HierarchyVerdict v = n == 3 ? verdict3(prof, slack) : verdict4(prof, slack);
        std::ostringstream row;
        row << i;
        for (size_t j = 0; j < v.labels.size(); ++j) row << ',' << (v.holds[j] ? 1 : 0);
        for (size_t j = 0; j < v.labels.size(); ++j) row << ',' << format_double(v.margins[j]);
        if (n == 3) row << ',' << format_double(delta_b(prof));
        rows[i] = row.str();
        if (ckpt.is_open()) {
            const std::lock_guard<std::mutex> lock(ckpt_mutex);
            ckpt << rows[i] << "\n" << std::flush;
        }
    });

    ScanSummary summary;
    summary.samples = samples;
    std::vector<std::uint64_t> counts(labels.size(), 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::istringstream ss(rows[i]);
        std::string field;
        std::getline(ss, field, ',');  // index
        for (size_t j = 0; j < labels.size(); ++j) {
            std::getline(ss, field, ',');
            counts[j] += field == "1" ? 1 : 0;
        }
    }
    for (size_t j = 0; j < labels.size(); ++j) {
        HierarchyCount hc;
        hc.label = labels[j];
        hc.satisfied = counts[j];
        hc.percentage = samples ? 100.0 * static_cast<double>(counts[j]) / samples : 0.0;
        std::tie(hc.wilson_lo, hc.wilson_hi) = wilson_interval(counts[j], samples);
        summary.rows.push_back(hc);
    }
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    OutputFile out(common.out);
    out << header << "\n";
    out << "sample";
    for (const auto& l : labels) out << ",holds_" << l;
    for (const auto& l : labels) out << ",margin_" << l;
    if (n == 3) out << ",delta_b";
    out << "\n";
    for (const auto& row : rows) out << row << "\n";
    if (!ckpt_path.empty()) {
        ckpt.close();
        std::filesystem::remove(ckpt_path);
    }
    return summary;
}

void cmd_dynamics(double alpha, double beta, const std::vector<ChannelKind>& kinds,
                  const std::vector<double>& ps, const CommonOpts& common) {
    json cfg = common_json(common, 3);
    cfg["command"] = "dynamics";
    cfg["alpha"] = alpha;
    cfg["beta"] = beta;
    std::vector<std::string> kind_names;
    for (auto k : kinds) kind_names.push_back(to_string(k));
    cfg["noise"] = kind_names;
    cfg["p_grid"] = ps;

    const DensityMatrix rho0{gghz(alpha, beta)};
    const OptimizerOptions opts = effective_opts(common, 3);
    const std::vector<GGHZConfigLabel> labels{
        GGHZConfigLabel::Rho123, GGHZConfigLabel::Rho12, GGHZConfigLabel::Rho13,
        GGHZConfigLabel::Rho23,  GGHZConfigLabel::Rho1,  GGHZConfigLabel::Rho2,
        GGHZConfigLabel::Rho3,   GGHZConfigLabel::Noiseless};

    OutputFile out(common.out);
    out << header_line(cfg) << "\n";
    out << "noise,p";
    for (auto l : labels) out << "," << label_name(l);
    out << "\n";
    for (ChannelKind kind : kinds) {
        for (double p : ps) {
            out << to_string(kind) << "," << format_double(p);
            for (GGHZConfigLabel l : labels) {
                std::vector<int> noisy;
                for (int q = 0; q < 3; ++q)
                    if (label_mask(l) & (1 << (2 - q))) noisy.push_back(q);
                const DensityMatrix rho = apply_local_noise(rho0, NoiseConfig(kind, p, noisy));
                const double val = common.method == Method::RLE
                                       ? rle(rho, common.pair).value
                                       : le(rho, common.pair, opts).value;
                out << "," << format_double(val);
            }
            out << "\n";
        }
    }
}

void cmd_error_surface(ChannelKind kind, double beta, int grid_alpha, int grid_p,
                       const CommonOpts& common) {
    json cfg = common_json(common, 3);
    cfg["command"] = "error-surface";
    cfg["noise"] = to_string(kind);
    cfg["beta"] = beta;
    cfg["grid_alpha"] = grid_alpha;
    cfg["grid_p"] = grid_p;

    const OptimizerOptions opts = effective_opts(common, 3);
    const std::vector<GGHZConfigLabel> labels{
        GGHZConfigLabel::Rho123, GGHZConfigLabel::Rho12, GGHZConfigLabel::Rho13,
        GGHZConfigLabel::Rho1,   GGHZConfigLabel::Rho3};

    OutputFile out(common.out);
    out << header_line(cfg) << "\n";
    out << "alpha,p";
    for (auto l : labels) out << ",eps_" << label_name(l);
    out << "\n";
    for (int ia = 0; ia <= grid_alpha; ++ia) {
        const double alpha = kPi / 2.0 * ia / grid_alpha;
        const DensityMatrix rho0{gghz(alpha, beta)};
        for (int ip = 0; ip <= grid_p; ++ip) {
            const double p = static_cast<double>(ip) / grid_p;
            out << format_double(alpha) << "," << format_double(p);
            for (GGHZConfigLabel l : labels) {
                std::vector<int> noisy;
                for (int q = 0; q < 3; ++q)
                    if (label_mask(l) & (1 << (2 - q))) noisy.push_back(q);
                const DensityMatrix rho = apply_local_noise(rho0, NoiseConfig(kind, p, noisy));
                const double eps = le(rho, common.pair, opts).value - rle(rho, common.pair).value;
                out << "," << format_double(eps);
            }
            out << "\n";
        }
    }
}

void cmd_delta_b_surface(ChannelKind kind, double p, int grid_alpha, int grid_beta,
                         const CommonOpts& common) {
    json cfg = common_json(common, 3);
    cfg["command"] = "delta-b";
    cfg["noise"] = to_string(kind);
    cfg["p"] = p;
    cfg["grid_alpha"] = grid_alpha;
    cfg["grid_beta"] = grid_beta;

    const OptimizerOptions opts = effective_opts(common, 3);
    OutputFile out(common.out);
    out << header_line(cfg) << "\n";
    out << "alpha,beta,delta_b\n";
    for (int ia = 0; ia <= grid_alpha; ++ia) {
        const double alpha = kPi / 2.0 * ia / grid_alpha;
        for (int ib = 0; ib <= grid_beta; ++ib) {
            const double beta = kPi / 2.0 * ib / grid_beta;
            const DensityMatrix rho{gw(alpha, beta, 0.0, 0.0)};
            const LEProfile prof =
                build_profile(rho, common.pair, kind, p, common.method, opts);
            out << format_double(alpha) << "," << format_double(beta) << ","
                << format_double(delta_b(prof)) << "\n";
        }
    }
}

double cmd_closed_form_check(std::ostream& report) {
    const std::vector<double> alphas{kPi / 12, kPi / 6, kPi / 4, kPi / 3, 5 * kPi / 12, kPi / 2};
    const std::vector<double> betas{0.0, kPi / 4, kPi / 2};
    std::vector<double> ps;
    for (int i = 0; i <= 10; ++i) ps.push_back(i / 10.0);
    const std::vector<GGHZConfigLabel> labels{
        GGHZConfigLabel::Rho123, GGHZConfigLabel::Rho12, GGHZConfigLabel::Rho13,
        GGHZConfigLabel::Rho23,  GGHZConfigLabel::Rho1,  GGHZConfigLabel::Rho2,
        GGHZConfigLabel::Rho3,   GGHZConfigLabel::Noiseless};

    double overall = 0.0;
    for (ChannelKind kind : {ChannelKind::PhaseFlip, ChannelKind::BitFlip,
                             ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping}) {
        std::vector<double> check_alphas = alphas;
        if (kind == ChannelKind::AmplitudeDamping) {
            for (double a : alphas)
                if (a < kPi / 2) check_alphas.push_back(kPi - a);
        }
        const std::vector<double> check_betas =
            kind == ChannelKind::BitFlip ? betas : std::vector<double>{0.0};
        for (GGHZConfigLabel label : labels) {
            double worst = 0.0;
            for (double alpha : check_alphas)
                for (double beta : check_betas)
                    for (double p : ps) {
                        ClosedFormResult cf;
                        switch (kind) {
                            case ChannelKind::PhaseFlip: cf = pf_rle(label, alpha, p); break;
                            case ChannelKind::BitFlip: cf = bf_rle(label, alpha, beta, p); break;
                            case ChannelKind::Depolarizing: cf = dp_rle(label, alpha, p); break;
                            case ChannelKind::AmplitudeDamping: cf = ad_rle(label, alpha, p); break;
                        }
                        std::vector<int> noisy;
                        for (int q = 0; q < 3; ++q)
                            if (label_mask(label) & (1 << (2 - q))) noisy.push_back(q);
                        const DensityMatrix rho = apply_local_noise(
                            DensityMatrix{gghz(alpha, beta)}, NoiseConfig(kind, p, noisy));
                        const double num = rle(rho, {0, 1}).value;
                        worst = std::max(worst, std::abs(num - cf.value));
                    }
            report << to_string(kind) << " " << label_name(label)
                   << " max|closed-form - rle| = " << format_double(worst) << "\n";
            overall = std::max(overall, worst);
        }
    }
    report << "overall max deviation = " << format_double(overall) << "\n";
    return overall;
}

}  // namespace lehier
