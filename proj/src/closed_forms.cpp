#include "lehier/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace lehier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRootTol = 1e-10;

void check(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

ClosedFormResult clamp(double raw, std::string domain) {
    ClosedFormResult r;
    r.raw = raw;
    r.clamped = raw < 0.0;
    r.value = std::max(0.0, raw);
    r.valid_domain = std::move(domain);
    return r;
}

/// Smallest root of a (positive -> nonpositive) function on (0, 1];
/// 1 if no sign change occurs.
double first_root(const std::function<double(double)>& f) {
    constexpr int kScan = 1000;
    double lo = 0.0, hi = 1.0;
    bool bracketed = false;
    for (int i = 1; i <= kScan; ++i) {
        const double p = static_cast<double>(i) / kScan;
        if (f(p) <= 0.0) {
            lo = static_cast<double>(i - 1) / kScan;
            hi = p;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) return 1.0;
    while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int label_cardinality(GGHZConfigLabel label) {
    switch (label) {
        case GGHZConfigLabel::Rho123: return 3;
        case GGHZConfigLabel::Rho12:
        case GGHZConfigLabel::Rho13:
        case GGHZConfigLabel::Rho23: return 2;
        case GGHZConfigLabel::Rho1:
        case GGHZConfigLabel::Rho2:
        case GGHZConfigLabel::Rho3: return 1;
        case GGHZConfigLabel::Noiseless: return 0;
    }
    throw std::logic_error("unknown label");
}

int label_mask(GGHZConfigLabel label) {
    switch (label) {
        case GGHZConfigLabel::Rho123: return 0b111;
        case GGHZConfigLabel::Rho12: return 0b110;
        case GGHZConfigLabel::Rho13: return 0b101;
        case GGHZConfigLabel::Rho23: return 0b011;
        case GGHZConfigLabel::Rho1: return 0b100;
        case GGHZConfigLabel::Rho2: return 0b010;
        case GGHZConfigLabel::Rho3: return 0b001;
        case GGHZConfigLabel::Noiseless: return 0b000;
    }
    throw std::logic_error("unknown label");
}

const char* label_name(GGHZConfigLabel label) {
    switch (label) {
        case GGHZConfigLabel::Rho123: return "rho123";
        case GGHZConfigLabel::Rho12: return "rho12";
        case GGHZConfigLabel::Rho13: return "rho13";
        case GGHZConfigLabel::Rho23: return "rho23";
        case GGHZConfigLabel::Rho1: return "rho1";
        case GGHZConfigLabel::Rho2: return "rho2";
        case GGHZConfigLabel::Rho3: return "rho3";
        case GGHZConfigLabel::Noiseless: return "rho";
    }
    throw std::logic_error("unknown label");
}

ClosedFormResult pf_rle(GGHZConfigLabel label, double alpha, double p) {
    check(alpha >= 0.0 && alpha <= kPi / 2.0, "pf_rle: alpha outside [0, pi/2]");
    check(p >= 0.0 && p <= 1.0, "pf_rle: p outside [0, 1]");
    const int m = label_cardinality(label);
    return clamp(0.5 * std::pow(1.0 - p, m) * std::sin(alpha), "alpha in [0, pi/2], p in [0, 1]");
}

ClosedFormResult bf_rle(GGHZConfigLabel label, double alpha, double beta, double p) {
    check(alpha >= 0.0 && alpha <= kPi / 2.0, "bf_rle: alpha outside [0, pi/2]");
    check(beta >= 0.0 && beta <= 2.0 * kPi, "bf_rle: beta outside [0, 2pi]");
    check(p >= 0.0 && p <= 1.0, "bf_rle: p outside [0, 1]");
    const std::string dom = "alpha in [0, pi/2], beta in [0, 2pi], p in [0, 1]";
    const double sa = std::sin(alpha);
    const double sb2 = std::sin(beta) * std::sin(beta);
    // one equatorial-measurement branch of the two-noisy-qubit expression;
    // s2 is sin^2(beta) for the x basis and cos^2(beta) for the y basis
    const auto branch = [&](double s2) {
        const double a2 = p * p + (2.0 - p) * (2.0 - p);
        const double f = a2 * a2 - 4.0 * p * p * (2.0 - p) * (2.0 - p) * s2;
        return (sa * std::sqrt(f) - 2.0 * p * (2.0 - p)) / 8.0;
    };
    switch (label) {
        case GGHZConfigLabel::Rho123:
            // with noise on the measured qubit as well, only the x basis
            // keeps the noiseless branch structure
            return clamp(branch(sb2), dom);
        case GGHZConfigLabel::Rho12:
            // the optimal equatorial basis flips from x to y once
            // sin^2(beta) exceeds 1/2
            return clamp(std::max(branch(sb2), branch(1.0 - sb2)), dom);
        case GGHZConfigLabel::Rho13:
        case GGHZConfigLabel::Rho23:
        case GGHZConfigLabel::Rho1:
        case GGHZConfigLabel::Rho2:
            return clamp((std::sqrt(p * p + 4.0 * (1.0 - p) * sa * sa) - p) / 4.0, dom);
        case GGHZConfigLabel::Rho3:
        case GGHZConfigLabel::Noiseless:
            return clamp(0.5 * sa, dom);
    }
    throw std::logic_error("unknown label");
}

double bf_critical(double alpha, double beta) {
    check(alpha > 0.0 && alpha <= kPi / 2.0, "bf_critical: alpha outside (0, pi/2]");
    check(beta >= 0.0 && beta <= 2.0 * kPi, "bf_critical: beta outside [0, 2pi]");
    return first_root([&](double p) { return bf_rle(GGHZConfigLabel::Rho12, alpha, beta, p).raw; });
}

ClosedFormResult dp_rle(GGHZConfigLabel label, double alpha, double p) {
    check(alpha >= 0.0 && alpha <= kPi / 2.0, "dp_rle: alpha outside [0, pi/2]");
    check(p >= 0.0 && p <= 1.0, "dp_rle: p outside [0, 1]");
    const std::string dom = "alpha in [0, pi/2], p in [0, 1]";
    const double sa = std::sin(alpha);
    const double q = 1.0 - p;
    switch (label) {
        case GGHZConfigLabel::Rho123:
            return clamp((2.0 * q * q * q * sa - (2.0 - p) * p) / 4.0, dom);
        case GGHZConfigLabel::Rho12:
            return clamp((2.0 * q * q * sa - (2.0 - p) * p) / 4.0, dom);
        case GGHZConfigLabel::Rho13:
        case GGHZConfigLabel::Rho23: {
            const double f1 =
                2.0 * sa * sa * (8.0 + p * (-32.0 + p * (46.0 + p * (-32.0 + 8.0 * p))));
            return clamp((std::sqrt(std::max(0.0, 4.0 * p * p + f1)) - 2.0 * p) / 8.0, dom);
        }
        case GGHZConfigLabel::Rho1:
        case GGHZConfigLabel::Rho2: {
            const double f2 = 4.0 * sa * sa * (p - 2.0) * (3.0 * p - 2.0);
            return clamp((std::sqrt(std::max(0.0, 4.0 * p * p + f2)) - 2.0 * p) / 8.0, dom);
        }
        case GGHZConfigLabel::Rho3:
            return clamp(0.5 * q * sa, dom);
        case GGHZConfigLabel::Noiseless:
            return clamp(0.5 * sa, dom);
    }
    throw std::logic_error("unknown label");
}

double dp_critical(GGHZConfigLabel label, double alpha) {
    check(alpha > 0.0 && alpha <= kPi / 2.0, "dp_critical: alpha outside (0, pi/2]");
    return first_root([&](double p) { return dp_rle(label, alpha, p).raw; });
}

ClosedFormResult ad_rle(GGHZConfigLabel label, double alpha, double p) {
    check(alpha >= 0.0 && alpha <= kPi, "ad_rle: alpha outside [0, pi]");
    check(p >= 0.0 && p <= 1.0, "ad_rle: p outside [0, 1]");
    const std::string dom = "alpha in [0, pi], p in [0, 1]";
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double sh2 = std::sin(alpha / 2.0) * std::sin(alpha / 2.0);
    const double q = 1.0 - p;
    switch (label) {
        case GGHZConfigLabel::Rho123:
            return clamp(0.5 * (std::pow(q, 1.5) * sa - p * q * (1.0 - ca)), dom);
        case GGHZConfigLabel::Rho12:
            return clamp(0.5 * q * (sa + p * ca - p), dom);
        case GGHZConfigLabel::Rho13:
        case GGHZConfigLabel::Rho23: {
            const double f1 = 4.0 * q * q * sa * sa;
            return clamp((std::sqrt(f1 + 4.0 * p * p * sh2 * sh2) - 2.0 * p * sh2) / 4.0, dom);
        }
        case GGHZConfigLabel::Rho1:
        case GGHZConfigLabel::Rho2: {
            const double f2 = 4.0 * q * sa * sa;
            return clamp((std::sqrt(f2 + 4.0 * p * p * sh2 * sh2) - 2.0 * p * sh2) / 4.0, dom);
        }
        case GGHZConfigLabel::Rho3:
            return clamp(0.5 * std::sqrt(q) * sa, dom);
        case GGHZConfigLabel::Noiseless:
            return clamp(0.5 * sa, dom);
    }
    throw std::logic_error("unknown label");
}

double ad_crossing(double alpha) {
    check(alpha > 0.0 && alpha < kPi, "ad_crossing: alpha outside (0, pi)");
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double arg = 4.0 * sa * (sa + ca - 1.0);
    if (arg < 0.0) return 1.0;  // curves never cross below p = 1
    const double f = (2.0 * sa - std::sqrt(arg)) / (2.0 * (1.0 - ca));
    return std::min(1.0, f);
}

}  // namespace lehier
