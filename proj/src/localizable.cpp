#include "lehier/localizable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lehier {

namespace {

constexpr double kPi = std::numbers::pi;

/// Objective for a fixed (state, retained pair): average localized
/// negativity as a function of the measurement angles on the complement.
/// Precomputes the index maps once; evaluation allocates nothing big.
class PairObjective {
public:
    PairObjective(const DensityMatrix& rho, std::pair<int, int> pair)
        : m_(&rho.matrix()), n_(rho.num_qubits()) {
        if (pair.first == pair.second) throw std::domain_error("retained pair must be two distinct qubits");
        for (int q : {pair.first, pair.second}) {
            if (q < 0 || q >= n_) throw std::domain_error("retained qubit out of range");
        }
        for (int q = 0; q < n_; ++q) {
            if (q != pair.first && q != pair.second) measured_.push_back(q);
        }
        nr_ = static_cast<int>(measured_.size());
        if (nr_ < 1 || nr_ > 2) throw std::domain_error("register size must be 3 or 4");

        const std::array<int, 2> retained{std::min(pair.first, pair.second),
                                          std::max(pair.first, pair.second)};
        // keep the caller's pair order for the retained index map
        const std::array<int, 2> ordered{pair.first, pair.second};
        (void)retained;
        for (int s = 0; s < 4; ++s) {
            int idx = 0;
            if (s & 2) idx |= 1 << (n_ - 1 - ordered[0]);
            if (s & 1) idx |= 1 << (n_ - 1 - ordered[1]);
            sidx_[s] = idx;
        }
        dr_ = 1 << nr_;
        for (int r = 0; r < dr_; ++r) {
            int idx = 0;
            for (int i = 0; i < nr_; ++i) {
                if (r & (1 << (nr_ - 1 - i))) idx |= 1 << (n_ - 1 - measured_[i]);
            }
            ridx_[r] = idx;
        }
    }

    const std::vector<int>& measured() const { return measured_; }
    int num_measured() const { return nr_; }

    /// angles: (theta, phi) per measured qubit, flattened.
    double operator()(const double* angles) const {
        std::array<std::array<cplx, 2>, 2> ket0, ket1;  // [qubit][row]
        for (int i = 0; i < nr_; ++i) {
            const AngleBasis b{angles[2 * i], angles[2 * i + 1]};
            ket0[i] = basis_ket(b, 0);
            ket1[i] = basis_ket(b, 1);
        }
        double total = 0.0;
        std::array<cplx, 4> w;
        std::array<cplx, 16> red;
        for (int k = 0; k < dr_; ++k) {
            for (int r = 0; r < dr_; ++r) {
                cplx amp = 1.0;
                for (int i = 0; i < nr_; ++i) {
                    const auto& ket = ((k >> (nr_ - 1 - i)) & 1) ? ket1[i] : ket0[i];
                    amp *= ket[(r >> (nr_ - 1 - i)) & 1];
                }
                w[r] = amp;
            }
            double pk = 0.0;
            for (int si = 0; si < 4; ++si) {
                for (int sj = si; sj < 4; ++sj) {
                    cplx acc = 0.0;
                    for (int ri = 0; ri < dr_; ++ri) {
                        const cplx wi = std::conj(w[ri]);
                        for (int rj = 0; rj < dr_; ++rj)
                            acc += wi * (*m_)(sidx_[si] | ridx_[ri], sidx_[sj] | ridx_[rj]) * w[rj];
                    }
                    red[si * 4 + sj] = acc;
                    red[sj * 4 + si] = std::conj(acc);
                }
                pk += red[si * 4 + si].real();
            }
            if (pk < kBranchProbFloor) continue;
            // negativity is 1-homogeneous, so the unnormalized branch state
            // already carries the p_k weight
            total += negativity_raw4(red.data());
        }
        return total;
    }

    double eval_vec(const std::vector<double>& angles) const { return (*this)(angles.data()); }

private:
    const ComplexMatrix* m_;
    int n_;
    int nr_ = 0;
    int dr_ = 0;
    std::vector<int> measured_;
    std::array<int, 4> sidx_{};
    std::array<int, 4> ridx_{};
};

std::vector<double> angles_of_setting(const MeasurementSetting& setting) {
    std::vector<double> out;
    for (const auto& b : setting.bases) {
        const AngleBasis a = std::holds_alternative<PauliAxis>(b) ? angles_of(std::get<PauliAxis>(b))
                                                                  : std::get<AngleBasis>(b);
        out.push_back(a.theta);
        out.push_back(a.phi);
    }
    return out;
}

/// Nelder-Mead maximization; returns the best (value, point) found.
std::pair<double, std::vector<double>> simplex_maximize(const PairObjective& f,
                                                        const std::vector<double>& start,
                                                        double tol, int max_evals) {
    const int d = static_cast<int>(start.size());
    std::vector<std::vector<double>> pts(d + 1, start);
    std::vector<double> vals(d + 1);
    for (int i = 0; i < d; ++i) pts[i + 1][i] += 0.2;
    int evals = 0;
    for (int i = 0; i <= d; ++i) {
        vals[i] = f.eval_vec(pts[i]);
        ++evals;
    }

    auto order = [&] {
        std::vector<int> idx(d + 1);
        for (int i = 0; i <= d; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });
        std::vector<std::vector<double>> np(d + 1);
        std::vector<double> nv(d + 1);
        for (int i = 0; i <= d; ++i) {
            np[i] = pts[idx[i]];
            nv[i] = vals[idx[i]];
        }
        pts = std::move(np);
        vals = std::move(nv);
    };

    auto diameter = [&] {
        double dm = 0.0;
        for (int i = 1; i <= d; ++i) {
            double dist = 0.0;
            for (int j = 0; j < d; ++j) dist = std::max(dist, std::abs(pts[i][j] - pts[0][j]));
            dm = std::max(dm, dist);
        }
        return dm;
    };

    order();
    while (evals < max_evals && diameter() > tol) {
        std::vector<double> centroid(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) centroid[j] += pts[i][j] / d;

        auto blend = [&](double coeff) {
            std::vector<double> x(d);
            for (int j = 0; j < d; ++j) x[j] = centroid[j] + coeff * (centroid[j] - pts[d][j]);
            return x;
        };

        const auto refl = blend(1.0);
        const double frefl = f.eval_vec(refl);
        ++evals;
        if (frefl > vals[0]) {
            const auto exp = blend(2.0);
            const double fexp = f.eval_vec(exp);
            ++evals;
            if (fexp > frefl) {
                pts[d] = exp;
                vals[d] = fexp;
            } else {
                pts[d] = refl;
                vals[d] = frefl;
            }
        } else if (frefl > vals[d - 1]) {
            pts[d] = refl;
            vals[d] = frefl;
        } else {
            const auto con = blend(frefl > vals[d] ? 0.5 : -0.5);
            const double fcon = f.eval_vec(con);
            ++evals;
            if (fcon > std::min(vals[d], frefl)) {
                pts[d] = con;
                vals[d] = fcon;
            } else {
                for (int i = 1; i <= d; ++i) {
                    for (int j = 0; j < d; ++j) pts[i][j] = 0.5 * (pts[i][j] + pts[0][j]);
                    vals[i] = f.eval_vec(pts[i]);
                    ++evals;
                }
            }
        }
        order();
    }
    return {vals[0], pts[0]};
}

LocalizationResult finish_result(const DensityMatrix& rho, MeasurementSetting setting, Method method) {
    LocalizationResult res;
    res.method = method;
    res.best_setting = std::move(setting);
    double total = 0.0;
    for (const Branch& b : measurement_branches(rho, res.best_setting)) {
        const double e = b.state ? negativity(*b.state) : 0.0;
        res.branch_values.emplace_back(b.probability, e);
        total += b.probability * e;
    }
    res.value = total;
    return res;
}

}  // namespace

OptimizerOptions OptimizerOptions::defaults_for(int num_qubits) {
    OptimizerOptions o;
    if (num_qubits >= 4) {
        // the grid is a per-qubit product, so keep it coarse beyond 3 qubits
        o.grid_theta = 7;
        o.grid_phi = 12;
    }
    return o;
}

double average_entanglement(const DensityMatrix& rho, const MeasurementSetting& setting) {
    double total = 0.0;
    for (const Branch& b : measurement_branches(rho, setting)) {
        if (b.state) total += b.probability * negativity(*b.state);
    }
    return total;
}

LocalizationResult rle(const DensityMatrix& rho, std::pair<int, int> pair) {
    const PairObjective obj(rho, pair);
    const int nr = obj.num_measured();
    int settings = 1;
    for (int i = 0; i < nr; ++i) settings *= 3;

    double best = -1.0;
    std::vector<PauliAxis> best_axes;
    std::vector<double> angles(2 * nr);
    for (int code = 0; code < settings; ++code) {
        std::vector<PauliAxis> axes(nr);
        int rem = code;
        for (int i = nr - 1; i >= 0; --i) {
            axes[i] = static_cast<PauliAxis>(rem % 3);
            rem /= 3;
        }
        for (int i = 0; i < nr; ++i) {
            const AngleBasis a = angles_of(axes[i]);
            angles[2 * i] = a.theta;
            angles[2 * i + 1] = a.phi;
        }
        const double val = obj(angles.data());
        if (val > best + 1e-15) {  // ties keep the lowest multi-index
            best = val;
            best_axes = axes;
        }
    }

    MeasurementSetting setting;
    setting.measured_set = obj.measured();
    for (PauliAxis a : best_axes) setting.bases.emplace_back(a);
    return finish_result(rho, std::move(setting), Method::RLE);
}

LocalizationResult le(const DensityMatrix& rho, std::pair<int, int> pair, const OptimizerOptions& opts) {
    const PairObjective obj(rho, pair);
    const int nr = obj.num_measured();
    const int d = 2 * nr;

    const LocalizationResult seed = rle(rho, pair);

    // coarse grid over cell centers, keeping the best `starts` cells
    std::vector<std::pair<double, std::vector<double>>> top;
    std::vector<double> x(d);
    const int cells_per_qubit = opts.grid_theta * opts.grid_phi;
    int total_cells = 1;
    for (int i = 0; i < nr; ++i) total_cells *= cells_per_qubit;
    for (int cell = 0; cell < total_cells; ++cell) {
        int rem = cell;
        for (int i = 0; i < nr; ++i) {
            const int c = rem % cells_per_qubit;
            rem /= cells_per_qubit;
            const int it = c / opts.grid_phi;
            const int ip = c % opts.grid_phi;
            // theta at cell centers; phi includes the 0 edge, where narrow
            // ridges of barely-entangled states tend to sit
            x[2 * i] = (it + 0.5) * kPi / opts.grid_theta;
            x[2 * i + 1] = ip * 2.0 * kPi / opts.grid_phi;
        }
        const double val = obj(x.data());
        if (static_cast<int>(top.size()) < opts.starts) {
            top.emplace_back(val, x);
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        } else if (val > top.back().first) {
            top.back() = {val, x};
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        }
    }

    std::vector<std::vector<double>> starts;
    starts.push_back(angles_of_setting(seed.best_setting));
    for (const auto& t : top) starts.push_back(t.second);

    double best = seed.value;
    std::vector<double> best_x = starts.front();
    for (const auto& s : starts) {
        const auto [val, xbest] = simplex_maximize(obj, s, opts.tol, opts.max_evals);
        if (val > best) {
            best = val;
            best_x = xbest;
        }
    }

    MeasurementSetting setting;
    setting.measured_set = obj.measured();
    for (int i = 0; i < nr; ++i) {
        setting.bases.emplace_back(AngleBasis{best_x[2 * i], best_x[2 * i + 1]});
    }
    LocalizationResult res = finish_result(rho, std::move(setting), Method::LE);
    if (res.value < seed.value) {
        // keep the RLE optimum when refinement cannot improve on it
        res = finish_result(rho, seed.best_setting, Method::LE);
    }
    return res;
}

LocalizationResult le(const DensityMatrix& rho, std::pair<int, int> pair) {
    return le(rho, pair, OptimizerOptions::defaults_for(rho.num_qubits()));
}

double epsilon(const DensityMatrix& rho, std::pair<int, int> pair, const OptimizerOptions& opts) {
    return le(rho, pair, opts).value - rle(rho, pair).value;
}

double epsilon(const DensityMatrix& rho, std::pair<int, int> pair) {
    return epsilon(rho, pair, OptimizerOptions::defaults_for(rho.num_qubits()));
}

}  // namespace lehier
