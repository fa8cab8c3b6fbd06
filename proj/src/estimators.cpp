#include "holderem/estimators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "holderem/brownian.hpp"
#include "holderem/errors.hpp"
#include "holderem/euler.hpp"
#include "holderem/parallel.hpp"

namespace holderem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double norm(std::span<const double> v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

double diff_norm(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

// |(a - b) - (c - d)|
double second_diff_norm(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                        std::span<const double> d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = (a[i] - b[i]) - (c[i] - d[i]);
        acc += v * v;
    }
    return std::sqrt(acc);
}

std::vector<double> shifted(std::span<const double> x, double by) {
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v += by;
    return out;
}

std::size_t resolve_finest(const CoefficientModel& model, std::size_t n, const McOptions& opts) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (opts.finest_n == 0) return model.has_exact() ? n : 16 * n;
    if (opts.finest_n % n != 0) {
        throw AlignmentError("finest lattice with " + std::to_string(opts.finest_n) + " cells does not refine n = " +
                             std::to_string(n));
    }
    return opts.finest_n;
}

double resolve_time(const McOptions& opts, std::optional<double> t) {
    const double value = t.value_or(opts.horizon);
    if (!(value >= 0.0 && value <= opts.horizon)) throw InvalidArgument("t must lie in [0, T]");
    return value;
}

void check_common(const CoefficientModel& model, std::span<const double> x, double p, std::size_t num_paths) {
    if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
    if (num_paths < 2) throw InvalidArgument("need at least 2 paths");
    if (x.size() != model.d) throw InvalidArgument("start point dimension differs from the model dimension");
}

} // namespace

ErrorStat lp_from_norms(std::span<const double> norms, double p, DivergencePolicy policy) {
    if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
    ErrorStat st;
    st.p = p;
    std::vector<double> powered;
    powered.reserve(norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        const double v = norms[i];
        if (!std::isfinite(v)) {
            if (policy == DivergencePolicy::abort) {
                throw EstimationError("sample " + std::to_string(i) + " diverged");
            }
            ++st.dropped;
            continue;
        }
        powered.push_back(std::pow(v, p));
    }
    st.samples = powered.size();
    if (powered.empty()) throw EstimationError("no finite samples");

    double sum = 0.0;
    for (double v : powered) sum += v;
    const double m = static_cast<double>(powered.size());
    st.raw_moment = sum / m;
    st.estimate = std::pow(st.raw_moment, 1.0 / p);

    const bool constant = std::all_of(powered.begin(), powered.end(), [&](double v) { return v == powered.front(); });
    if (powered.size() >= 2 && !constant && st.raw_moment > 0.0) {
        double ss = 0.0;
        for (double v : powered) ss += (v - st.raw_moment) * (v - st.raw_moment);
        const double sd = std::sqrt(ss / (m - 1.0));
        st.std_error = sd / std::sqrt(m) * (1.0 / p) * std::pow(st.raw_moment, 1.0 / p - 1.0);
    }
    return st;
}

ErrorStat lp_moment(const PathSampler& sampler, double p, std::size_t num_paths, std::uint64_t seed,
                    std::size_t threads, DivergencePolicy policy) {
    if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
    if (num_paths < 2) throw InvalidArgument("need at least 2 paths");
    std::vector<double> norms(num_paths);
    parallel_for(num_paths, threads, [&](std::size_t i) {
        const std::vector<double> z = sampler(seed, i);
        norms[i] = norm(z);
        for (double v : z) {
            if (!std::isfinite(v)) norms[i] = kNaN;
        }
    });
    return lp_from_norms(norms, p, policy);
}

ErrorStat two_point_stat(const CoefficientModel& model, std::size_t n, std::span<const double> x, double p,
                         std::size_t num_paths, const McOptions& opts, std::optional<double> t) {
    check_common(model, x, p, num_paths);
    const std::size_t finest = resolve_finest(model, n, opts);
    const double at = resolve_time(opts, t);
    const Partition grid = Partition::uniform(n, opts.horizon);
    const Partition iota = Partition::identity(opts.horizon);

    std::vector<double> norms(num_paths);
    parallel_for(num_paths, opts.threads, [&](std::size_t i) {
        const auto lattice = BrownianLattice::sample(opts.seed, i, finest, opts.horizon, model.m);
        const std::size_t k = lattice.index_of(at);
        const DiscretePath exact = process_path(model, iota, 0.0, x, lattice);
        const DiscretePath euler = euler_path(model, grid, 0.0, x, lattice);
        norms[i] = diff_norm(exact.at_index(k), euler.at_index(k));
    });
    ErrorStat st = lp_from_norms(norms, p, opts.divergence);
    st.quotient = st.estimate / (1.0 + norm(x));
    return st;
}

ErrorStat four_point_stat(const CoefficientModel& model, std::size_t n, std::span<const double> x,
                          std::span<const double> y, double p, std::size_t num_paths, const McOptions& opts,
                          std::optional<double> t, bool normalize) {
    check_common(model, x, p, num_paths);
    if (y.size() != x.size()) throw InvalidArgument("start points differ in dimension");
    const double dxy = diff_norm(x, y);
    if (normalize && dxy == 0.0) throw InvalidArgument("normalized four-point statistic needs x != y");
    const std::size_t finest = resolve_finest(model, n, opts);
    const double at = resolve_time(opts, t);
    const Partition grid = Partition::uniform(n, opts.horizon);
    const Partition iota = Partition::identity(opts.horizon);

    std::vector<double> norms(num_paths);
    parallel_for(num_paths, opts.threads, [&](std::size_t i) {
        const auto lattice = BrownianLattice::sample(opts.seed, i, finest, opts.horizon, model.m);
        const std::size_t k = lattice.index_of(at);
        const DiscretePath ex = process_path(model, iota, 0.0, x, lattice);
        const DiscretePath yx = euler_path(model, grid, 0.0, x, lattice);
        const DiscretePath ey = process_path(model, iota, 0.0, y, lattice);
        const DiscretePath yy = euler_path(model, grid, 0.0, y, lattice);
        norms[i] = second_diff_norm(ex.at_index(k), yx.at_index(k), ey.at_index(k), yy.at_index(k));
    });
    ErrorStat st = lp_from_norms(norms, p, opts.divergence);
    if (normalize) st.quotient = st.estimate / (dxy * (1.0 + norm(x) + norm(y)));
    return st;
}

// ---------------------------------------------------------------------------

bool HolderRow::dominated(double k) const {
    if (!stat.bound) return true;
    return stat.estimate <= *stat.bound + k * stat.std_error;
}

namespace {

enum Item : std::size_t { kI, kII, kIII, kIV, kV, kVI, kItems };
constexpr const char* kItemNames[kItems] = {"i", "ii", "iii", "iv", "v", "vi"};

} // namespace

HolderSweepResult holder_sweep(const CoefficientModel& model, const HolderSweepConfig& config, double p,
                               std::size_t num_paths, const McOptions& opts) {
    if (!(p >= 2.0)) throw InvalidArgument("holder sweep needs p >= 2");
    if (num_paths < 2) throw InvalidArgument("need at least 2 paths");
    const double T = config.horizon;
    if (config.finest_n == 0) throw InvalidArgument("finest_n must be >= 1");
    for (const auto& x : config.x_values) {
        if (x.size() != model.d) throw InvalidArgument("sweep start point dimension differs from the model dimension");
    }
    const bool high_order = p >= 4.0;
    HolderSweepResult result;
    if (!high_order) result.notices.push_back("items v and vi need p >= 4; skipped at p = " + std::to_string(p));

    std::vector<Partition> partitions;
    for (std::size_t n : config.n_values) {
        if (n == 0) {
            partitions.push_back(Partition::identity(T));
        } else {
            if (config.finest_n % n != 0) throw AlignmentError("n = " + std::to_string(n) + " does not divide finest_n");
            partitions.push_back(Partition::uniform(n, T));
        }
    }
    const std::size_t ns = config.s_values.size(), nt = config.t_values.size(), nx = config.x_values.size(),
                      nn = partitions.size();
    std::vector<double> s_tilde(ns), t_tilde(nt);
    for (std::size_t a = 0; a < ns; ++a) s_tilde[a] = std::max(0.0, config.s_values[a] - config.s_shift);
    for (std::size_t b = 0; b < nt; ++b) t_tilde[b] = std::min(T, config.t_values[b] + config.t_shift);
    std::vector<std::vector<double>> x_tilde(nx), y(nx), y_tilde(nx);
    for (std::size_t c = 0; c < nx; ++c) {
        x_tilde[c] = shifted(config.x_values[c], config.x_shift);
        y[c] = shifted(config.x_values[c], config.y_shift);
        y_tilde[c] = shifted(x_tilde[c], config.y_shift);
    }

    const BoundParams bp = bound_params(model, p, T);
    std::vector<long> row_of(ns * nt * nx * nn * kItems, -1);
    auto key = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e, std::size_t item) {
        return (((a * nt + b) * nx + c) * nn + e) * kItems + item;
    };
    for (std::size_t a = 0; a < ns; ++a) {
        for (std::size_t b = 0; b < nt; ++b) {
            const double s = config.s_values[a], t = config.t_values[b];
            if (!(s >= 0.0 && s <= t && t <= T)) continue;
            for (std::size_t c = 0; c < nx; ++c) {
                for (std::size_t e = 0; e < nn; ++e) {
                    for (std::size_t item = 0; item < kItems; ++item) {
                        if (item >= kV && !high_order) continue;
                        HolderRow row;
                        row.item = kItemNames[item];
                        row.s = s;
                        row.s_tilde = s_tilde[a];
                        row.t = t;
                        row.t_tilde = t_tilde[b];
                        row.x = config.x_values[c];
                        row.x_tilde = x_tilde[c];
                        row.y = y[c];
                        row.y_tilde = y_tilde[c];
                        row.n = config.n_values[e];
                        row.mesh = partitions[e].mesh();
                        row_of[key(a, b, c, e, item)] = static_cast<long>(result.rows.size());
                        result.rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    if (result.rows.empty()) return result;

    const Partition iota = Partition::identity(T);
    const std::size_t rows = result.rows.size();
    std::vector<double> values(rows * num_paths, kNaN);

    parallel_for(num_paths, opts.threads, [&](std::size_t path) {
        const auto lattice = BrownianLattice::sample(opts.seed, path, config.finest_n, T, model.m);
        auto put = [&](std::size_t k, double v) {
            const long r = row_of[k];
            if (r >= 0) values[static_cast<std::size_t>(r) * num_paths + path] = v;
        };
        for (std::size_t a = 0; a < ns; ++a) {
            const double s = config.s_values[a], st = s_tilde[a];
            bool any = false;
            for (std::size_t b = 0; b < nt; ++b) any = any || (s <= config.t_values[b] && config.t_values[b] <= T);
            if (!any || s < 0.0 || s > T) continue;
            std::vector<DiscretePath> ix, ixt, ixt_st;
            for (std::size_t c = 0; c < nx; ++c) {
                ix.push_back(process_path(model, iota, s, config.x_values[c], lattice));
                if (high_order) {
                    ixt.push_back(process_path(model, iota, s, x_tilde[c], lattice));
                    ixt_st.push_back(process_path(model, iota, st, x_tilde[c], lattice));
                }
            }
            for (std::size_t e = 0; e < nn; ++e) {
                const Partition& part = partitions[e];
                for (std::size_t c = 0; c < nx; ++c) {
                    const auto& x = config.x_values[c];
                    const DiscretePath dx = process_path(model, part, s, x, lattice);
                    const DiscretePath dxt = process_path(model, part, s, x_tilde[c], lattice);
                    const DiscretePath dxt_st = process_path(model, part, st, x_tilde[c], lattice);
                    std::optional<DiscretePath> dy, dyt;
                    if (high_order) {
                        dy.emplace(process_path(model, part, s, y[c], lattice));
                        dyt.emplace(process_path(model, part, s, y_tilde[c], lattice));
                    }
                    for (std::size_t b = 0; b < nt; ++b) {
                        const double t = config.t_values[b];
                        if (!(s <= t && t <= T)) continue;
                        const std::size_t kt = lattice.index_of(t);
                        const std::size_t ktt = lattice.index_of(t_tilde[b]);
                        const auto dx_t = dx.at_index(kt);
                        put(key(a, b, c, e, kI), bp.v(dx_t));
                        put(key(a, b, c, e, kII), diff_norm(dx_t, ix[c].at_index(kt)));
                        put(key(a, b, c, e, kIII), diff_norm(dx_t, dxt_st.at_index(ktt)));
                        put(key(a, b, c, e, kIV),
                            second_diff_norm(dx.at_index(ktt), dx_t, dxt.at_index(ktt), dxt.at_index(kt)));
                        if (high_order) {
                            put(key(a, b, c, e, kV), second_diff_norm(ix[c].at_index(kt), dy->at_index(kt),
                                                                      ixt[c].at_index(kt), dyt->at_index(kt)));
                            put(key(a, b, c, e, kVI), second_diff_norm(ix[c].at_index(kt), ixt_st[c].at_index(ktt),
                                                                       dx_t, dxt_st.at_index(ktt)));
                        }
                    }
                }
            }
        }
    });

    for (std::size_t r = 0; r < rows; ++r) {
        HolderRow& row = result.rows[r];
        const std::span<const double> norms(values.data() + r * num_paths, num_paths);
        double order = p;
        double bound = 0.0;
        if (row.item == "i") {
            order = 1.0;
            bound = bound_moment(bp, row.x, row.s, row.t);
        } else if (row.item == "ii") {
            bound = bound_strong_error(bp, row.x, row.s, row.t, row.mesh);
        } else if (row.item == "iii") {
            bound = bound_time_space(bp, row.x, row.x_tilde, row.s, row.s_tilde, row.t, row.t_tilde);
        } else if (row.item == "iv") {
            bound = bound_spatial_time(bp, row.x, row.x_tilde, row.t, row.t_tilde);
        } else if (row.item == "v") {
            order = p / 2.0;
            bound = bound_four_point(bp, row.x, row.x_tilde, row.y, row.y_tilde, row.s, row.t, row.mesh);
        } else {
            order = p / 2.0;
            bound = bound_full(bp, row.x, row.x_tilde, row.s, row.s_tilde, row.t, row.t_tilde, row.mesh);
        }
        row.stat = lp_from_norms(norms, order, opts.divergence);
        row.stat.bound = bound;
    }
    return result;
}

// ---------------------------------------------------------------------------

double mc_euler_functional(const CoefficientModel& model, const Functional& f, std::size_t n,
                           std::span<const double> x, const McOptions& opts) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (x.size() != model.d) throw InvalidArgument("start point dimension differs from the model dimension");
    const Partition grid = Partition::uniform(n, opts.horizon);
    std::vector<double> values(n);
    parallel_for(n, opts.threads, [&](std::size_t i) {
        const auto lattice = BrownianLattice::sample(opts.seed, i, n, opts.horizon, model.m);
        const DiscretePath path = euler_path(model, grid, 0.0, x, lattice);
        values[i] = path.diverged() ? kNaN : f(path.terminal());
    });
    double sum = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i])) {
            if (opts.divergence == DivergencePolicy::abort) {
                throw EstimationError("Euler path " + std::to_string(i) + " diverged");
            }
            continue;
        }
        sum += values[i];
        ++kept;
    }
    if (kept == 0) throw EstimationError("every Euler path diverged");
    return sum / static_cast<double>(kept);
}

HermiteRule gauss_hermite_rule(std::size_t n) {
    if (n == 0) throw InvalidArgument("Gauss-Hermite rule needs n >= 1");
    constexpr double kPiM4 = 0.7511255444649425; // pi^{-1/4}
    constexpr int kNewtonSteps = 3;
    // Golub-Welsch: the nodes are the eigenvalues of the Jacobi matrix with
    // zero diagonal and off-diagonal sqrt(k / 2). They seed Newton steps on
    // the orthonormal recurrence, which also yields the weights 2 / H'^2.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (Eigen::Index k = 0; k < sub.size(); ++k) sub[k] = std::sqrt(static_cast<double>(k + 1) / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw QuadratureError("Jacobi eigenvalue computation failed");

    HermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double dn = static_cast<double>(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Largest eigenvalues first, mirrored onto the negative half.
        double z = solver.eigenvalues()[static_cast<Eigen::Index>(n - 1 - i)];
        if (n % 2 == 1 && i == half - 1) z = 0.0;
        double pp = 0.0;
        for (int step = 0; step < kNewtonSteps; ++step) {
            double p1 = kPiM4, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * dn) * p2;
            if (std::isfinite(p1 / pp)) z -= p1 / pp;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

QuadratureResult gauss_hermite_mean(const CoefficientModel& model, const Functional& f, double x, double t,
                                    std::size_t nodes) {
    if (model.d != 1 || model.m != 1) throw InvalidArgument("Gauss-Hermite mean needs a scalar model");
    if (!model.has_exact()) throw ExactUnavailable("model '" + model.name + "' has no closed form");
    if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
    const double start[1] = {x};
    auto mean_with = [&](std::size_t count) {
        const HermiteRule rule = gauss_hermite_rule(count);
        double acc = 0.0;
        double out[1];
        for (std::size_t i = 0; i < count; ++i) {
            const double dw[1] = {std::sqrt(t) * std::numbers::sqrt2 * rule.nodes[i]};
            exact_solution(model, start, t, dw, out);
            acc += rule.weights[i] * f(out);
        }
        return acc / std::sqrt(std::numbers::pi);
    };
    std::size_t count = std::max<std::size_t>(16, nodes);
    if (count > 512) throw QuadratureError("more than 512 nodes requested");
    double prev = mean_with(count);
    while (true) {
        const std::size_t next = 2 * count;
        if (next > 512) {
            throw QuadratureError("Gauss-Hermite mean did not converge to 1e-10 within 512 nodes");
        }
        const double cur = mean_with(next);
        const double change = std::abs(cur - prev);
        if (!std::isfinite(cur)) throw QuadratureError("Gauss-Hermite mean is not finite");
        if (change < 1e-10) return {cur, next, change};
        prev = cur;
        count = next;
    }
}

LipschitzQuotientResult lipschitz_quotient_mc(const CoefficientModel& model, const Functional& f, std::size_t n,
                                              double x, double y, double p, std::size_t replications,
                                              const McOptions& opts) {
    if (n == 0) throw InvalidArgument("n must be >= 1");
    if (x == y) throw InvalidArgument("Lipschitz quotient needs x != y");
    if (!(p >= 1.0)) throw InvalidArgument("order p must be >= 1");
    if (replications < 2) throw InvalidArgument("need at least 2 replications");
    LipschitzQuotientResult result;
    result.mean_x = gauss_hermite_mean(model, f, x, opts.horizon);
    result.mean_y = gauss_hermite_mean(model, f, y, opts.horizon);
    const double mx = result.mean_x.value, my = result.mean_y.value;
    const Partition grid = Partition::uniform(n, opts.horizon);
    const double sx[1] = {x}, sy[1] = {y};

    std::vector<double> norms(replications);
    parallel_for(replications, opts.threads, [&](std::size_t r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto lattice = BrownianLattice::sample(opts.seed, r * n + i, n, opts.horizon, model.m);
            const DiscretePath px = euler_path(model, grid, 0.0, sx, lattice);
            const DiscretePath py = euler_path(model, grid, 0.0, sy, lattice);
            sum += (f(px.terminal()) - mx) - (f(py.terminal()) - my);
        }
        norms[r] = std::abs(sum / static_cast<double>(n));
    });
    result.stat = lp_from_norms(norms, p, opts.divergence);
    result.stat.quotient =
        std::sqrt(static_cast<double>(n)) * result.stat.estimate / (std::abs(x - y) * (1.0 + std::abs(x) + std::abs(y)));
    return result;
}

// ---------------------------------------------------------------------------

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw InvalidArgument("rate fit needs at least 2 points");
    for (const auto& [n, e] : points) {
        if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("rate fit needs n > 0");
        if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("rate fit needs positive finite values");
    }
    const bool distinct = std::any_of(points.begin(), points.end(),
                                      [&](const auto& pt) { return pt.first != points.front().first; });
    if (!distinct) throw InvalidArgument("rate fit needs at least 2 distinct n");

    const double m = static_cast<double>(points.size());
    double mean_u = 0.0, mean_v = 0.0;
    for (const auto& [n, e] : points) {
        mean_u += std::log(n);
        mean_v += std::log(e);
    }
    mean_u /= m;
    mean_v /= m;
    double suu = 0.0, suv = 0.0;
    for (const auto& [n, e] : points) {
        const double du = std::log(n) - mean_u;
        suu += du * du;
        suv += du * (std::log(e) - mean_v);
    }
    RateFit fit;
    fit.slope = suv / suu;
    fit.intercept = mean_v - fit.slope * mean_u;
    double ss = 0.0;
    for (const auto& [n, e] : points) {
        const double r = std::log(e) - (fit.intercept + fit.slope * std::log(n));
        ss += r * r;
    }
    fit.residual_l2 = std::sqrt(ss);
    fit.points.assign(points.begin(), points.end());
    return fit;
}

RateFit fit_rate_filtered(std::span<const RatePoint> points, double min_snr) {
    std::vector<std::pair<double, double>> kept;
    for (const auto& pt : points) {
        if (pt.value >= min_snr * pt.std_error && pt.value > 0.0) kept.emplace_back(pt.n, pt.value);
    }
    return fit_rate(kept);
}

} // namespace holderem
