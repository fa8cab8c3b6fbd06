// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "holderem/bounds.hpp"
#include "holderem/estimators.hpp"
#include "holderem/experiments.hpp"
#include "holderem/models.hpp"
#include "holderem/multigrid.hpp"

#ifndef HOLDEREM_CLI_PATH
#error "HOLDEREM_CLI_PATH must name the holderem executable"
#endif

using namespace holderem;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

RateFit slope_of(const std::vector<CsvRow>& rows, const std::string& stat) {
    std::vector<RatePoint> pts;
    for (const auto& r : rows) {
        if (r.stat == stat) pts.push_back({static_cast<double>(*r.n), r.estimate, r.std_error.value_or(0.0)});
    }
    return fit_rate_filtered(pts);
}

Result figure1() {
    ExperimentConfig cfg;
    cfg.experiment = "figure1";
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    const auto start = std::chrono::steady_clock::now();
    const Outcome out = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const RateFit fit = slope_of(out.rows, "four_point");
    const bool ok = out.rows.size() == 10 && fit.slope >= -1.8 && fit.slope <= -1.2 && secs <= 60.0;
    return {ok, "slope " + fmt("%.4f", fit.slope) + " (want [-1.8, -1.2]), " + fmt("%.1f", secs) + " s on " +
                    std::to_string(cfg.threads) + " thread(s)"};
}

Result two_point_rates() {
    std::string detail;
    bool ok = true;
    for (const char* model : {"arctan_tan", "gbm"}) {
        ExperimentConfig cfg;
        cfg.experiment = "rates";
        cfg.model = model;
        cfg.threads = std::max(1u, std::thread::hardware_concurrency());
        const Outcome out = run_experiment(cfg);
        const RateFit fit = slope_of(out.rows, "two_point");
        const auto m = out.rows.empty() ? 0 : out.rows.front().samples.value_or(0);
        ok = ok && fit.slope >= -0.65 && fit.slope <= -0.35 && m == 10000 && fit.points.size() == 8;
        detail += std::string(model) + " slope " + fmt("%.4f", fit.slope) + "; ";
    }
    return {ok, detail + "want [-0.65, -0.35], M = 1e4, n = 2^3..2^10"};
}

Result exactness() {
    ExperimentConfig cfg;
    cfg.experiment = "rates";
    cfg.model = Json::parse(R"({"builtin": "constant", "params": [0.3, 0.7]})");
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    const Outcome out = run_experiment(cfg);
    double worst = 0.0;
    std::size_t two = 0, four = 0;
    for (const auto& r : out.rows) {
        worst = std::max(worst, r.estimate);
        two += r.stat == "two_point";
        four += r.stat == "four_point";
    }
    const bool ok = worst <= 1e-12 && two == 8 && four == 8;
    return {ok, "largest statistic " + fmt("%.3g", worst) + " over " + std::to_string(two + four) + " rows"};
}

Result domination() {
    const auto model = arctan_tan_model();
    HolderSweepConfig cfg; // 3 x 3 x 3 grid of (s, t, x), n in {2^4, 2^7, 2^10}
    McOptions opts;
    opts.seed = 20240501;
    opts.threads = std::max(1u, std::thread::hardware_concurrency());
    std::size_t rows = 0, violations = 0;
    for (double p : {2.0, 4.0}) {
        const auto r = holder_sweep(model, cfg, p, 2000, opts);
        for (const auto& row : r.rows) {
            const bool low_items = row.item == "i" || row.item == "ii" || row.item == "iii" || row.item == "iv";
            if (p == 2.0 && !low_items) continue;
            ++rows;
            if (!row.dominated(3.0)) ++violations;
        }
    }
    return {violations == 0 && rows > 0,
            std::to_string(violations) + " violations in " + std::to_string(rows) + " rows (items i-iv at p = 2, all at p = 4)"};
}

Result gronwall() {
    const double h = 1e-5;
    const std::size_t n = 100000;
    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) xs[i] = std::exp(h * static_cast<double>(i));
    const auto r = gronwall_check(xs, 0.0, h, Partition::identity(1.0), 1.0, 1.0, 1e-4, 1e-9);
    const bool ok = std::abs(r.min_slack) <= 1e-9 && r.premise_residual <= 1e-4 && r.holds();
    return {ok, "slack " + fmt("%.3g", r.min_slack) + ", premise residual " + fmt("%.3g", r.premise_residual)};
}

Result lyapunov_and_second_order() {
    const auto model = arctan_tan_model();
    const std::size_t samples = 10000;
    std::mt19937_64 rng(20240501);
    std::normal_distribution<double> gauss(0.0, 2.0);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);

    std::vector<std::vector<double>> xs, ys, zs;
    for (std::size_t i = 0; i < samples; ++i) {
        xs.push_back({gauss(rng)});
        ys.push_back({gauss(rng)});
        zs.push_back({gauss(rng)});
    }
    std::size_t violations = 0;
    double fd = 0.0;
    for (double p : {2.0, 4.0}) {
        const auto ly = lyapunov_check(default_lyapunov(model, p), xs, ys, zs);
        violations += ly.first_violations + ly.second_violations;
        fd = std::max({fd, ly.max_first_fd_error, ly.max_second_fd_error});
    }

    std::vector<DifferenceQuadruple> quads;
    for (std::size_t i = 0; i < samples; ++i) quads.push_back({{uni(rng)}, {uni(rng)}, {uni(rng)}, {uni(rng)}});
    const auto mu_sups = derivative_sups([&](double x) { return model.mu(std::vector<double>{x})[0]; }, -3.0, 3.0);
    const auto sigma_sups = derivative_sups([&](double x) { return model.sigma(std::vector<double>{x})[0]; }, -3.0, 3.0);
    const auto drift = second_order_check(model.drift, 1, mu_sups.first, mu_sups.second, quads);
    const auto diffusion = second_order_check(model.diffusion, 1, sigma_sups.first, sigma_sups.second, quads);
    violations += drift.violations + diffusion.violations;

    const auto cond = verify_condition(model, default_quadruple_sampler(1, -3.0, 3.0, 20240501), samples);
    violations += cond.violations;

    const bool ok = violations == 0 && fd <= 1e-5;
    return {ok, std::to_string(violations) + " violations, max FD error " + fmt("%.3g", fd) + ", condition ratio " +
                    fmt("%.10f", cond.max_ratio)};
}

Result telescoping() {
    const auto g = [](double t) { return std::sin(3.0 * t); };
    const std::size_t n = 10;
    const auto levels = level_independent_levels(g, n);
    const auto finest = GridFunction::sample(g, std::size_t{1} << n);
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = u(rng);
        const double a = multigrid_sum(levels, t), b = interpolate(finest, t);
        if (a != b) worst = std::max(worst, std::abs(a - b) / (std::numeric_limits<double>::epsilon() * std::abs(b)));
    }
    return {worst <= 2.0, "max deviation " + fmt("%.2f", worst) + " ulp over 1000 points, n = 10"};
}

Result lipschitz_quotient() {
    const auto model = arctan_tan_model();
    McOptions opts;
    opts.seed = 20240501;
    opts.threads = std::max(1u, std::thread::hardware_concurrency());
    const Functional f = [](std::span<const double> v) { return v[0]; };
    std::vector<RatePoint> pts;
    double change = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const std::size_t n = std::size_t{1} << k;
        const auto r = lipschitz_quotient_mc(model, f, n, 1.0, 1.1, 2.0, 200, opts);
        pts.push_back({static_cast<double>(n), *r.stat.quotient, 0.0});
        change = std::max({change, r.mean_x.change, r.mean_y.change});
    }
    const RateFit fit = fit_rate_filtered(pts, 0.0);
    const bool ok = fit.slope <= 0.25 && change < 1e-10;
    return {ok, "slope " + fmt("%.4f", fit.slope) + " (want <= 0.25), quadrature change " + fmt("%.2g", change)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

Result determinism() {
    const std::string cli = HOLDEREM_CLI_PATH;
    const std::string a = "acceptance_figure1_t1.csv", b = "acceptance_figure1_t8.csv";
    const int ra = std::system((cli + " figure1 --threads 1 --out " + a + " > /dev/null 2>&1").c_str());
    const int rb = std::system((cli + " figure1 --threads 8 --out " + b + " > /dev/null 2>&1").c_str());
    const std::string ca = slurp(a), cb = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    const bool ok = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
    return {ok, std::to_string(ca.size()) + " vs " + std::to_string(cb.size()) + " bytes, " +
                    (ca == cb ? "identical" : "different")};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> checks{
        {"figure1 four-point slope and runtime", figure1},
        {"two-point rate (arctan_tan, gbm)", two_point_rates},
        {"constant model exactness", exactness},
        {"bound domination", domination},
        {"Gronwall equality case", gronwall},
        {"Lyapunov and second-order sweeps", lyapunov_and_second_order},
        {"multigrid telescoping identity", telescoping},
        {"Lipschitz quotient has no growth", lipschitz_quotient},
        {"thread-count determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : checks) {
        Result r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r = {false, std::string("error: ") + e.what()};
        }
        std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
