#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "holderem/bounds.hpp"
#include "holderem/errors.hpp"
#include "holderem/estimators.hpp"
#include "holderem/experiments.hpp"
#include "holderem/expr.hpp"
#include "holderem/grids.hpp"
#include "holderem/io.hpp"
#include "holderem/models.hpp"
#include "holderem/multigrid.hpp"

namespace py = pybind11;
using namespace holderem;

namespace {

using Vec = std::vector<double>;

McOptions options(std::uint64_t seed, std::size_t threads, double horizon, std::size_t finest_n) {
    McOptions o;
    o.seed = seed;
    o.threads = threads;
    o.horizon = horizon;
    o.finest_n = finest_n;
    return o;
}

Functional wrap(const std::function<double(double)>& f) {
    return [f](std::span<const double> v) { return f(v[0]); };
}

py::dict stat_dict(const ErrorStat& s) {
    py::dict d;
    d["estimate"] = s.estimate;
    d["std_error"] = s.std_error;
    d["samples"] = s.samples;
    d["p"] = s.p;
    d["bound"] = s.bound ? py::cast(*s.bound) : py::none();
    d["quotient"] = s.quotient ? py::cast(*s.quotient) : py::none();
    d["dropped"] = s.dropped;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Euler-Maruyama strong error estimators, bounds and multigrid helpers";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<Partition>(m, "Partition")
        .def_static("uniform", &Partition::uniform, py::arg("n"), py::arg("horizon") = 1.0)
        .def_static("from_points", &Partition::from_points, py::arg("points"))
        .def_static("identity", &Partition::identity, py::arg("horizon") = 1.0)
        .def_property_readonly("points", [](const Partition& p) { return Vec(p.points().begin(), p.points().end()); })
        .def_property_readonly("mesh", &Partition::mesh)
        .def_property_readonly("horizon", &Partition::horizon)
        .def_property_readonly("is_identity", &Partition::is_identity)
        .def("round_down", &Partition::round_down, py::arg("t"));

    py::class_<CoefficientModel>(m, "Model")
        .def_readonly("name", &CoefficientModel::name)
        .def_readonly("c", &CoefficientModel::lipschitz_c)
        .def_readonly("b", &CoefficientModel::second_order_b)
        .def("mu", [](const CoefficientModel& mod, const Vec& x) { return mod.mu(x); })
        .def("sigma", [](const CoefficientModel& mod, const Vec& x) { return mod.sigma(x); });

    m.def("builtin", [](const std::string& name, const Vec& params) { return builtin(name, params); },
          py::arg("name"), py::arg("params") = Vec{});
    m.def("expression_model", &expression_model, py::arg("mu"), py::arg("sigma"), py::arg("search_lo") = -10.0,
          py::arg("search_hi") = 10.0);
    m.def("eval_expr", [](const std::string& src, double x) { return eval(parse(src), x); }, py::arg("source"),
          py::arg("x"));

    m.def(
        "two_point_stat",
        [](const CoefficientModel& mod, std::size_t n, const Vec& x, double p, std::size_t paths, std::uint64_t seed,
           std::size_t threads, double horizon, std::size_t finest_n) {
            return stat_dict(two_point_stat(mod, n, x, p, paths, options(seed, threads, horizon, finest_n)));
        },
        py::arg("model"), py::arg("n"), py::arg("x"), py::arg("p") = 2.0, py::arg("paths") = 1000,
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("horizon") = 1.0, py::arg("finest_n") = 0);
    m.def(
        "four_point_stat",
        [](const CoefficientModel& mod, std::size_t n, const Vec& x, const Vec& y, double p, std::size_t paths,
           std::uint64_t seed, std::size_t threads, double horizon, std::size_t finest_n) {
            return stat_dict(four_point_stat(mod, n, x, y, p, paths, options(seed, threads, horizon, finest_n)));
        },
        py::arg("model"), py::arg("n"), py::arg("x"), py::arg("y"), py::arg("p") = 2.0, py::arg("paths") = 1000,
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("horizon") = 1.0, py::arg("finest_n") = 0);
    m.def(
        "gauss_hermite_mean",
        [](const CoefficientModel& mod, const std::function<double(double)>& f, double x, double t) {
            return gauss_hermite_mean(mod, wrap(f), x, t).value;
        },
        py::arg("model"), py::arg("f"), py::arg("x"), py::arg("t") = 1.0);
    m.def(
        "lipschitz_quotient",
        [](const CoefficientModel& mod, const std::function<double(double)>& f, std::size_t n, double x, double y,
           double p, std::size_t replications, std::uint64_t seed) {
            return stat_dict(lipschitz_quotient_mc(mod, wrap(f), n, x, y, p, replications, options(seed, 1, 1.0, 0)).stat);
        },
        py::arg("model"), py::arg("f"), py::arg("n"), py::arg("x"), py::arg("y"), py::arg("p") = 2.0,
        py::arg("replications") = 200, py::arg("seed") = 0);
    m.def(
        "fit_rate",
        [](const std::vector<std::pair<double, double>>& pts) {
            const RateFit f = fit_rate(pts);
            return py::make_tuple(f.slope, f.intercept, f.residual_l2);
        },
        py::arg("points"), "Least squares slope, intercept and residual of log(error) against log(n).");

    m.def(
        "bounds",
        [](const CoefficientModel& mod, double p, double horizon, const Vec& x, const Vec& x_tilde, const Vec& y,
           const Vec& y_tilde, double s, double s_tilde, double t, double t_tilde, double mesh) {
            const BoundParams bp = bound_params(mod, p, horizon);
            py::dict d;
            d["i"] = bound_moment(bp, x, s, t);
            d["ii"] = bound_strong_error(bp, x, s, t, mesh);
            d["iii"] = bound_time_space(bp, x, x_tilde, s, s_tilde, t, t_tilde);
            d["iv"] = bound_spatial_time(bp, x, x_tilde, t, t_tilde);
            if (p >= 4.0) {
                d["v"] = bound_four_point(bp, x, x_tilde, y, y_tilde, s, t, mesh);
                d["vi"] = bound_full(bp, x, x_tilde, s, s_tilde, t, t_tilde, mesh);
            }
            return d;
        },
        py::arg("model"), py::arg("p"), py::arg("horizon"), py::arg("x"), py::arg("x_tilde"), py::arg("y"),
        py::arg("y_tilde"), py::arg("s"), py::arg("s_tilde"), py::arg("t"), py::arg("t_tilde"), py::arg("mesh"),
        "The six strong-error bounds at one argument tuple; items v and vi need p >= 4.");

    m.def("interpolate", [](const Vec& values, double t) { return interpolate(GridFunction(values), t); },
          py::arg("values"), py::arg("t"));
    m.def(
        "multigrid_sum",
        [](const std::vector<std::pair<Vec, std::optional<Vec>>>& levels, double t) {
            std::vector<MultigridLevel> lv;
            for (const auto& [fine, coarse] : levels) {
                lv.push_back({GridFunction(fine), coarse ? std::optional<GridFunction>(GridFunction(*coarse)) : std::nullopt});
            }
            return multigrid_sum(lv, t);
        },
        py::arg("levels"), py::arg("t"), "levels: list of (fine values, coarse values or None).");

    m.def("experiment_names", &experiment_names);
    m.def(
        "run_experiment",
        [](const std::string& config_json) {
            const ExperimentConfig cfg = config_from_json(Json::parse(config_json));
            Outcome out;
            {
                py::gil_scoped_release release;
                out = run_experiment(cfg);
            }
            std::ostringstream csv;
            write_csv(csv, out.rows);
            return py::make_tuple(csv.str(), out.summary, out.passed);
        },
        py::arg("config_json"), "Runs an experiment from a JSON config; returns (csv text, summary lines, passed).");
}
