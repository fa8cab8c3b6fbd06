#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "holderem/errors.hpp"
#include "holderem/experiments.hpp"
#include "holderem/io.hpp"

using namespace holderem;

namespace {

std::string config_error_path(const Json& j) {
    try {
        config_from_json(j);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<none>";
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace

TEST_CASE("partition JSON round trip") {
    const auto p = Partition::from_points({0.0, 0.1, 0.35, 1.0});
    const auto back = partition_from_json(partition_to_json(p));
    CHECK(back == p);
    const auto u = partition_from_json(Json::parse(R"({"uniform": {"n": 4, "T": 2}})"));
    CHECK(u == Partition::uniform(4, 2.0));
    const auto id = partition_from_json(partition_to_json(Partition::identity(1.5)));
    CHECK(id.is_identity());
    CHECK(id.horizon() == 1.5);
    CHECK_THROWS_AS(partition_from_json(Json::parse("[0.5, 1.0]")), ConfigError);
    CHECK_THROWS_AS(partition_from_json(Json::parse(R"({"uniform": {"n": 0, "T": 1}})")), ConfigError);
}

TEST_CASE("grid function JSON round trip") {
    const GridFunction g({0.0, 0.1, 1.0 / 3.0});
    const auto back = grid_function_from_json(grid_function_to_json(g));
    REQUIRE(back.cells() == 2);
    for (std::size_t k = 0; k <= 2; ++k) CHECK(back[k] == g[k]);
    CHECK_THROWS_AS(grid_function_from_json(Json::parse("[1]")), ConfigError);
}

TEST_CASE("model JSON forms") {
    CHECK(model_from_json("arctan_tan").name == "arctan_tan");
    const auto g = model_from_json(Json::parse(R"({"builtin": "gbm", "params": [0.1, 0.3]})"));
    CHECK(g.params == std::vector<double>{0.1, 0.3});
    const auto e = model_from_json(Json::parse(R"({"expr": {"mu": "-x", "sigma": "1", "search": [-3, 3]}})"));
    CHECK(e.name == "expr");
    CHECK(e.mu(std::vector<double>{2.0})[0] == -2.0);

    auto path_of = [](const char* text) -> std::string {
        try {
            model_from_json(Json::parse(text));
        } catch (const ConfigError& err) {
            return err.path();
        }
        return "<none>";
    };
    CHECK(path_of(R"({"expr": {"mu": "-x", "sigma": "cos(x"}})") == "model.expr.sigma");
    CHECK(path_of(R"({"builtin": "nope"})") == "model.builtin");
    CHECK(path_of(R"({"builtin": "gbm", "extra": 1})") == "model.extra");
    CHECK(path_of(R"(42)") == "model");
}

TEST_CASE("experiment config parsing is strict") {
    const auto cfg = config_from_json(Json::parse(R"({"experiment": "rates", "n_list": [2, 4], "samples": 50,
        "seed": 9, "threads": 2, "model": "gbm", "sweep": {"s": [0.0], "finest_n": 64},
        "gronwall": {"h": 0.001}})"));
    CHECK(cfg.experiment == "rates");
    CHECK(cfg.n_list == std::vector<std::size_t>{2, 4});
    CHECK(cfg.samples == 50u);
    CHECK(cfg.seed == 9u);
    CHECK(cfg.sweep.s_values == std::vector<double>{0.0});
    CHECK(cfg.sweep.finest_n == 64u);
    CHECK(cfg.gronwall.h == 0.001);

    CHECK(config_error_path(Json::parse(R"({"experiment": "rates", "sampels": 5})")) == "sampels");
    CHECK(config_error_path(Json::parse(R"({"experiment": "nope"})")) == "experiment");
    CHECK(config_error_path(Json::parse(R"({"experiment": "rates", "p": "two"})")) == "p");
    CHECK(config_error_path(Json::parse(R"({"experiment": "rates", "sweep": {"q": 1}})")) == "sweep.q");
    CHECK(config_error_path(Json::parse(R"({"experiment": "rates", "model": {"builtin": "x"}})")) == "model.builtin");
    CHECK(experiment_names().size() == 7);
}

TEST_CASE("CSV format") {
    CHECK(csv_header() == "experiment,model,n,p,M,seed,stat,estimate,std_error,bound,quotient");
    CsvRow row;
    row.experiment = "rates";
    row.model = "gbm";
    row.n = 16;
    row.p = 2.0;
    row.samples = 100;
    row.seed = 7;
    row.stat = "two_point";
    row.estimate = 0.1;
    row.std_error = 1.0 / 3.0;
    const std::string line = csv_line(row);
    const auto cells = split(line);
    REQUIRE(cells.size() == 11);
    CHECK(cells[0] == "rates");
    CHECK(cells[2] == "16");
    CHECK(std::strtod(cells[7].c_str(), nullptr) == 0.1);
    CHECK(std::strtod(cells[8].c_str(), nullptr) == 1.0 / 3.0);
    CHECK(cells[9].empty());
    CHECK(cells[10].empty());

    std::ostringstream out;
    write_csv(out, {row, row});
    std::istringstream in(out.str());
    std::string first;
    std::getline(in, first);
    CHECK(first == csv_header());
    int count = 0;
    for (std::string l; std::getline(in, l);) ++count;
    CHECK(count == 2);
}

TEST_CASE("experiments run end to end on small settings") {
    ExperimentConfig cfg;
    cfg.experiment = "figure1";
    cfg.n_list = {2, 4, 8, 16};
    cfg.samples = 64;
    cfg.threads = 1;
    const auto a = run_experiment(cfg);
    cfg.threads = 3;
    const auto b = run_experiment(cfg);
    std::ostringstream sa, sb;
    write_csv(sa, a.rows);
    write_csv(sb, b.rows);
    CHECK(sa.str() == sb.str());
    CHECK(a.rows.size() == 4);

    ExperimentConfig rates;
    rates.experiment = "rates";
    rates.model = "constant";
    rates.n_list = {2, 8};
    rates.samples = 50;
    const auto r = run_experiment(rates);
    CHECK(r.passed);
    for (const auto& row : r.rows) CHECK(row.estimate <= 1e-12);

    ExperimentConfig gr;
    gr.experiment = "gronwall-demo";
    gr.gronwall.h = 1e-4;
    CHECK(run_experiment(gr).passed);

    ExperimentConfig cc;
    cc.experiment = "check-coeffs";
    cc.model = "gbm";
    cc.trials = 2000;
    CHECK(run_experiment(cc).passed);
}
