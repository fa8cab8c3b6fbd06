#include "holderem/io.hpp"

#include <vector>

#include "holderem/errors.hpp"
#include "holderem/expr.hpp"

namespace holderem {

namespace {

double number_at(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

std::vector<double> numbers_at(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* key : keys) known = known || k == key;
        if (!known) throw ConfigError(path + "." + k, "unknown field");
    }
}

} // namespace

Json partition_to_json(const Partition& p) {
    if (p.is_identity()) return Json{{"identity", p.horizon()}};
    return Json(p.points());
}

Partition partition_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_array()) return Partition::from_points(numbers_at(j, path));
        if (j.is_object() && j.contains("uniform")) {
            only_keys(j, path, {"uniform"});
            const Json& u = j["uniform"];
            if (!u.is_object()) throw ConfigError(path + ".uniform", "expected an object with n and T");
            only_keys(u, path + ".uniform", {"n", "T"});
            if (!u.contains("n") || !u["n"].is_number_integer() || u["n"].get<long long>() < 0) {
                throw ConfigError(path + ".uniform.n", "expected a nonnegative integer");
            }
            const double T = u.contains("T") ? number_at(u["T"], path + ".uniform.T") : 1.0;
            return Partition::uniform(u["n"].get<std::size_t>(), T);
        }
        if (j.is_object() && j.contains("identity")) {
            only_keys(j, path, {"identity"});
            return Partition::identity(number_at(j["identity"], path + ".identity"));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path, "expected a point array, {\"uniform\": {...}} or {\"identity\": T}");
}

Json grid_function_to_json(const GridFunction& g) {
    return Json(std::vector<double>(g.values().begin(), g.values().end()));
}

GridFunction grid_function_from_json(const Json& j, const std::string& path) {
    std::vector<double> values = numbers_at(j, path);
    try {
        return GridFunction(std::move(values));
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

CoefficientModel model_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return builtin(j.get<std::string>());
        if (!j.is_object()) throw ConfigError(path, "expected a model name or object");
        if (j.contains("builtin")) {
            only_keys(j, path, {"builtin", "params"});
            if (!j["builtin"].is_string()) throw ConfigError(path + ".builtin", "expected a string");
            std::vector<double> params;
            if (j.contains("params")) params = numbers_at(j["params"], path + ".params");
            try {
                return builtin(j["builtin"].get<std::string>(), params);
            } catch (const InvalidArgument& e) {
                throw ConfigError(path + ".builtin", e.what());
            }
        }
        if (j.contains("expr")) {
            only_keys(j, path, {"expr"});
            const Json& e = j["expr"];
            const std::string epath = path + ".expr";
            if (!e.is_object()) throw ConfigError(epath, "expected an object with mu and sigma");
            only_keys(e, epath, {"mu", "sigma", "search"});
            for (const char* key : {"mu", "sigma"}) {
                if (!e.contains(key) || !e[key].is_string()) {
                    throw ConfigError(epath + "." + key, "expected an expression string");
                }
            }
            double lo = -10.0, hi = 10.0;
            if (e.contains("search")) {
                const auto range = numbers_at(e["search"], epath + ".search");
                if (range.size() != 2 || !(range[0] < range[1])) {
                    throw ConfigError(epath + ".search", "expected [lo, hi] with lo < hi");
                }
                lo = range[0];
                hi = range[1];
            }
            for (const char* key : {"mu", "sigma"}) {
                try {
                    parse(e[key].get<std::string>());
                } catch (const ParseError& err) {
                    throw ConfigError(epath + "." + key, err.what());
                }
            }
            return expression_model(e["mu"].get<std::string>(), e["sigma"].get<std::string>(), lo, hi);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path, "expected {\"builtin\": ...} or {\"expr\": {\"mu\": ..., \"sigma\": ...}}");
}

} // namespace holderem
