#pragma once

#include <string>

#include <json.hpp>

#include "holderem/grids.hpp"
#include "holderem/models.hpp"
#include "holderem/multigrid.hpp"

namespace holderem {

using Json = nlohmann::json;

/// Grids serialize as their point array; the identity as {"identity": T}.
/// Parsing also accepts {"uniform": {"n": n, "T": T}}.
Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j, const std::string& path = "partition");

/// A GridFunction is its value array a_0..a_N.
Json grid_function_to_json(const GridFunction& g);
GridFunction grid_function_from_json(const Json& j, const std::string& path = "grid_function");

/// Accepted forms:
///   "arctan_tan"
///   {"builtin": "gbm", "params": [0.05, 0.2]}
///   {"expr": {"mu": "<expr in x>", "sigma": "<expr in x>", "search": [lo, hi]}}
/// Errors are ConfigError naming the field path.
CoefficientModel model_from_json(const Json& j, const std::string& path = "model");

} // namespace holderem
