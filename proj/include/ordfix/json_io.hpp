#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ordfix/fixpoint.hpp"
#include "ordfix/poset.hpp"
#include "ordfix/urysohn.hpp"

namespace ordfix {

/// Poset file: { "n": int, "labels": [string]?, "covers": [[i,j], ...] }
/// where [i, j] means i is covered by j. The loader computes the closure and
/// validates the order axioms; cyclic covers are rejected with a diagnostic
/// naming one cycle.
FinitePoset poset_from_json(const nlohmann::json& doc);
FinitePoset load_poset(const std::filesystem::path& path);

/// Map file: { "images": [int], "poset": <path string or inline object>? }.
/// A path is resolved relative to base_dir (normally the map file's own
/// directory).
struct LoadedMap {
  MonotoneSelfMap map;
  std::optional<FinitePoset> poset;
};
LoadedMap map_from_json(const nlohmann::json& doc,
                        const std::filesystem::path& base_dir);
LoadedMap load_map(const std::filesystem::path& path);

/// Problem config:
/// { "grid": {"kind":"uniform","a":..,"b":..,"m":..}
///           | {"kind":"atoms","nodes":[..],"weights":[..]},
///   "g": {"kind":"constant","value":..} | {"kind":"samples","values":[..]},
///   "kernel": { "name": "linear"|"saturating"|"affine_positive_part"
///                      |"quadratic",
///               "params": {..}, "h": {..}, "M": float },
///   "tol": float?, "max_iter": int?, "branch": "nonnegative"|"nonpositive" }
struct LoadedProblem {
  UrysohnProblem problem;
  Branch branch = Branch::Nonnegative;
};
LoadedProblem problem_from_json(const nlohmann::json& doc);
LoadedProblem load_problem(const std::filesystem::path& path);

nlohmann::json parse_json_file(const std::filesystem::path& path);

}  // namespace ordfix
