#include "ordfix/json_io.hpp"

#include <fstream>
#include <utility>

namespace ordfix {
namespace {

using nlohmann::json;

[[noreturn]] void bad_input(const std::string& what) {
  throw std::invalid_argument(what);
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) bad_input(std::string("missing field \"") + field + "\"");
  return *it;
}

int require_int(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number_integer()) {
    bad_input(std::string("field \"") + field + "\" must be an integer");
  }
  return v.get<int>();
}

double require_number(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number()) {
    bad_input(std::string("field \"") + field + "\" must be a number");
  }
  return v.get<double>();
}

std::string require_string(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_string()) {
    bad_input(std::string("field \"") + field + "\" must be a string");
  }
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const char* what) {
  if (!v.is_array()) bad_input(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) bad_input(std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    bad_input("invalid JSON in " + path.string() + ": " + e.what());
  }
  return doc;
}

FinitePoset poset_from_json(const json& doc) {
  if (!doc.is_object()) bad_input("poset document must be an object");
  const int n = require_int(doc, "n");

  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array()) bad_input("\"labels\" must be an array of strings");
    for (const json& e : *it) {
      if (!e.is_string()) bad_input("\"labels\" must be an array of strings");
      labels.push_back(e.get<std::string>());
    }
  }

  std::vector<std::pair<int, int>> covers;
  const json& cv = require(doc, "covers");
  if (!cv.is_array()) bad_input("\"covers\" must be an array of [i, j] pairs");
  for (const json& e : cv) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      bad_input("\"covers\" must be an array of [i, j] pairs");
    }
    covers.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return FinitePoset::from_covers(n, covers, std::move(labels));
}

FinitePoset load_poset(const std::filesystem::path& path) {
  return poset_from_json(parse_json_file(path));
}

LoadedMap map_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) bad_input("map document must be an object");
  LoadedMap out;

  const json& im = require(doc, "images");
  if (!im.is_array()) bad_input("\"images\" must be an array of integers");
  for (const json& e : im) {
    if (!e.is_number_integer()) {
      bad_input("\"images\" must be an array of integers");
    }
    out.map.images.push_back(e.get<int>());
  }

  if (auto it = doc.find("poset"); it != doc.end()) {
    if (it->is_string()) {
      std::filesystem::path ref = it->get<std::string>();
      if (ref.is_relative()) ref = base_dir / ref;
      out.poset = load_poset(ref);
    } else if (it->is_object()) {
      out.poset = poset_from_json(*it);
    } else {
      bad_input("\"poset\" must be a path string or an inline object");
    }
  }
  return out;
}

LoadedMap load_map(const std::filesystem::path& path) {
  return map_from_json(parse_json_file(path), path.parent_path());
}

namespace {

Grid grid_from_json(const json& doc) {
  if (!doc.is_object()) bad_input("\"grid\" must be an object");
  const std::string kind = require_string(doc, "kind");
  if (kind == "uniform") {
    return Grid::uniform_trapezoid(require_number(doc, "a"),
                                   require_number(doc, "b"),
                                   require_int(doc, "m"));
  }
  if (kind == "atoms") {
    return Grid::atoms(number_array(require(doc, "nodes"), "\"nodes\""),
                       number_array(require(doc, "weights"), "\"weights\""));
  }
  bad_input("unknown grid kind \"" + kind + "\"");
}

std::vector<double> g_from_json(const json& doc, int m) {
  if (!doc.is_object()) bad_input("\"g\" must be an object");
  const std::string kind = require_string(doc, "kind");
  if (kind == "constant") {
    return std::vector<double>(static_cast<std::size_t>(m),
                               require_number(doc, "value"));
  }
  if (kind == "samples") {
    auto values = number_array(require(doc, "values"), "\"g\" values");
    if (static_cast<int>(values.size()) != m) {
      bad_input("\"g\" samples must match the grid size");
    }
    return values;
  }
  bad_input("unknown g kind \"" + kind + "\"");
}

BaseKernel base_from_string(const std::string& s) {
  if (s == "constant") return BaseKernel::Constant;
  if (s == "exp_abs_diff") return BaseKernel::ExpAbsDiff;
  if (s == "product") return BaseKernel::Product;
  if (s == "gaussian") return BaseKernel::Gaussian;
  bad_input("unknown base kernel \"" + s + "\"");
}

BoundValues h_from_json(const json& doc) {
  if (!doc.is_object()) bad_input("\"h\" must be an object");
  const std::string kind = require_string(doc, "kind");
  BoundValues h;
  if (kind == "constant") {
    h.is_constant = true;
    h.constant = require_number(doc, "value");
    return h;
  }
  if (kind == "samples") {
    h.is_constant = false;
    const json& rows = require(doc, "values");
    if (!rows.is_array()) bad_input("\"h\" values must be an array of rows");
    for (const json& row : rows) {
      h.samples.push_back(number_array(row, "\"h\" row"));
    }
    return h;
  }
  bad_input("unknown h kind \"" + kind + "\"");
}

KernelSpec kernel_from_json(const json& doc) {
  if (!doc.is_object()) bad_input("\"kernel\" must be an object");
  KernelSpec k;
  const std::string name = require_string(doc, "name");
  const json& params = require(doc, "params");
  if (!params.is_object()) bad_input("kernel \"params\" must be an object");

  if (auto it = params.find("base"); it != params.end()) {
    k.base = base_from_string(it->get<std::string>());
  }
  if (auto it = params.find("sigma"); it != params.end()) {
    k.sigma = it->get<double>();
  }

  if (name == "linear") {
    k.form = KernelForm::Linear;
    k.lambda = require_number(params, "lambda");
  } else if (name == "saturating") {
    k.form = KernelForm::Saturating;
    k.a = require_number(params, "a");
    k.b = require_number(params, "b");
  } else if (name == "affine_positive_part") {
    k.form = KernelForm::AffinePositivePart;
    k.a = require_number(params, "a");
    if (auto it = params.find("c_scale"); it != params.end()) {
      k.offset_scale = it->get<double>();
    }
    if (auto it = params.find("c_base"); it != params.end()) {
      k.offset_base = base_from_string(it->get<std::string>());
    }
    if (auto it = params.find("c_sigma"); it != params.end()) {
      k.offset_sigma = it->get<double>();
    }
  } else if (name == "quadratic") {
    k.form = KernelForm::Quadratic;
    k.a = require_number(params, "a");
  } else {
    bad_input("unknown kernel \"" + name + "\"");
  }

  k.h = h_from_json(require(doc, "h"));
  k.growth_constant = require_number(doc, "M");
  return k;
}

}  // namespace

LoadedProblem problem_from_json(const json& doc) {
  if (!doc.is_object()) bad_input("problem config must be an object");
  LoadedProblem out;
  out.problem.grid = grid_from_json(require(doc, "grid"));
  out.problem.g = g_from_json(require(doc, "g"), out.problem.grid.size());
  out.problem.kernel = kernel_from_json(require(doc, "kernel"));
  if (auto it = doc.find("tol"); it != doc.end()) {
    out.problem.tol = it->get<double>();
  }
  if (auto it = doc.find("max_iter"); it != doc.end()) {
    out.problem.max_iter = it->get<int>();
  }
  const std::string branch = require_string(doc, "branch");
  if (branch == "nonnegative") {
    out.branch = Branch::Nonnegative;
  } else if (branch == "nonpositive") {
    out.branch = Branch::Nonpositive;
  } else {
    bad_input("unknown branch \"" + branch + "\"");
  }
  validate_problem(out.problem);
  return out;
}

LoadedProblem load_problem(const std::filesystem::path& path) {
  return problem_from_json(parse_json_file(path));
}

}  // namespace ordfix
