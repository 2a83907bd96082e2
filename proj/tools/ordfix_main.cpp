// ordfix — command-line front end for the poset fixed-point cores and the
// integral-equation solver. All machine output is a single JSON document on
// stdout with fixed key order and 17-significant-digit floats, so identical
// inputs produce byte-identical reports. Human-readable notes go to stderr.
//
// Exit codes: 0 success, 1 domain failure (a required hypothesis does not
// hold; the report names it verbatim), 2 malformed input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ordfix/enumerate.hpp"
#include "ordfix/fixpoint.hpp"
#include "ordfix/hypothesis.hpp"
#include "ordfix/json_io.hpp"
#include "ordfix/json_writer.hpp"
#include "ordfix/poset.hpp"
#include "ordfix/urysohn.hpp"

namespace {

using namespace ordfix;

void emit(const JsonWriter& w) { std::cout << w.str() << "\n"; }

void emit_error(const char* kind, const std::string& detail,
                const char* violated = nullptr) {
  JsonWriter w;
  w.begin_object();
  w.key("error");
  w.value(kind);
  if (violated != nullptr) {
    w.key("violated");
    w.begin_array();
    w.value(violated);
    w.end_array();
  }
  w.key("detail");
  w.value(detail);
  w.end_object();
  emit(w);
}

void write_members(JsonWriter& w, const Subset& s) {
  w.begin_array();
  for (int x : s.members()) w.value(x);
  w.end_array();
}

struct PosetArgs {
  std::string poset_path;
};

FinitePoset resolve_poset(const std::string& poset_path,
                          const std::optional<FinitePoset>& embedded,
                          const std::string& embedded_origin) {
  if (!poset_path.empty()) {
    FinitePoset p = load_poset(poset_path);
    if (embedded && !p.same_relation(*embedded)) {
      throw std::invalid_argument("poset from --poset disagrees with the one "
                                  "embedded in " + embedded_origin);
    }
    return p;
  }
  if (embedded) return *embedded;
  throw std::invalid_argument("no poset given: pass --poset or embed one in " +
                              embedded_origin);
}

// ---------------------------------------------------------------------------

int cmd_poset_check(const std::string& poset_path) {
  FinitePoset p = load_poset(poset_path);
  JsonWriter w;
  w.begin_object();
  w.key("valid");
  w.value(true);
  w.key("n");
  w.value(p.size());
  w.end_object();
  emit(w);
  std::cerr << "poset OK: " << p.size() << " elements\n";
  return 0;
}

int cmd_poset_sup(const std::string& poset_path,
                  const std::vector<int>& elements) {
  FinitePoset p = load_poset(poset_path);
  Subset j(p.size());
  for (int x : elements) j.add(x);  // out_of_range on bad indices

  const bool directed = is_directed(p, j);
  const std::optional<int> sup = supremum(p, j);
  std::optional<int> via;
  if (directed && !j.empty()) via = supremum_via_intervals(p, j);

  JsonWriter w;
  w.begin_object();
  w.key("n");
  w.value(p.size());
  w.key("subset");
  write_members(w, j);
  w.key("directed");
  w.value(directed);
  w.key("supremum");
  sup ? w.value(*sup) : w.null();
  w.key("supremum_via_intervals");
  via ? w.value(*via) : w.null();
  w.end_object();
  emit(w);
  return 0;
}

int cmd_fix_orbit(const std::string& poset_path, const std::string& map_path,
                  int start) {
  LoadedMap loaded = load_map(map_path);
  FinitePoset p = resolve_poset(poset_path, loaded.poset, map_path);
  if (!check_monotone(p, loaded.map)) {
    throw HypothesisError(hypothesis::kMapMonotone,
                          "map from " + map_path + " is not monotone");
  }
  FixedPointReport rep = orbit_fixed_point(p, loaded.map, start);

  JsonWriter w;
  w.begin_object();
  w.key("start");
  w.value(rep.witness);
  w.key("orbit");
  w.begin_array();
  for (int x : rep.trace) w.value(x);
  w.end_array();
  w.key("steps");
  w.value(rep.steps);
  w.key("result");
  w.value(rep.result);
  w.key("fixed_points");
  write_members(w, rep.fixed_points);
  w.key("maximal_fixed_points");
  write_members(w, rep.maximal_fixed_points);
  w.end_object();
  emit(w);
  std::cerr << "orbit stabilized at element " << rep.result << " after "
            << rep.steps << " step(s)\n";
  return 0;
}

int cmd_fix_family(const std::string& poset_path,
                   const std::vector<std::string>& family_paths, int start) {
  MapFamily family;
  std::optional<FinitePoset> embedded;
  std::string embedded_origin = family_paths.front();
  for (const std::string& path : family_paths) {
    LoadedMap loaded = load_map(path);
    if (loaded.poset) {
      if (embedded && !embedded->same_relation(*loaded.poset)) {
        throw std::invalid_argument("family members embed different posets");
      }
      if (!embedded) {
        embedded = loaded.poset;
        embedded_origin = path;
      }
    }
    family.maps.push_back(std::move(loaded.map));
  }
  FinitePoset p = resolve_poset(poset_path, embedded, embedded_origin);

  for (std::size_t i = 0; i < family.maps.size(); ++i) {
    if (!check_monotone(p, family.maps[i])) {
      throw HypothesisError(hypothesis::kMapMonotone,
                            "map from " + family_paths[i] +
                                " is not monotone");
    }
  }
  if (!check_commuting(p, family)) {
    throw HypothesisError(hypothesis::kFamilyCommutes,
                          "two family members disagree on some composition");
  }
  FixedPointReport rep = common_fixed_point(p, family, start);

  JsonWriter w;
  w.begin_object();
  w.key("start");
  w.value(rep.witness);
  w.key("closure");
  w.begin_array();
  for (int x : rep.trace) w.value(x);
  w.end_array();
  w.key("result");
  w.value(rep.result);
  w.key("common_fixed_points");
  write_members(w, rep.fixed_points);
  w.key("maximal_common_fixed_points");
  write_members(w, rep.maximal_fixed_points);
  w.end_object();
  emit(w);
  std::cerr << "common fixed point: element " << rep.result << "\n";
  return 0;
}

int cmd_verify(int n) {
  VerificationReport rep = exhaustive_verify(n);
  JsonWriter w;
  w.begin_object();
  w.key("n");
  w.value(rep.n_max);
  w.key("posets");
  w.value(rep.posets);
  w.key("cases");
  w.value(rep.cases);
  w.key("failures");
  w.begin_array();
  for (const VerifyFailure& f : rep.failures) {
    w.begin_object();
    w.key("check");
    w.value(f.check);
    w.key("n");
    w.value(f.n);
    w.key("poset_index");
    w.value(f.poset_index);
    w.key("detail");
    w.value(f.detail);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(w);
  std::cerr << "verified " << rep.cases << " cases over " << rep.posets
            << " posets, " << rep.failures.size() << " failure(s)\n";
  return rep.failures.empty() ? 0 : 1;
}

void write_checks(JsonWriter& w, const UrysohnProblem& prob,
                  const HypothesisChecks& checks) {
  w.key("checks");
  w.begin_object();
  w.key("growth_bound");
  w.begin_object();
  w.key("pass");
  w.value(checks.growth.pass);
  w.key("worst_margin");
  w.value(checks.growth.worst_margin);
  w.key("worst_ratio");
  w.value(checks.growth.worst_ratio);
  w.key("t");
  w.value(prob.grid.nodes[static_cast<std::size_t>(checks.growth.t_index)]);
  w.key("s");
  w.value(prob.grid.nodes[static_cast<std::size_t>(checks.growth.s_index)]);
  w.key("x");
  w.value(checks.growth.x);
  w.end_object();
  w.key("kernel_monotone");
  w.begin_object();
  w.key("pass");
  w.value(checks.monotone.pass);
  if (!checks.monotone.pass) {
    w.key("t");
    w.value(
        prob.grid.nodes[static_cast<std::size_t>(checks.monotone.t_index)]);
    w.key("s");
    w.value(
        prob.grid.nodes[static_cast<std::size_t>(checks.monotone.s_index)]);
    w.key("x_lo");
    w.value(checks.monotone.x_lo);
    w.key("x_hi");
    w.value(checks.monotone.x_hi);
  }
  w.end_object();
  w.key("sign_condition");
  w.begin_object();
  w.key("nonnegative");
  w.value(checks.sign.nonnegative);
  w.key("nonpositive");
  w.value(checks.sign.nonpositive);
  w.end_object();
  w.end_object();
}

int cmd_urysohn_check(const std::string& config_path) {
  LoadedProblem loaded = load_problem(config_path);
  const HypothesisChecks checks = run_hypothesis_checks(loaded.problem);

  std::vector<const char*> violated;
  if (!checks.growth.pass) violated.push_back(hypothesis::kGrowthBound);
  if (!checks.monotone.pass) violated.push_back(hypothesis::kKernelMonotone);
  const bool branch_available = loaded.branch == Branch::Nonnegative
                                    ? checks.sign.nonnegative
                                    : checks.sign.nonpositive;
  if (!branch_available) {
    violated.push_back(loaded.branch == Branch::Nonnegative
                           ? hypothesis::kSignNonnegative
                           : hypothesis::kSignNonpositive);
  }

  JsonWriter w;
  w.begin_object();
  w.key("ball_radius");
  w.value(checks.ball_radius);
  write_checks(w, loaded.problem, checks);
  w.key("branch");
  w.value(to_string(loaded.branch));
  w.key("branch_available");
  w.value(branch_available);
  w.key("violated");
  w.begin_array();
  for (const char* v : violated) w.value(v);
  w.end_array();
  w.end_object();
  emit(w);
  std::cerr << (violated.empty() ? "all hypothesis checks passed\n"
                                 : "some hypothesis checks failed\n");
  return violated.empty() ? 0 : 1;
}

void dump_csv(const std::string& prefix, const UrysohnProblem& prob,
              const SolveReport& rep) {
  {
    std::ofstream out(prefix + ".solution.csv");
    if (!out) throw std::invalid_argument("cannot write CSV to " + prefix);
    out << "t,x\n";
    for (std::size_t i = 0; i < rep.solution.size(); ++i) {
      out << format_double(prob.grid.nodes[i]) << ","
          << format_double(rep.solution[i]) << "\n";
    }
  }
  {
    std::ofstream out(prefix + ".trace.csv");
    if (!out) throw std::invalid_argument("cannot write CSV to " + prefix);
    out << "iteration,step_norm\n";
    for (std::size_t k = 0; k < rep.step_norms.size(); ++k) {
      out << (k + 1) << "," << format_double(rep.step_norms[k]) << "\n";
    }
  }
}

int cmd_urysohn_solve(const std::string& config_path,
                      const std::string& csv_prefix, std::optional<double> tol,
                      std::optional<int> max_iter) {
  LoadedProblem loaded = load_problem(config_path);
  if (tol) loaded.problem.tol = *tol;
  if (max_iter) loaded.problem.max_iter = *max_iter;
  validate_problem(loaded.problem);

  const SolveReport rep = solve_branch(loaded.problem, loaded.branch);

  JsonWriter w;
  w.begin_object();
  w.key("branch");
  w.value(to_string(rep.branch));
  w.key("iterations");
  w.value(rep.iterations);
  w.key("tol");
  w.value(loaded.problem.tol);
  w.key("ball_radius");
  w.value(rep.ball_radius);
  w.key("residual");
  w.value(rep.residual);
  w.key("nodes");
  w.begin_array();
  for (double t : loaded.problem.grid.nodes) w.value(t);
  w.end_array();
  w.key("solution");
  w.begin_array();
  for (double x : rep.solution) w.value(x);
  w.end_array();
  w.key("trace");
  w.begin_array();
  for (double s : rep.step_norms) w.value(s);
  w.end_array();
  w.end_object();
  emit(w);

  if (!csv_prefix.empty()) dump_csv(csv_prefix, loaded.problem, rep);
  std::cerr << "converged in " << rep.iterations << " iteration(s), residual "
            << format_double(rep.residual) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ordfix: finite-poset fixed points and monotone integral-equation "
      "iteration"};
  app.require_subcommand(1);

  std::string poset_path, map_path, config_path, csv_prefix;
  std::vector<std::string> family_paths;
  std::vector<int> elements;
  int start = 0;
  int verify_n = 3;
  std::optional<double> tol_override;
  std::optional<int> max_iter_override;

  CLI::App* poset_check =
      app.add_subcommand("poset-check", "validate a poset file");
  poset_check->add_option("--poset", poset_path, "poset JSON file")
      ->required();

  CLI::App* poset_sup = app.add_subcommand(
      "poset-sup", "supremum of a subset, by scan and by intervals");
  poset_sup->add_option("--poset", poset_path, "poset JSON file")->required();
  poset_sup->add_option("elements", elements, "subset element indices");

  CLI::App* fix_orbit = app.add_subcommand(
      "fix-orbit", "least fixed point above a witness by orbit iteration");
  fix_orbit->add_option("--poset", poset_path, "poset JSON file");
  fix_orbit->add_option("--map", map_path, "map JSON file")->required();
  fix_orbit->add_option("--start", start, "witness element")->required();

  CLI::App* fix_family = app.add_subcommand(
      "fix-family", "common fixed point of a commuting family");
  fix_family->add_option("--poset", poset_path, "poset JSON file");
  fix_family->add_option("--family", family_paths, "map JSON file (repeat)")
      ->required();
  fix_family->add_option("--start", start, "shared witness element")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustive fixed-point checks over all small posets");
  verify->add_option("--n", verify_n, "largest poset size (1..5)");

  CLI::App* ury_check = app.add_subcommand(
      "urysohn-check", "hypothesis checks for an integral-equation config");
  ury_check->add_option("--config", config_path, "problem config JSON")
      ->required();

  CLI::App* ury_solve = app.add_subcommand(
      "urysohn-solve", "monotone iteration solve of an integral equation");
  ury_solve->add_option("--config", config_path, "problem config JSON")
      ->required();
  ury_solve->add_option("--csv", csv_prefix,
                        "write <prefix>.solution.csv and <prefix>.trace.csv");
  ury_solve->add_option("--tol", tol_override, "override config tolerance");
  ury_solve->add_option("--max-iter", max_iter_override,
                        "override config iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("input", e.what());
    app.exit(e);
    return 2;
  }

  try {
    if (poset_check->parsed()) return cmd_poset_check(poset_path);
    if (poset_sup->parsed()) return cmd_poset_sup(poset_path, elements);
    if (fix_orbit->parsed()) return cmd_fix_orbit(poset_path, map_path, start);
    if (fix_family->parsed())
      return cmd_fix_family(poset_path, family_paths, start);
    if (verify->parsed()) return cmd_verify(verify_n);
    if (ury_check->parsed()) return cmd_urysohn_check(config_path);
    if (ury_solve->parsed())
      return cmd_urysohn_solve(config_path, csv_prefix, tol_override,
                               max_iter_override);
  } catch (const HypothesisError& e) {
    std::cerr << "domain failure: " << e.what() << "\n";
    emit_error("hypothesis", e.detail(), e.condition());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    emit_error("input", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    emit_error("input", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    emit_error("internal", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit_error("runtime", e.what());
    return 1;
  }
  return 2;
}
