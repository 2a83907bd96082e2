#include "ordfix/urysohn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ordfix/hypothesis.hpp"

namespace ordfix {
namespace {

void check_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) + " has a non-finite "
                                  "entry at index " + std::to_string(i));
    }
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// ‖h‖ over node pairs: sqrt(Σᵢⱼ wᵢ wⱼ h(tᵢ,tⱼ)²).
double bound_pair_norm(const Grid& grid, const BoundValues& h) {
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    for (int j = 0; j < grid.size(); ++j) {
      const double v = h.at(i, j);
      acc += grid.weights[static_cast<std::size_t>(i)] *
             grid.weights[static_cast<std::size_t>(j)] * v * v;
    }
  }
  return std::sqrt(acc);
}

double step_norm(const Grid& grid, std::span<const double> a,
                 std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += grid.weights[i] * d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

Grid Grid::uniform_trapezoid(double a, double b, int m) {
  if (m < 2) {
    throw std::invalid_argument("uniform trapezoid grid needs at least two "
                                "nodes, got " + std::to_string(m));
  }
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a)) {
    throw std::invalid_argument("domain endpoints must be finite with b > a");
  }
  Grid g;
  g.nodes.resize(static_cast<std::size_t>(m));
  g.weights.resize(static_cast<std::size_t>(m));
  const double h = (b - a) / (m - 1);
  for (int i = 0; i < m; ++i) {
    g.nodes[static_cast<std::size_t>(i)] = a + h * i;
    g.weights[static_cast<std::size_t>(i)] = h;
  }
  g.nodes.back() = b;
  g.weights.front() = h / 2;
  g.weights.back() = h / 2;
  return g;
}

Grid Grid::atoms(std::vector<double> nodes, std::vector<double> weights) {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw std::invalid_argument(
        "atom grid needs matching nonempty node and weight lists");
  }
  check_finite(nodes, "atom nodes");
  check_finite(weights, "atom weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) {
      throw std::invalid_argument("quadrature weight at index " +
                                  std::to_string(i) + " is negative");
    }
  }
  Grid g;
  g.nodes = std::move(nodes);
  g.weights = std::move(weights);
  return g;
}

double Grid::total_weight() const {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return acc;
}

double weighted_l2_norm(const Grid& grid, std::span<const double> x) {
  if (x.size() != grid.nodes.size()) {
    throw std::invalid_argument("vector length does not match the grid");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += grid.weights[i] * x[i] * x[i];
  }
  return std::sqrt(acc);
}

const char* to_string(BaseKernel base) {
  switch (base) {
    case BaseKernel::Constant: return "constant";
    case BaseKernel::ExpAbsDiff: return "exp_abs_diff";
    case BaseKernel::Product: return "product";
    case BaseKernel::Gaussian: return "gaussian";
  }
  return "?";
}

const char* to_string(KernelForm form) {
  switch (form) {
    case KernelForm::Linear: return "linear";
    case KernelForm::Saturating: return "saturating";
    case KernelForm::AffinePositivePart: return "affine_positive_part";
    case KernelForm::Quadratic: return "quadratic";
  }
  return "?";
}

const char* to_string(Branch branch) {
  return branch == Branch::Nonnegative ? "nonnegative" : "nonpositive";
}

namespace {
double eval_base(BaseKernel base, double sigma, double t, double s) {
  switch (base) {
    case BaseKernel::Constant:
      return 1.0;
    case BaseKernel::ExpAbsDiff:
      return std::exp(-std::abs(t - s));
    case BaseKernel::Product:
      return t * s;
    case BaseKernel::Gaussian: {
      const double d = (t - s) / sigma;
      return std::exp(-0.5 * d * d);
    }
  }
  return 0.0;
}
}  // namespace

double KernelSpec::base_value(double t, double s) const {
  return eval_base(base, sigma, t, s);
}

double KernelSpec::offset_value(double t, double s) const {
  return offset_scale * eval_base(offset_base, offset_sigma, t, s);
}

double KernelSpec::value(double t, double s, double x) const {
  const double k = base_value(t, s);
  switch (form) {
    case KernelForm::Linear:
      return lambda * k * x;
    case KernelForm::Saturating:
      return a * k * std::tanh(b * x) / b;
    case KernelForm::AffinePositivePart:
      return a * k * std::max(x, 0.0) + offset_value(t, s);
    case KernelForm::Quadratic:
      return a * k * x * x;
  }
  return 0.0;
}

double KernelSpec::linear_coefficient(double t, double s) const {
  if (!linear_in_x()) {
    throw std::invalid_argument("kernel form " + std::string(to_string(form)) +
                                " is not linear in x");
  }
  return lambda * base_value(t, s);
}

void validate_problem(const UrysohnProblem& prob) {
  const int m = prob.grid.size();
  if (m == 0) throw std::invalid_argument("grid is empty");
  if (static_cast<int>(prob.g.size()) != m) {
    throw std::invalid_argument("g has " + std::to_string(prob.g.size()) +
                                " samples for a grid of " + std::to_string(m) +
                                " nodes");
  }
  check_finite(prob.g, "g");
  if (!(prob.tol > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (prob.max_iter < 1) {
    throw std::invalid_argument("max_iter must be at least 1");
  }

  const KernelSpec& k = prob.kernel;
  if (!(k.growth_constant >= 0.0) || !(k.growth_constant < 0.5)) {
    throw HypothesisError(hypothesis::kGrowthConstant,
                          "growth constant M = " + fmt(k.growth_constant));
  }
  if (k.form == KernelForm::Saturating && !(k.b > 0)) {
    throw std::invalid_argument("saturating kernel needs steepness b > 0");
  }
  if ((k.base == BaseKernel::Gaussian && !(k.sigma > 0)) ||
      (k.form == KernelForm::AffinePositivePart &&
       k.offset_base == BaseKernel::Gaussian && !(k.offset_sigma > 0))) {
    throw std::invalid_argument("Gaussian base kernel needs sigma > 0");
  }

  if (k.h.is_constant) {
    if (!std::isfinite(k.h.constant)) {
      throw std::invalid_argument("bound h must be finite");
    }
    if (k.h.constant < 0) {
      throw HypothesisError(hypothesis::kBoundNonnegative,
                            "constant h = " + fmt(k.h.constant));
    }
  } else {
    if (static_cast<int>(k.h.samples.size()) != m) {
      throw std::invalid_argument("h samples must form an m×m matrix");
    }
    for (int i = 0; i < m; ++i) {
      const auto& row = k.h.samples[static_cast<std::size_t>(i)];
      if (static_cast<int>(row.size()) != m) {
        throw std::invalid_argument("h samples must form an m×m matrix");
      }
      for (int j = 0; j < m; ++j) {
        const double v = row[static_cast<std::size_t>(j)];
        if (!std::isfinite(v)) {
          throw std::invalid_argument("bound h must be finite");
        }
        if (v < 0) {
          throw HypothesisError(hypothesis::kBoundNonnegative,
                                "h(" + std::to_string(i) + "," +
                                    std::to_string(j) + ") = " + fmt(v));
        }
      }
    }
  }
}

std::vector<double> apply_operator(const UrysohnProblem& prob,
                                   std::span<const double> y) {
  const int m = prob.grid.size();
  if (static_cast<int>(y.size()) != m) {
    throw std::invalid_argument("operator input has wrong length");
  }
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double t = prob.grid.nodes[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      acc += prob.grid.weights[static_cast<std::size_t>(j)] *
             prob.kernel.value(t, prob.grid.nodes[static_cast<std::size_t>(j)],
                               y[static_cast<std::size_t>(j)]);
    }
    const double v = prob.g[static_cast<std::size_t>(i)] + acc;
    if (!std::isfinite(v)) {
      throw std::runtime_error("operator output is not finite at node index " +
                               std::to_string(i));
    }
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

SamplingPlan default_sampling_plan(double radius) {
  SamplingPlan plan;
  plan.xs.push_back(0.0);
  for (int i = 0; i <= 12; ++i) {
    const double v = radius * std::pow(2.0, -i);
    if (v == 0.0) break;
    plan.xs.push_back(v);
    plan.xs.push_back(-v);
  }
  std::sort(plan.xs.begin(), plan.xs.end());
  plan.xs.erase(std::unique(plan.xs.begin(), plan.xs.end()), plan.xs.end());
  return plan;
}

GrowthCheckResult check_growth_bound(const UrysohnProblem& prob,
                                     const SamplingPlan& plan) {
  GrowthCheckResult result;
  result.worst_margin = -std::numeric_limits<double>::infinity();
  const int m = prob.grid.size();
  const double M = prob.kernel.growth_constant;
  for (int i = 0; i < m; ++i) {
    const double t = prob.grid.nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const double s = prob.grid.nodes[static_cast<std::size_t>(j)];
      const double hij = prob.kernel.h.at(i, j);
      for (double x : plan.xs) {
        const double f = std::abs(prob.kernel.value(t, s, x));
        const double bound = hij + M * std::abs(x);
        const double margin = f - bound;
        if (margin > result.worst_margin) {
          result.worst_margin = margin;
          result.t_index = i;
          result.s_index = j;
          result.x = x;
        }
        if (bound > 0) result.worst_ratio = std::max(result.worst_ratio, f / bound);
      }
    }
  }
  result.pass = result.worst_margin <= 0.0;
  return result;
}

MonotoneCheckResult check_kernel_monotone(const UrysohnProblem& prob,
                                          const SamplingPlan& plan) {
  MonotoneCheckResult result;
  const int m = prob.grid.size();
  for (int i = 0; i < m; ++i) {
    const double t = prob.grid.nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const double s = prob.grid.nodes[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k + 1 < plan.xs.size(); ++k) {
        if (prob.kernel.value(t, s, plan.xs[k]) >
            prob.kernel.value(t, s, plan.xs[k + 1])) {
          result.pass = false;
          result.t_index = i;
          result.s_index = j;
          result.x_lo = plan.xs[k];
          result.x_hi = plan.xs[k + 1];
          return result;
        }
      }
    }
  }
  return result;
}

SignCondition sign_condition(const UrysohnProblem& prob) {
  const std::vector<double> zero(static_cast<std::size_t>(prob.grid.size()),
                                 0.0);
  const std::vector<double> j0 = apply_operator(prob, zero);
  SignCondition sign{true, true};
  for (double v : j0) {
    if (v < 0) sign.nonnegative = false;
    if (v > 0) sign.nonpositive = false;
  }
  return sign;
}

double ball_radius(const UrysohnProblem& prob) {
  const double norm_g = weighted_l2_norm(prob.grid, prob.g);
  const double norm_h = bound_pair_norm(prob.grid, prob.kernel.h);
  const double scale = std::max(1.0, std::sqrt(prob.grid.total_weight()));
  const double denom = 1.0 - 2.0 * prob.kernel.growth_constant * scale;
  if (denom <= 0) {
    throw HypothesisError(hypothesis::kBallDenominator,
                          "M = " + fmt(prob.kernel.growth_constant) +
                              ", total weight = " +
                              fmt(prob.grid.total_weight()));
  }
  return (norm_g + norm_h) / denom;
}

HypothesisChecks run_hypothesis_checks(const UrysohnProblem& prob) {
  validate_problem(prob);
  HypothesisChecks checks;
  checks.ball_radius = ball_radius(prob);
  const SamplingPlan plan = default_sampling_plan(checks.ball_radius);
  checks.growth = check_growth_bound(prob, plan);
  checks.monotone = check_kernel_monotone(prob, plan);
  checks.sign = sign_condition(prob);
  return checks;
}

SolveReport solve_branch(const UrysohnProblem& prob, Branch branch) {
  const HypothesisChecks checks = run_hypothesis_checks(prob);
  if (!checks.growth.pass) {
    throw HypothesisError(
        hypothesis::kGrowthBound,
        "worst violation " + fmt(checks.growth.worst_margin) + " at (t,s,x) = (" +
            fmt(prob.grid.nodes[static_cast<std::size_t>(checks.growth.t_index)]) +
            ", " +
            fmt(prob.grid.nodes[static_cast<std::size_t>(checks.growth.s_index)]) +
            ", " + fmt(checks.growth.x) + ")");
  }
  if (!checks.monotone.pass) {
    throw HypothesisError(
        hypothesis::kKernelMonotone,
        "F decreases between x = " + fmt(checks.monotone.x_lo) + " and x = " +
            fmt(checks.monotone.x_hi) + " at (t,s) = (" +
            fmt(prob.grid.nodes[static_cast<std::size_t>(checks.monotone.t_index)]) +
            ", " +
            fmt(prob.grid.nodes[static_cast<std::size_t>(checks.monotone.s_index)]) +
            ")");
  }
  const bool up = branch == Branch::Nonnegative;
  if (up && !checks.sign.nonnegative) {
    throw HypothesisError(hypothesis::kSignNonnegative,
                          "J(0) has a negative component; the nonnegative "
                          "branch is unavailable");
  }
  if (!up && !checks.sign.nonpositive) {
    throw HypothesisError(hypothesis::kSignNonpositive,
                          "J(0) has a positive component; the nonpositive "
                          "branch is unavailable");
  }

  const double radius = checks.ball_radius;
  SolveReport report;
  report.branch = branch;
  report.checks = checks;
  report.ball_radius = radius;

  std::vector<double> x(static_cast<std::size_t>(prob.grid.size()), 0.0);
  report.iterates.push_back(x);

  bool converged = false;
  for (int k = 0; k < prob.max_iter; ++k) {
    std::vector<double> next = apply_operator(prob, x);

    for (std::size_t i = 0; i < next.size(); ++i) {
      const bool ok = up ? next[i] >= x[i] : next[i] <= x[i];
      if (!ok) {
        throw HypothesisError(
            up ? hypothesis::kTrajectoryUp : hypothesis::kTrajectoryDown,
            "component " + std::to_string(i) + " at iteration " +
                std::to_string(k + 1) + " moved from " + fmt(x[i]) + " to " +
                fmt(next[i]) +
                "; the kernel is not monotone on the trajectory");
      }
    }
    const double norm = weighted_l2_norm(prob.grid, next);
    if (norm > radius) {
      throw HypothesisError(hypothesis::kBallGuard,
                            "iterate norm " + fmt(norm) +
                                " left the invariant ball of radius " +
                                fmt(radius) + " at iteration " +
                                std::to_string(k + 1));
    }

    const double step = step_norm(prob.grid, next, x);
    report.step_norms.push_back(step);
    report.iterates.push_back(next);
    x = std::move(next);
    if (step <= prob.tol) {
      report.iterations = k + 1;
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw HypothesisError(hypothesis::kConvergence,
                          "no convergence after " +
                              std::to_string(prob.max_iter) +
                              " iterations; last step " +
                              fmt(report.step_norms.back()));
  }

  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool ok = up ? x[i] >= 0.0 : x[i] <= 0.0;
    if (!ok) {
      throw std::logic_error("solution component " + std::to_string(i) +
                             " violates the branch sign");
    }
  }

  report.solution = x;
  report.residual = residual(prob, x);
  return report;
}

double residual(const UrysohnProblem& prob, std::span<const double> x) {
  const std::vector<double> jx = apply_operator(prob, x);
  return step_norm(prob.grid, x, jx);
}

std::vector<double> linear_oracle(const UrysohnProblem& prob) {
  validate_problem(prob);
  if (!prob.kernel.linear_in_x()) {
    throw std::invalid_argument(
        "the direct oracle requires a kernel linear in x, got form " +
        std::string(to_string(prob.kernel.form)));
  }
  const int m = prob.grid.size();
  Eigen::MatrixXd system(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const double t = prob.grid.nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const double s = prob.grid.nodes[static_cast<std::size_t>(j)];
      system(i, j) = (i == j ? 1.0 : 0.0) -
                     prob.kernel.linear_coefficient(t, s) *
                         prob.grid.weights[static_cast<std::size_t>(j)];
    }
    rhs(i) = prob.g[static_cast<std::size_t>(i)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw std::runtime_error("discretized linear system is singular");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + m);
}

}  // namespace ordfix
