#pragma once

#include <span>
#include <string>
#include <vector>

namespace ordfix {

/// Quadrature grid standing in for a measure space: nodes on the real line
/// with nonnegative weights. Uniform trapezoid grids represent an interval;
/// explicit atoms emulate arbitrary finite measures (the discretization
/// always has finite total weight, whatever the underlying measure).
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;

  static Grid uniform_trapezoid(double a, double b, int m);
  static Grid atoms(std::vector<double> nodes, std::vector<double> weights);

  int size() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;
};

/// Weighted L² norm: sqrt(Σ wᵢ xᵢ²), summed in ascending index order.
double weighted_l2_norm(const Grid& grid, std::span<const double> x);

enum class BaseKernel { Constant, ExpAbsDiff, Product, Gaussian };
enum class KernelForm { Linear, Saturating, AffinePositivePart, Quadratic };

const char* to_string(BaseKernel base);
const char* to_string(KernelForm form);

/// The growth-bound function h, either a constant or per-node-pair samples.
struct BoundValues {
  bool is_constant = true;
  double constant = 0.0;
  std::vector<std::vector<double>> samples;  // [i][j] when not constant

  double at(int i, int j) const {
    return is_constant ? constant
                       : samples[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(j)];
  }
};

/// Declarative kernel F(t,s,x) from a fixed catalog:
///   linear:               λ·k(t,s)·x
///   saturating:           a·k(t,s)·tanh(b·x)/b
///   affine_positive_part: a·k(t,s)·max(x,0) + c(t,s)
///   quadratic:            a·k(t,s)·x²
/// with the base kernel k one of {constant 1, exp(−|t−s|), t·s, Gaussian}.
/// The catalog keeps configurations declarative; monotonicity and the growth
/// bound are still checked by sampling at solve time, so members that
/// violate them (negative λ, the quadratic form, ...) are constructible but
/// rejected by the hypothesis checks.
struct KernelSpec {
  KernelForm form = KernelForm::Linear;
  BaseKernel base = BaseKernel::Constant;
  double sigma = 1.0;  // Gaussian width of the base kernel

  double lambda = 0.0;  // linear coefficient
  double a = 0.0;       // saturating / affine / quadratic amplitude
  double b = 1.0;       // saturating steepness, > 0

  BaseKernel offset_base = BaseKernel::Constant;  // affine offset c(t,s)
  double offset_scale = 0.0;
  double offset_sigma = 1.0;

  BoundValues h;
  double growth_constant = 0.0;  // M in the bound |F| ≤ h + M|x|

  double base_value(double t, double s) const;
  double offset_value(double t, double s) const;
  double value(double t, double s, double x) const;

  bool linear_in_x() const { return form == KernelForm::Linear; }
  /// Coefficient of x for a linear kernel: λ·k(t,s).
  double linear_coefficient(double t, double s) const;
};

/// Discretized integral-equation problem: find x with
///   xᵢ = gᵢ + Σⱼ wⱼ · F(tᵢ, tⱼ, xⱼ).
struct UrysohnProblem {
  Grid grid;
  std::vector<double> g;
  KernelSpec kernel;
  double tol = 1e-10;  // absolute step tolerance in the weighted L² norm
  int max_iter = 10000;
};

/// Validates grid/data shapes and the kernel constants. Violations of the
/// growth-constant range or of h ≥ 0 raise HypothesisError; structural
/// problems (sizes, non-finite data) raise std::invalid_argument.
void validate_problem(const UrysohnProblem& prob);

/// One application of the integral operator:
/// out[i] = g[i] + Σⱼ w[j]·F(t[i], t[j], y[j]), summed ascending.
/// Non-finite output is reported with the offending node index.
std::vector<double> apply_operator(const UrysohnProblem& prob,
                                   std::span<const double> y);

/// x values at which the sampled hypothesis checks evaluate F. The default
/// plan is a symmetric geometric ladder {0, ±R·2⁻ⁱ : i = 0..12}; iterates
/// provably stay inside the R-ball, so nothing outside it matters.
struct SamplingPlan {
  std::vector<double> xs;  // ascending
};

SamplingPlan default_sampling_plan(double radius);

struct GrowthCheckResult {
  bool pass = true;
  double worst_margin = 0.0;  // max over samples of |F| − (h + M|x|)
  double worst_ratio = 0.0;   // max of |F| / (h + M|x|) where the bound > 0
  int t_index = -1;
  int s_index = -1;
  double x = 0.0;  // witness of the worst margin
};

struct MonotoneCheckResult {
  bool pass = true;
  int t_index = -1;
  int s_index = -1;
  double x_lo = 0.0;
  double x_hi = 0.0;  // first witness pair with F(x_lo) > F(x_hi)
};

/// Verifies |F(t,s,x)| ≤ h(t,s) + M|x| at every node pair and sample.
GrowthCheckResult check_growth_bound(const UrysohnProblem& prob,
                                     const SamplingPlan& plan);

/// Verifies F(t,s,·) is nondecreasing across adjacent samples.
MonotoneCheckResult check_kernel_monotone(const UrysohnProblem& prob,
                                          const SamplingPlan& plan);

struct SignCondition {
  bool nonnegative = false;  // J(0) ≥ 0 componentwise, exact comparison
  bool nonpositive = false;  // J(0) ≤ 0 componentwise
};

SignCondition sign_condition(const UrysohnProblem& prob);

/// Conservative invariant-ball radius
///   R = (‖g‖ + ‖h‖ₓ) / (1 − 2·M·max(1, √Σw)),
/// with ‖g‖ the weighted L² norm and ‖h‖ₓ the weighted L² norm over node
/// pairs. It is a divergence guard rather than a sharp constant; the solve
/// loop re-validates ‖J(x)‖ ≤ R at every iteration. A nonpositive
/// denominator rejects the configuration.
double ball_radius(const UrysohnProblem& prob);

enum class Branch { Nonnegative, Nonpositive };

const char* to_string(Branch branch);

struct HypothesisChecks {
  double ball_radius = 0.0;
  GrowthCheckResult growth;
  MonotoneCheckResult monotone;
  SignCondition sign;
};

/// Runs every sampled hypothesis check with the default plan.
HypothesisChecks run_hypothesis_checks(const UrysohnProblem& prob);

struct SolveReport {
  Branch branch = Branch::Nonnegative;
  int iterations = 0;
  std::vector<double> solution;
  double residual = 0.0;               // ‖x − J(x)‖ at the solution
  std::vector<double> step_norms;      // ‖x_{k+1} − x_k‖ per iteration
  std::vector<std::vector<double>> iterates;  // full trajectory, x₀ first
  HypothesisChecks checks;
  double ball_radius = 0.0;
};

/// Monotone successive approximation from x₀ = 0. The hypothesis checks and
/// the branch's sign condition must pass (they are re-run here; failures
/// raise HypothesisError). Each iteration asserts the trajectory is
/// componentwise nondecreasing (nonincreasing on the nonpositive branch) and
/// inside the R-ball; iteration stops when the weighted L² step drops to
/// tol. The reported solution matches the branch sign componentwise with
/// zero tolerance.
SolveReport solve_branch(const UrysohnProblem& prob, Branch branch);

/// Weighted L² norm of x − J(x).
double residual(const UrysohnProblem& prob, std::span<const double> x);

/// Independent direct solution for kernels linear in x: solves
/// (I − K·W)x = g with Kᵢⱼ = λ·k(tᵢ,sⱼ) and W = diag(w) by dense LU.
/// Exists to cross-check the iteration; production solves never call it.
std::vector<double> linear_oracle(const UrysohnProblem& prob);

}  // namespace ordfix
