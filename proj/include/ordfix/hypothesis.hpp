#pragma once

#include <stdexcept>
#include <string>

namespace ordfix {

// Fixed table of hypothesis names. Every domain failure surfaced to a caller
// (and ultimately to the CLI report) quotes one of these strings verbatim, so
// scripts can match on them.
namespace hypothesis {

inline constexpr const char* kWitness = "c ⪯ T(c) fails";
inline constexpr const char* kMapMonotone = "T monotone fails";
inline constexpr const char* kFamilyCommutes = "commuting family fails";
inline constexpr const char* kDirected = "J directed fails";
inline constexpr const char* kNonempty = "J nonempty fails";
inline constexpr const char* kGrowthBound = "|F(t,s,x)| ≤ h(t,s) + M|x| fails";
inline constexpr const char* kKernelMonotone = "F monotone in x fails";
inline constexpr const char* kSignNonnegative = "J(0) ≥ 0 fails";
inline constexpr const char* kSignNonpositive = "J(0) ≤ 0 fails";
inline constexpr const char* kGrowthConstant = "M ∈ [0,1/2) fails";
inline constexpr const char* kBoundNonnegative = "h(t,s) ≥ 0 fails";
inline constexpr const char* kBallDenominator =
    "1 − 2·M·max(1,√μ(Ω)) > 0 fails";
inline constexpr const char* kBallGuard = "‖J(x)‖ ≤ R fails";
inline constexpr const char* kTrajectoryUp = "x_{k+1} ≥ x_k fails";
inline constexpr const char* kTrajectoryDown = "x_{k+1} ≤ x_k fails";
inline constexpr const char* kConvergence =
    "convergence within max_iter fails";

}  // namespace hypothesis

/// A required hypothesis does not hold for the given inputs. `condition()` is
/// one of the fixed strings above; `detail()` carries the concrete witness.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const char* condition, std::string detail)
      : std::runtime_error(std::string(condition) + ": " + detail),
        condition_(condition),
        detail_(std::move(detail)) {}

  const char* condition() const noexcept { return condition_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  const char* condition_;
  std::string detail_;
};

}  // namespace ordfix
