#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace uvest {

enum class RiskMethod { Exact, MonteCarlo };

constexpr std::string_view to_string(RiskMethod method) noexcept {
  return method == RiskMethod::Exact ? "exact" : "monte_carlo";
}

// Paired Monte Carlo statistics that accompany a simulated RiskReport.
struct MonteCarloDetail {
  double se_v = 0.0;
  double se_v_star = 0.0;
  double se_improvement = 0.0;
  // Largest per-replicate loss(V*) - loss(V); <= 0 when V* dominates pathwise.
  double max_paired_difference = 0.0;
  double mean_v = 0.0;
  double mean_target = 0.0;
  // Standard error of the mean of V - target.
  double se_bias = 0.0;
};

/// Risks of V and V*, and their difference.
///
/// For exact squared-error reports risk_v_star == risk_v - improvement. For
/// Monte Carlo reports `std_error` is the standard error of the risk of the
/// estimator the caller asked about, and `detail` carries the rest.
struct RiskReport {
  double risk_v = 0.0;
  double risk_v_star = 0.0;
  double improvement = 0.0;
  RiskMethod method = RiskMethod::Exact;
  std::optional<double> std_error;
  std::optional<std::size_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<MonteCarloDetail> detail;
};

}  // namespace uvest
