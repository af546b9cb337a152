#pragma once

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/risk/exact.hpp"

namespace uvest {

struct TruncationRisk {
  double risk_v = 0.0;
  double risk_variant = 0.0;
  double difference() const noexcept { return risk_variant - risk_v; }
};

/// Squared-error risks, for a single Poisson observation under the
/// GreaterThan rule, of V(x) = x 1{x >= m+1} and of the variant that also
/// estimates 0 at x = m+1. Neither dominates: the variant loses for moderate
/// theta and wins as theta -> 0.
inline TruncationRisk section3_truncation_risk(double theta, const ThresholdRule& rule) {
  if (rule.direction() != Direction::GreaterThan) {
    throw UnsupportedCombination("truncation experiment uses the GreaterThan rule");
  }
  const FamilyParam fam(FamilyKind::Poisson, theta);
  const double zeroed = rule.boundary_index() + 1.0;
  const auto risk_of = [&](bool variant) {
    return detail::discrete_expectation(fam, [&](double x) {
      const double estimate = (variant && x == zeroed) ? 0.0 : v_component(fam.kind(), rule, x);
      const double d = estimate - u_value(rule, x) * theta;
      return d * d;
    });
  };
  return {risk_of(false), risk_of(true)};
}

}  // namespace uvest
