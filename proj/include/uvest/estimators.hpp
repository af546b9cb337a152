#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uvest/distributions.hpp"

namespace uvest {

/// Raised for (family, direction) pairs that have no estimator or formula.
class UnsupportedCombination : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Direction {
  AtMost,       ///< U(x) = 1{x <= A}
  GreaterThan,  ///< U(x) = 1{x > A}
};

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::AtMost ? "le" : "gt";
}

/// Threshold A >= 0 with a direction. Owns the discrete boundary index
/// m = floor(A) + 1, the first integer at which the AtMost indicator is 0.
class ThresholdRule {
 public:
  explicit ThresholdRule(double a, Direction direction = Direction::AtMost)
      : a_(a), direction_(direction) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("threshold A must be finite and >= 0");
    }
  }

  double threshold() const noexcept { return a_; }
  Direction direction() const noexcept { return direction_; }
  double boundary_index() const noexcept { return std::floor(a_) + 1.0; }

 private:
  double a_;
  Direction direction_;
};

/// The observed vector X = (X_1, ..., X_n), n >= 1.
class SampleBatch {
 public:
  explicit SampleBatch(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("sample batch must be nonempty");
  }
  SampleBatch(std::initializer_list<double> values) : SampleBatch(std::vector<double>(values)) {}

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  void validate(FamilyKind kind) const {
    for (double x : values_) check_support_point(kind, x);
  }

 private:
  std::vector<double> values_;
};

inline double u_value(const ThresholdRule& rule, double x) noexcept {
  const bool at_most = x <= rule.threshold();
  return (rule.direction() == Direction::AtMost ? at_most : !at_most) ? 1.0 : 0.0;
}

/// Per-unit multiplier of U(X_j) in the estimand. For the geometric family
/// this is the mean t/(1-t): it is the scale that the geometric V estimates
/// without bias under the (1-t)t^x parameterization.
inline double target_scale(const FamilyParam& fam) noexcept {
  return fam.kind() == FamilyKind::Geometric ? fam.theta() / (1.0 - fam.theta()) : fam.theta();
}

inline bool supports(FamilyKind kind, Direction direction) noexcept {
  return direction == Direction::AtMost || kind == FamilyKind::Poisson;
}

inline void require_supported(FamilyKind kind, Direction direction) {
  if (!supports(kind, direction)) {
    throw UnsupportedCombination("no V estimator for family " + std::string(to_string(kind)) +
                                 " with direction " + std::string(to_string(direction)));
  }
}

/// S(X, theta) = sum_j U(X_j) * scale(theta_j). Needs theta; oracle use only.
inline double estimand_s(const ThresholdRule& rule, std::span<const FamilyParam> fams,
                         std::span<const double> sample) {
  if (fams.size() != sample.size()) {
    throw std::invalid_argument("estimand_s: parameter and sample lengths differ");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    s += u_value(rule, sample[j]) * target_scale(fams[j]);
  }
  return s;
}

/// Robbins' unbiased estimator of U(x) * scale for one observation.
///
///   Poisson  (le): x U(x-1)        = x for 1 <= x <= m, else 0
///   Geometric(le): sum_{i<x} U(i)  = min(x, m)
///   Exponential  : int_0^x U       = min(x, A)
///   UniformScale : x U(x) + int U  = 2x for x <= A, else A
///   Poisson  (gt): x U(x-1)        = x for x >= m+1, else 0
inline double v_component(FamilyKind kind, const ThresholdRule& rule, double x) {
  require_supported(kind, rule.direction());
  check_support_point(kind, x);
  const double a = rule.threshold();
  const double m = rule.boundary_index();
  if (rule.direction() == Direction::GreaterThan) {
    return x >= m + 1.0 ? x : 0.0;
  }
  switch (kind) {
    case FamilyKind::Poisson: return x <= m ? x : 0.0;
    case FamilyKind::Geometric: return std::min(x, m);
    case FamilyKind::Exponential: return std::min(x, a);
    case FamilyKind::UniformScale: return x <= a ? 2.0 * x : a;
  }
  return 0.0;
}

inline double v_aggregate(FamilyKind kind, const ThresholdRule& rule, std::span<const double> sample) {
  double v = 0.0;
  for (double x : sample) v += v_component(kind, rule, x);
  return v;
}

/// True on the set B where S vanishes for every theta: all X_j >= m for
/// discrete families, all X_j > A for continuous ones.
inline bool in_zero_set(FamilyKind kind, const ThresholdRule& rule, std::span<const double> sample) {
  if (rule.direction() != Direction::AtMost) {
    throw UnsupportedCombination("zero set is defined for the AtMost direction only");
  }
  const double a = rule.threshold();
  const double m = rule.boundary_index();
  for (double x : sample) {
    check_support_point(kind, x);
    const bool beyond = is_discrete(kind) ? x >= m : x > a;
    if (!beyond) return false;
  }
  return true;
}

/// The dominating estimator: V off B, 0 on B.
inline double v_star_aggregate(FamilyKind kind, const ThresholdRule& rule, std::span<const double> sample) {
  if (in_zero_set(kind, rule, sample)) return 0.0;
  return v_aggregate(kind, rule, sample);
}

inline double v_aggregate(FamilyKind kind, const ThresholdRule& rule, const SampleBatch& batch) {
  return v_aggregate(kind, rule, batch.values());
}

inline bool in_zero_set(FamilyKind kind, const ThresholdRule& rule, const SampleBatch& batch) {
  return in_zero_set(kind, rule, batch.values());
}

inline double v_star_aggregate(FamilyKind kind, const ThresholdRule& rule, const SampleBatch& batch) {
  return v_star_aggregate(kind, rule, batch.values());
}

}  // namespace uvest
