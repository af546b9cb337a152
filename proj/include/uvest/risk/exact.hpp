#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/quadrature.hpp"
#include "uvest/risk/report.hpp"

namespace uvest {

/// Largest n for which unequal-theta Poisson improvements are summed over
/// all nonempty subsets.
inline constexpr std::size_t kMaxSubsetEnumeration = 20;

namespace detail {

// sum_{x >= 0} g(x) pmf(x) over a discrete family, truncated once the
// remaining mass is below kDefaultTailTolerance and the last term no longer
// moves the sum.
template <typename G>
double discrete_expectation(const FamilyParam& fam, G&& g, double from = 0.0) {
  const double cutoff = std::max(tail_cutoff(fam, kDefaultTailTolerance), from);
  double sum = 0.0;
  double x = from;
  for (;; x += 1.0) {
    const double term = g(x) * mass(fam, x);
    sum += term;
    if (x >= cutoff && std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    if (x > cutoff + 1000.0) break;
  }
  return sum;
}

inline void require_same_kind(std::span<const FamilyParam> fams) {
  if (fams.empty()) throw std::invalid_argument("need at least one component");
  for (const auto& f : fams) {
    if (f.kind() != fams.front().kind()) {
      throw std::invalid_argument("all components must share one family kind");
    }
  }
}

inline void require_at_most(const ThresholdRule& rule) {
  if (rule.direction() != Direction::AtMost) {
    throw UnsupportedCombination("improvement is defined for the AtMost direction only");
  }
}

}  // namespace detail

/// E[V(X)] for a single observation.
inline double expected_v_component(const FamilyParam& fam, const ThresholdRule& rule) {
  require_supported(fam.kind(), rule.direction());
  const double t = fam.theta();
  const double a = rule.threshold();
  const double m = rule.boundary_index();
  switch (fam.kind()) {
    case FamilyKind::Poisson:
      if (rule.direction() == Direction::GreaterThan) {
        return detail::discrete_expectation(fam, [](double x) { return x; }, m + 1.0);
      } else {
        double sum = 0.0;
        for (double x = 1.0; x <= m; x += 1.0) sum += x * mass(fam, x);
        return sum;
      }
    case FamilyKind::Geometric: {
      double sum = 0.0;
      for (double x = 1.0; x < m; x += 1.0) sum += x * mass(fam, x);
      return sum + m * survival(fam, m - 1.0);
    }
    case FamilyKind::Exponential:
      return integrate([&](double x) { return x * mass(fam, x); }, 0.0, a) + a * survival(fam, a);
    case FamilyKind::UniformScale: {
      const double upper = std::min(a, t);
      return integrate([&](double x) { return 2.0 * x / t; }, 0.0, upper) + a * survival(fam, a);
    }
  }
  return 0.0;
}

/// E[U(X) * scale(theta)] for a single observation.
inline double expected_estimand_component(const FamilyParam& fam, const ThresholdRule& rule) {
  const double a = rule.threshold();
  const double p = rule.direction() == Direction::AtMost ? cdf(fam, a) : survival(fam, a);
  return target_scale(fam) * p;
}

/// E[(V(X) - U(X) scale)^2] for one observation under squared error.
inline double exact_component_risk_v(const FamilyParam& fam, const ThresholdRule& rule) {
  require_supported(fam.kind(), rule.direction());
  const double t = fam.theta();
  const double a = rule.threshold();
  const double m = rule.boundary_index();
  const auto sq = [](double d) { return d * d; };
  switch (fam.kind()) {
    case FamilyKind::Poisson: {
      if (rule.direction() == Direction::GreaterThan) {
        const double below = sq(t) * mass(fam, m);  // V = 0 while S = t at x = m
        const double above =
            detail::discrete_expectation(fam, [&](double x) { return sq(x - t); }, m + 1.0);
        return below + above;
      }
      double sum = 0.0;
      for (double x = 0.0; x < m; x += 1.0) sum += sq(x - t) * mass(fam, x);
      return sum + sq(m) * mass(fam, m);
    }
    case FamilyKind::Geometric: {
      const double mu = target_scale(fam);
      double sum = 0.0;
      for (double x = 0.0; x < m; x += 1.0) sum += sq(x - mu) * mass(fam, x);
      return sum + sq(m) * survival(fam, m - 1.0);
    }
    case FamilyKind::Exponential:
      return integrate([&](double x) { return sq(x - t) * mass(fam, x); }, 0.0, a) +
             sq(a) * survival(fam, a);
    case FamilyKind::UniformScale:
      if (t <= a) {
        return integrate([&](double x) { return sq(2.0 * x - t) / t; }, 0.0, t);
      }
      return integrate([&](double x) { return sq(2.0 * x - t) / t; }, 0.0, a) +
             sq(a) * (t - a) / t;
  }
  return 0.0;
}

/// Squared-error risk of V(X) = sum_j V(X_j). The per-component errors are
/// independent with mean zero, so the risk is additive.
inline double exact_risk_v(std::span<const FamilyParam> fams, const ThresholdRule& rule) {
  detail::require_same_kind(fams);
  double sum = 0.0;
  for (const auto& f : fams) sum += exact_component_risk_v(f, rule);
  return sum;
}

/// risk(V) - risk(V*) = E[V^2 1_B] under squared error.
inline double improvement_exact(std::span<const FamilyParam> fams, const ThresholdRule& rule) {
  detail::require_same_kind(fams);
  detail::require_at_most(rule);
  const double a = rule.threshold();
  const double m = rule.boundary_index();
  const auto n = static_cast<double>(fams.size());
  switch (fams.front().kind()) {
    case FamilyKind::Poisson: {
      // On B each component contributes m when X_j = m and 0 when X_j > m,
      // so V = m |T| for T = {j : X_j = m}.
      const bool equal = std::all_of(fams.begin(), fams.end(), [&](const FamilyParam& f) {
        return f.theta() == fams.front().theta();
      });
      if (equal) {
        const double p = mass(fams.front(), m);
        const double r = survival(fams.front(), m);
        const std::size_t count = fams.size();
        double sum = 0.0;
        double binom = 1.0;
        for (std::size_t i = 1; i <= count; ++i) {
          binom = binom * static_cast<double>(count - i + 1) / static_cast<double>(i);
          const double v = static_cast<double>(i) * m;
          sum += v * v * binom * std::pow(p, static_cast<double>(i)) *
                 std::pow(r, static_cast<double>(count - i));
        }
        return sum;
      }
      if (fams.size() > kMaxSubsetEnumeration) {
        throw std::invalid_argument("unequal-theta Poisson improvement needs n <= 20");
      }
      std::vector<double> p(fams.size());
      std::vector<double> r(fams.size());
      for (std::size_t j = 0; j < fams.size(); ++j) {
        p[j] = mass(fams[j], m);
        r[j] = survival(fams[j], m);
      }
      double sum = 0.0;
      const std::uint64_t subsets = std::uint64_t{1} << fams.size();
      for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        double prob = 1.0;
        for (std::size_t j = 0; j < fams.size(); ++j) {
          prob *= (mask >> j & 1U) ? p[j] : r[j];
        }
        const double v = static_cast<double>(std::popcount(mask)) * m;
        sum += v * v * prob;
      }
      return sum;
    }
    case FamilyKind::Geometric: {
      double prob = 1.0;
      for (const auto& f : fams) prob *= survival(f, m - 1.0);
      return (n * m) * (n * m) * prob;
    }
    case FamilyKind::Exponential:
    case FamilyKind::UniformScale: {
      double prob = 1.0;
      for (const auto& f : fams) prob *= survival(f, a);
      return (n * a) * (n * a) * prob;
    }
  }
  return 0.0;
}

inline double exact_risk_v_star(std::span<const FamilyParam> fams, const ThresholdRule& rule) {
  detail::require_at_most(rule);
  return std::max(0.0, exact_risk_v(fams, rule) - improvement_exact(fams, rule));
}

inline RiskReport exact_risk_report(std::span<const FamilyParam> fams, const ThresholdRule& rule) {
  RiskReport report;
  report.method = RiskMethod::Exact;
  report.risk_v = exact_risk_v(fams, rule);
  report.improvement = improvement_exact(fams, rule);
  report.risk_v_star = std::max(0.0, report.risk_v - report.improvement);
  return report;
}

}  // namespace uvest
