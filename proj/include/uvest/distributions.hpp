#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uvest/random.hpp"

namespace uvest {

enum class FamilyKind { Poisson, Geometric, Exponential, UniformScale };

constexpr bool is_discrete(FamilyKind kind) noexcept {
  return kind == FamilyKind::Poisson || kind == FamilyKind::Geometric;
}

constexpr std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Poisson: return "poisson";
    case FamilyKind::Geometric: return "geometric";
    case FamilyKind::Exponential: return "exponential";
    case FamilyKind::UniformScale: return "uniform";
  }
  return "unknown";
}

inline std::optional<FamilyKind> parse_family(std::string_view name) noexcept {
  if (name == "poisson") return FamilyKind::Poisson;
  if (name == "geometric") return FamilyKind::Geometric;
  if (name == "exponential") return FamilyKind::Exponential;
  if (name == "uniform" || name == "uniformscale") return FamilyKind::UniformScale;
  return std::nullopt;
}

constexpr bool valid_theta(FamilyKind kind, double theta) noexcept {
  if (!(theta > 0.0) || theta == std::numeric_limits<double>::infinity()) return false;
  return kind != FamilyKind::Geometric || theta < 1.0;
}

/// A distribution family together with its parameter.
///
/// Poisson:      e^{-t} t^x / x!          x = 0, 1, ...
/// Geometric:    (1 - t) t^x              x = 0, 1, ...   (0 < t < 1)
/// Exponential:  (1/t) e^{-x/t}           x > 0
/// UniformScale: 1/t                      0 < x < t
class FamilyParam {
 public:
  FamilyParam(FamilyKind kind, double theta) : kind_(kind), theta_(theta) {
    if (!valid_theta(kind, theta)) {
      throw std::invalid_argument("invalid theta " + std::to_string(theta) + " for " +
                                  std::string(to_string(kind)) + " family");
    }
  }

  FamilyKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  bool discrete() const noexcept { return is_discrete(kind_); }

  friend bool operator==(const FamilyParam&, const FamilyParam&) = default;

 private:
  FamilyKind kind_;
  double theta_;
};

/// Throws std::domain_error unless x is a valid support point type for the
/// family: a nonnegative integer for discrete families, a nonnegative real
/// otherwise.
inline void check_support_point(FamilyKind kind, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("support point must be finite and nonnegative");
  }
  if (is_discrete(kind) && x != std::floor(x)) {
    throw std::domain_error("support point must be an integer for discrete families");
  }
}

namespace detail {

inline double poisson_log_pmf(double theta, double k) {
  return k * std::log(theta) - theta - std::lgamma(k + 1.0);
}

// P(X > k) for Poisson, summed directly from k+1 upward.
inline double poisson_upper_tail(double theta, double k) {
  double x = k + 1.0;
  double term = std::exp(poisson_log_pmf(theta, x));
  double sum = 0.0;
  while (term > 0.0) {
    sum += term;
    x += 1.0;
    term *= theta / x;
    if (x > theta && term < sum * 1e-18) break;
  }
  return sum;
}

// P(X <= k) for Poisson by forward recurrence.
inline double poisson_lower_sum(double theta, double k) {
  double term = std::exp(-theta);
  double sum = term;
  for (double x = 1.0; x <= k; x += 1.0) {
    term *= theta / x;
    sum += term;
  }
  return sum;
}

}  // namespace detail

/// Probability mass (discrete) or density (continuous) at x.
inline double mass(const FamilyParam& fam, double x) {
  if (std::isnan(x) || x < 0.0) throw std::domain_error("mass: x must be nonnegative");
  const double t = fam.theta();
  switch (fam.kind()) {
    case FamilyKind::Poisson:
      check_support_point(fam.kind(), x);
      return std::exp(detail::poisson_log_pmf(t, x));
    case FamilyKind::Geometric:
      check_support_point(fam.kind(), x);
      return (1.0 - t) * std::pow(t, x);
    case FamilyKind::Exponential:
      return x > 0.0 ? std::exp(-x / t) / t : 0.0;
    case FamilyKind::UniformScale:
      return (x > 0.0 && x < t) ? 1.0 / t : 0.0;
  }
  return 0.0;
}

/// P(X > x).
inline double survival(const FamilyParam& fam, double x) {
  const double t = fam.theta();
  switch (fam.kind()) {
    case FamilyKind::Poisson: {
      if (x < 0.0) return 1.0;
      const double k = std::floor(x);
      const double lower = detail::poisson_lower_sum(t, k);
      return lower > 0.5 ? detail::poisson_upper_tail(t, k) : 1.0 - lower;
    }
    case FamilyKind::Geometric:
      if (x < 0.0) return 1.0;
      return std::pow(t, std::floor(x) + 1.0);
    case FamilyKind::Exponential:
      if (x <= 0.0) return 1.0;
      return std::exp(-x / t);
    case FamilyKind::UniformScale:
      if (x <= 0.0) return 1.0;
      if (x >= t) return 0.0;
      return 1.0 - x / t;
  }
  return 0.0;
}

/// P(X <= x). Right-continuous; 0 below the support and 1 above it.
inline double cdf(const FamilyParam& fam, double x) {
  const double t = fam.theta();
  switch (fam.kind()) {
    case FamilyKind::Poisson: {
      if (x < 0.0) return 0.0;
      const double k = std::floor(x);
      const double lower = detail::poisson_lower_sum(t, k);
      return lower > 0.5 ? 1.0 - detail::poisson_upper_tail(t, k) : lower;
    }
    case FamilyKind::Geometric:
      if (x < 0.0) return 0.0;
      return -std::expm1((std::floor(x) + 1.0) * std::log(t));
    case FamilyKind::Exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-x / t);
    case FamilyKind::UniformScale:
      if (x <= 0.0) return 0.0;
      if (x >= t) return 1.0;
      return x / t;
  }
  return 0.0;
}

inline double mean(const FamilyParam& fam) noexcept {
  const double t = fam.theta();
  switch (fam.kind()) {
    case FamilyKind::Poisson: return t;
    case FamilyKind::Geometric: return t / (1.0 - t);
    case FamilyKind::Exponential: return t;
    case FamilyKind::UniformScale: return t / 2.0;
  }
  return 0.0;
}

inline double variance(const FamilyParam& fam) noexcept {
  const double t = fam.theta();
  switch (fam.kind()) {
    case FamilyKind::Poisson: return t;
    case FamilyKind::Geometric: return t / ((1.0 - t) * (1.0 - t));
    case FamilyKind::Exponential: return t * t;
    case FamilyKind::UniformScale: return t * t / 12.0;
  }
  return 0.0;
}

/// One draw by inversion.
inline double sample_one(const FamilyParam& fam, RandomStream& stream) {
  const double t = fam.theta();
  const double u = stream.uniform_open();
  switch (fam.kind()) {
    case FamilyKind::Poisson: {
      // Sequential search; theta stays small (<= 50) in all uses here.
      double x = 0.0;
      double term = std::exp(-t);
      double cum = term;
      while (u > cum) {
        x += 1.0;
        term *= t / x;
        const double next = cum + term;
        if (next == cum && x > t) break;
        cum = next;
      }
      return x;
    }
    case FamilyKind::Geometric:
      // Number of failures: P(X >= k) = t^k.
      return std::floor(std::log(u) / std::log(t));
    case FamilyKind::Exponential:
      return -t * std::log(u);
    case FamilyKind::UniformScale:
      return t * u;
  }
  return 0.0;
}

inline std::vector<double> sample(const FamilyParam& fam, RandomStream& stream, std::size_t count) {
  if (count == 0) throw std::invalid_argument("sample: count must be positive");
  std::vector<double> draws(count);
  for (auto& d : draws) d = sample_one(fam, stream);
  return draws;
}

/// Default truncation tolerance for exact series over discrete supports.
inline constexpr double kDefaultTailTolerance = 1e-14;

/// Smallest support point x_max with P(X > x_max) <= tol.
inline double tail_cutoff(const FamilyParam& fam, double tol) {
  if (!fam.discrete()) throw std::domain_error("tail_cutoff: family must be discrete");
  if (!(tol > 0.0 && tol < 1.0)) throw std::domain_error("tail_cutoff: tol must lie in (0, 1)");
  const double t = fam.theta();
  if (fam.kind() == FamilyKind::Geometric) {
    // t^{x+1} <= tol
    double x = std::max(0.0, std::ceil(std::log(tol) / std::log(t)) - 1.0);
    while (x > 0.0 && survival(fam, x - 1.0) <= tol) x -= 1.0;
    while (survival(fam, x) > tol) x += 1.0;
    return x;
  }
  // Poisson: walk the tail from the top once the cdf passes 1/2.
  double x = 0.0;
  double term = std::exp(-t);
  double lower = term;
  while (lower <= 0.5) {
    x += 1.0;
    term *= t / x;
    lower += term;
  }
  double tail = detail::poisson_upper_tail(t, x);
  if (tail <= tol) {
    // Step back toward 0: P(X > x-1) = P(X > x) + pmf(x).
    while (x > 0.0) {
      const double prev = tail + std::exp(detail::poisson_log_pmf(t, x));
      if (prev > tol) break;
      tail = prev;
      x -= 1.0;
    }
    return x;
  }
  // Re-sum the tail at each step; subtracting pmf terms would cancel badly
  // near tol.
  while (tail > tol) {
    x += 1.0;
    tail = detail::poisson_upper_tail(t, x);
  }
  return x;
}

}  // namespace uvest
