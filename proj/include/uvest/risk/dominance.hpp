#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/random.hpp"
#include "uvest/risk/loss.hpp"

namespace uvest {

/// Every point of {0, ..., xmax}^n (discrete families, n <= 3).
struct EnumerateDomain {
  double xmax = 0.0;
};

/// `count` points, point k drawn from RandomStream(seed, k).
struct SampleDomain {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

using ScanDomain = std::variant<EnumerateDomain, SampleDomain>;

struct DominanceReport {
  std::size_t points = 0;
  std::size_t comparisons = 0;
  // Points where loss(V*) > loss(V) for some loss and theta vector.
  std::size_t violations = 0;
  // Points where loss(V*) < loss(V) for every loss and theta vector.
  std::size_t strict_points = 0;
  std::size_t zero_set_points = 0;
};

inline constexpr std::size_t kMaxEnumerationDimension = 3;

/// Parameter grid used when checking pathwise dominance and the property
/// suites. The Poisson grid includes the boundary index m.
inline std::vector<double> default_theta_grid(FamilyKind kind, const ThresholdRule& rule) {
  std::vector<double> grid;
  switch (kind) {
    case FamilyKind::Poisson: grid = {0.5, 1.0, 2.0, rule.boundary_index(), 5.0, 10.0}; break;
    case FamilyKind::Geometric: grid = {0.1, 0.5, 0.9}; break;
    case FamilyKind::Exponential: grid = {0.5, 1.0, 3.0}; break;
    case FamilyKind::UniformScale: grid = {0.5, 2.0, 10.0}; break;
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace detail {

class DominanceChecker {
 public:
  DominanceChecker(FamilyKind kind, std::size_t n, const ThresholdRule& rule,
                   std::span<const LossSpec> losses, std::span<const double> grid)
      : kind_(kind), n_(n), rule_(rule), losses_(losses) {
    for (double t : grid) scales_.push_back(target_scale(FamilyParam(kind, t)));
    vectors_ = 1;
    for (std::size_t j = 0; j < n; ++j) vectors_ *= scales_.size();
    fired_.resize(n);
  }

  std::size_t theta_vectors() const noexcept { return vectors_; }

  void check(std::span<const double> x, DominanceReport& report) {
    const double v = v_aggregate(kind_, rule_, x);
    const bool zeroed = in_zero_set(kind_, rule_, x);
    const double v_star = zeroed ? 0.0 : v;
    for (std::size_t j = 0; j < n_; ++j) fired_[j] = u_value(rule_, x[j]);

    bool violated = false;
    bool strict = true;
    for (std::size_t idx = 0; idx < vectors_; ++idx) {
      double s = 0.0;
      std::size_t rest = idx;
      for (std::size_t j = 0; j < n_; ++j) {
        s += fired_[j] * scales_[rest % scales_.size()];
        rest /= scales_.size();
      }
      for (const auto& loss : losses_) {
        const double lv = loss_value(loss, v, s);
        const double lvs = loss_value(loss, v_star, s);
        ++report.comparisons;
        if (lvs > lv) violated = true;
        if (!(lvs < lv)) strict = false;
      }
    }
    ++report.points;
    if (zeroed) ++report.zero_set_points;
    if (violated) ++report.violations;
    if (strict) ++report.strict_points;
  }

 private:
  FamilyKind kind_;
  std::size_t n_;
  ThresholdRule rule_;
  std::span<const LossSpec> losses_;
  std::vector<double> scales_;
  std::vector<double> fired_;
  std::size_t vectors_ = 1;
};

}  // namespace detail

/// Checks loss(V*, S) <= loss(V, S) pointwise, for every loss given and every
/// theta vector in grid^n. An empty grid selects default_theta_grid.
inline DominanceReport dominance_scan(FamilyKind kind, std::size_t n, const ThresholdRule& rule,
                                      std::span<const LossSpec> losses, const ScanDomain& domain,
                                      std::vector<double> grid = {}) {
  if (rule.direction() != Direction::AtMost) {
    throw UnsupportedCombination("dominance scan needs the AtMost direction");
  }
  if (n == 0) throw std::invalid_argument("dominance scan needs n >= 1");
  if (losses.empty()) throw std::invalid_argument("dominance scan needs at least one loss");
  if (grid.empty()) grid = default_theta_grid(kind, rule);
  for (double t : grid) {
    if (!valid_theta(kind, t)) throw std::invalid_argument("invalid theta in scan grid");
  }

  detail::DominanceChecker checker(kind, n, rule, losses, grid);
  DominanceReport report;
  std::vector<double> x(n, 0.0);

  if (const auto* e = std::get_if<EnumerateDomain>(&domain)) {
    if (!is_discrete(kind)) throw std::invalid_argument("enumeration needs a discrete family");
    if (n > kMaxEnumerationDimension) throw std::invalid_argument("enumeration needs n <= 3");
    if (!(e->xmax >= 0.0) || e->xmax != std::floor(e->xmax)) {
      throw std::invalid_argument("xmax must be a nonnegative integer");
    }
    // Odometer over {0..xmax}^n.
    while (true) {
      checker.check(x, report);
      std::size_t j = 0;
      while (j < n && x[j] == e->xmax) x[j++] = 0.0;
      if (j == n) break;
      x[j] += 1.0;
    }
    return report;
  }

  const auto& s = std::get<SampleDomain>(domain);
  if (s.count == 0) throw std::invalid_argument("sample count must be positive");
  for (std::size_t k = 0; k < s.count; ++k) {
    RandomStream stream(s.seed, k);
    std::size_t rest = k % checker.theta_vectors();
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = sample_one(FamilyParam(kind, grid[rest % grid.size()]), stream);
      rest /= grid.size();
    }
    checker.check(x, report);
  }
  return report;
}

}  // namespace uvest
