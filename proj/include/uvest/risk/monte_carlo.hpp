#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/random.hpp"
#include "uvest/risk/loss.hpp"
#include "uvest/risk/report.hpp"

namespace uvest {

enum class Estimator { V, VStar };

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

// Replicates are processed in fixed-size blocks. Block k always covers the
// same replicate range and blocks are merged in index order, so the result
// does not depend on how many threads ran.
inline constexpr std::size_t kReplicateBlock = 4096;

struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  void add(double x) noexcept {
    sum.add(x);
    sum_sq.add(x * x);
  }
  void add(const Moments& o) noexcept {
    sum.add(o.sum);
    sum_sq.add(o.sum_sq);
  }
  double mean(double n) const noexcept { return sum.value() / n; }
  double std_error(double n) const noexcept {
    const double s = sum.value();
    const double var = std::max(0.0, (sum_sq.value() - s * s / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

struct BlockStats {
  Moments loss_v;
  Moments loss_v_star;
  Moments paired;  // loss(V) - loss(V*)
  Moments v;
  CompensatedSum target;
  Moments bias;  // V - target
  double max_paired_difference = -std::numeric_limits<double>::infinity();

  void merge(const BlockStats& o) noexcept {
    loss_v.add(o.loss_v);
    loss_v_star.add(o.loss_v_star);
    paired.add(o.paired);
    v.add(o.v);
    target.add(o.target);
    bias.add(o.bias);
    max_paired_difference = std::max(max_paired_difference, o.max_paired_difference);
  }
};

inline BlockStats run_block(const LossSpec& loss, std::span<const FamilyParam> fams,
                            const ThresholdRule& rule, bool predict, std::uint64_t seed,
                            std::size_t first, std::size_t last) {
  const FamilyKind kind = fams.front().kind();
  std::vector<double> x(fams.size());
  BlockStats stats;
  for (std::size_t k = first; k < last; ++k) {
    RandomStream stream(seed, k);
    for (std::size_t j = 0; j < fams.size(); ++j) x[j] = sample_one(fams[j], stream);
    double target = 0.0;
    if (predict) {
      // S* = sum_j Y_j U(X_j) with Y_j an independent copy of X_j.
      for (std::size_t j = 0; j < fams.size(); ++j) {
        const double y = sample_one(fams[j], stream);
        target += y * u_value(rule, x[j]);
      }
    } else {
      target = estimand_s(rule, fams, x);
    }
    const double v = v_aggregate(kind, rule, x);
    const double v_star = in_zero_set(kind, rule, x) ? 0.0 : v;
    const double lv = loss_value(loss, v, target);
    const double lvs = loss_value(loss, v_star, target);
    stats.loss_v.add(lv);
    stats.loss_v_star.add(lvs);
    stats.paired.add(lv - lvs);
    stats.v.add(v);
    stats.target.add(target);
    stats.bias.add(v - target);
    stats.max_paired_difference = std::max(stats.max_paired_difference, lvs - lv);
  }
  return stats;
}

inline RiskReport simulate(Estimator estimator, const LossSpec& loss, std::span<const FamilyParam> fams,
                           const ThresholdRule& rule, std::size_t replicates, std::uint64_t seed,
                           bool predict, unsigned threads) {
  if (replicates < 2) throw std::invalid_argument("need at least 2 replicates");
  if (fams.empty()) throw std::invalid_argument("need at least one component");
  for (const auto& f : fams) {
    if (f.kind() != fams.front().kind()) {
      throw std::invalid_argument("all components must share one family kind");
    }
  }
  if (rule.direction() != Direction::AtMost) {
    throw UnsupportedCombination("V* is defined for the AtMost direction only");
  }

  const std::size_t blocks = (replicates + kReplicateBlock - 1) / kReplicateBlock;
  std::vector<BlockStats> results(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      const std::size_t first = b * kReplicateBlock;
      const std::size_t last = std::min(replicates, first + kReplicateBlock);
      results[b] = run_block(loss, fams, rule, predict, seed, first, last);
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  BlockStats total;
  for (const auto& r : results) total.merge(r);

  const auto n = static_cast<double>(replicates);
  MonteCarloDetail detail;
  detail.se_v = total.loss_v.std_error(n);
  detail.se_v_star = total.loss_v_star.std_error(n);
  detail.se_improvement = total.paired.std_error(n);
  detail.max_paired_difference = total.max_paired_difference;
  detail.mean_v = total.v.mean(n);
  detail.mean_target = total.target.value() / n;
  detail.se_bias = total.bias.std_error(n);

  RiskReport report;
  report.method = RiskMethod::MonteCarlo;
  report.risk_v = total.loss_v.mean(n);
  report.risk_v_star = total.loss_v_star.mean(n);
  report.improvement = total.paired.mean(n);
  report.std_error = estimator == Estimator::V ? detail.se_v : detail.se_v_star;
  report.replicates = replicates;
  report.seed = seed;
  report.detail = detail;
  return report;
}

}  // namespace detail

/// Monte Carlo risk of V and V* (paired on the same draws) against the
/// estimand S. Replicate k draws from RandomStream(seed, k); the report is
/// identical for any thread count. `threads == 0` uses the hardware count.
inline RiskReport mc_risk(Estimator estimator, const LossSpec& loss, std::span<const FamilyParam> fams,
                          const ThresholdRule& rule, std::size_t replicates, std::uint64_t seed,
                          unsigned threads = 0) {
  return detail::simulate(estimator, loss, fams, rule, replicates, seed, false, threads);
}

/// As mc_risk, but the target is the prediction S* = sum_j Y_j U(X_j).
inline RiskReport mc_prediction_risk(Estimator estimator, const LossSpec& loss,
                                     std::span<const FamilyParam> fams, const ThresholdRule& rule,
                                     std::size_t replicates, std::uint64_t seed, unsigned threads = 0) {
  return detail::simulate(estimator, loss, fams, rule, replicates, seed, true, threads);
}

}  // namespace uvest
