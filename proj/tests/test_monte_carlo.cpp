#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "uvest/risk.hpp"

using namespace uvest;

TEST_CASE("mc_risk agrees with exact risk", "[monte_carlo]") {
  const std::vector<FamilyParam> fams{{FamilyKind::Poisson, 2.0}};
  const ThresholdRule rule(1.0);
  const auto v = mc_risk(Estimator::V, LossSpec::squared(), fams, rule, 200000, 11);
  const auto vs = mc_risk(Estimator::VStar, LossSpec::squared(), fams, rule, 200000, 11);
  CHECK(v.method == RiskMethod::MonteCarlo);
  CHECK(v.replicates == 200000u);
  CHECK(v.seed == 11u);
  CHECK(std::fabs(v.risk_v - 14.0 * std::exp(-2.0)) <= 3.0 * *v.std_error);
  CHECK(std::fabs(vs.risk_v_star - 6.0 * std::exp(-2.0)) <= 3.0 * *vs.std_error);
  // Same draws either way: only the reported std_error changes.
  CHECK(v.risk_v == vs.risk_v);
  CHECK(*vs.std_error == vs.detail->se_v_star);
  CHECK(v.improvement >= 0.0);
}

TEST_CASE("mc_risk is deterministic across thread counts", "[monte_carlo]") {
  const std::vector<FamilyParam> fams{{FamilyKind::Exponential, 1.0}, {FamilyKind::Exponential, 3.0}};
  const ThresholdRule rule(2.5);
  const auto one = mc_risk(Estimator::V, LossSpec::absolute(), fams, rule, 50000, 3, 1);
  const auto four = mc_risk(Estimator::V, LossSpec::absolute(), fams, rule, 50000, 3, 4);
  const auto again = mc_risk(Estimator::V, LossSpec::absolute(), fams, rule, 50000, 3, 1);
  CHECK(one.risk_v == four.risk_v);
  CHECK(one.risk_v_star == four.risk_v_star);
  CHECK(*one.std_error == *four.std_error);
  CHECK(one.risk_v == again.risk_v);
  const auto other_seed = mc_risk(Estimator::V, LossSpec::absolute(), fams, rule, 50000, 4, 1);
  CHECK(one.risk_v != other_seed.risk_v);
}

TEST_CASE("paired differences never favour V", "[monte_carlo]") {
  for (auto loss : {LossSpec::squared(), LossSpec::absolute()}) {
    const std::vector<FamilyParam> fams(3, FamilyParam(FamilyKind::Geometric, 0.5));
    const auto r = mc_risk(Estimator::VStar, loss, fams, ThresholdRule(1.0), 20000, 8);
    CHECK(r.detail->max_paired_difference <= 0.0);
    CHECK(r.risk_v_star <= r.risk_v);
  }
}

TEST_CASE("mc_prediction_risk", "[monte_carlo]") {
  const std::vector<FamilyParam> fams(2, FamilyParam(FamilyKind::Poisson, 2.0));
  const ThresholdRule rule(1.0);
  const auto r = mc_prediction_risk(Estimator::V, LossSpec::squared(), fams, rule, 200000, 21);
  const auto& d = *r.detail;
  CHECK(std::fabs(d.mean_v - d.mean_target) <= 3.0 * d.se_bias);
  CHECK(d.max_paired_difference <= 0.0);
  // E[S*] = sum_j E[Y_j] P(X_j <= A).
  const double expected_target = 2.0 * 2.0 * cdf(fams.front(), 1.0);
  CHECK(std::fabs(d.mean_target - expected_target) < 0.02);

  SECTION("A = 0 exponential: V and S* vanish") {
    const std::vector<FamilyParam> e{{FamilyKind::Exponential, 1.0}};
    const auto z = mc_prediction_risk(Estimator::V, LossSpec::squared(), e, ThresholdRule(0.0), 1000, 1);
    CHECK(z.risk_v == 0.0);
    CHECK(z.risk_v_star == 0.0);
  }
}

TEST_CASE("mc_risk rejects bad inputs", "[monte_carlo]") {
  const std::vector<FamilyParam> fams{{FamilyKind::Poisson, 2.0}};
  CHECK_THROWS_AS(mc_risk(Estimator::V, LossSpec::squared(), fams, ThresholdRule(1.0), 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(mc_risk(Estimator::V, LossSpec::squared(), fams, ThresholdRule(1.0, Direction::GreaterThan), 10, 1),
                  UnsupportedCombination);
  const std::vector<FamilyParam> mixed{{FamilyKind::Poisson, 2.0}, {FamilyKind::Geometric, 0.5}};
  CHECK_THROWS_AS(mc_risk(Estimator::V, LossSpec::squared(), mixed, ThresholdRule(1.0), 10, 1),
                  std::invalid_argument);
}

TEST_CASE("CompensatedSum", "[monte_carlo]") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
