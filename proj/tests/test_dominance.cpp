#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "uvest/risk.hpp"

using namespace uvest;

namespace {
const std::vector<LossSpec> kBoth{LossSpec::squared(), LossSpec::absolute()};
}

TEST_CASE("default_theta_grid", "[dominance]") {
  CHECK(default_theta_grid(FamilyKind::Poisson, ThresholdRule(1.0)) == std::vector<double>{0.5, 1, 2, 5, 10});
  CHECK(default_theta_grid(FamilyKind::Poisson, ThresholdRule(3.0)) == std::vector<double>{0.5, 1, 2, 4, 5, 10});
  CHECK(default_theta_grid(FamilyKind::Geometric, ThresholdRule(1.0)) == std::vector<double>{0.1, 0.5, 0.9});
}

TEST_CASE("Poisson enumeration", "[dominance]") {
  const ThresholdRule rule(1.0);
  const auto r = dominance_scan(FamilyKind::Poisson, 2, rule, kBoth, EnumerateDomain{30});
  CHECK(r.points == 31u * 31u);
  CHECK(r.violations == 0u);
  // Strict exactly on B with V > 0: both >= 2 and at least one equal to 2.
  std::size_t expected = 0;
  for (int a = 0; a <= 30; ++a) {
    for (int b = 0; b <= 30; ++b) {
      if (a >= 2 && b >= 2 && (a == 2 || b == 2)) ++expected;
    }
  }
  CHECK(r.strict_points == expected);
  CHECK(r.zero_set_points == 29u * 29u);
}

TEST_CASE("Geometric enumeration", "[dominance]") {
  const auto r = dominance_scan(FamilyKind::Geometric, 1, ThresholdRule(1.0), kBoth, EnumerateDomain{50});
  CHECK(r.violations == 0u);
  CHECK(r.strict_points == 49u);
}

TEST_CASE("continuous sampling", "[dominance]") {
  for (auto kind : {FamilyKind::Exponential, FamilyKind::UniformScale}) {
    const auto r = dominance_scan(kind, 2, ThresholdRule(1.0), kBoth, SampleDomain{20000, 5});
    CHECK(r.points == 20000u);
    CHECK(r.violations == 0u);
    CHECK(r.strict_points > 0u);
    CHECK(r.strict_points == r.zero_set_points);
  }
  SECTION("A = 0: V vanishes, nothing to improve") {
    const auto r = dominance_scan(FamilyKind::Exponential, 2, ThresholdRule(0.0), kBoth, SampleDomain{1000, 5});
    CHECK(r.violations == 0u);
    CHECK(r.strict_points == 0u);
  }
}

TEST_CASE("scan argument checks", "[dominance]") {
  CHECK_THROWS_AS(dominance_scan(FamilyKind::Exponential, 1, ThresholdRule(1.0), kBoth, EnumerateDomain{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dominance_scan(FamilyKind::Poisson, 4, ThresholdRule(1.0), kBoth, EnumerateDomain{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dominance_scan(FamilyKind::Poisson, 1, ThresholdRule(1.0, Direction::GreaterThan), kBoth,
                                 EnumerateDomain{5}),
                  UnsupportedCombination);
  CHECK_THROWS_AS(dominance_scan(FamilyKind::Poisson, 1, ThresholdRule(1.0), {}, EnumerateDomain{5}),
                  std::invalid_argument);
}
