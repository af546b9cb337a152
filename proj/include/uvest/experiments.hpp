#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uvest/distributions.hpp"
#include "uvest/estimators.hpp"
#include "uvest/risk/exact.hpp"

namespace uvest {

/// Squared-error improvement of V* over V, tabulated by threshold (rows) and
/// number of observations (columns).
class ImprovementGrid {
 public:
  ImprovementGrid(std::vector<double> a_values, std::vector<std::size_t> n_values,
                  std::vector<std::vector<double>> cells)
      : a_values_(std::move(a_values)), n_values_(std::move(n_values)), cells_(std::move(cells)) {
    if (cells_.size() != a_values_.size()) throw std::invalid_argument("grid row count mismatch");
    for (const auto& row : cells_) {
      if (row.size() != n_values_.size()) throw std::invalid_argument("grid column count mismatch");
      for (double c : row) {
        if (!(c >= 0.0)) throw std::invalid_argument("grid cells must be nonnegative");
      }
    }
  }

  const std::vector<double>& a_values() const noexcept { return a_values_; }
  const std::vector<std::size_t>& n_values() const noexcept { return n_values_; }
  const std::vector<std::vector<double>>& cells() const noexcept { return cells_; }
  double cell(std::size_t row, std::size_t col) const { return cells_.at(row).at(col); }
  std::size_t rows() const noexcept { return a_values_.size(); }
  std::size_t cols() const noexcept { return n_values_.size(); }

 private:
  std::vector<double> a_values_;
  std::vector<std::size_t> n_values_;
  std::vector<std::vector<double>> cells_;
};

/// Improvement grid with every theta_i equal to `theta`.
inline ImprovementGrid family_improvement_table(FamilyKind kind, const std::vector<double>& a_values,
                                                const std::vector<std::size_t>& n_values, double theta) {
  const FamilyParam fam(kind, theta);
  std::vector<std::vector<double>> cells;
  cells.reserve(a_values.size());
  for (double a : a_values) {
    const ThresholdRule rule(a, Direction::AtMost);
    std::vector<double> row;
    row.reserve(n_values.size());
    for (std::size_t n : n_values) {
      if (n == 0) throw std::invalid_argument("n values must be positive");
      const std::vector<FamilyParam> fams(n, fam);
      row.push_back(improvement_exact(fams, rule));
    }
    cells.push_back(std::move(row));
  }
  return ImprovementGrid(a_values, n_values, std::move(cells));
}

/// The Poisson improvement table: A in {1,3,5,7,9}, n = 1..10, and every
/// theta_i set to the boundary index m = A + 1.
inline ImprovementGrid table1() {
  const std::vector<double> a_values{1, 3, 5, 7, 9};
  std::vector<std::size_t> n_values(10);
  for (std::size_t i = 0; i < n_values.size(); ++i) n_values[i] = i + 1;
  std::vector<std::vector<double>> cells;
  for (double a : a_values) {
    const ThresholdRule rule(a, Direction::AtMost);
    const FamilyParam fam(FamilyKind::Poisson, rule.boundary_index());
    std::vector<double> row;
    for (std::size_t n : n_values) {
      const std::vector<FamilyParam> fams(n, fam);
      row.push_back(improvement_exact(fams, rule));
    }
    cells.push_back(std::move(row));
  }
  return ImprovementGrid(a_values, n_values, std::move(cells));
}

struct TrendCheck {
  std::string name;
  bool passed = false;
  bool vacuous = false;
  std::string detail;
};

struct TrendReport {
  TrendCheck large_n_decline;    // last column below the row maximum, every row
  TrendCheck small_n_growth;     // first column strictly increasing down the rows
  bool all_passed() const noexcept { return large_n_decline.passed && small_n_growth.passed; }
};

inline TrendReport trend_report(const ImprovementGrid& grid) {
  TrendReport report;
  report.large_n_decline.name = "improvement at largest n below row maximum";
  report.small_n_growth.name = "improvement at smallest n increases with A";

  auto& decline = report.large_n_decline;
  if (grid.cols() < 2) {
    decline.passed = true;
    decline.vacuous = true;
    decline.detail = "single column";
  } else {
    decline.passed = true;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      const auto& row = grid.cells()[r];
      const double peak = *std::max_element(row.begin(), row.end());
      if (!(row.back() < peak)) {
        decline.passed = false;
        decline.detail = "row A=" + std::to_string(grid.a_values()[r]) + " peaks at the last column";
        break;
      }
    }
  }

  auto& growth = report.small_n_growth;
  if (grid.rows() < 2 || grid.cols() == 0) {
    growth.passed = true;
    growth.vacuous = true;
    growth.detail = "fewer than two rows";
  } else {
    growth.passed = true;
    for (std::size_t r = 1; r < grid.rows(); ++r) {
      if (!(grid.cell(r, 0) > grid.cell(r - 1, 0))) {
        growth.passed = false;
        growth.detail = "not increasing at row " + std::to_string(r);
        break;
      }
    }
  }
  return report;
}

enum class CsvNumbers {
  Significant6,  // %.6g
  Fixed,         // %.{decimals}f
};

/// CSV layout: header "A,<n_1>,...,<n_k>", then one row per threshold with
/// the threshold in the first column.
inline std::string to_csv(const ImprovementGrid& grid, CsvNumbers style = CsvNumbers::Significant6,
                          int decimals = 3) {
  const auto fmt = [&](double v, bool cell) {
    char buf[64];
    if (cell && style == CsvNumbers::Fixed) {
      std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    } else {
      std::snprintf(buf, sizeof buf, "%.6g", v);
    }
    return std::string(buf);
  };
  std::ostringstream out;
  out << "A";
  for (std::size_t n : grid.n_values()) out << ',' << n;
  out << '\n';
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    out << fmt(grid.a_values()[r], false);
    for (double c : grid.cells()[r]) out << ',' << fmt(c, true);
    out << '\n';
  }
  return out.str();
}

}  // namespace uvest
