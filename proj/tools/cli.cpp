#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uvest/uvest.hpp"

namespace uvest::cli {
namespace {

using json = nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

FamilyKind family_from(const std::string& name) {
  const auto kind = parse_family(name);
  if (!kind) throw InputError("unknown family '" + name + "'");
  return *kind;
}

Direction direction_from(const std::string& name) {
  if (name == "le") return Direction::AtMost;
  if (name == "gt") return Direction::GreaterThan;
  throw InputError("direction must be 'le' or 'gt'");
}

std::vector<FamilyParam> params_from(FamilyKind kind, const std::string& theta_list) {
  std::vector<FamilyParam> fams;
  std::string_view rest = theta_list;
  while (true) {
    const auto comma = rest.find(',');
    const double theta = parse_number(rest.substr(0, comma));
    if (!valid_theta(kind, theta)) {
      throw InputError("invalid theta for " + std::string(to_string(kind)));
    }
    fams.emplace_back(kind, theta);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return fams;
}

ThresholdRule rule_from(double a, Direction direction) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw InputError("threshold must be >= 0");
  return ThresholdRule(a, direction);
}

// One observation per row under a `value` header; blank lines are skipped.
std::vector<double> read_values(const std::string& path, FamilyKind kind) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<double> values;
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty()) continue;
    if (!header) {
      if (field != "value") throw InputError("expected header 'value'");
      header = true;
      continue;
    }
    const double x = parse_number(field);
    try {
      check_support_point(kind, x);
    } catch (const std::domain_error& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    values.push_back(x);
  }
  if (values.empty()) throw InputError("no observations in " + path);
  return values;
}

json to_json(const RiskReport& r) {
  json j;
  j["method"] = to_string(r.method);
  j["risk_v"] = r.risk_v;
  j["risk_v_star"] = r.risk_v_star;
  j["improvement"] = r.improvement;
  if (r.std_error) j["std_error"] = *r.std_error;
  if (r.replicates) j["replicates"] = *r.replicates;
  if (r.seed) j["seed"] = *r.seed;
  if (r.detail) {
    const auto& d = *r.detail;
    j["se_v"] = d.se_v;
    j["se_v_star"] = d.se_v_star;
    j["se_improvement"] = d.se_improvement;
    j["max_paired_difference"] = d.max_paired_difference;
    j["mean_v"] = d.mean_v;
    j["mean_target"] = d.mean_target;
    j["se_bias"] = d.se_bias;
  }
  return j;
}

json thetas_json(const std::vector<FamilyParam>& fams) {
  json arr = json::array();
  for (const auto& f : fams) arr.push_back(f.theta());
  return arr;
}

json grid_json(const ImprovementGrid& grid, FamilyKind kind) {
  json j;
  j["family"] = to_string(kind);
  j["a_values"] = grid.a_values();
  j["n_values"] = grid.n_values();
  json cells = json::array();
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      cells.push_back({{"A", grid.a_values()[r]}, {"n", grid.n_values()[c]}, {"improvement", grid.cell(r, c)}});
    }
  }
  j["cells"] = std::move(cells);
  return j;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unbiased U,V estimators for threshold estimands and their dominating V*", "uvest"};
  app.require_subcommand(1);

  std::string family;
  double threshold = 0.0;
  std::string direction = "le";

  auto* estimate = app.add_subcommand("estimate", "Compute V and V* from a data file");
  std::string input;
  bool as_json = false;
  estimate->add_option("--family", family, "poisson|geometric|exponential|uniform")->required();
  estimate->add_option("--threshold", threshold, "Threshold A >= 0")->required();
  estimate->add_option("--direction", direction, "le (U = 1{x <= A}) or gt (U = 1{x > A})");
  estimate->add_option("--input", input, "CSV with a single 'value' column")->required();
  estimate->add_flag("--json", as_json, "Emit JSON");

  auto* table = app.add_subcommand("table1", "Poisson improvement table, theta_i = floor(A) + 1");
  std::string format = "csv";
  int precision = 3;
  table->add_option("--format", format, "csv|json");
  table->add_option("--precision", precision, "Decimals for CSV cells");

  auto* family_table = app.add_subcommand("improvement-table", "Improvement grid for any family");
  std::string a_list = "1,3,5,7,9";
  std::string n_list = "1,2,3,4,5,6,7,8,9,10";
  double table_theta = 0.0;
  family_table->add_option("--family", family)->required();
  family_table->add_option("--theta", table_theta, "Common theta")->required();
  family_table->add_option("--thresholds", a_list, "Comma-separated A values");
  family_table->add_option("--n", n_list, "Comma-separated n values");
  family_table->add_option("--format", format, "csv|json");

  auto* risk = app.add_subcommand("risk", "Exact squared-error risks of V and V*");
  std::string theta_list;
  std::string loss_name = "squared";
  risk->add_option("--family", family)->required();
  risk->add_option("--theta", theta_list, "t1[,t2,...]")->required();
  risk->add_option("--threshold", threshold)->required();
  risk->add_option("--direction", direction);
  risk->add_option("--loss", loss_name, "Only squared has exact formulas");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo risks of V and V*");
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
  bool predict = false;
  std::string estimator_name = "v";
  unsigned threads = 0;
  simulate->add_option("--family", family)->required();
  simulate->add_option("--theta", theta_list)->required();
  simulate->add_option("--threshold", threshold)->required();
  simulate->add_option("--direction", direction);
  simulate->add_option("--loss", loss_name, "squared|absolute");
  simulate->add_option("--reps", reps, "Replicates (>= 2)");
  simulate->add_option("--seed", seed);
  simulate->add_option("--estimator", estimator_name, "v|vstar: which std_error to report");
  simulate->add_option("--threads", threads, "0 = hardware concurrency");
  simulate->add_flag("--predict", predict, "Target S* = sum Y_j U(X_j)");

  auto* dominance = app.add_subcommand("dominance", "Pathwise check loss(V*) <= loss(V)");
  std::size_t n = 1;
  std::optional<double> xmax;
  std::optional<std::size_t> samples;
  std::string scan_loss = "both";
  dominance->add_option("--family", family)->required();
  dominance->add_option("--threshold", threshold)->required();
  dominance->add_option("-n", n, "Number of observations")->required();
  auto* xmax_opt = dominance->add_option("--xmax", xmax, "Enumerate {0..xmax}^n");
  auto* samples_opt = dominance->add_option("--samples", samples, "Sampled points");
  dominance->add_option("--seed", seed);
  dominance->add_option("--loss", scan_loss, "squared|absolute|both");
  xmax_opt->excludes(samples_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  try {
    if (*estimate) {
      const FamilyKind kind = family_from(family);
      const ThresholdRule rule = rule_from(threshold, direction_from(direction));
      const auto values = read_values(input, kind);
      const double v = v_aggregate(kind, rule, values);
      json j;
      j["n"] = values.size();
      j["family"] = to_string(kind);
      j["A"] = threshold;
      j["direction"] = to_string(rule.direction());
      j["v"] = v;
      if (rule.direction() == Direction::AtMost) {
        j["v_star"] = v_star_aggregate(kind, rule, values);
        j["zeroed_set_hit"] = in_zero_set(kind, rule, values);
      }
      if (as_json) {
        out << j.dump() << '\n';
      } else {
        for (const auto& [key, value] : j.items()) {
          out << key << '=' << (value.is_number_float() ? fmt6(value.get<double>()) : value.dump()) << '\n';
        }
      }
      return kSuccess;
    }

    if (*table) {
      const auto grid = table1();
      if (format == "json") {
        auto j = grid_json(grid, FamilyKind::Poisson);
        j["theta"] = "A+1";
        out << j.dump() << '\n';
      } else if (format == "csv") {
        if (precision < 0 || precision > 17) throw InputError("precision must be in [0, 17]");
        out << to_csv(grid, CsvNumbers::Fixed, precision);
      } else {
        throw InputError("format must be csv or json");
      }
      return kSuccess;
    }

    if (*family_table) {
      const FamilyKind kind = family_from(family);
      if (!valid_theta(kind, table_theta)) throw InputError("invalid theta");
      std::vector<double> a_values;
      std::vector<std::size_t> n_values;
      std::string_view rest = a_list;
      for (;;) {
        const auto c = rest.find(',');
        a_values.push_back(rule_from(parse_number(rest.substr(0, c)), Direction::AtMost).threshold());
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
      }
      rest = n_list;
      for (;;) {
        const auto c = rest.find(',');
        const double v = parse_number(rest.substr(0, c));
        if (!(v >= 1.0) || v != std::floor(v) || v > 64.0) throw InputError("n values must be integers in [1, 64]");
        n_values.push_back(static_cast<std::size_t>(v));
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
      }
      const auto grid = family_improvement_table(kind, a_values, n_values, table_theta);
      if (format == "json") {
        auto j = grid_json(grid, kind);
        j["theta"] = table_theta;
        out << j.dump() << '\n';
      } else if (format == "csv") {
        out << to_csv(grid);
      } else {
        throw InputError("format must be csv or json");
      }
      return kSuccess;
    }

    if (*risk) {
      const FamilyKind kind = family_from(family);
      const auto fams = params_from(kind, theta_list);
      const ThresholdRule rule = rule_from(threshold, direction_from(direction));
      if (!parse_loss(loss_name)) throw InputError("unknown loss '" + loss_name + "'");
      if (loss_name != "squared") throw UnsupportedCombination("exact risks exist for squared loss only");
      if (rule.direction() != Direction::AtMost) {
        throw UnsupportedCombination("risk report needs V*, defined for direction le only");
      }
      auto j = to_json(exact_risk_report(fams, rule));
      j["family"] = to_string(kind);
      j["A"] = threshold;
      j["n"] = fams.size();
      j["theta"] = thetas_json(fams);
      out << j.dump() << '\n';
      return kSuccess;
    }

    if (*simulate) {
      const FamilyKind kind = family_from(family);
      const auto fams = params_from(kind, theta_list);
      const ThresholdRule rule = rule_from(threshold, direction_from(direction));
      const auto loss = parse_loss(loss_name);
      if (!loss) throw InputError("unknown loss '" + loss_name + "'");
      if (reps < 2) throw InputError("--reps must be at least 2");
      Estimator est;
      if (estimator_name == "v") {
        est = Estimator::V;
      } else if (estimator_name == "vstar") {
        est = Estimator::VStar;
      } else {
        throw InputError("estimator must be v or vstar");
      }
      const auto report = predict ? mc_prediction_risk(est, *loss, fams, rule, reps, seed, threads)
                                  : mc_risk(est, *loss, fams, rule, reps, seed, threads);
      auto j = to_json(report);
      j["family"] = to_string(kind);
      j["A"] = threshold;
      j["n"] = fams.size();
      j["theta"] = thetas_json(fams);
      j["loss"] = loss_name;
      j["estimator"] = estimator_name;
      j["target"] = predict ? "prediction" : "estimand";
      out << j.dump() << '\n';
      return kSuccess;
    }

    if (*dominance) {
      const FamilyKind kind = family_from(family);
      const ThresholdRule rule = rule_from(threshold, Direction::AtMost);
      std::vector<LossSpec> losses;
      if (scan_loss == "both") {
        losses = {LossSpec::squared(), LossSpec::absolute()};
      } else if (const auto l = parse_loss(scan_loss)) {
        losses = {*l};
      } else {
        throw InputError("loss must be squared, absolute or both");
      }
      if (n == 0) throw InputError("-n must be positive");
      ScanDomain domain;
      if (xmax) {
        if (!is_discrete(kind)) throw InputError("--xmax needs a discrete family; use --samples");
        if (n > kMaxEnumerationDimension) throw InputError("enumeration supports n <= 3");
        if (!(*xmax >= 0.0) || *xmax != std::floor(*xmax)) throw InputError("--xmax must be a nonnegative integer");
        domain = EnumerateDomain{*xmax};
      } else if (samples) {
        if (*samples == 0) throw InputError("--samples must be positive");
        domain = SampleDomain{*samples, seed};
      } else {
        throw InputError("one of --xmax or --samples is required");
      }
      const auto report = dominance_scan(kind, n, rule, losses, domain);
      json j;
      j["family"] = to_string(kind);
      j["A"] = threshold;
      j["n"] = n;
      j["points"] = report.points;
      j["comparisons"] = report.comparisons;
      j["violations"] = report.violations;
      j["strict_points"] = report.strict_points;
      j["zero_set_points"] = report.zero_set_points;
      out << j.dump() << '\n';
      return report.violations > 0 ? kDominanceViolation : kSuccess;
    }
  } catch (const UnsupportedCombination& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace uvest::cli
