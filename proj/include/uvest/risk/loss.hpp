#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace uvest {

enum class LossForm { Squared, Absolute, Custom };

/// A loss of the form W(a - S) with W(0) = 0 and W(t) > 0 for t != 0.
class LossSpec {
 public:
  static LossSpec squared() { return LossSpec(LossForm::Squared, {}); }
  static LossSpec absolute() { return LossSpec(LossForm::Absolute, {}); }

  // W is probed at 0 and at +/- t over a log grid; a failed probe throws
  // std::invalid_argument.
  static LossSpec custom(std::function<double(double)> w) {
    if (!w) throw std::invalid_argument("custom loss needs a function");
    if (w(0.0) != 0.0) throw std::invalid_argument("custom loss must satisfy W(0) = 0");
    for (double t = 1e-6; t <= 1e6; t *= 10.0) {
      if (!(w(t) > 0.0) || !(w(-t) > 0.0)) {
        throw std::invalid_argument("custom loss must satisfy W(t) > 0 for t != 0");
      }
    }
    return LossSpec(LossForm::Custom, std::move(w));
  }

  LossForm form() const noexcept { return form_; }

  double operator()(double t) const {
    switch (form_) {
      case LossForm::Squared: return t * t;
      case LossForm::Absolute: return std::fabs(t);
      case LossForm::Custom: return w_(t);
    }
    return 0.0;
  }

 private:
  LossSpec(LossForm form, std::function<double(double)> w) : form_(form), w_(std::move(w)) {}

  LossForm form_;
  std::function<double(double)> w_;
};

inline double loss_value(const LossSpec& loss, double action, double s) {
  return loss(action - s);
}

constexpr std::string_view to_string(LossForm form) noexcept {
  switch (form) {
    case LossForm::Squared: return "squared";
    case LossForm::Absolute: return "absolute";
    case LossForm::Custom: return "custom";
  }
  return "unknown";
}

inline std::optional<LossSpec> parse_loss(std::string_view name) {
  if (name == "squared") return LossSpec::squared();
  if (name == "absolute") return LossSpec::absolute();
  return std::nullopt;
}

}  // namespace uvest
