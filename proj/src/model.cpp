#include "stacknash/model.hpp"

#include <cmath>
#include <string>

#include "stacknash/errors.hpp"

namespace stacknash {

bool ValidationResult::ok() const noexcept {
  for (const auto& v : violations) {
    if (v.severity == Severity::Error) return false;
  }
  return true;
}

bool ValidationResult::has_warnings() const noexcept {
  for (const auto& v : violations) {
    if (v.severity == Severity::Warning) return true;
  }
  return false;
}

std::vector<std::string> ValidationResult::errors() const {
  std::vector<std::string> out;
  for (const auto& v : violations) {
    if (v.severity == Severity::Error) out.push_back(v.message);
  }
  return out;
}

namespace {

void check_positive(ValidationResult& r, const char* name, double v) {
  if (!std::isfinite(v)) {
    r.violations.push_back({Severity::Error, name, std::string(name) + " must be finite"});
  } else if (!(v > 0.0)) {
    r.violations.push_back({Severity::Error, name, std::string(name) + " must be positive"});
  }
}

void check_nonnegative(ValidationResult& r, const char* name, double v) {
  if (!std::isfinite(v)) {
    r.violations.push_back({Severity::Error, name, std::string(name) + " must be finite"});
  } else if (v < 0.0) {
    r.violations.push_back({Severity::Error, name, std::string(name) + " must be nonnegative"});
  }
}

void check_finite(ValidationResult& r, const char* name, double v) {
  if (!std::isfinite(v)) {
    r.violations.push_back({Severity::Error, name, std::string(name) + " must be finite"});
  }
}

}  // namespace

ValidationResult validate(const ModelParams& params) {
  ValidationResult r;
  check_positive(r, "delta0", params.delta0);
  check_positive(r, "delta1", params.delta1);
  check_positive(r, "delta2", params.delta2);
  check_nonnegative(r, "lambda1", params.lambda1);
  check_nonnegative(r, "lambda2", params.lambda2);
  check_positive(r, "mu", params.mu);
  check_positive(r, "sigma", params.sigma);
  check_positive(r, "c", params.c);
  check_positive(r, "horizon", params.horizon);
  check_finite(r, "x0", params.x0);
  check_finite(r, "x1", params.x1);
  check_finite(r, "x2", params.x2);

  // Losses stay positive with high probability only when the drift dominates.
  if (std::isfinite(params.mu) && std::isfinite(params.sigma) && params.sigma > 0.0 &&
      params.mu < 3.0 * params.sigma) {
    r.violations.push_back({Severity::Warning, "mu", "mu < 3·sigma"});
  }
  return r;
}

void require_valid(const ModelParams& params) {
  const auto result = validate(params);
  if (result.ok()) return;
  std::string msg;
  for (const auto& e : result.errors()) {
    if (!msg.empty()) msg += "; ";
    msg += e;
  }
  throw InvalidParams(msg);
}

bool is_admissible(const PremiumPair& theta) noexcept {
  return std::isfinite(theta.theta1) && std::isfinite(theta.theta2) && theta.theta1 > 0.0 &&
         theta.theta2 > 0.0;
}

bool is_admissible(const CessionPair& p) noexcept {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  return in_unit(p.p1) && in_unit(p.p2) && in_unit(p.p1 + p.p2);
}

}  // namespace stacknash
