#pragma once

#include <string>
#include <vector>

namespace stacknash {

enum class Reinsurer { One = 1, Two = 2 };

constexpr Reinsurer rival(Reinsurer i) noexcept {
  return i == Reinsurer::One ? Reinsurer::Two : Reinsurer::One;
}

enum class Player { Insurer, Reinsurer1, Reinsurer2 };

// All scalar inputs of the game. Defaults are the reference market: risk
// aversions (5, 4, 6), competition degrees (0.3, 0.7), and risk-process
// constants chosen with mu > 3*sigma.
struct ModelParams {
  double delta0 = 5.0;
  double delta1 = 4.0;
  double delta2 = 6.0;
  double lambda1 = 0.3;
  double lambda2 = 0.7;
  double mu = 4.0;
  double sigma = 1.0;
  double c = 5.0;
  double horizon = 1.0;
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;

  double delta(Reinsurer i) const noexcept { return i == Reinsurer::One ? delta1 : delta2; }
  double lambda(Reinsurer i) const noexcept { return i == Reinsurer::One ? lambda1 : lambda2; }
  double initial_surplus(Reinsurer i) const noexcept { return i == Reinsurer::One ? x1 : x2; }

  // Weight on the rival's surplus in reinsurer i's relative performance,
  // Y_i = X_i - w X_j. The equilibrium formulas use w = lambda_j.
  double rival_weight(Reinsurer i) const noexcept { return lambda(rival(i)); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct PremiumPair {
  double theta1 = 0.0;
  double theta2 = 0.0;

  double operator[](Reinsurer i) const noexcept { return i == Reinsurer::One ? theta1 : theta2; }
  friend bool operator==(const PremiumPair&, const PremiumPair&) = default;
};

struct CessionPair {
  double p1 = 0.0;
  double p2 = 0.0;

  double operator[](Reinsurer i) const noexcept { return i == Reinsurer::One ? p1 : p2; }
  double total() const noexcept { return p1 + p2; }
  friend bool operator==(const CessionPair&, const CessionPair&) = default;
};

struct Equilibrium {
  PremiumPair theta_star;
  CessionPair p_star;
  double residual = 0.0;
  double f0_rate = 0.0;
  double f1_rate = 0.0;
  double f2_rate = 0.0;
  int iterations = 0;

  double reinsurer_rate(Reinsurer i) const noexcept { return i == Reinsurer::One ? f1_rate : f2_rate; }
};

enum class Severity { Warning, Error };

struct Violation {
  Severity severity;
  std::string field;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept;
  bool has_warnings() const noexcept;
  std::vector<std::string> errors() const;
};

ValidationResult validate(const ModelParams& params);

// Throws InvalidParams listing every error-level violation.
void require_valid(const ModelParams& params);

bool is_admissible(const PremiumPair& theta) noexcept;
bool is_admissible(const CessionPair& p) noexcept;

}  // namespace stacknash
