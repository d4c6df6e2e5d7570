#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "stacknash/equilibrium.hpp"
#include "stacknash/model.hpp"

namespace stacknash {

enum class Parameter { Delta0, Delta1, Delta2, Lambda1, Lambda2 };

inline constexpr std::array<Parameter, 5> kAllParameters{
    Parameter::Delta0, Parameter::Delta1, Parameter::Delta2, Parameter::Lambda1,
    Parameter::Lambda2};

std::string_view parameter_name(Parameter q) noexcept;
std::optional<Parameter> parse_parameter(std::string_view name) noexcept;
double& parameter_ref(ModelParams& params, Parameter q) noexcept;
double parameter_value(const ModelParams& params, Parameter q) noexcept;

enum class Method { Analytic, FiniteDifference };

struct SensitivityReport {
  Parameter parameter = Parameter::Delta0;
  double d_theta1 = 0.0;
  double d_theta2 = 0.0;
  double d_p1 = 0.0;
  double d_p2 = 0.0;
  Method method = Method::Analytic;
};

struct ThetaSensitivity {
  double d_theta1 = 0.0;
  double d_theta2 = 0.0;
};

struct CessionSensitivity {
  double d_p1 = 0.0;
  double d_p2 = 0.0;
};

// Denominators 1 - phi1'(theta2*) phi2'(theta1*) at or below this are
// reported as DegenerateDenominator.
inline constexpr double kMinImplicitDenominator = 1e-10;

// Implicit differentiation of theta1 = phi1(theta2), theta2 = phi2(theta1):
//   d theta_i = (phi_i' * d phi_j + d phi_i) / (1 - phi_i' phi_j').
ThetaSensitivity theta_sensitivity(const ModelParams& params, const Equilibrium& eq, Parameter q);

// Total derivative of p* = pbar(theta*) through both loadings (and delta0
// directly). No sign is implied.
CessionSensitivity cession_sensitivity(const ModelParams& params, const Equilibrium& eq,
                                       Parameter q);

SensitivityReport analytic_sensitivity(const ModelParams& params, const Equilibrium& eq,
                                       Parameter q);

struct FiniteDifferenceConfig {
  double step = 1e-5;
  SolverConfig solver;
};

// Re-solves the equilibrium at shifted parameters. Central differences where
// both neighbours are admissible, otherwise a second-order one-sided stencil
// (lambda near zero or lambda1*lambda2 near one).
SensitivityReport finite_difference_sensitivity(const ModelParams& params, Parameter q,
                                                const FiniteDifferenceConfig& config = {});

}  // namespace stacknash
