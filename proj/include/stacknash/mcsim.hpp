#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stacknash/model.hpp"

// Verification layer. For constant strategies every surplus is Gaussian at
// the horizon, so expected exponential utilities have exact closed forms;
// the simulator and the deviation harness check the equilibrium against
// those forms without going through the HJB derivation.
namespace stacknash::mc {

// Terminal law of a surplus started at time t from a known value.
struct GaussianLaw {
  double mean = 0.0;
  double variance = 0.0;
};

// dX0 = (c - mu - sigma^2 (theta1 p1^2 + theta2 p2^2)) dt - sigma (1 - p1 - p2) dW.
GaussianLaw insurer_law(const ModelParams& params, const PremiumPair& theta, const CessionPair& p,
                        double t, double x);

// dY_i = sigma^2 (theta_i p_i^2 - lambda_j theta_j p_j^2) dt - sigma (p_i - lambda_j p_j) dW.
GaussianLaw relative_law(const ModelParams& params, const PremiumPair& theta, const CessionPair& p,
                         Reinsurer i, double t, double y);

// E[-(1/delta) exp(-delta Z)] for Z ~ law.
double expected_cara(double delta, const GaussianLaw& law);

double gaussian_utility_insurer(const ModelParams& params, const PremiumPair& theta,
                                const CessionPair& p, double t, double x);

// Reinsurer i's expected utility of Y_i(T) with the insurer best-responding to theta.
double gaussian_utility_reinsurer(const ModelParams& params, const PremiumPair& theta, Reinsurer i,
                                  double t, double y);

enum class Scheme { ExactTerminal, EulerMaruyama };

struct SimConfig {
  std::uint64_t paths = 100000;
  std::uint32_t steps = 1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::ExactTerminal;
};

struct SimReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

struct UtilityReports {
  SimReport insurer;
  SimReport reinsurer1;
  SimReport reinsurer2;

  const SimReport& reinsurer(Reinsurer i) const noexcept {
    return i == Reinsurer::One ? reinsurer1 : reinsurer2;
  }
};

// Monte Carlo E[U(.)] at time 0 for all three players from the initial
// surpluses in params; reinsurers are scored on Y_i = X_i - lambda_j X_j. All
// surpluses share one Brownian driver. Path k draws from Philox substream k.
UtilityReports simulate_utilities(const ModelParams& params, const PremiumPair& theta,
                                  const CessionPair& p, const SimConfig& config);

struct TerminalState {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double y1 = 0.0;  // integrated directly from dY_1
  double y2 = 0.0;  // integrated directly from dY_2
};

// Terminal states of paths [first, first + count) under `config`.
std::vector<TerminalState> simulate_terminal_states(const ModelParams& params,
                                                    const PremiumPair& theta, const CessionPair& p,
                                                    const SimConfig& config, std::uint64_t first,
                                                    std::size_t count);

// Relative margins (U_grid - U_candidate) / |U_candidate| above this count as
// improving deviations.
inline constexpr double kDeviationTolerance = 1e-12;

struct LayerDeviation {
  double worst_margin = 0.0;   // largest relative improvement found (<= 0 means none)
  double best_point[2] = {0.0, 0.0};
  std::size_t improving = 0;
  std::size_t evaluated = 0;
};

struct DeviationReport {
  double grid_step = 0.0;
  LayerDeviation insurer;     // best_point = (p1, p2)
  LayerDeviation reinsurer1;  // best_point[0] = theta1
  LayerDeviation reinsurer2;  // best_point[0] = theta2

  bool passed() const noexcept {
    return insurer.improving == 0 && reinsurer1.improving == 0 && reinsurer2.improving == 0;
  }
  double worst_margin() const noexcept;
};

// Unilateral-deviation check of a candidate equilibrium on constant grids:
// the insurer over the simplex {p1, p2 >= 0, p1 + p2 <= 1} at resolution
// grid_step given theta*, and each reinsurer over theta_i in (0, delta_i +
// delta0/2] given theta_j* with the insurer re-optimising.
DeviationReport deviation_test(const ModelParams& params, const Equilibrium& eq, double grid_step);

}  // namespace stacknash::mc
