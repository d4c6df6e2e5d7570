#include "stacknash/mcsim.hpp"

#include <algorithm>
#include <cmath>

#include "stacknash/best_response.hpp"
#include "stacknash/errors.hpp"
#include "stacknash/parallel.hpp"
#include "stacknash/rng.hpp"
#include "stacknash/simd/kernels.hpp"

namespace stacknash::mc {

GaussianLaw insurer_law(const ModelParams& params, const PremiumPair& theta, const CessionPair& p,
                        double t, double x) {
  const double tau = params.horizon - t;
  const double s2 = params.sigma * params.sigma;
  const double drift =
      params.c - params.mu - s2 * (theta.theta1 * p.p1 * p.p1 + theta.theta2 * p.p2 * p.p2);
  const double retained = 1.0 - p.p1 - p.p2;
  return {x + drift * tau, s2 * retained * retained * tau};
}

GaussianLaw relative_law(const ModelParams& params, const PremiumPair& theta, const CessionPair& p,
                         Reinsurer i, double t, double y) {
  const Reinsurer j = rival(i);
  const double tau = params.horizon - t;
  const double s2 = params.sigma * params.sigma;
  const double w = params.rival_weight(i);
  const double drift = s2 * (theta[i] * p[i] * p[i] - w * theta[j] * p[j] * p[j]);
  const double diff = p[i] - w * p[j];
  return {y + drift * tau, s2 * diff * diff * tau};
}

double expected_cara(double delta, const GaussianLaw& law) {
  return -std::exp(-delta * law.mean + 0.5 * delta * delta * law.variance) / delta;
}

double gaussian_utility_insurer(const ModelParams& params, const PremiumPair& theta,
                                const CessionPair& p, double t, double x) {
  return expected_cara(params.delta0, insurer_law(params, theta, p, t, x));
}

double gaussian_utility_reinsurer(const ModelParams& params, const PremiumPair& theta, Reinsurer i,
                                  double t, double y) {
  const CessionPair p = insurer_response(params.delta0, theta);
  return expected_cara(params.delta(i), relative_law(params, theta, p, i, t, y));
}

namespace {

// dX = drift dt - diffusion dW for each tracked quantity.
struct Coefficient {
  double drift = 0.0;
  double diffusion = 0.0;
};

struct Dynamics {
  Coefficient insurer;
  Coefficient own[2];
  Coefficient relative[2];
};

Dynamics dynamics(const ModelParams& params, const PremiumPair& theta, const CessionPair& p) {
  const double s2 = params.sigma * params.sigma;
  Dynamics d;
  d.insurer = {params.c - params.mu - s2 * (theta.theta1 * p.p1 * p.p1 + theta.theta2 * p.p2 * p.p2),
               params.sigma * (1.0 - p.p1 - p.p2)};
  for (Reinsurer i : {Reinsurer::One, Reinsurer::Two}) {
    const Reinsurer j = rival(i);
    const int k = static_cast<int>(i) - 1;
    const double w = params.rival_weight(i);
    d.own[k] = {s2 * theta[i] * p[i] * p[i], params.sigma * p[i]};
    d.relative[k] = {s2 * (theta[i] * p[i] * p[i] - w * theta[j] * p[j] * p[j]),
                     params.sigma * (p[i] - w * p[j])};
  }
  return d;
}

TerminalState integrate_path(const ModelParams& params, const Dynamics& d, const SimConfig& config,
                             const rng::Philox4x32& gen, std::uint64_t path,
                             std::vector<double>& scratch) {
  TerminalState s{params.x0,
                  params.x1,
                  params.x2,
                  params.x1 - params.rival_weight(Reinsurer::One) * params.x2,
                  params.x2 - params.rival_weight(Reinsurer::Two) * params.x1};
  const double tau = params.horizon;
  const auto advance = [&](double dt, double dw) {
    s.x0 += d.insurer.drift * dt - d.insurer.diffusion * dw;
    s.x1 += d.own[0].drift * dt - d.own[0].diffusion * dw;
    s.x2 += d.own[1].drift * dt - d.own[1].diffusion * dw;
    s.y1 += d.relative[0].drift * dt - d.relative[0].diffusion * dw;
    s.y2 += d.relative[1].drift * dt - d.relative[1].diffusion * dw;
  };

  if (config.scheme == Scheme::ExactTerminal) {
    advance(tau, std::sqrt(tau) * rng::normal_pair(gen, path, 0).first);
    return s;
  }
  const std::uint32_t steps = std::max<std::uint32_t>(1, config.steps);
  scratch.resize(steps);
  rng::fill_normals(gen, path, scratch.data(), steps);
  const double dt = tau / steps;
  const double sqrt_dt = std::sqrt(dt);
  for (std::uint32_t k = 0; k < steps; ++k) advance(dt, sqrt_dt * scratch[k]);
  return s;
}

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  static Moments of(const double* v, std::size_t n) {
    Moments m;
    m.count = static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += v[k];
    m.mean = sum / m.count;
    for (std::size_t k = 0; k < n; ++k) {
      const double dv = v[k] - m.mean;
      m.m2 += dv * dv;
    }
    return m;
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }

  SimReport report(std::uint64_t seed) const {
    const double var = count > 1.0 ? m2 / (count - 1.0) : 0.0;
    return {mean, std::sqrt(var / count), static_cast<std::uint64_t>(count), seed};
  }
};

constexpr std::size_t kBlockPaths = 4096;

}  // namespace

std::vector<TerminalState> simulate_terminal_states(const ModelParams& params,
                                                    const PremiumPair& theta, const CessionPair& p,
                                                    const SimConfig& config, std::uint64_t first,
                                                    std::size_t count) {
  const Dynamics d = dynamics(params, theta, p);
  const rng::Philox4x32 gen(config.seed);
  std::vector<double> scratch;
  std::vector<TerminalState> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = integrate_path(params, d, config, gen, first + k, scratch);
  }
  return out;
}

UtilityReports simulate_utilities(const ModelParams& params, const PremiumPair& theta,
                                  const CessionPair& p, const SimConfig& config) {
  if (config.paths == 0) throw InvalidParams("simulation needs at least one path");
  if (config.steps == 0) throw InvalidParams("simulation needs at least one step");

  const Dynamics d = dynamics(params, theta, p);
  const rng::Philox4x32 gen(config.seed);
  const auto& kernels = simd::active_kernels();
  const double w1 = params.rival_weight(Reinsurer::One);
  const double w2 = params.rival_weight(Reinsurer::Two);
  const double deltas[3] = {params.delta0, params.delta1, params.delta2};

  const std::size_t blocks = (config.paths + kBlockPaths - 1) / kBlockPaths;
  std::vector<std::array<Moments, 3>> partial(blocks);

  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t first = b * kBlockPaths;
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBlockPaths, config.paths - first));
    std::vector<double> terminal[3];
    for (auto& v : terminal) v.resize(n);
    std::vector<double> scratch;
    for (std::size_t k = 0; k < n; ++k) {
      const TerminalState s = integrate_path(params, d, config, gen, first + k, scratch);
      terminal[0][k] = s.x0;
      terminal[1][k] = s.x1 - w1 * s.x2;
      terminal[2][k] = s.x2 - w2 * s.x1;
    }
    std::vector<double> utility(n);
    for (int player = 0; player < 3; ++player) {
      const double delta = deltas[player];
      kernels.exp_affine(-1.0 / delta, 0.0, -delta, terminal[player].data(), utility.data(), n);
      partial[b][player] = Moments::of(utility.data(), n);
    }
  });

  std::array<Moments, 3> total;
  for (const auto& block : partial) {
    for (int player = 0; player < 3; ++player) total[player].merge(block[player]);
  }
  return {total[0].report(config.seed), total[1].report(config.seed),
          total[2].report(config.seed)};
}

double DeviationReport::worst_margin() const noexcept {
  return std::max({insurer.worst_margin, reinsurer1.worst_margin, reinsurer2.worst_margin});
}

namespace {

// Grid count n with n * step <= extent (tolerating representation error).
std::size_t grid_count(double extent, double step) {
  return static_cast<std::size_t>(std::floor(extent / step + 1e-9));
}

// Relative utility improvement of exponent `grid` over exponent `candidate`
// for utilities of the form -exp(L)/delta.
double relative_gain(double grid, double candidate) { return -std::expm1(grid - candidate); }

void record(LayerDeviation& layer, double gain, double a, double b) {
  ++layer.evaluated;
  if (gain > kDeviationTolerance) ++layer.improving;
  if (layer.evaluated == 1 || gain > layer.worst_margin) {
    layer.worst_margin = gain;
    layer.best_point[0] = a;
    layer.best_point[1] = b;
  }
}

LayerDeviation insurer_layer(const ModelParams& params, const Equilibrium& eq, double step) {
  const auto& kernels = simd::active_kernels();
  const double tau = params.horizon;
  const double d0 = params.delta0;
  const double s2 = params.sigma * params.sigma;
  const simd::InsurerExponent e{-d0 * (params.x0 + (params.c - params.mu) * tau),
                                d0 * s2 * eq.theta_star.theta1 * tau,
                                d0 * s2 * eq.theta_star.theta2 * tau, 0.5 * d0 * d0 * s2 * tau};
  double candidate = 0.0;
  kernels.insurer_exponent(e, eq.p_star.p1, &eq.p_star.p2, &candidate, 1);

  const std::size_t n = grid_count(1.0, step);
  std::vector<double> p2(n + 1);
  std::vector<double> exponent(n + 1);
  for (std::size_t m = 0; m <= n; ++m) p2[m] = static_cast<double>(m) * step;

  LayerDeviation layer;
  for (std::size_t k = 0; k <= n; ++k) {
    const double p1 = static_cast<double>(k) * step;
    const std::size_t row = n - k + 1;
    kernels.insurer_exponent(e, p1, p2.data(), exponent.data(), row);
    for (std::size_t m = 0; m < row; ++m) record(layer, relative_gain(exponent[m], candidate), p1, p2[m]);
  }
  return layer;
}

LayerDeviation reinsurer_layer(const ModelParams& params, const Equilibrium& eq, Reinsurer i,
                               double step) {
  const auto& kernels = simd::active_kernels();
  const Reinsurer j = rival(i);
  const double y = params.initial_surplus(i) - params.rival_weight(i) * params.initial_surplus(j);
  const simd::ReinsurerExponent e{params.delta0,        params.delta(i), eq.theta_star[j],
                                  params.rival_weight(i), params.sigma,   params.horizon, y};
  const double own = eq.theta_star[i];
  double candidate = 0.0;
  kernels.reinsurer_exponent(e, &own, &candidate, 1);

  const std::size_t n = grid_count(params.delta(i) + 0.5 * params.delta0, step);
  std::vector<double> theta(n);
  std::vector<double> exponent(n);
  for (std::size_t k = 0; k < n; ++k) theta[k] = static_cast<double>(k + 1) * step;
  kernels.reinsurer_exponent(e, theta.data(), exponent.data(), n);

  LayerDeviation layer;
  for (std::size_t k = 0; k < n; ++k) record(layer, relative_gain(exponent[k], candidate), theta[k], 0.0);
  return layer;
}

}  // namespace

DeviationReport deviation_test(const ModelParams& params, const Equilibrium& eq, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw InvalidParams("deviation grid step must lie in (0, 0.5]");
  }
  DeviationReport r;
  r.grid_step = grid_step;
  r.insurer = insurer_layer(params, eq, grid_step);
  r.reinsurer1 = reinsurer_layer(params, eq, Reinsurer::One, grid_step);
  r.reinsurer2 = reinsurer_layer(params, eq, Reinsurer::Two, grid_step);
  return r;
}

}  // namespace stacknash::mc
