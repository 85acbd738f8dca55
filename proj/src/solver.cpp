#include "powergames/solver.hpp"

#include <cmath>

#include "powergames/projection.hpp"

namespace powergames {

namespace {

double profile_distance(const StrategyProfile& a, const StrategyProfile& b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.policies.size(); ++i) {
    const auto& pa = a.policies[i].powers;
    const auto& pb = b.policies[i].powers;
    for (std::size_t v = 0; v < pa.size(); ++v) {
      const double d = pa[v] - pb[v];
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

// Runs Phase 1 in place; appends each iterate's merit to the trace and
// returns the merit of the final profile. Exploits merit(P) = |P - T(P)|.
double run_phase1(const ViMap& map, StrategyProfile& profile, int max_iter,
                  double epsilon, int& iterations, std::vector<double>& trace) {
  double g = map.merit(profile);
  for (int n = 0; n < max_iter; ++n) {
    if (g < epsilon) return g;
    StrategyProfile next = map.eval_T(profile);
    profile = std::move(next);
    ++iterations;
    g = map.merit(profile);
    trace.push_back(g);
  }
  return g;
}

}  // namespace

SolveResult fixed_point_solve(const GameContext& ctx, const SolverConfig& config,
                              std::optional<StrategyProfile> initial) {
  ViMap map(ctx, config.tau);
  SolveResult result;
  result.profile = initial ? std::move(*initial) : ctx.default_profile();
  validate_profile(ctx, result.profile);
  result.merit = run_phase1(map, result.profile, config.max_phase1,
                            config.epsilon, result.iterations_phase1,
                            result.merit_trace);
  result.converged = result.merit < config.epsilon;
  return result;
}

double gamma_schedule(int t, const SolverConfig& config) {
  if (t < 1) throw ConfigInvalid("iteration index starts at 1");
  const int block = (t - 1) / config.gamma_block;
  double gamma = config.gamma0;
  for (int k = 0; k < block; ++k) gamma = gamma / (1.0 + gamma);
  return gamma;
}

PowerPolicy steepest_descent_step(const ViMap& map, const StrategyProfile& profile,
                                  int i, const SolverConfig& config, int t) {
  const GameContext& ctx = map.context();
  const double f0 = [&] {
    const double g = map.merit(profile);
    return g * g;
  }();

  StrategyProfile perturbed = profile;
  std::vector<double> grad(profile.policies[i].powers.size());
  for (std::size_t v = 0; v < grad.size(); ++v) {
    const double p0 = profile.policies[i].powers[v];
    const double step = config.fd_step * std::max(1.0, std::abs(p0));
    perturbed.policies[i].powers[v] = p0 + step;
    const double g = map.merit(perturbed);
    grad[v] = (g * g - f0) / step;
    perturbed.policies[i].powers[v] = p0;
  }

  const double gamma = gamma_schedule(t, config);
  std::vector<double> x(grad.size());
  for (std::size_t v = 0; v < x.size(); ++v)
    x[v] = profile.policies[i].powers[v] - gamma * grad[v];
  const auto& space = ctx.visible_space(i);
  auto proj = project_budget(x, space.probs, ctx.spec().budgets[i]);
  return PowerPolicy{i, ctx.info(), std::move(proj.powers)};
}

SolveResult algorithm1(const GameContext& ctx, const SolverConfig& config,
                       std::optional<StrategyProfile> initial) {
  ViMap map(ctx, config.tau);
  SolveResult result;
  StrategyProfile profile = initial ? std::move(*initial) : ctx.default_profile();
  validate_profile(ctx, profile);

  StrategyProfile best = profile;
  double best_merit = std::numeric_limits<double>::infinity();
  auto track = [&](const StrategyProfile& p, double g) {
    if (g < best_merit) {
      best_merit = g;
      best = p;
    }
  };

  for (;;) {
    double g = run_phase1(map, profile, config.max_phase1, config.epsilon,
                          result.iterations_phase1, result.merit_trace);
    track(profile, g);
    if (g < config.epsilon) break;

    bool stalled = false;
    for (int t = 1; t <= config.max_phase2 && !stalled; ++t) {
      StrategyProfile next = profile;
      for (int i = 0; i < ctx.n_users(); ++i)
        next.policies[i] = steepest_descent_step(map, next, i, config, t);
      const double moved = profile_distance(profile, next);
      profile = std::move(next);
      ++result.iterations_phase2;
      g = map.merit(profile);
      result.merit_trace.push_back(g);
      track(profile, g);
      if (g < config.epsilon) break;
      if (moved < config.delta) stalled = true;
    }
    if (g < config.epsilon) break;

    ++result.restarts;
    if (result.restarts > config.max_restarts) break;  // best-so-far, not converged
  }

  result.profile = std::move(best);
  result.merit = best_merit;
  result.converged = best_merit < config.epsilon;
  return result;
}

}  // namespace powergames
