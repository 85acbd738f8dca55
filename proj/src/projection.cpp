#include "powergames/projection.hpp"

#include <algorithm>
#include <cmath>

namespace powergames {

namespace {

double residual_power(std::span<const double> x, std::span<const double> w,
                      double lambda) {
  double total = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    total += w[k] * std::max(0.0, x[k] - lambda);
  return total;
}

}  // namespace

ProjectionResult project_budget(std::span<const double> x,
                                std::span<const double> weights, double budget,
                                int max_iter) {
  if (x.size() != weights.size())
    throw DimensionMismatch("projection input and weights differ in length");
  if (!(budget > 0.0)) throw ConfigInvalid("budget must be positive");

  double lo = x[0], hi = x[0], min_w = weights[0];
  for (std::size_t k = 0; k < x.size(); ++k) {
    lo = std::min(lo, x[k]);
    hi = std::max(hi, x[k]);
    if (weights[k] > 0.0) min_w = std::min(min_w > 0.0 ? min_w : weights[k], weights[k]);
  }
  if (!(min_w > 0.0)) throw ConfigInvalid("weights must contain a positive entry");
  lo -= budget / min_w;  // residual_power(lo) >= budget, residual_power(hi) = 0

  const double tol = 1e-10 * std::max(1.0, budget);
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    const double r = residual_power(x, weights, mid);
    if (std::abs(r - budget) <= tol) {
      ProjectionResult result;
      result.lambda = mid;
      result.powers.resize(x.size());
      for (std::size_t k = 0; k < x.size(); ++k)
        result.powers[k] = std::max(0.0, x[k] - mid);
      return result;
    }
    if (r > budget)
      lo = mid;
    else
      hi = mid;
  }
  throw NonConvergence("budget projection bisection did not converge");
}

double interference_floor(const std::vector<double>& state_gains,
                          const std::vector<double>& state_powers, int i,
                          int n_users) {
  const double direct = state_gains[i * n_users + i];
  if (direct <= 0.0) throw ZeroDirectGain("direct gain is zero");
  double interference = 1.0;
  for (int j = 0; j < n_users; ++j)
    if (j != i) interference += state_gains[i * n_users + j] * state_powers[j];
  return interference / direct;
}

PowerPolicy best_response_full(const GameContext& ctx,
                               const StrategyProfile& profile, int i) {
  if (ctx.info() != Visibility::Full)
    throw VisibilityMismatch("water-filling best response needs full information");
  const auto& full = ctx.full_space();
  const int n = ctx.n_users();
  std::vector<std::vector<double>> expanded;
  for (const auto& p : profile.policies) expanded.push_back(expand_policy(ctx, p));

  std::vector<double> x(full.size());
  std::vector<double> pw(n);
  for (std::size_t s = 0; s < full.size(); ++s) {
    for (int j = 0; j < n; ++j) pw[j] = expanded[j][s];
    x[s] = -interference_floor(full.gains[s], pw, i, n);
  }
  auto proj = project_budget(x, full.probs, ctx.spec().budgets[i]);
  return PowerPolicy{i, Visibility::Full, std::move(proj.powers)};
}

}  // namespace powergames
