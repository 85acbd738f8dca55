#include "powergames/bounds.hpp"

#include <cmath>

#include "powergames/projection.hpp"

namespace powergames {

namespace {

// Per visible state, the interference floor of the Jensen bound: opponents at
// full budget, cross gains exact (incident) or replaced by their mean (direct).
std::vector<double> bound_floors(const GameContext& ctx, int i) {
  const auto& space = ctx.visible_space(i);
  const auto& budgets = ctx.spec().budgets;
  const int n = ctx.n_users();
  std::vector<double> floors(space.size());
  const double mean_cross = ctx.spec().channel.cross.mean();
  for (std::size_t v = 0; v < space.size(); ++v) {
    double interference = 1.0;
    double direct = 0.0;
    if (ctx.info() == Visibility::Incident) {
      const auto& g = space.gains[v];  // (h_i1, ..., h_iN)
      direct = g[i];
      for (int j = 0; j < n; ++j)
        if (j != i) interference += g[j] * budgets[j];
    } else {
      direct = space.gains[v][0];
      for (int j = 0; j < n; ++j)
        if (j != i) interference += mean_cross * budgets[j];
    }
    if (direct <= 0.0) throw ZeroDirectGain("direct gain is zero");
    floors[v] = interference / direct;
  }
  return floors;
}

void require_partial_info(const GameContext& ctx) {
  if (ctx.info() == Visibility::Full)
    throw VisibilityMismatch("lower bound is defined for partial-information games only");
}

}  // namespace

double lower_bound_rate(const GameContext& ctx, const PowerPolicy& policy,
                        int i) {
  require_partial_info(ctx);
  if (policy.visibility != ctx.info())
    throw VisibilityMismatch("policy visibility does not match the game");
  const auto& space = ctx.visible_space(i);
  const auto floors = bound_floors(ctx, i);
  double r = 0.0;
  for (std::size_t v = 0; v < space.size(); ++v)
    r += space.probs[v] * std::log1p(policy.powers[v] / floors[v]);
  return r;
}

PowerPolicy lower_bound_maximizer(const GameContext& ctx, int i) {
  require_partial_info(ctx);
  const auto& space = ctx.visible_space(i);
  auto floors = bound_floors(ctx, i);
  for (double& f : floors) f = -f;
  auto proj = project_budget(floors, space.probs, ctx.spec().budgets[i]);
  return PowerPolicy{i, ctx.info(), std::move(proj.powers)};
}

BoundReport ne_vs_bound_report(const GameContext& ctx,
                               const StrategyProfile& ne_profile) {
  require_partial_info(ctx);
  BoundReport report;
  StrategyProfile maximizers;
  for (int i = 0; i < ctx.n_users(); ++i)
    maximizers.policies.push_back(lower_bound_maximizer(ctx, i));
  for (int i = 0; i < ctx.n_users(); ++i) {
    BoundUserRow row;
    row.rate_at_ne = rate(ctx, ne_profile, i);
    row.bound_at_maximizer = lower_bound_rate(ctx, maximizers.policies[i], i);
    row.ne_dominates = row.rate_at_ne >= row.bound_at_maximizer - 1e-9;
    report.users.push_back(row);
  }
  report.sum_rate_at_maximizers = sum_rate(ctx, maximizers);
  return report;
}

}  // namespace powergames
