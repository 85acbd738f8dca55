#pragma once

#include <vector>

#include "powergames/game.hpp"

namespace powergames {

/// Opponent-independent Jensen lower bound on user i's rate. Incident games
/// use the true cross gains into i; direct games replace them by their mean.
double lower_bound_rate(const GameContext& ctx, const PowerPolicy& policy,
                        int i);

/// Water-filling maximizer of the lower bound (floors built from the full
/// opponent budgets).
PowerPolicy lower_bound_maximizer(const GameContext& ctx, int i);

struct BoundUserRow {
  double rate_at_ne = 0.0;
  double bound_at_maximizer = 0.0;
  bool ne_dominates = false;
};

struct BoundReport {
  std::vector<BoundUserRow> users;
  double sum_rate_at_maximizers = 0.0;  // s(Q), under the true rates
};

BoundReport ne_vs_bound_report(const GameContext& ctx,
                               const StrategyProfile& ne_profile);

}  // namespace powergames
