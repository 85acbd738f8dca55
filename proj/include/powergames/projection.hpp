#pragma once

#include <span>
#include <vector>

#include "powergames/game.hpp"

namespace powergames {

/// powers(h) = max(0, x(h) - lambda); lambda may be negative since the budget
/// is met with equality.
struct ProjectionResult {
  std::vector<double> powers;
  double lambda = 0.0;
};

/// Projects x onto {p >= 0, sum_h w(h) p(h) = budget} under the w-weighted
/// Euclidean norm. lambda is found by bisection.
ProjectionResult project_budget(std::span<const double> x,
                                std::span<const double> weights, double budget,
                                int max_iter = 200);

/// Noise-plus-interference to direct-gain ratio for user i at one full state.
double interference_floor(const std::vector<double>& state_gains,
                          const std::vector<double>& state_powers, int i,
                          int n_users);

/// Water-filling best response for the full-information game: projection of
/// the negated floors onto the budget set.
PowerPolicy best_response_full(const GameContext& ctx,
                               const StrategyProfile& profile, int i);

}  // namespace powergames
