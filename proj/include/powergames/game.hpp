#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "powergames/channel.hpp"

namespace powergames {

/// One of the three games: Full knowledge, incident gains only, direct gain
/// only. Budgets are average powers in linear scale with unit noise.
struct GameSpec {
  ChannelSpec channel;
  std::vector<double> budgets;
  Visibility info = Visibility::Full;
};

GameSpec make_game_spec(ChannelSpec channel, std::vector<double> budgets,
                        Visibility info);

/// Per-user power value for each state the user can see.
struct PowerPolicy {
  int user = 0;
  Visibility visibility = Visibility::Full;
  std::vector<double> powers;
};

struct StrategyProfile {
  std::vector<PowerPolicy> policies;

  int n_users() const { return static_cast<int>(policies.size()); }
};

/// Precomputed state spaces and measurability maps for one game. Immutable
/// after construction; shared freely across threads.
class GameContext {
 public:
  explicit GameContext(GameSpec spec, std::uint64_t cap = kDefaultStateCap);

  const GameSpec& spec() const { return spec_; }
  int n_users() const { return spec_.channel.n_users; }
  Visibility info() const { return spec_.info; }

  const StateSpace& full_space() const { return full_; }
  /// The state space user i's policy is indexed by.
  const StateSpace& visible_space(int user) const;
  std::size_t visible_size(int user) const;
  /// Maps each full-state index to user i's visible-state index.
  const std::vector<int>& expansion_map(int user) const;

  /// Uniform full-budget allocation, feasible with equality.
  StrategyProfile default_profile() const;

 private:
  GameSpec spec_;
  StateSpace full_;
  std::vector<StateSpace> visible_;
  std::vector<std::vector<int>> expand_;
};

/// SINR of user i at one full channel state, unit noise.
double sinr(const std::vector<double>& state_gains,
            const std::vector<double>& state_powers, int i, int n_users);

/// Maps a policy onto the full state space (identity for Full visibility).
std::vector<double> expand_policy(const GameContext& ctx,
                                  const PowerPolicy& policy);

/// Expected rate of user i in nats per channel use, by exact enumeration.
double rate(const GameContext& ctx, const StrategyProfile& profile, int i);

double sum_rate(const GameContext& ctx, const StrategyProfile& profile);

/// Expected power under the user's visible distribution.
double expected_power(const GameContext& ctx, const PowerPolicy& policy);

/// Throws if a policy is negative, has the wrong visibility, or exceeds its
/// budget by more than tol.
void validate_profile(const GameContext& ctx, const StrategyProfile& profile,
                      double tol = 1e-9);

struct NeCheckReport {
  double max_gain = 0.0;
  bool is_ne = false;
};

/// Numerical epsilon-NE certificate: random feasible unilateral deviations
/// (budget exhausted plus the zero policy), and the exact water-filling best
/// response when the game has full information.
NeCheckReport epsilon_ne_check(const GameContext& ctx,
                               const StrategyProfile& profile, double epsilon,
                               int n_deviations, std::uint64_t seed);

}  // namespace powergames
