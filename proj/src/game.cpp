#include "powergames/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "powergames/projection.hpp"

namespace powergames {

GameSpec make_game_spec(ChannelSpec channel, std::vector<double> budgets,
                        Visibility info) {
  if (static_cast<int>(budgets.size()) != channel.n_users)
    throw LengthMismatch("one budget per user required");
  for (double b : budgets)
    if (!(b > 0.0)) throw ConfigInvalid("budgets must be positive");
  return GameSpec{std::move(channel), std::move(budgets), info};
}

GameContext::GameContext(GameSpec spec, std::uint64_t cap) : spec_(std::move(spec)) {
  full_ = enumerate_states(spec_.channel, Visibility::Full, 0, cap);
  const int n = spec_.channel.n_users;
  if (spec_.info != Visibility::Full) {
    visible_.reserve(n);
    for (int i = 0; i < n; ++i)
      visible_.push_back(enumerate_states(spec_.channel, spec_.info, i, cap));
  }
  // Visible index of a full state: the mixed-radix number formed by the
  // digits of the links user i can see.
  expand_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    expand_[i].resize(full_.size());
    for (std::size_t s = 0; s < full_.size(); ++s) {
      const auto& d = full_.digits[s];
      std::size_t idx = 0;
      if (spec_.info == Visibility::Full) {
        idx = s;
      } else if (spec_.info == Visibility::Incident) {
        for (int j = 0; j < n; ++j) {
          const auto& dist = (j == i) ? spec_.channel.direct : spec_.channel.cross;
          idx = idx * dist.size() + d[i * n + j];
        }
      } else {
        idx = d[i * n + i];
      }
      expand_[i][s] = static_cast<int>(idx);
    }
  }
}

const StateSpace& GameContext::visible_space(int user) const {
  if (user < 0 || user >= n_users()) throw IndexOutOfRange("user out of range");
  return spec_.info == Visibility::Full ? full_ : visible_[user];
}

std::size_t GameContext::visible_size(int user) const {
  return visible_space(user).size();
}

const std::vector<int>& GameContext::expansion_map(int user) const {
  if (user < 0 || user >= n_users()) throw IndexOutOfRange("user out of range");
  return expand_[user];
}

StrategyProfile GameContext::default_profile() const {
  StrategyProfile profile;
  for (int i = 0; i < n_users(); ++i) {
    PowerPolicy p;
    p.user = i;
    p.visibility = info();
    p.powers.assign(visible_size(i), spec_.budgets[i]);
    profile.policies.push_back(std::move(p));
  }
  return profile;
}

double sinr(const std::vector<double>& state_gains,
            const std::vector<double>& state_powers, int i, int n_users) {
  double interference = 1.0;
  for (int j = 0; j < n_users; ++j)
    if (j != i) interference += state_gains[i * n_users + j] * state_powers[j];
  return state_gains[i * n_users + i] * state_powers[i] / interference;
}

std::vector<double> expand_policy(const GameContext& ctx,
                                  const PowerPolicy& policy) {
  if (policy.visibility != ctx.info())
    throw VisibilityMismatch("policy visibility does not match the game");
  if (policy.powers.size() != ctx.visible_size(policy.user))
    throw DimensionMismatch("policy length does not match its state space");
  if (ctx.info() == Visibility::Full) return policy.powers;
  const auto& map = ctx.expansion_map(policy.user);
  std::vector<double> out(ctx.full_space().size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = policy.powers[map[s]];
  return out;
}

namespace {

std::vector<std::vector<double>> expand_all(const GameContext& ctx,
                                            const StrategyProfile& profile) {
  std::vector<std::vector<double>> expanded;
  expanded.reserve(profile.policies.size());
  for (const auto& p : profile.policies) expanded.push_back(expand_policy(ctx, p));
  return expanded;
}

}  // namespace

double rate(const GameContext& ctx, const StrategyProfile& profile, int i) {
  const auto expanded = expand_all(ctx, profile);
  const auto& full = ctx.full_space();
  const int n = ctx.n_users();
  double r = 0.0;
  std::vector<double> pw(n);
  for (std::size_t s = 0; s < full.size(); ++s) {
    for (int j = 0; j < n; ++j) pw[j] = expanded[j][s];
    r += full.probs[s] * std::log1p(sinr(full.gains[s], pw, i, n));
  }
  return r;
}

double sum_rate(const GameContext& ctx, const StrategyProfile& profile) {
  double s = 0.0;
  for (int i = 0; i < ctx.n_users(); ++i) s += rate(ctx, profile, i);
  return s;
}

double expected_power(const GameContext& ctx, const PowerPolicy& policy) {
  const auto& space = ctx.visible_space(policy.user);
  double e = 0.0;
  for (std::size_t s = 0; s < space.size(); ++s)
    e += space.probs[s] * policy.powers[s];
  return e;
}

void validate_profile(const GameContext& ctx, const StrategyProfile& profile,
                      double tol) {
  if (profile.n_users() != ctx.n_users())
    throw DimensionMismatch("profile has wrong number of users");
  for (int i = 0; i < ctx.n_users(); ++i) {
    const auto& p = profile.policies[i];
    if (p.visibility != ctx.info())
      throw VisibilityMismatch("policy visibility does not match the game");
    for (double v : p.powers)
      if (!(v >= 0.0)) throw NegativeValue("negative power entry");
    if (expected_power(ctx, p) > ctx.spec().budgets[i] + tol)
      throw ConfigInvalid("policy exceeds its power budget");
  }
}

namespace {

PowerPolicy random_feasible_policy(const GameContext& ctx, int i,
                                   std::mt19937_64& rng) {
  PowerPolicy p;
  p.user = i;
  p.visibility = ctx.info();
  p.powers.resize(ctx.visible_size(i));
  const auto& space = ctx.visible_space(i);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double mean = 0.0;
  for (std::size_t s = 0; s < p.powers.size(); ++s) {
    p.powers[s] = unif(rng);
    mean += space.probs[s] * p.powers[s];
  }
  const double scale = ctx.spec().budgets[i] / mean;
  for (double& v : p.powers) v *= scale;
  return p;
}

}  // namespace

NeCheckReport epsilon_ne_check(const GameContext& ctx,
                               const StrategyProfile& profile, double epsilon,
                               int n_deviations, std::uint64_t seed) {
  NeCheckReport report;
  report.max_gain = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < ctx.n_users(); ++i) {
    const double base = rate(ctx, profile, i);
    auto try_deviation = [&](PowerPolicy deviation) {
      StrategyProfile trial = profile;
      trial.policies[i] = std::move(deviation);
      report.max_gain = std::max(report.max_gain, rate(ctx, trial, i) - base);
    };
    for (int d = 0; d < n_deviations; ++d)
      try_deviation(random_feasible_policy(ctx, i, rng));
    PowerPolicy zero{i, ctx.info(), std::vector<double>(ctx.visible_size(i), 0.0)};
    try_deviation(std::move(zero));
    if (ctx.info() == Visibility::Full)
      try_deviation(best_response_full(ctx, profile, i));
  }
  report.is_ne = report.max_gain <= epsilon;
  return report;
}

}  // namespace powergames
