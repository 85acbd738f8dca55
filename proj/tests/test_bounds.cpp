#include <doctest.h>

#include <cmath>
#include <random>

#include "powergames/bounds.hpp"
#include "powergames/experiment.hpp"
#include "powergames/projection.hpp"
#include "powergames/solver.hpp"

using namespace powergames;

namespace {

GameContext make_ctx(const std::string& preset, double snr_db, Visibility vis) {
  auto ch = preset_channel(preset);
  return GameContext(make_game_spec(ch, budgets_from_snr_db(snr_db, ch.n_users), vis));
}

}  // namespace

TEST_CASE("lower bound basics") {
  // negligible opponent budgets: the bound equals the exact rate
  auto ch = preset_channel("example1");
  GameContext ctx(make_game_spec(ch, {2.0, 1e-9, 1e-9}, Visibility::Incident));
  auto profile = random_feasible_profile(ctx, 1);
  CHECK(lower_bound_rate(ctx, profile.policies[0], 0) ==
        doctest::Approx(rate(ctx, profile, 0)).epsilon(1e-6));

  PowerPolicy zero{0, Visibility::Incident,
                   std::vector<double>(ctx.visible_size(0), 0.0)};
  CHECK(lower_bound_rate(ctx, zero, 0) == 0.0);

  auto full = make_ctx("example1", 10.0, Visibility::Full);
  CHECK_THROWS_AS(lower_bound_rate(full, zero, 0), VisibilityMismatch);
  CHECK_THROWS_AS(lower_bound_maximizer(full, 0), VisibilityMismatch);
}

TEST_CASE("lower bound maximizer") {
  // N=1 incident game reduces to single-user water-filling on {0.3, 1}
  auto n1 = make_channel_spec(1, build_gain_distribution({0.3, 1.0}, {0.5, 0.5}),
                              build_gain_distribution({1.0}, {1.0}));
  GameContext ctx(make_game_spec(n1, {2.0}, Visibility::Incident));
  auto p = lower_bound_maximizer(ctx, 0);
  CHECK(p.powers[0] == doctest::Approx(5.0 / 6).epsilon(1e-8));
  CHECK(p.powers[1] == doctest::Approx(19.0 / 6).epsilon(1e-8));

  // single visible state: the whole budget
  auto one = make_channel_spec(2, build_gain_distribution({0.5}, {1.0}),
                               build_gain_distribution({0.2}, {1.0}));
  GameContext octx(make_game_spec(one, {1.5, 2.0}, Visibility::Direct));
  CHECK(lower_bound_maximizer(octx, 0).powers[0] == doctest::Approx(1.5).epsilon(1e-9));

  // example 2 direct game: floors use the mean cross gain 0.3
  auto dctx = make_ctx("example2", 10.0, Visibility::Direct);
  const double pbar = std::pow(10.0, 1.0);
  const auto& space = dctx.visible_space(0);
  std::vector<double> x(space.size());
  for (std::size_t v = 0; v < space.size(); ++v)
    x[v] = -(1.0 + 0.3 * (pbar + pbar)) / space.gains[v][0];
  auto oracle = project_budget(x, space.probs, pbar);
  auto got = lower_bound_maximizer(dctx, 0);
  for (std::size_t v = 0; v < space.size(); ++v)
    CHECK(got.powers[v] == doctest::Approx(oracle.powers[v]).epsilon(1e-10));
}

TEST_CASE("Jensen inequality holds for feasible profiles") {
  for (const auto* preset : {"example1", "example3"}) {
    for (auto vis : {Visibility::Incident, Visibility::Direct}) {
      auto ctx = make_ctx(preset, 10.0, vis);
      std::mt19937_64 rng(1234);
      for (int trial = 0; trial < 100; ++trial) {
        auto profile = random_feasible_profile(ctx, rng());
        for (int i = 0; i < ctx.n_users(); ++i)
          CHECK(rate(ctx, profile, i) >=
                lower_bound_rate(ctx, profile.policies[i], i) - 1e-9);
      }
    }
  }
}

TEST_CASE("maximizer beats random policies on the bound") {
  auto ctx = make_ctx("example3", 10.0, Visibility::Incident);
  auto best = lower_bound_maximizer(ctx, 0);
  const double best_value = lower_bound_rate(ctx, best, 0);
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 1000; ++trial) {
    auto q = random_feasible_profile(ctx, rng());
    CHECK(best_value >= lower_bound_rate(ctx, q.policies[0], 0) - 1e-8);
  }
}

TEST_CASE("ne_vs_bound_report on a converged NE") {
  auto ctx = make_ctx("example3", 10.0, Visibility::Incident);
  SolverConfig cfg;
  cfg.max_phase1 = 100000;
  auto res = algorithm1(ctx, cfg);
  REQUIRE(res.converged);
  auto report = ne_vs_bound_report(ctx, res.profile);
  REQUIRE(report.users.size() == 2);
  for (const auto& row : report.users) {
    CHECK(row.ne_dominates);
    CHECK(row.rate_at_ne >= row.bound_at_maximizer - 1e-9);
  }
  CHECK(report.sum_rate_at_maximizers > 0.0);
}
