#include <doctest.h>

#include <cmath>
#include <random>

#include "powergames/experiment.hpp"
#include "powergames/projection.hpp"
#include "powergames/vi.hpp"

using namespace powergames;

namespace {

GameContext full_ctx(const std::string& preset, double snr_db) {
  auto ch = preset_channel(preset);
  return GameContext(make_game_spec(ch, budgets_from_snr_db(snr_db, ch.n_users),
                                    Visibility::Full));
}

GameContext partial_ctx(const std::string& preset, double snr_db, Visibility vis) {
  auto ch = preset_channel(preset);
  return GameContext(make_game_spec(ch, budgets_from_snr_db(snr_db, ch.n_users), vis));
}

// central finite difference of user i's rate in its visible power v
double fd_rate(const GameContext& ctx, const StrategyProfile& profile, int i,
               std::size_t v, double step = 1e-5) {
  StrategyProfile lo = profile, hi = profile;
  hi.policies[i].powers[v] += step;
  lo.policies[i].powers[v] -= step;
  return (rate(ctx, hi, i) - rate(ctx, lo, i)) / (2 * step);
}

}  // namespace

TEST_CASE("build_affine") {
  GameContext ctx(make_game_spec(
      make_channel_spec(2, build_gain_distribution({0.5}, {1.0}),
                        build_gain_distribution({0.25}, {1.0})),
      {1.0, 1.0}, Visibility::Full));
  // single state |h11|^2=0.5, |h22|^2=0.5, cross 0.25 both ways
  auto op = build_affine(ctx);
  REQUIRE(op.h_blocks.size() == 1);
  CHECK(op.h_blocks[0][0] == doctest::Approx(2.0));
  CHECK(op.H_blocks[0][1] == doctest::Approx(0.5));
  CHECK(op.H_blocks[0][0] == 0.0);

  auto ex1 = full_ctx("example1", 10.0);
  auto op1 = build_affine(ex1);
  CHECK(op1.h_blocks.size() == 512);
  CHECK(op1.H_blocks[0].size() == 9);
}

TEST_CASE("eval_affine_F") {
  // one state, |h11|^2=0.5, |h22|^2=1, |h12|^2=0.25, |h21|^2=0.75
  AffineOperator op;
  op.n_users = 2;
  op.h_blocks = {{2.0, 1.0}};
  op.H_blocks = {{0.0, 0.5, 0.75, 0.0}};

  auto f0 = eval_affine_F(op, {0.0, 0.0});
  CHECK(f0[0] == doctest::Approx(2.0));
  CHECK(f0[1] == doctest::Approx(1.0));

  auto f1 = eval_affine_F(op, {1.0, 1.0});
  CHECK(f1[0] == doctest::Approx(3.5));
  CHECK(f1[1] == doctest::Approx(2.75));

  AffineOperator diag = op;
  diag.H_blocks = {{0.0, 0.0, 0.0, 0.0}};
  auto f2 = eval_affine_F(diag, {0.3, 0.8});
  CHECK(f2[0] == doctest::Approx(0.3 + 2.0));
  CHECK(f2[1] == doctest::Approx(0.8 + 1.0));

  CHECK_THROWS_AS(eval_affine_F(op, {1.0}), DimensionMismatch);
}

TEST_CASE("check_monotone on the example gain sets") {
  AffineOperator identity;
  identity.n_users = 2;
  identity.h_blocks = {{1.0, 1.0}};
  identity.H_blocks = {{0.0, 0.0, 0.0, 0.0}};
  auto id_report = check_monotone(identity);
  CHECK(id_report.min_eig == doctest::Approx(1.0));
  CHECK(id_report.is_psd);

  CHECK(check_monotone(build_affine(full_ctx("example1", 10.0))).is_psd);
  CHECK_FALSE(check_monotone(build_affine(full_ctx("example2", 10.0))).is_psd);
  CHECK_FALSE(check_monotone(build_affine(full_ctx("example3", 10.0))).is_psd);
}

TEST_CASE("blockwise minimum eigenvalue is exact") {
  // two states with different cross ratios; the weaker block decides
  AffineOperator op;
  op.n_users = 2;
  op.h_blocks = {{1.0, 1.0}, {1.0, 1.0}};
  op.H_blocks = {{0.0, 0.1, 0.3, 0.0}, {0.0, 2.0, 3.0, 0.0}};
  auto report = check_monotone(op);
  // symmetric parts: off-diagonals 0.2 and 2.5; min eig = 1 - 2.5
  CHECK(report.min_eig == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK_FALSE(report.is_psd);
}

TEST_CASE("gradients match finite differences") {
  // single state, single user: d/dP log(1+P) = 1/2 at P=1
  GameContext one(make_game_spec(
      make_channel_spec(1, build_gain_distribution({1.0}, {1.0}),
                        build_gain_distribution({1.0}, {1.0})),
      {1.0}, Visibility::Incident));
  StrategyProfile p1{{PowerPolicy{0, Visibility::Incident, {1.0}}}};
  auto g1 = grad_rate_incident(one, p1, 0);
  CHECK(g1[0] == doctest::Approx(0.5).epsilon(1e-12));

  for (auto vis : {Visibility::Incident, Visibility::Direct}) {
    auto ctx = partial_ctx(vis == Visibility::Incident ? "example1" : "example2",
                           10.0, vis);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
      auto profile = random_feasible_profile(ctx, rng());
      for (int i = 0; i < ctx.n_users(); ++i) {
        auto grad = vis == Visibility::Incident
                        ? grad_rate_incident(ctx, profile, i)
                        : grad_rate_direct(ctx, profile, i);
        const auto& space = ctx.visible_space(i);
        for (std::size_t v = 0; v < grad.size(); ++v) {
          // zero-interference bound pi(h) |h_ii|^2
          const double hii = vis == Visibility::Incident ? space.gains[v][i]
                                                         : space.gains[v][0];
          CHECK(grad[v] <= space.probs[v] * hii + 1e-12);
          const double fd = fd_rate(ctx, profile, i, v);
          CHECK(grad[v] == doctest::Approx(fd).epsilon(1e-6));
        }
      }
    }
  }

  auto wrong = partial_ctx("example1", 10.0, Visibility::Direct);
  auto profile = wrong.default_profile();
  CHECK_THROWS_AS(grad_rate_incident(wrong, profile, 0), VisibilityMismatch);
}

TEST_CASE("eval_T on a single-state game hits the budget point") {
  GameContext two(make_game_spec(
      make_channel_spec(2, build_gain_distribution({0.5}, {1.0}),
                        build_gain_distribution({0.8}, {1.0})),
      {1.5, 2.5}, Visibility::Full));
  ViMap map(two, 0.1);
  StrategyProfile p{{PowerPolicy{0, Visibility::Full, {0.2}},
                     PowerPolicy{1, Visibility::Full, {1.0}}}};
  auto t = map.eval_T(p);
  CHECK(t.policies[0].powers[0] == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(t.policies[1].powers[0] == doctest::Approx(2.5).epsilon(1e-10));

  // merit at P = 0 with budgets (1, 1): |(1,1)| = sqrt(2)
  GameContext unit(make_game_spec(
      make_channel_spec(2, build_gain_distribution({0.5}, {1.0}),
                        build_gain_distribution({0.8}, {1.0})),
      {1.0, 1.0}, Visibility::Full));
  ViMap unit_map(unit, 0.1);
  StrategyProfile zero{{PowerPolicy{0, Visibility::Full, {0.0}},
                        PowerPolicy{1, Visibility::Full, {0.0}}}};
  // the bisection multiplier is accurate to ~1e-10, not machine precision
  CHECK(unit_map.merit(zero) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("eval_T with tau = 1 is the water-filling map") {
  auto ctx = full_ctx("example1", 10.0);
  ViMap map(ctx, 1.0);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto profile = random_feasible_profile(ctx, rng());
    auto t = map.eval_T(profile);
    for (int i = 0; i < 3; ++i) {
      auto br = best_response_full(ctx, profile, i);
      for (std::size_t s = 0; s < br.powers.size(); ++s)
        CHECK(std::abs(t.policies[i].powers[s] - br.powers[s]) <= 1e-12);
    }
  }
}

TEST_CASE("one T step is a better response in partial games") {
  for (const auto* preset : {"example1", "example2", "example3"}) {
    for (auto vis : {Visibility::Incident, Visibility::Direct}) {
      auto ctx = partial_ctx(preset, 10.0, vis);
      ViMap map(ctx, 0.1);
      std::mt19937_64 rng(42);
      for (int trial = 0; trial < 10; ++trial) {
        auto profile = random_feasible_profile(ctx, rng());
        auto next = map.eval_T(profile);
        for (int i = 0; i < ctx.n_users(); ++i) {
          StrategyProfile mixed = profile;
          mixed.policies[i] = next.policies[i];
          CHECK(rate(ctx, mixed, i) >= rate(ctx, profile, i) - 1e-9);
        }
      }
    }
  }
}
