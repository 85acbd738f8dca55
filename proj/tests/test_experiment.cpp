#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "powergames/experiment.hpp"

using namespace powergames;

TEST_CASE("presets") {
  auto e1 = preset_channel("example1");
  CHECK(e1.n_users == 3);
  CHECK(e1.direct.values == std::vector<double>{0.3, 1.0});
  CHECK(e1.cross.values == std::vector<double>{0.2, 0.1});
  auto e3 = preset_channel("example3");
  CHECK(e3.n_users == 2);
  CHECK(e3.direct.values == std::vector<double>{0.1, 0.5, 1.0});
  CHECK_THROWS_AS(preset_channel("example9"), ConfigInvalid);
}

TEST_CASE("budgets from snr") {
  auto b = budgets_from_snr_db(10.0, 3);
  REQUIRE(b.size() == 3);
  for (double v : b) CHECK(v == doctest::Approx(10.0));
  CHECK(budgets_from_snr_db(0.0, 1)[0] == doctest::Approx(1.0));
}

TEST_CASE("config parsing") {
  auto cfg = parse_config_text(
      R"({"preset": "example1", "games": ["A"], "snr_db_list": [10]})");
  CHECK(cfg.preset == "example1");
  REQUIRE(cfg.games.size() == 1);
  CHECK(cfg.games[0] == GameKind::A);
  CHECK(cfg.solver.tau == doctest::Approx(0.1));
  CHECK(cfg.solver.epsilon == doctest::Approx(1e-4));
  CHECK(cfg.solver.max_phase1 == 100);

  CHECK_THROWS_WITH_AS(
      parse_config_text(R"({"preset": "example1", "snr_db_list": [10], "bogus": 1})"),
      doctest::Contains("bogus"), ParseError);
  CHECK_THROWS_AS(parse_config_text(R"({"preset": "example1", "snr_db_list": []})"),
                  ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text(R"({"snr_db_list": [10]})"), ConfigInvalid);
  CHECK_THROWS_AS(parse_config_text("not json"), ParseError);

  auto custom = parse_config_text(
      R"({"channel": {"n_users": 2,
                      "direct": {"values": [0.5, 1.0], "probs": [0.5, 0.5]},
                      "cross":  {"values": [0.1],     "probs": [1.0]}},
          "snr_db_list": [5], "solver": {"tau": 1.0}})");
  CHECK(custom.preset == "custom");
  CHECK(custom.channel->n_users == 2);
  CHECK(custom.solver.tau == doctest::Approx(1.0));
}

TEST_CASE("random feasible profiles") {
  GameContext ctx(make_game_spec(preset_channel("example1"),
                                 budgets_from_snr_db(10.0, 3), Visibility::Full));
  auto a = random_feasible_profile(ctx, 42);
  auto b = random_feasible_profile(ctx, 42);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.policies[i].powers == b.policies[i].powers);
    CHECK(expected_power(ctx, a.policies[i]) ==
          doctest::Approx(10.0).epsilon(1e-12));
    for (double v : a.policies[i].powers) CHECK(v >= 0.0);
  }
  auto c = random_feasible_profile(ctx, 43);
  CHECK(a.policies[0].powers != c.policies[0].powers);

  // across many draws each state's mean power is close to the budget
  double mean0 = 0.0;
  const int draws = 1000;
  for (int k = 0; k < draws; ++k)
    mean0 += random_feasible_profile(ctx, k).policies[0].powers[0] / draws;
  CHECK(mean0 == doctest::Approx(10.0).epsilon(0.1));
}

TEST_CASE("run_preset emits one row per user plus a summary") {
  ExperimentConfig cfg;
  cfg.preset = "example3";
  cfg.channel = preset_channel("example3");
  cfg.games = {GameKind::LB};
  cfg.snr_db_list = {5.0, 10.0};
  auto rows = run_preset(cfg);
  REQUIRE(rows.size() == 6);  // 2 snr x (2 users + all)
  CHECK(rows[0].user == 0);
  CHECK(rows[2].user == -1);
  CHECK(rows[2].rate_nats == doctest::Approx(rows[0].rate_nats + rows[1].rate_nats));
  CHECK_FALSE(rows[0].psd);
  for (const auto& r : rows) CHECK(r.converged);

  ExperimentConfig bad = cfg;
  bad.snr_db_list.clear();
  CHECK_THROWS_AS(run_preset(bad), ConfigInvalid);
}

TEST_CASE("csv round trip at nine significant digits") {
  ExperimentConfig cfg;
  cfg.preset = "example3";
  cfg.channel = preset_channel("example3");
  cfg.games = {GameKind::LB, GameKind::D};
  cfg.snr_db_list = {7.5};
  cfg.solver.max_phase1 = 2000;
  auto rows = run_preset(cfg);
  auto text = csv_to_string(rows);
  CHECK(text.rfind("# noise=1 log=nats\n", 0) == 0);
  CHECK(text.find("\r") == std::string::npos);

  // identical config gives byte-identical output
  CHECK(csv_to_string(run_preset(cfg)) == text);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // comment
  std::getline(in, line);  // header
  CHECK(line ==
        "example,game,snr_db,psd,converged,merit,iters_phase1,iters_phase2,"
        "restarts,user,rate_nats,sum_rate_nats");
  std::size_t row_idx = 0;
  while (std::getline(in, line)) {
    REQUIRE(row_idx < rows.size());
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 12);
    // %.9g keeps 9 significant digits, so round-trip error is ~5e-9 relative
    CHECK(std::stod(fields[10]) ==
          doctest::Approx(rows[row_idx].rate_nats).epsilon(1e-7));
    CHECK(std::stod(fields[11]) ==
          doctest::Approx(rows[row_idx].sum_rate_nats).epsilon(1e-7));
    ++row_idx;
  }
  CHECK(row_idx == rows.size());
}

TEST_CASE("phase1_stats with one trial has zero std") {
  ExperimentConfig cfg;
  cfg.preset = "example3";
  cfg.channel = preset_channel("example3");
  cfg.snr_db_list = {5.0};
  cfg.trials = 1;
  cfg.solver.max_phase1 = 5;
  auto rows = phase1_stats(cfg, GameKind::A);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].std_before_tau == doctest::Approx(0.0));
  CHECK(rows[0].std_after_tau == doctest::Approx(0.0));
  CHECK(rows[0].mean_before_tau > 0.0);
  CHECK(rows[0].mean_after_tau <= rows[0].mean_before_tau);
}
