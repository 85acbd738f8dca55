#include "powergames/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace powergames {

using nlohmann::json;

std::string to_string(GameKind kind) {
  switch (kind) {
    case GameKind::A: return "A";
    case GameKind::I: return "I";
    case GameKind::D: return "D";
    case GameKind::LB: return "LB";
  }
  return "?";
}

GameKind game_kind_from_string(const std::string& s) {
  if (s == "A") return GameKind::A;
  if (s == "I") return GameKind::I;
  if (s == "D") return GameKind::D;
  if (s == "LB") return GameKind::LB;
  throw ParseError("unknown game kind: " + s);
}

ChannelSpec preset_channel(const std::string& name) {
  auto uniform = [](std::vector<double> values) {
    const double p = 1.0 / static_cast<double>(values.size());
    return build_gain_distribution(std::move(values),
                                   std::vector<double>(values.size(), p));
  };
  if (name == "example1")
    return make_channel_spec(3, uniform({0.3, 1.0}), uniform({0.2, 0.1}));
  if (name == "example2")
    return make_channel_spec(3, uniform({0.3, 1.0}), uniform({0.1, 0.5}));
  if (name == "example3")
    return make_channel_spec(2, uniform({0.1, 0.5, 1.0}),
                             uniform({0.25, 0.5, 0.75}));
  throw ConfigInvalid("unknown preset: " + name);
}

std::vector<double> budgets_from_snr_db(double snr_db, int n_users) {
  return std::vector<double>(n_users, std::pow(10.0, snr_db / 10.0));
}

namespace {

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

GainDistribution parse_distribution(const json& obj, const std::string& where) {
  reject_unknown_keys(obj, where, {"values", "probs"});
  return build_gain_distribution(obj.at("values").get<std::vector<double>>(),
                                 obj.at("probs").get<std::vector<double>>());
}

SolverConfig parse_solver(const json& obj) {
  reject_unknown_keys(obj, "solver",
                      {"tau", "epsilon", "delta", "max_phase1", "gamma0",
                       "gamma_block", "fd_step", "max_restarts", "max_phase2",
                       "rng_seed"});
  SolverConfig cfg;
  cfg.tau = obj.value("tau", cfg.tau);
  cfg.epsilon = obj.value("epsilon", cfg.epsilon);
  cfg.delta = obj.value("delta", cfg.delta);
  cfg.max_phase1 = obj.value("max_phase1", cfg.max_phase1);
  cfg.gamma0 = obj.value("gamma0", cfg.gamma0);
  cfg.gamma_block = obj.value("gamma_block", cfg.gamma_block);
  cfg.fd_step = obj.value("fd_step", cfg.fd_step);
  cfg.max_restarts = obj.value("max_restarts", cfg.max_restarts);
  cfg.max_phase2 = obj.value("max_phase2", cfg.max_phase2);
  cfg.rng_seed = obj.value("rng_seed", cfg.rng_seed);
  if (!(cfg.tau > 0.0) || !(cfg.epsilon > 0.0) || !(cfg.delta > 0.0) ||
      cfg.max_phase1 < 1 || !(cfg.gamma0 > 0.0) || cfg.gamma_block < 1 ||
      !(cfg.fd_step > 0.0) || cfg.max_restarts < 0 || cfg.max_phase2 < 1)
    throw ConfigInvalid("solver parameters must be positive");
  return cfg;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  reject_unknown_keys(root, "config",
                      {"preset", "channel", "games", "snr_db_list", "solver",
                       "trials", "seed", "output_path"});
  ExperimentConfig cfg;
  if (root.contains("preset")) {
    cfg.preset = root.at("preset").get<std::string>();
    cfg.channel = preset_channel(cfg.preset);
  }
  if (root.contains("channel")) {
    const auto& ch = root.at("channel");
    reject_unknown_keys(ch, "channel", {"n_users", "direct", "cross"});
    cfg.channel = make_channel_spec(ch.at("n_users").get<int>(),
                                    parse_distribution(ch.at("direct"), "channel.direct"),
                                    parse_distribution(ch.at("cross"), "channel.cross"));
    if (cfg.preset.empty()) cfg.preset = "custom";
  }
  if (!cfg.channel) throw ConfigInvalid("config needs a preset or a channel");
  if (root.contains("games"))
    for (const auto& g : root.at("games"))
      cfg.games.push_back(game_kind_from_string(g.get<std::string>()));
  else
    cfg.games = {GameKind::A, GameKind::I, GameKind::D, GameKind::LB};
  if (root.contains("snr_db_list"))
    cfg.snr_db_list = root.at("snr_db_list").get<std::vector<double>>();
  if (cfg.snr_db_list.empty()) throw ConfigInvalid("snr_db_list must be nonempty");
  if (root.contains("solver")) cfg.solver = parse_solver(root.at("solver"));
  cfg.trials = root.value("trials", cfg.trials);
  if (cfg.trials < 1) throw ConfigInvalid("trials must be >= 1");
  cfg.seed = root.value("seed", cfg.seed);
  cfg.output_path = root.value("output_path", cfg.output_path);
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

StrategyProfile random_feasible_profile(const GameContext& ctx,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  StrategyProfile profile;
  for (int i = 0; i < ctx.n_users(); ++i) {
    PowerPolicy p{i, ctx.info(), std::vector<double>(ctx.visible_size(i))};
    const auto& space = ctx.visible_space(i);
    double mean = 0.0;
    for (std::size_t s = 0; s < p.powers.size(); ++s) {
      p.powers[s] = unif(rng);
      mean += space.probs[s] * p.powers[s];
    }
    const double scale = ctx.spec().budgets[i] / mean;
    for (double& v : p.powers) v *= scale;
    profile.policies.push_back(std::move(p));
  }
  return profile;
}

namespace {

Visibility visibility_for(GameKind kind) {
  switch (kind) {
    case GameKind::A: return Visibility::Full;
    case GameKind::I: return Visibility::Incident;
    case GameKind::D: return Visibility::Direct;
    case GameKind::LB: return Visibility::Incident;  // bound from the incident game
  }
  return Visibility::Full;
}

}  // namespace

std::vector<CsvRow> run_preset(const ExperimentConfig& config) {
  if (config.snr_db_list.empty() || !config.channel)
    throw ConfigInvalid("run_preset needs a channel and a nonempty snr list");
  const ChannelSpec& channel = *config.channel;
  // Monotonicity depends only on the gain sets, not on the budgets.
  const bool psd = [&] {
    GameContext probe(make_game_spec(channel, budgets_from_snr_db(0.0, channel.n_users),
                                     Visibility::Full));
    return check_monotone(build_affine(probe)).is_psd;
  }();

  std::vector<CsvRow> rows;
  for (GameKind kind : config.games) {
    for (double snr : config.snr_db_list) {
      GameContext ctx(make_game_spec(channel,
                                     budgets_from_snr_db(snr, channel.n_users),
                                     visibility_for(kind)));
      CsvRow base;
      base.example = config.preset;
      base.game = kind;
      base.snr_db = snr;
      base.psd = psd;

      StrategyProfile profile;
      if (kind == GameKind::LB) {
        for (int i = 0; i < ctx.n_users(); ++i)
          profile.policies.push_back(lower_bound_maximizer(ctx, i));
        base.converged = true;
        base.merit = 0.0;
      } else {
        SolveResult res;
        try {
          if (kind == GameKind::A && psd)
            res = fixed_point_solve(ctx, config.solver);
          else
            res = algorithm1(ctx, config.solver);
        } catch (const Error&) {
          base.converged = false;
          rows.push_back(base);
          continue;
        }
        profile = std::move(res.profile);
        base.converged = res.converged;
        base.merit = res.merit;
        base.iters_phase1 = res.iterations_phase1;
        base.iters_phase2 = res.iterations_phase2;
        base.restarts = res.restarts;
        if (base.converged) {
          auto check = epsilon_ne_check(ctx, profile, 10.0 * config.solver.epsilon,
                                        200, splitmix64(config.seed ^ 0x5eedULL));
          base.converged = check.is_ne;
        }
      }

      const double total = sum_rate(ctx, profile);
      for (int i = 0; i < ctx.n_users(); ++i) {
        CsvRow row = base;
        row.user = i;
        row.rate_nats = rate(ctx, profile, i);
        row.sum_rate_nats = total;
        rows.push_back(row);
      }
      CsvRow all = base;
      all.user = -1;
      all.rate_nats = total;
      all.sum_rate_nats = total;
      rows.push_back(all);
    }
  }
  return rows;
}

std::vector<StatRow> phase1_stats(const ExperimentConfig& config, GameKind kind) {
  if (!config.channel) throw ConfigInvalid("phase1_stats needs a channel");
  std::vector<StatRow> rows;
  for (double snr : config.snr_db_list) {
    GameContext ctx(make_game_spec(*config.channel,
                                   budgets_from_snr_db(snr, config.channel->n_users),
                                   visibility_for(kind)));
    ViMap map_tau(ctx, config.solver.tau);
    ViMap map_one(ctx, 1.0);

    std::vector<double> before_tau, after_tau, before_one, after_one;
    for (int trial = 0; trial < config.trials; ++trial) {
      auto start = random_feasible_profile(
          ctx, splitmix64(config.seed + static_cast<std::uint64_t>(trial)));
      before_tau.push_back(map_tau.merit(start));
      before_one.push_back(map_one.merit(start));
      auto res = fixed_point_solve(ctx, config.solver, start);
      after_tau.push_back(res.merit);
      after_one.push_back(map_one.merit(res.profile));
    }

    auto mean_std = [](const std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var /= static_cast<double>(v.size());  // population std
      return std::pair<double, double>(mean, std::sqrt(var));
    };

    StatRow row;
    row.snr_db = snr;
    row.trials = config.trials;
    std::tie(row.mean_before_tau, row.std_before_tau) = mean_std(before_tau);
    std::tie(row.mean_after_tau, row.std_after_tau) = mean_std(after_tau);
    std::tie(row.mean_before_tau1, row.std_before_tau1) = mean_std(before_one);
    std::tie(row.mean_after_tau1, row.std_after_tau1) = mean_std(after_one);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string csv_to_string(const std::vector<CsvRow>& rows) {
  std::string out = "# noise=1 log=nats\n";
  out += "example,game,snr_db,psd,converged,merit,iters_phase1,iters_phase2,"
         "restarts,user,rate_nats,sum_rate_nats\n";
  for (const auto& r : rows) {
    out += r.example + "," + to_string(r.game) + "," + fmt(r.snr_db) + ",";
    out += std::string(r.psd ? "1" : "0") + "," + (r.converged ? "1" : "0") + ",";
    out += fmt(r.merit) + "," + std::to_string(r.iters_phase1) + ",";
    out += std::to_string(r.iters_phase2) + "," + std::to_string(r.restarts) + ",";
    out += (r.user < 0 ? std::string("all") : std::to_string(r.user + 1)) + ",";
    out += fmt(r.rate_nats) + "," + fmt(r.sum_rate_nats) + "\n";
  }
  return out;
}

void emit_csv(const std::vector<CsvRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output: " + path);
  out << csv_to_string(rows);
  if (!out) throw IoError("write failed: " + path);
}

std::string stats_csv_to_string(const std::vector<StatRow>& rows,
                                const std::string& example, GameKind kind) {
  std::string out = "# noise=1 log=nats\n";
  out += "example,game,snr_db,trials,mean_g_before_tau,std_g_before_tau,"
         "mean_g_after_tau,std_g_after_tau,mean_g_before_tau1,std_g_before_tau1,"
         "mean_g_after_tau1,std_g_after_tau1\n";
  for (const auto& r : rows) {
    out += example + "," + to_string(kind) + "," + fmt(r.snr_db) + ",";
    out += std::to_string(r.trials) + ",";
    out += fmt(r.mean_before_tau) + "," + fmt(r.std_before_tau) + ",";
    out += fmt(r.mean_after_tau) + "," + fmt(r.std_after_tau) + ",";
    out += fmt(r.mean_before_tau1) + "," + fmt(r.std_before_tau1) + ",";
    out += fmt(r.mean_after_tau1) + "," + fmt(r.std_after_tau1) + "\n";
  }
  return out;
}

void emit_stats_csv(const std::vector<StatRow>& rows, const std::string& example,
                    GameKind kind, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output: " + path);
  out << stats_csv_to_string(rows, example, kind);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace powergames
