#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "powergames/experiment.hpp"

namespace pg = powergames;
using nlohmann::json;

namespace {

int log_verbosity = 1;  // 0=error, 1=info, 2=debug

void log_info(const std::string& msg) {
  if (log_verbosity >= 1) std::cerr << "[info] " << msg << "\n";
}

int parse_log_level(const std::string& level) {
  if (level == "error") return 0;
  if (level == "info") return 1;
  if (level == "debug") return 2;
  throw CLI::ValidationError("--log-level must be error, info or debug");
}

pg::ExperimentConfig load_config(const std::string& path, std::uint64_t* seed_override) {
  auto cfg = pg::parse_config(path);
  if (seed_override) cfg.seed = *seed_override;
  return cfg;
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw pg::IoError("cannot open output: " + out_path);
  out << text;
}

int exit_code_for(const std::vector<pg::CsvRow>& rows) {
  for (const auto& r : rows)
    if (!r.converged) return 2;
  return 0;
}

int run_sweep(const pg::ExperimentConfig& cfg, const std::string& out_path) {
  auto rows = pg::run_preset(cfg);
  write_or_print(pg::csv_to_string(rows),
                 out_path.empty() ? cfg.output_path : out_path);
  return exit_code_for(rows);
}

int run_solve(pg::ExperimentConfig cfg, const std::string& game,
              double snr_db, const std::string& out_path) {
  cfg.games = {pg::game_kind_from_string(game)};
  cfg.snr_db_list = {snr_db};
  auto rows = pg::run_preset(cfg);
  for (const auto& r : rows)
    if (r.user < 0)
      log_info("game=" + pg::to_string(r.game) + " snr=" + std::to_string(r.snr_db) +
               " converged=" + (r.converged ? "yes" : "no") +
               " merit=" + std::to_string(r.merit) +
               " sum_rate=" + std::to_string(r.sum_rate_nats));
  write_or_print(pg::csv_to_string(rows),
                 out_path.empty() ? cfg.output_path : out_path);
  return exit_code_for(rows);
}

int run_stats(const pg::ExperimentConfig& cfg, const std::string& game,
              const std::string& out_path) {
  const auto kind = pg::game_kind_from_string(game);
  auto rows = pg::phase1_stats(cfg, kind);
  write_or_print(pg::stats_csv_to_string(rows, cfg.preset, kind),
                 out_path.empty() ? cfg.output_path : out_path);
  return 0;
}

// Profile file: the config keys plus "game", "snr_db" and "profile", a list of
// per-user power vectors over the visible states.
int run_check(const std::string& path, double epsilon, int n_deviations,
              std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw pg::IoError("cannot open profile: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json root = json::parse(buf.str());

  const auto kind = pg::game_kind_from_string(root.at("game").get<std::string>());
  const double snr = root.at("snr_db").get<double>();
  pg::ChannelSpec channel = pg::preset_channel(root.at("preset").get<std::string>());
  pg::Visibility vis = kind == pg::GameKind::A ? pg::Visibility::Full
                       : kind == pg::GameKind::I ? pg::Visibility::Incident
                                                 : pg::Visibility::Direct;
  pg::GameContext ctx(pg::make_game_spec(
      channel, pg::budgets_from_snr_db(snr, channel.n_users), vis));

  pg::StrategyProfile profile;
  int i = 0;
  for (const auto& powers : root.at("profile"))
    profile.policies.push_back(
        pg::PowerPolicy{i++, vis, powers.get<std::vector<double>>()});
  pg::validate_profile(ctx, profile);

  auto report = pg::epsilon_ne_check(ctx, profile, epsilon, n_deviations, seed);
  std::cout << "max_gain=" << report.max_gain
            << " is_ne=" << (report.is_ne ? "1" : "0") << "\n";
  return report.is_ne ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of stochastic power-allocation games over "
               "Gaussian interference channels"};
  app.require_subcommand(1);

  std::string config_path, out_path, log_level = "info";
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--log-level", log_level, "error, info or debug");

  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* opt = sub->add_option("--config", config_path, "JSON experiment config");
    if (need_config) opt->required();
    sub->add_option("--out", out_path, "output CSV path (default: stdout)");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  auto* solve = app.add_subcommand("solve", "solve one game at one SNR");
  add_common(solve, true);
  std::string solve_game = "A";
  double solve_snr = 10.0;
  solve->add_option("--game", solve_game, "A, I, D or LB");
  solve->add_option("--snr-db", solve_snr, "SNR in dB");

  auto* sweep = app.add_subcommand("sweep", "run every (game, snr) of the config");
  add_common(sweep, true);

  auto* stats = app.add_subcommand("stats", "Phase-1 random-start statistics");
  add_common(stats, true);
  std::string stats_game = "A";
  stats->add_option("--game", stats_game, "A, I or D");

  auto* check = app.add_subcommand("check", "epsilon-NE verification of a profile file");
  std::string profile_path;
  double check_eps = 1e-3;
  int check_devs = 1000;
  check->add_option("--profile", profile_path, "profile JSON file")->required();
  check->add_option("--epsilon", check_eps, "gain tolerance");
  check->add_option("--deviations", check_devs, "random deviations per user");
  check->add_option("--seed", seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    log_verbosity = parse_log_level(log_level);
    const std::uint64_t* seed_ptr = seed_set ? &seed : nullptr;
    if (solve->parsed())
      return run_solve(load_config(config_path, seed_ptr ? &seed : nullptr),
                       solve_game, solve_snr, out_path);
    if (sweep->parsed())
      return run_sweep(load_config(config_path, seed_ptr ? &seed : nullptr), out_path);
    if (stats->parsed())
      return run_stats(load_config(config_path, seed_ptr ? &seed : nullptr),
                       stats_game, out_path);
    if (check->parsed()) return run_check(profile_path, check_eps, check_devs, seed);
  } catch (const pg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
