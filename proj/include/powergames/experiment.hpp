#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powergames/bounds.hpp"
#include "powergames/solver.hpp"

namespace powergames {

enum class GameKind { A, I, D, LB };

std::string to_string(GameKind kind);
GameKind game_kind_from_string(const std::string& s);

/// The three channel presets used in the experiments, all gains uniform:
///   example1: N=3, direct {0.3, 1},      cross {0.2, 0.1}
///   example2: N=3, direct {0.3, 1},      cross {0.1, 0.5}
///   example3: N=2, direct {0.1, 0.5, 1}, cross {0.25, 0.5, 0.75}
ChannelSpec preset_channel(const std::string& name);

struct ExperimentConfig {
  std::string preset;  // empty when a custom channel is given
  std::optional<ChannelSpec> channel;
  std::vector<GameKind> games;
  std::vector<double> snr_db_list;
  SolverConfig solver;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string output_path;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

/// Budgets for all users from an SNR in dB: P = 10^(dB/10), unit noise.
std::vector<double> budgets_from_snr_db(double snr_db, int n_users);

struct CsvRow {
  std::string example;
  GameKind game = GameKind::A;
  double snr_db = 0.0;
  bool psd = false;
  bool converged = false;
  double merit = 0.0;
  int iters_phase1 = 0;
  int iters_phase2 = 0;
  int restarts = 0;
  int user = -1;  // -1 encodes the "all" summary row
  double rate_nats = 0.0;
  double sum_rate_nats = 0.0;
};

/// Solves every (game, snr) pair of the config and reports per-user rates.
/// G_A uses the fixed-point iteration when the affine operator is monotone,
/// the two-phase heuristic otherwise; partial-information games always use
/// the two-phase heuristic; LB rows evaluate the true rates at the Jensen
/// lower-bound maximizers. Solver failures are recorded and the run continues.
std::vector<CsvRow> run_preset(const ExperimentConfig& config);

struct StatRow {
  double snr_db = 0.0;
  int trials = 0;
  // Merit statistics before/after Phase 1, for the merit map evaluated at the
  // configured tau and at tau = 1.
  double mean_before_tau = 0.0, std_before_tau = 0.0;
  double mean_after_tau = 0.0, std_after_tau = 0.0;
  double mean_before_tau1 = 0.0, std_before_tau1 = 0.0;
  double mean_after_tau1 = 0.0, std_after_tau1 = 0.0;
};

/// Random-start study: draw `trials` feasible profiles, record g(P) before and
/// after running Phase 1 for max_phase1 iterations; population mean/std.
std::vector<StatRow> phase1_stats(const ExperimentConfig& config,
                                  GameKind kind = GameKind::A);

/// Uniform(0,1) draw per visible state, scaled so the budget is met with
/// equality. Deterministic in the seed.
StrategyProfile random_feasible_profile(const GameContext& ctx,
                                        std::uint64_t seed);

void emit_csv(const std::vector<CsvRow>& rows, const std::string& path);
std::string csv_to_string(const std::vector<CsvRow>& rows);
void emit_stats_csv(const std::vector<StatRow>& rows, const std::string& example,
                    GameKind kind, const std::string& path);
std::string stats_csv_to_string(const std::vector<StatRow>& rows,
                                const std::string& example, GameKind kind);

}  // namespace powergames
