#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "powergames/vi.hpp"

namespace powergames {

struct SolverConfig {
  double tau = 0.1;
  double epsilon = 1e-4;    // convergence threshold on g(P)
  double delta = 1e-6;      // Phase-2 stall threshold
  int max_phase1 = 100;     // MAX
  double gamma0 = 0.5;      // initial steepest-descent step
  int gamma_block = 10;     // iterations per step-size block
  double fd_step = 1e-6;    // forward-difference step scale
  int max_restarts = 20;
  int max_phase2 = 1000;    // Phase-2 sweeps per entry before forced stall
  std::uint64_t rng_seed = 0;
};

struct SolveResult {
  StrategyProfile profile;
  double merit = 0.0;
  int iterations_phase1 = 0;
  int iterations_phase2 = 0;
  int restarts = 0;
  std::vector<double> merit_trace;
  bool converged = false;
};

/// Phase 1 alone: P <- T(P) until g(P) < epsilon or max_phase1 iterations.
SolveResult fixed_point_solve(const GameContext& ctx, const SolverConfig& config,
                              std::optional<StrategyProfile> initial = {});

/// Step size gamma_t: gamma0 in the first block of gamma_block iterations,
/// then gamma <- gamma / (1 + gamma) per block.
double gamma_schedule(int t, const SolverConfig& config);

/// One projected steepest-descent step on f(P) = g(P)^2 in user i's visible
/// powers, with a forward-difference gradient.
PowerPolicy steepest_descent_step(const ViMap& map, const StrategyProfile& profile,
                                  int i, const SolverConfig& config, int t);

/// Two-phase heuristic: fixed-point warm start, then Gauss-Seidel sweeps of
/// per-user steepest descent on the squared merit; on stall, restart Phase 1
/// from the stalled point. Returns the best iterate by merit.
SolveResult algorithm1(const GameContext& ctx, const SolverConfig& config,
                       std::optional<StrategyProfile> initial = {});

}  // namespace powergames
