#pragma once

#include <vector>

#include "powergames/game.hpp"

namespace powergames {

/// The affine map F(P) = (I + H_hat) P + h_vec for the full-information game,
/// stored block-sparse: one N-vector and one NxN block per channel state.
struct AffineOperator {
  int n_users = 0;
  std::vector<std::vector<double>> h_blocks;  // per state, length N
  std::vector<std::vector<double>> H_blocks;  // per state, NxN row-major, zero diagonal
};

AffineOperator build_affine(const GameContext& ctx);

/// F(P) for a state-major stacked profile vector (blocks of N per state).
std::vector<double> eval_affine_F(const AffineOperator& op,
                                  const std::vector<double>& stacked);

/// Exact gradient of user i's rate with respect to its own visible powers,
/// by enumeration over the full state space.
std::vector<double> grad_rate_incident(const GameContext& ctx,
                                       const StrategyProfile& profile, int i);
std::vector<double> grad_rate_direct(const GameContext& ctx,
                                     const StrategyProfile& profile, int i);

struct MonotoneReport {
  double min_eig = 0.0;
  bool is_psd = false;
};

/// Smallest eigenvalue of the symmetric part of I + H_hat, block by block.
MonotoneReport check_monotone(const AffineOperator& op);

/// The projected map T(P) = Pi_A(P - tau F(P)) and the merit g(P) = |P - T(P)|.
/// F is the affine operator for the full game and the negated rate gradient
/// for the partial-information games.
class ViMap {
 public:
  ViMap(const GameContext& ctx, double tau);

  const GameContext& context() const { return *ctx_; }
  double tau() const { return tau_; }

  StrategyProfile eval_T(const StrategyProfile& profile) const;
  double merit(const StrategyProfile& profile) const;

 private:
  const GameContext* ctx_;
  double tau_;
  AffineOperator affine_;  // empty unless info == Full
};

}  // namespace powergames
