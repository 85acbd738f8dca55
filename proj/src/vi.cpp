#include "powergames/vi.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "powergames/projection.hpp"

namespace powergames {

AffineOperator build_affine(const GameContext& ctx) {
  if (ctx.info() != Visibility::Full)
    throw VisibilityMismatch("affine operator is defined for the full game");
  const auto& full = ctx.full_space();
  const int n = ctx.n_users();
  AffineOperator op;
  op.n_users = n;
  op.h_blocks.reserve(full.size());
  op.H_blocks.reserve(full.size());
  for (std::size_t s = 0; s < full.size(); ++s) {
    const auto& g = full.gains[s];
    std::vector<double> hb(n), Hb(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      const double direct = g[i * n + i];
      if (direct <= 0.0) throw ZeroDirectGain("direct gain is zero");
      hb[i] = 1.0 / direct;
      for (int j = 0; j < n; ++j)
        if (j != i) Hb[i * n + j] = g[i * n + j] / direct;
    }
    op.h_blocks.push_back(std::move(hb));
    op.H_blocks.push_back(std::move(Hb));
  }
  return op;
}

std::vector<double> eval_affine_F(const AffineOperator& op,
                                  const std::vector<double>& stacked) {
  const int n = op.n_users;
  const std::size_t n_states = op.h_blocks.size();
  if (stacked.size() != n_states * static_cast<std::size_t>(n))
    throw DimensionMismatch("stacked profile has wrong length");
  std::vector<double> out(stacked.size());
  for (std::size_t s = 0; s < n_states; ++s) {
    const double* p = stacked.data() + s * n;
    double* f = out.data() + s * n;
    const auto& Hb = op.H_blocks[s];
    const auto& hb = op.h_blocks[s];
    for (int i = 0; i < n; ++i) {
      double v = p[i] + hb[i];
      for (int j = 0; j < n; ++j) v += Hb[i * n + j] * p[j];
      f[i] = v;
    }
  }
  return out;
}

MonotoneReport check_monotone(const AffineOperator& op) {
  const int n = op.n_users;
  double min_eig = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd sym(n, n);
  for (const auto& Hb : op.H_blocks) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double hij = (i == j) ? 1.0 : Hb[i * n + j];
        const double hji = (i == j) ? 1.0 : Hb[j * n + i];
        sym(i, j) = 0.5 * (hij + hji);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return MonotoneReport{min_eig, min_eig >= -1e-10};
}

namespace {

// d r_i / d P_i(v) over user i's visible states, by full-space enumeration.
std::vector<double> grad_own_rate(const GameContext& ctx,
                                  const StrategyProfile& profile, int i) {
  const auto& full = ctx.full_space();
  const int n = ctx.n_users();
  std::vector<std::vector<double>> expanded;
  for (const auto& p : profile.policies) expanded.push_back(expand_policy(ctx, p));
  std::vector<double> grad(ctx.visible_size(i), 0.0);
  const auto& map = ctx.expansion_map(i);
  for (std::size_t s = 0; s < full.size(); ++s) {
    const auto& g = full.gains[s];
    double denom = 1.0 + g[i * n + i] * expanded[i][s];
    for (int j = 0; j < n; ++j)
      if (j != i) denom += g[i * n + j] * expanded[j][s];
    grad[map[s]] += full.probs[s] * g[i * n + i] / denom;
  }
  return grad;
}

}  // namespace

std::vector<double> grad_rate_incident(const GameContext& ctx,
                                       const StrategyProfile& profile, int i) {
  if (ctx.info() != Visibility::Incident)
    throw VisibilityMismatch("incident gradient needs an incident-gain game");
  return grad_own_rate(ctx, profile, i);
}

std::vector<double> grad_rate_direct(const GameContext& ctx,
                                     const StrategyProfile& profile, int i) {
  if (ctx.info() != Visibility::Direct)
    throw VisibilityMismatch("direct gradient needs a direct-gain game");
  return grad_own_rate(ctx, profile, i);
}

ViMap::ViMap(const GameContext& ctx, double tau) : ctx_(&ctx), tau_(tau) {
  if (!(tau > 0.0)) throw ConfigInvalid("tau must be positive");
  if (ctx.info() == Visibility::Full) affine_ = build_affine(ctx);
}

StrategyProfile ViMap::eval_T(const StrategyProfile& profile) const {
  const GameContext& ctx = *ctx_;
  const int n = ctx.n_users();
  StrategyProfile out;
  out.policies.resize(n);

  if (ctx.info() == Visibility::Full) {
    const auto& full = ctx.full_space();
    std::vector<std::vector<double>> expanded;
    for (const auto& p : profile.policies) expanded.push_back(p.powers);
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i) {
      std::vector<double> x(full.size());
      for (std::size_t s = 0; s < full.size(); ++s) {
        for (int j = 0; j < n; ++j) pw[j] = expanded[j][s];
        const double f = interference_floor(full.gains[s], pw, i, n);
        // P_i - tau F_i(P) with F_i(P) = P_i + f_i(P_{-i})
        x[s] = (1.0 - tau_) * expanded[i][s] - tau_ * f;
      }
      auto proj = project_budget(x, full.probs, ctx.spec().budgets[i]);
      out.policies[i] = PowerPolicy{i, Visibility::Full, std::move(proj.powers)};
    }
    return out;
  }

  for (int i = 0; i < n; ++i) {
    const auto grad = grad_own_rate(ctx, profile, i);
    std::vector<double> x(grad.size());
    for (std::size_t v = 0; v < x.size(); ++v)
      x[v] = profile.policies[i].powers[v] + tau_ * grad[v];
    const auto& space = ctx.visible_space(i);
    auto proj = project_budget(x, space.probs, ctx.spec().budgets[i]);
    out.policies[i] = PowerPolicy{i, ctx.info(), std::move(proj.powers)};
  }
  return out;
}

double ViMap::merit(const StrategyProfile& profile) const {
  const StrategyProfile mapped = eval_T(profile);
  double sq = 0.0;
  for (int i = 0; i < ctx_->n_users(); ++i) {
    const auto& a = profile.policies[i].powers;
    const auto& b = mapped.policies[i].powers;
    for (std::size_t v = 0; v < a.size(); ++v) {
      const double d = a[v] - b[v];
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

}  // namespace powergames
