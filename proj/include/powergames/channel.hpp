#pragma once

#include <cstdint>
#include <vector>

#include "powergames/errors.hpp"

namespace powergames {

/// Finite set of channel power gains (|h|^2 scale) with a probability vector.
struct GainDistribution {
  std::vector<double> values;
  std::vector<double> probs;

  std::size_t size() const { return values.size(); }
  /// E[|H|^2]
  double mean() const;
};

/// Validates and returns a gain distribution. Probabilities are renormalized
/// only when their sum deviates from 1 by less than 1e-9.
GainDistribution build_gain_distribution(std::vector<double> values,
                                         std::vector<double> probs);

enum class Visibility { Full, Incident, Direct };

/// N transmitter-receiver pairs; every direct link draws gains from `direct`,
/// every cross link from `cross`, all links independent.
struct ChannelSpec {
  int n_users = 0;
  GainDistribution direct;
  GainDistribution cross;
};

ChannelSpec make_channel_spec(int n_users, GainDistribution direct,
                              GainDistribution cross);

/// Enumerated channel states for one information structure.
///
/// Per state, `gains` holds the power gains of the visible links and `digits`
/// the per-link index into the corresponding marginal support:
///   Full          - N*N gains, links (i,j) row-major, last link fastest.
///   Incident(u)   - N gains (h_u1,...,h_uN) into receiver u.
///   Direct(u)     - the single gain h_uu.
/// Ordering is the mixed-radix count over the digit vector, so identical
/// specs enumerate identically.
struct StateSpace {
  Visibility visibility = Visibility::Full;
  int user = -1;  // receiver index for Incident/Direct, -1 for Full
  int n_users = 0;
  std::vector<std::vector<double>> gains;
  std::vector<std::vector<int>> digits;
  std::vector<double> probs;

  std::size_t size() const { return gains.size(); }
};

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

StateSpace enumerate_states(const ChannelSpec& spec, Visibility visibility,
                            int user = 0,
                            std::uint64_t cap = kDefaultStateCap);

double state_probability(const StateSpace& space, std::size_t index);

}  // namespace powergames
