#include "powergames/channel.hpp"

#include <cmath>
#include <set>

namespace powergames {

double GainDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) m += probs[k] * values[k];
  return m;
}

GainDistribution build_gain_distribution(std::vector<double> values,
                                         std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw LengthMismatch("gain values and probabilities must be nonempty and of equal length");
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0)
      throw NegativeValue("gain values must be finite and nonnegative");
    if (probs[k] < 0.0) throw NegativeValue("probabilities must be nonnegative");
    sum += probs[k];
  }
  if (std::abs(sum - 1.0) >= 1e-9)
    throw ProbSumInvalid("probabilities sum to " + std::to_string(sum));
  std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() != values.size())
    throw NegativeValue("gain values must be distinct");
  for (double& p : probs) p /= sum;
  return GainDistribution{std::move(values), std::move(probs)};
}

ChannelSpec make_channel_spec(int n_users, GainDistribution direct,
                              GainDistribution cross) {
  if (n_users < 1) throw ConfigInvalid("n_users must be >= 1");
  return ChannelSpec{n_users, std::move(direct), std::move(cross)};
}

namespace {

struct Link {
  int rx, tx;  // link (i,j): transmitter j to receiver i
};

// Visible links in enumeration order: row-major (i,j) for Full, the row into
// receiver `user` for Incident, the single direct link for Direct.
std::vector<Link> visible_links(int n, Visibility vis, int user) {
  std::vector<Link> links;
  switch (vis) {
    case Visibility::Full:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) links.push_back({i, j});
      break;
    case Visibility::Incident:
      for (int j = 0; j < n; ++j) links.push_back({user, j});
      break;
    case Visibility::Direct:
      links.push_back({user, user});
      break;
  }
  return links;
}

}  // namespace

StateSpace enumerate_states(const ChannelSpec& spec, Visibility visibility,
                            int user, std::uint64_t cap) {
  if (user < 0 || user >= spec.n_users)
    throw IndexOutOfRange("user index out of range");
  const auto links = visible_links(spec.n_users, visibility, user);

  std::uint64_t count = 1;
  for (const Link& l : links) {
    const auto& dist = (l.rx == l.tx) ? spec.direct : spec.cross;
    count *= dist.size();
    if (count > cap) throw SizeOverflow("state space exceeds cap");
  }

  StateSpace space;
  space.visibility = visibility;
  space.user = (visibility == Visibility::Full) ? -1 : user;
  space.n_users = spec.n_users;
  space.gains.reserve(count);
  space.digits.reserve(count);
  space.probs.reserve(count);

  const std::size_t m = links.size();
  std::vector<int> digit(m, 0);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::vector<double> g(m);
    double p = 1.0;
    for (std::size_t l = 0; l < m; ++l) {
      const auto& dist = (links[l].rx == links[l].tx) ? spec.direct : spec.cross;
      g[l] = dist.values[digit[l]];
      p *= dist.probs[digit[l]];
    }
    space.gains.push_back(std::move(g));
    space.digits.push_back(digit);
    space.probs.push_back(p);
    // mixed-radix increment, last link fastest
    for (std::size_t l = m; l-- > 0;) {
      const auto& dist = (links[l].rx == links[l].tx) ? spec.direct : spec.cross;
      if (++digit[l] < static_cast<int>(dist.size())) break;
      digit[l] = 0;
    }
  }
  return space;
}

double state_probability(const StateSpace& space, std::size_t index) {
  if (index >= space.size()) throw IndexOutOfRange("state index out of range");
  return space.probs[index];
}

}  // namespace powergames
