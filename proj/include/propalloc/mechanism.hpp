#pragma once

// Proportional allocation mechanism: bids -> shares, utilities, social and
// effective (budget-capped) welfare.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "propalloc/valuation.hpp"

namespace propalloc {

struct Bidder {
  ValuationFunction valuation;
  double budget = kInfinity;  // c_i > 0, possibly +infinity
};

struct Game {
  std::vector<Bidder> bidders;

  std::size_t size() const { return bidders.size(); }
};

struct BidProfile {
  std::vector<double> bids;

  std::size_t size() const { return bids.size(); }
  double total() const { return std::accumulate(bids.begin(), bids.end(), 0.0); }
  double total_excluding(std::size_t i) const { return total() - bids[i]; }
};

struct Allocation {
  std::vector<double> shares;

  std::size_t size() const { return shares.size(); }
};

struct WeightedProfile {
  BidProfile profile;
  double probability = 0.0;
};

struct CorrelatedBidDistribution {
  std::vector<WeightedProfile> support;
};

inline void check_sizes(std::size_t game, std::size_t other, const char* what) {
  if (game != other) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (game has " +
                                std::to_string(game) + " bidders, got " +
                                std::to_string(other) + ")");
  }
}

/// Validating constructor for bid profiles: bids nonnegative and within budgets.
inline BidProfile make_bid_profile(const Game& game, std::vector<double> bids) {
  check_sizes(game.size(), bids.size(), "bid profile");
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (!(bids[i] >= 0.0) || !std::isfinite(bids[i])) {
      throw std::invalid_argument("bid profile: bidder " + std::to_string(i) +
                                  " has a negative or non-finite bid");
    }
    if (bids[i] > game.bidders[i].budget) {
      throw std::invalid_argument("bid profile: bidder " + std::to_string(i) +
                                  " bids above her budget");
    }
  }
  return BidProfile{std::move(bids)};
}

inline CorrelatedBidDistribution make_correlated_distribution(
    const Game& game, std::vector<WeightedProfile> support) {
  double mass = 0.0;
  for (const auto& wp : support) {
    if (!(wp.probability >= 0.0)) {
      throw std::invalid_argument("correlated distribution: negative probability");
    }
    make_bid_profile(game, wp.profile.bids);  // feasibility check
    mass += wp.probability;
  }
  if (std::abs(mass - 1.0) > 1e-12) {
    throw std::invalid_argument("correlated distribution: probabilities sum to " +
                                std::to_string(mass) + ", expected 1");
  }
  return CorrelatedBidDistribution{std::move(support)};
}

/// d_i = b_i / sum_j b_j; the all-zero profile allocates zero shares (degenerate).
inline Allocation allocate(const BidProfile& profile) {
  Allocation alloc;
  alloc.shares.resize(profile.size(), 0.0);
  double total = profile.total();
  if (total > 0.0) {
    for (std::size_t i = 0; i < profile.size(); ++i) {
      alloc.shares[i] = profile.bids[i] / total;
    }
  }
  return alloc;
}

/// u_i = v_i(d_i) - b_i for each bidder.
inline std::vector<double> utility_profile(const Game& game, const BidProfile& profile) {
  check_sizes(game.size(), profile.size(), "utility_profile");
  Allocation alloc = allocate(profile);
  std::vector<double> utilities(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    utilities[i] = game.bidders[i].valuation.eval(alloc.shares[i]) - profile.bids[i];
  }
  return utilities;
}

/// SW(d) = sum_i v_i(d_i).
inline double social_welfare(const Game& game, const Allocation& alloc) {
  check_sizes(game.size(), alloc.size(), "social_welfare");
  double sw = 0.0;
  for (std::size_t i = 0; i < game.size(); ++i) {
    sw += game.bidders[i].valuation.eval(alloc.shares[i]);
  }
  return sw;
}

/// EW(d) = sum_i min{v_i(d_i), c_i}.
inline double effective_welfare(const Game& game, const Allocation& alloc) {
  check_sizes(game.size(), alloc.size(), "effective_welfare");
  double ew = 0.0;
  for (std::size_t i = 0; i < game.size(); ++i) {
    ew += std::min(game.bidders[i].valuation.eval(alloc.shares[i]), game.bidders[i].budget);
  }
  return ew;
}

/// Random-allocation form: sum_i min{E[v_i(d_i)], c_i} over the finite support.
inline double effective_welfare(const Game& game, const CorrelatedBidDistribution& dist) {
  double ew = 0.0;
  for (std::size_t i = 0; i < game.size(); ++i) {
    double expected_value = 0.0;
    for (const auto& wp : dist.support) {
      check_sizes(game.size(), wp.profile.size(), "effective_welfare (distribution)");
      Allocation alloc = allocate(wp.profile);
      expected_value += wp.probability * game.bidders[i].valuation.eval(alloc.shares[i]);
    }
    ew += std::min(expected_value, game.bidders[i].budget);
  }
  return ew;
}

inline double expected_social_welfare(const Game& game, const CorrelatedBidDistribution& dist) {
  double sw = 0.0;
  for (const auto& wp : dist.support) {
    sw += wp.probability * social_welfare(game, allocate(wp.profile));
  }
  return sw;
}

}  // namespace propalloc
