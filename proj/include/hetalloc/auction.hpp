#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace hetalloc::auction {

inline constexpr int kNoBidder = -1;

/// c = w2 * (I / I_max - 1) with I the reference-user interference on n when
/// k uses res on top of the other transmitters in alloc.
double resource_cost(const Network& net, const Allocation& alloc, int k, Resource res);
/// C = max(0, c)
double clamped_cost(const Network& net, const Allocation& alloc, int k, Resource res);

/// (best - second best) + epsilon over `values`, where `chosen` indexes the
/// best entry. With a single entry the increment is epsilon.
double bid_increment(const std::vector<double>& values, int chosen, double epsilon);

struct AuctionState {
  TxResourceTable<double> cost;  // C_k^(n,l), local views
  TxResourceTable<int> bidder;   // highest bidder per local view
  Allocation assignment;         // Theta_k
  double epsilon = 0.0;

  AuctionState() = default;
  AuctionState(int K, int N, int L, double epsilon);

  /// The broadcast view: per resource, max over k of the local costs and the
  /// bidder recorded with it (lowest k on equal costs).
  std::vector<double> merged_cost() const;
  std::vector<int> merged_bidder() const;
};

struct RoundOptions {
  double epsilon = 0.01;
  // Rebid when the held resource's net value B - C has fallen more than
  // epsilon below the best available one, even if still the recorded bidder.
  bool rebid_when_unhappy = true;
};

struct RoundOutcome {
  bool triggered = false;    // outbid / unassigned / unhappy
  bool bid = false;          // a new bid was placed
  bool guard_blocked = false;
  Resource target;
};

/// Algorithm run by transmitter k against the broadcast snapshot. Reads
/// merged costs and bidders from `snapshot`, benefits against `alloc_prev`,
/// and writes only k's row of `out` and k's entry of out.assignment.
RoundOutcome local_auction_round(int k, const AuctionState& snapshot, const Network& net,
                                 const Allocation& alloc_prev, const RoundOptions& options, AuctionState& out);

/// Net values B - C under the merged view for transmitter k.
std::vector<double> net_values(const Network& net, const Allocation& alloc, const std::vector<double>& merged_cost, int k);

/// The interference guard: k's contribution on res plus that of every other
/// transmitter already on the RB stays strictly below I_max.
bool passes_guard(const Network& net, const Allocation& alloc, int k, Resource res);

/// 0.01 x (max - min) of the interference-free benefit table, or 0.01 when
/// that spread is zero.
double default_epsilon(const Network& net);

/// Spread (max - min) of the interference-free benefit table.
double benefit_range(const Network& net);

/// K * N * L * ceil(range / epsilon).
std::uint64_t iteration_bound(const Network& net, double epsilon);

struct Options {
  double epsilon = 0.0;  // <= 0 selects default_epsilon
  int t_max = 10000;
  std::uint64_t init_seed = 1;
  bool rebid_when_unhappy = true;
  std::function<void(int t, const AuctionState&)> observer;
};

struct Result {
  Allocation allocation;
  int iterations = 0;
  bool converged = false;
  double epsilon = 0.0;
  std::uint64_t bids = 0;
  int repairs = 0;             // assignments dropped by the MBS admission check
  std::vector<double> final_cost;  // merged view at termination
  std::vector<int> final_bidder;
};

/// Random initial alignment, initial costs max(0, c) against it, then rounds
/// until an iteration places no bid or t_max is reached. After every merge the
/// MBS drops the most interfering assignment on any RB at or above I_max.
Result run_auction(const Network& net, const Options& options);

struct SlacknessViolation {
  int k = 0;
  double held_value = 0.0;
  double best_value = 0.0;
};

/// Every assigned k: value(Theta_k) >= max over guard-passing res of value - eps.
std::vector<SlacknessViolation> check_epsilon_cs(const Network& net, const Result& result);

/// Sum of B over assigned transmitters = w1 * sum_rate / B_RB.
double weighted_benefit(const Network& net, const Allocation& alloc);

}  // namespace hetalloc::auction
