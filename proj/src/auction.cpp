#include "hetalloc/auction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hetalloc/oracle.hpp"
#include "hetalloc/radio.hpp"

namespace hetalloc::auction {

double resource_cost(const Network& net, const Allocation& alloc, int k, Resource res) {
  return interference_penalty(net, alloc, k, res);
}

double clamped_cost(const Network& net, const Allocation& alloc, int k, Resource res) {
  return std::max(0.0, resource_cost(net, alloc, k, res));
}

double bid_increment(const std::vector<double>& values, int chosen, double epsilon) {
  if (values.empty()) throw std::invalid_argument("bid_increment: no values");
  const double best = values[static_cast<std::size_t>(chosen)];
  bool any_other = false;
  double second = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (static_cast<int>(i) == chosen) continue;
    second = any_other ? std::max(second, values[i]) : values[i];
    any_other = true;
  }
  return any_other ? (best - second) + epsilon : epsilon;
}

AuctionState::AuctionState(int K, int N, int L, double eps)
    : cost(K, N, L, 0.0), bidder(K, N, L, kNoBidder), assignment(K), epsilon(eps) {}

std::vector<double> AuctionState::merged_cost() const {
  std::vector<double> out(static_cast<std::size_t>(cost.num_resources()), 0.0);
  for (int i = 0; i < cost.num_resources(); ++i) {
    double best = cost.at(0, i);
    for (int k = 1; k < cost.num_transmitters(); ++k) best = std::max(best, cost.at(k, i));
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

std::vector<int> AuctionState::merged_bidder() const {
  std::vector<int> out(static_cast<std::size_t>(cost.num_resources()), kNoBidder);
  for (int i = 0; i < cost.num_resources(); ++i) {
    int arg = 0;
    for (int k = 1; k < cost.num_transmitters(); ++k)
      if (cost.at(k, i) > cost.at(arg, i)) arg = k;
    out[static_cast<std::size_t>(i)] = bidder.at(arg, i);
  }
  return out;
}

std::vector<double> net_values(const Network& net, const Allocation& alloc, const std::vector<double>& merged, int k) {
  std::vector<double> v(static_cast<std::size_t>(net.num_resources()));
  for (int i = 0; i < net.num_resources(); ++i)
    v[static_cast<std::size_t>(i)] = benefit(net, alloc, k, resource_at(i, net.num_levels())) - merged[static_cast<std::size_t>(i)];
  return v;
}

bool passes_guard(const Network& net, const Allocation& alloc, int k, Resource res) {
  return hypothetical_interference(net, alloc, k, res) < net.i_max(res.rb);
}

namespace {

int argmax(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  return best;
}

void broadcast(AuctionState& s, const std::vector<double>& cost, const std::vector<int>& bidder) {
  for (int k = 0; k < s.cost.num_transmitters(); ++k)
    for (int i = 0; i < s.cost.num_resources(); ++i) {
      s.cost.at(k, i) = cost[static_cast<std::size_t>(i)];
      s.bidder.at(k, i) = bidder[static_cast<std::size_t>(i)];
    }
}

// Drops the most interfering assignment (lowest k on ties) from every RB at
// or above its cap. Returns the number of dropped assignments.
int admission_repair(const Network& net, Allocation& alloc) {
  int dropped = 0;
  for (int n = 0; n < net.num_rb(); ++n)
    while (!(aggregated_interference(net, alloc, n) < net.i_max(n))) {
      int worst = -1;
      double worst_c = -1.0;
      for (int k = 0; k < alloc.size(); ++k) {
        if (!alloc.on_rb(k, n)) continue;
        const double c = net.interference_contribution(k, *alloc[k]);
        if (c > worst_c) {
          worst = k;
          worst_c = c;
        }
      }
      if (worst < 0) break;
      alloc.clear(worst);
      ++dropped;
    }
  return dropped;
}

TxResourceTable<double> interference_free_benefits(const Network& net) {
  return benefit_table(net, Allocation(net.num_transmitters()));
}

}  // namespace

RoundOutcome local_auction_round(int k, const AuctionState& snapshot, const Network& net, const Allocation& alloc_prev,
                                 const RoundOptions& options, AuctionState& out) {
  const auto merged = snapshot.merged_cost();
  const auto bidders = snapshot.merged_bidder();
  for (int i = 0; i < net.num_resources(); ++i) {
    out.cost.at(k, i) = merged[static_cast<std::size_t>(i)];
    out.bidder.at(k, i) = bidders[static_cast<std::size_t>(i)];
  }
  const auto& held = snapshot.assignment[k];
  out.assignment.set(k, held);

  const auto values = net_values(net, alloc_prev, merged, k);
  const int best = argmax(values);
  RoundOutcome outcome;
  outcome.target = resource_at(best, net.num_levels());

  if (!held) {
    outcome.triggered = true;
  } else {
    const int h = resource_index(*held, net.num_levels());
    outcome.triggered = bidders[static_cast<std::size_t>(h)] != k ||
                        (options.rebid_when_unhappy && values[static_cast<std::size_t>(h)] < values[static_cast<std::size_t>(best)] - options.epsilon);
  }
  if (!outcome.triggered) return outcome;

  if (!passes_guard(net, alloc_prev, k, outcome.target)) {
    outcome.guard_blocked = true;  // keep the previous assignment
    return outcome;
  }
  out.assignment.assign(k, outcome.target);
  out.cost.at(k, best) = merged[static_cast<std::size_t>(best)] + bid_increment(values, best, options.epsilon);
  out.bidder.at(k, best) = k;
  outcome.bid = true;
  return outcome;
}

double benefit_range(const Network& net) {
  const auto table = interference_free_benefits(net);
  const auto [lo, hi] = std::minmax_element(table.values().begin(), table.values().end());
  return *hi - *lo;
}

double default_epsilon(const Network& net) {
  const double range = benefit_range(net);
  return range > 0.0 ? 0.01 * range : 0.01;
}

std::uint64_t iteration_bound(const Network& net, double epsilon) {
  const auto steps = static_cast<std::uint64_t>(std::ceil(benefit_range(net) / epsilon));
  return static_cast<std::uint64_t>(net.num_transmitters()) * static_cast<std::uint64_t>(net.num_resources()) *
         std::max<std::uint64_t>(steps, 1);
}

Result run_auction(const Network& net, const Options& options) {
  if (options.t_max < 1) throw std::invalid_argument("run_auction: t_max must be >= 1");
  const double eps = options.epsilon > 0.0 ? options.epsilon : default_epsilon(net);
  const int K = net.num_transmitters();

  AuctionState state(K, net.num_rb(), net.num_levels(), eps);
  state.assignment = random_alignment(net, options.init_seed);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < net.num_resources(); ++i)
      state.cost.at(k, i) = clamped_cost(net, state.assignment, k, resource_at(i, net.num_levels()));

  const RoundOptions round{eps, options.rebid_when_unhappy};
  Result result;
  result.epsilon = eps;
  for (int t = 1; t <= options.t_max; ++t) {
    const AuctionState snapshot = state;
    const Allocation alloc_prev = snapshot.assignment;
    AuctionState next = snapshot;
    int bids = 0;
    for (int k = 0; k < K; ++k) bids += local_auction_round(k, snapshot, net, alloc_prev, round, next).bid;

    broadcast(next, next.merged_cost(), next.merged_bidder());
    const int dropped = admission_repair(net, next.assignment);
    state = std::move(next);
    result.iterations = t;
    result.bids += static_cast<std::uint64_t>(bids);
    result.repairs += dropped;
    if (options.observer) options.observer(t, state);
    if (bids == 0 && dropped == 0) {
      result.converged = true;
      break;
    }
  }
  result.allocation = state.assignment;
  result.final_cost = state.merged_cost();
  result.final_bidder = state.merged_bidder();
  return result;
}

std::vector<SlacknessViolation> check_epsilon_cs(const Network& net, const Result& result) {
  std::vector<SlacknessViolation> out;
  const Allocation& x = result.allocation;
  for (int k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    const auto values = net_values(net, x, result.final_cost, k);
    const double held = values[static_cast<std::size_t>(resource_index(*x[k], net.num_levels()))];
    double best = held;
    for (int i = 0; i < net.num_resources(); ++i)
      if (passes_guard(net, x, k, resource_at(i, net.num_levels()))) best = std::max(best, values[static_cast<std::size_t>(i)]);
    if (held < best - result.epsilon) out.push_back({k, held, best});
  }
  return out;
}

double weighted_benefit(const Network& net, const Allocation& alloc) {
  return net.config().w1 * sum_rate(net, alloc) / net.rb_bandwidth();
}

}  // namespace hetalloc::auction
