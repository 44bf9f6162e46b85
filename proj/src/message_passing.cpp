#include "hetalloc/message_passing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hetalloc/radio.hpp"

namespace hetalloc::msgpass {

MessageState::MessageState(int K, int N, int L, double w)
    : psi_tx_to_res(K, N, L, 0.0), psi_res_to_tx(K, N, L, 0.0), tau(K, N, L, 0.0), omega(w) {}

namespace {

constexpr double kNoEntry = -std::numeric_limits<double>::infinity();

double settle(double best_other, MaxRule rule) {
  if (best_other == kNoEntry) return 0.0;
  return rule == MaxRule::IdleOption ? std::max(0.0, best_other) : best_other;
}

// <U_k + psi_res_k>_{~res}
double best_other_resource(const MessageState& s, const Table& u, int k, int skip, MaxRule rule) {
  double best = kNoEntry;
  for (int i = 0; i < u.num_resources(); ++i)
    if (i != skip) best = std::max(best, u.at(k, i) + s.psi_res_to_tx.at(k, i));
  return settle(best, rule);
}

// max_{k' != k} psi_{k'->res}
double best_other_transmitter(const MessageState& s, int k, int res, MaxRule rule) {
  double best = kNoEntry;
  for (int j = 0; j < s.psi_tx_to_res.num_transmitters(); ++j)
    if (j != k) best = std::max(best, s.psi_tx_to_res.at(j, res));
  return settle(best, rule);
}

}  // namespace

double tx_message_update(const MessageState& s, const Table& u, int k, Resource res, MaxRule rule) {
  const int i = resource_index(res, u.num_levels());
  const double w = s.omega;
  return u.at(k, i) - w * best_other_resource(s, u, k, i, rule) - (1.0 - w) * (u.at(k, i) + s.psi_res_to_tx.at(k, i));
}

double res_message_update(const MessageState& s, int k, Resource res, MaxRule rule) {
  const int i = resource_index(res, s.psi_tx_to_res.num_levels());
  const double w = s.omega;
  return -w * best_other_transmitter(s, k, i, rule) - (1.0 - w) * s.psi_tx_to_res.at(k, i);
}

double tx_message_undamped(const MessageState& s, const Table& u, int k, Resource res, MaxRule rule) {
  const int i = resource_index(res, u.num_levels());
  return u.at(k, i) - best_other_resource(s, u, k, i, rule);
}

double res_message_undamped(const MessageState& s, int k, Resource res, MaxRule rule) {
  return -best_other_transmitter(s, k, resource_index(res, s.psi_tx_to_res.num_levels()), rule);
}

double sweep(MessageState& state, const Table& utilities, MaxRule rule) {
  const int K = state.psi_tx_to_res.num_transmitters();
  const int N = state.psi_tx_to_res.num_rb();
  const int L = state.psi_tx_to_res.num_levels();
  Table next_tx(K, N, L), next_res(K, N, L);
  for (int k = 0; k < K; ++k)
    for_each_resource(N, L, [&](Resource r) {
      next_tx(k, r) = tx_message_update(state, utilities, k, r, rule);
      next_res(k, r) = res_message_update(state, k, r, rule);
    });

  double residual = 0.0;
  for (std::size_t i = 0; i < next_tx.values().size(); ++i) {
    residual = std::max(residual, std::abs(next_tx.values()[i] - state.psi_tx_to_res.values()[i]));
    residual = std::max(residual, std::abs(next_res.values()[i] - state.psi_res_to_tx.values()[i]));
  }
  state.psi_tx_to_res = std::move(next_tx);
  state.psi_res_to_tx = std::move(next_res);
  for (std::size_t i = 0; i < state.tau.values().size(); ++i)
    state.tau.values()[i] = state.psi_tx_to_res.values()[i] + state.psi_res_to_tx.values()[i];
  return residual;
}

Allocation extract_allocation(const MessageState& state, const Network& net) {
  const int K = net.num_transmitters();
  Allocation alloc(K);
  for (int k = 0; k < K; ++k) {
    int best = -1;
    for (int i = 0; i < net.num_resources(); ++i) {
      const double t = state.tau.at(k, i);
      if (t > 0.0 && (best < 0 || t > state.tau.at(k, best))) best = i;
    }
    if (best >= 0) alloc.assign(k, resource_at(best, net.num_levels()));
  }

  for (int n = 0; n < net.num_rb(); ++n) {
    while (!(aggregated_interference(net, alloc, n) < net.i_max(n))) {
      int worst = -1;
      double worst_contribution = -1.0;
      for (int k = 0; k < K; ++k) {
        if (!alloc.on_rb(k, n)) continue;
        const double c = net.interference_contribution(k, *alloc[k]);
        if (c > worst_contribution) {
          worst = k;
          worst_contribution = c;
        }
      }
      if (worst < 0) break;  // unreachable: an empty RB has zero interference
      alloc.clear(worst);
    }
  }
  return alloc;
}

Result run_message_passing(const Network& net, const Options& options) {
  if (!(options.omega > 0.0 && options.omega <= 1.0)) throw std::invalid_argument("run_message_passing: omega must lie in (0, 1]");
  if (options.t_max < 1) throw std::invalid_argument("run_message_passing: t_max must be >= 1");

  MessageState state(net.num_transmitters(), net.num_rb(), net.num_levels(), options.omega);
  Allocation prev = random_alignment(net, options.init_seed);
  Result result;
  for (int t = 1; t <= options.t_max; ++t) {
    const Table u = utility_table(net, prev);
    const double residual = sweep(state, u, options.max_rule);
    Allocation next = extract_allocation(state, net);
    if (options.observer) options.observer(t, state, residual, next);

    result.iterations = t;
    result.final_residual = residual;
    const bool repeated = next == prev;
    prev = std::move(next);
    if (repeated && (options.stop == StopRule::AllocationRepeat || residual < options.tolerance)) {
      result.converged = true;
      break;
    }
  }
  result.allocation = prev;
  result.messages_settled = result.final_residual < options.tolerance;
  return result;
}

}  // namespace hetalloc::msgpass
