#pragma once

#include <cstdint>
#include <functional>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace hetalloc::msgpass {

using Table = TxResourceTable<double>;

struct MessageState {
  Table psi_tx_to_res;  // psi_{k -> (n,l)}
  Table psi_res_to_tx;  // psi_{(n,l) -> k}
  Table tau;            // psi_tx_to_res + psi_res_to_tx
  double omega = 0.5;

  MessageState() = default;
  MessageState(int K, int N, int L, double omega);
};

/// How the max over the competing entries is taken.
///  - IdleOption: max(0, max over the others). The zero stands for the
///    transmitter staying idle on the transmitter side and for the resource
///    staying free on the resource side, the same value used when there is no
///    other entry at all. Converges under damping.
///  - Literal: plain max over the others (0 when there are none). Kept for
///    comparison; it oscillates or drifts on typical drops.
enum class MaxRule { IdleOption, Literal };

struct UpdateRule {
  double omega = 0.5;
  MaxRule max_rule = MaxRule::IdleOption;
};

/// psi_{k->(n,l)} = U - w <U + psi_res>_{~(n,l)} - (1-w)(U + psi_{(n,l)->k})
double tx_message_update(const MessageState& state, const Table& utilities, int k, Resource res,
                         MaxRule rule = MaxRule::IdleOption);

/// psi_{(n,l)->k} = -w max_{k' != k} psi_{k'->(n,l)} - (1-w) psi_{k->(n,l)}
double res_message_update(const MessageState& state, int k, Resource res, MaxRule rule = MaxRule::IdleOption);

/// Undamped forms: psi_{k->(n,l)} = U - <U + psi_res>_{~(n,l)} and
/// psi_{(n,l)->k} = -max_{k' != k} psi_{k'->(n,l)}.
double tx_message_undamped(const MessageState& state, const Table& utilities, int k, Resource res,
                           MaxRule rule = MaxRule::IdleOption);
double res_message_undamped(const MessageState& state, int k, Resource res, MaxRule rule = MaxRule::IdleOption);

/// One synchronous sweep: every message is computed from the incoming state,
/// then marginals are refreshed. Returns the max-norm change of the messages.
double sweep(MessageState& state, const Table& utilities, MaxRule rule = MaxRule::IdleOption);

/// Keeps each transmitter's largest positive marginal (lowest n, then l on
/// ties), then per RB removes the most interfering assignment (lowest k on
/// ties) while I^(n) >= I_max^(n).
Allocation extract_allocation(const MessageState& state, const Network& net);

enum class StopRule {
  AllocationRepeat,  // X(t) == X(t-1)
  FixedPoint,        // X(t) == X(t-1) and message change below tolerance
};

struct Options {
  double omega = 0.5;
  int t_max = 500;
  double tolerance = 1e-6;
  StopRule stop = StopRule::AllocationRepeat;
  MaxRule max_rule = MaxRule::IdleOption;
  std::uint64_t init_seed = 1;
  std::function<void(int t, const MessageState&, double residual, const Allocation&)> observer;
};

struct Result {
  Allocation allocation;
  int iterations = 0;
  bool converged = false;
  double final_residual = 0.0;  // max-norm message change in the last sweep
  bool messages_settled = false;  // final_residual < tolerance
};

/// Random initial alignment, zero messages; each iteration recomputes the
/// utilities from X(t-1), sweeps, and extracts X(t).
Result run_message_passing(const Network& net, const Options& options);

/// Messages sent per iteration: one psi in each direction per (k, n, l).
inline std::uint64_t messages_per_iteration(int K, int N, int L) {
  return 2ULL * static_cast<std::uint64_t>(K) * static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(L);
}

}  // namespace hetalloc::msgpass
