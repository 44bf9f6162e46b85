#pragma once

#include <stdexcept>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace hetalloc {

/// Thrown when a caller asks for a quantity the allocation does not define,
/// e.g. the SINR of a transmitter on an RB it does not use.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// SINR at u_k on rb; k must be assigned to rb.
double sinr_underlay(const Network& net, const Allocation& alloc, int k, int rb);

/// SINR at MUE m on rb with every underlay transmitter on rb interfering.
double sinr_macro(const Network& net, const Allocation& alloc, int m, int rb);

/// I^(n): reference-user interference of everything assigned to rb.
double aggregated_interference(const Network& net, const Allocation& alloc, int rb);

/// I^(n) for every n.
std::vector<double> interference_profile(const Network& net, const Allocation& alloc);

/// Sum of reference-user contributions on rb from transmitters other than k.
double interference_excluding(const Network& net, const Allocation& alloc, int k, int rb);

// Hypothetical "k uses res" quantities. Co-channel terms come from the other
// transmitters' assignments in alloc; k's own entry in alloc is ignored.

/// Gamma_{u_k}^(n,l)
double hypothetical_sinr(const Network& net, const Allocation& alloc, int k, Resource res);

/// I^(n) with k's hypothetical contribution included.
double hypothetical_interference(const Network& net, const Allocation& alloc, int k, Resource res);

/// B = w1 * log2(1 + Gamma): the rate term in bits/s/Hz, weighted.
double benefit(const Network& net, const Allocation& alloc, int k, Resource res);

/// w2 * (I / I_max - 1), the weighted interference overage.
double interference_penalty(const Network& net, const Allocation& alloc, int k, Resource res);

/// U = w1 * log2(1 + Gamma) - w2 * (I / I_max - 1).
double utility(const Network& net, const Allocation& alloc, int k, Resource res);

/// U for every (k, res) against the same allocation.
TxResourceTable<double> utility_table(const Network& net, const Allocation& alloc);

/// B for every (k, res) against the same allocation.
TxResourceTable<double> benefit_table(const Network& net, const Allocation& alloc);

}  // namespace hetalloc
