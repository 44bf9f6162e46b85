#include "hetalloc/radio.hpp"

#include <cmath>
#include <sstream>

#include "hetalloc/random.hpp"

namespace hetalloc {

int Allocation::assigned_count() const {
  int count = 0;
  for (const auto& s : slots_) count += s.has_value();
  return count;
}

std::string to_string(const Allocation& alloc) {
  std::ostringstream os;
  for (int k = 0; k < alloc.size(); ++k) {
    if (k) os << ' ';
    os << k << ':';
    if (alloc[k])
      os << '(' << alloc[k]->rb << ',' << alloc[k]->level << ')';
    else
      os << '-';
  }
  return os.str();
}

Allocation random_alignment(const Network& net, std::uint64_t seed) {
  Rng rng(seed);
  Allocation alloc(net.num_transmitters());
  for (int k = 0; k < net.num_transmitters(); ++k)
    alloc.assign(k, resource_at(rng.uniform_int(net.num_resources()), net.num_levels()));
  return alloc;
}

namespace {

// Co-channel interference at u_k from underlay transmitters other than k.
double underlay_interference_at(const Network& net, const Allocation& alloc, int k, int rb) {
  double sum = 0.0;
  for (int j = 0; j < alloc.size(); ++j) {
    if (j == k || !alloc.on_rb(j, rb)) continue;
    sum += net.link_gain(j, k, rb) * net.power(*alloc[j]);
  }
  return sum;
}

double sinr_at_receiver(const Network& net, const Allocation& alloc, int k, Resource res) {
  const double signal = net.link_gain(k, k, res.rb) * net.power(res);
  const double macro = net.mbs_gain_to_receiver(k, res.rb) * net.mbs_power();
  return signal / (macro + underlay_interference_at(net, alloc, k, res.rb) + net.noise_power());
}

}  // namespace

double sinr_underlay(const Network& net, const Allocation& alloc, int k, int rb) {
  if (!alloc.on_rb(k, rb))
    throw ContractViolation("sinr_underlay: transmitter " + std::to_string(k) + " is not assigned to RB " +
                            std::to_string(rb));
  return sinr_at_receiver(net, alloc, k, *alloc[k]);
}

double sinr_macro(const Network& net, const Allocation& alloc, int m, int rb) {
  double interference = 0.0;
  for (int j = 0; j < alloc.size(); ++j)
    if (alloc.on_rb(j, rb)) interference += net.gain_to_mue(j, m, rb) * net.power(*alloc[j]);
  return net.mbs_gain_to_mue(m, rb) * net.mbs_power() / (interference + net.noise_power());
}

double aggregated_interference(const Network& net, const Allocation& alloc, int rb) {
  return interference_excluding(net, alloc, -1, rb);
}

std::vector<double> interference_profile(const Network& net, const Allocation& alloc) {
  std::vector<double> out(static_cast<std::size_t>(net.num_rb()), 0.0);
  for (int n = 0; n < net.num_rb(); ++n) out[static_cast<std::size_t>(n)] = aggregated_interference(net, alloc, n);
  return out;
}

double interference_excluding(const Network& net, const Allocation& alloc, int k, int rb) {
  double sum = 0.0;
  for (int j = 0; j < alloc.size(); ++j)
    if (j != k && alloc.on_rb(j, rb)) sum += net.interference_contribution(j, *alloc[j]);
  return sum;
}

double hypothetical_sinr(const Network& net, const Allocation& alloc, int k, Resource res) {
  return sinr_at_receiver(net, alloc, k, res);
}

double hypothetical_interference(const Network& net, const Allocation& alloc, int k, Resource res) {
  return interference_excluding(net, alloc, k, res.rb) + net.interference_contribution(k, res);
}

double benefit(const Network& net, const Allocation& alloc, int k, Resource res) {
  return net.config().w1 * std::log2(1.0 + hypothetical_sinr(net, alloc, k, res));
}

double interference_penalty(const Network& net, const Allocation& alloc, int k, Resource res) {
  return net.config().w2 * (hypothetical_interference(net, alloc, k, res) / net.i_max(res.rb) - 1.0);
}

double utility(const Network& net, const Allocation& alloc, int k, Resource res) {
  return benefit(net, alloc, k, res) - interference_penalty(net, alloc, k, res);
}

TxResourceTable<double> utility_table(const Network& net, const Allocation& alloc) {
  TxResourceTable<double> table(net.num_transmitters(), net.num_rb(), net.num_levels());
  for (int k = 0; k < net.num_transmitters(); ++k)
    for_each_resource(net.num_rb(), net.num_levels(), [&](Resource r) { table(k, r) = utility(net, alloc, k, r); });
  return table;
}

TxResourceTable<double> benefit_table(const Network& net, const Allocation& alloc) {
  TxResourceTable<double> table(net.num_transmitters(), net.num_rb(), net.num_levels());
  for (int k = 0; k < net.num_transmitters(); ++k)
    for_each_resource(net.num_rb(), net.num_levels(), [&](Resource r) { table(k, r) = benefit(net, alloc, k, r); });
  return table;
}

}  // namespace hetalloc
