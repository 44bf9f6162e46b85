#include "hetalloc/matching.hpp"

#include <algorithm>

#include "hetalloc/oracle.hpp"
#include "hetalloc/radio.hpp"

namespace hetalloc::matching {

TxProfile build_transmitter_profile(const Network& net, const Allocation& alloc_prev, int k) {
  TxProfile p{k, {}};
  p.entries.reserve(static_cast<std::size_t>(net.num_resources()));
  for_each_resource(net.num_rb(), net.num_levels(),
                    [&](Resource r) { p.entries.push_back({r, utility(net, alloc_prev, k, r)}); });
  // Entries are generated in (n, l) order, so a stable sort is the tie-break.
  std::stable_sort(p.entries.begin(), p.entries.end(),
                   [](const TxEntry& a, const TxEntry& b) { return a.utility > b.utility; });
  return p;
}

RbProfile build_rb_profile(const Network& net, const Allocation& alloc_prev, int rb) {
  RbProfile p{rb, {}};
  p.entries.reserve(static_cast<std::size_t>(net.num_transmitters() * net.num_levels()));
  for (int l = 0; l < net.num_levels(); ++l)
    for (int k = 0; k < net.num_transmitters(); ++k) p.entries.push_back({k, l, utility(net, alloc_prev, k, {rb, l})});
  std::stable_sort(p.entries.begin(), p.entries.end(),
                   [](const RbEntry& a, const RbEntry& b) { return a.utility > b.utility; });
  return p;
}

std::vector<TxProfile> build_transmitter_profiles(const Network& net, const Allocation& alloc_prev) {
  std::vector<TxProfile> out;
  for (int k = 0; k < net.num_transmitters(); ++k) out.push_back(build_transmitter_profile(net, alloc_prev, k));
  return out;
}

std::vector<RbProfile> build_rb_profiles(const Network& net, const Allocation& alloc_prev) {
  std::vector<RbProfile> out;
  for (int n = 0; n < net.num_rb(); ++n) out.push_back(build_rb_profile(net, alloc_prev, n));
  return out;
}

namespace {

constexpr int kAbsent = -1;

// Position lookups into the original profiles plus liveness flags; entries
// are only ever switched off, so profiles shrink monotonically.
struct WorkingProfiles {
  int L = 0;
  std::vector<std::vector<int>> tx_pos;   // [k][res index] -> position in P_k
  std::vector<std::vector<char>> tx_alive;
  std::vector<std::size_t> tx_head;       // first possibly-alive position
  std::vector<std::vector<int>> rb_rank;  // [n][k * L + l] -> position in P_n
  std::vector<std::vector<char>> rb_alive;

  WorkingProfiles(const std::vector<TxProfile>& ptx, const std::vector<RbProfile>& prb, const Network& net)
      : L(net.num_levels()) {
    const int K = net.num_transmitters();
    const int N = net.num_rb();
    tx_pos.assign(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(N * L), kAbsent));
    tx_alive.resize(static_cast<std::size_t>(K));
    tx_head.assign(static_cast<std::size_t>(K), 0);
    for (const auto& p : ptx) {
      auto& pos = tx_pos[static_cast<std::size_t>(p.k)];
      for (std::size_t i = 0; i < p.entries.size(); ++i) pos[static_cast<std::size_t>(resource_index(p.entries[i].res, L))] = static_cast<int>(i);
      tx_alive[static_cast<std::size_t>(p.k)].assign(p.entries.size(), 1);
    }
    rb_rank.assign(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(K * L), kAbsent));
    rb_alive.resize(static_cast<std::size_t>(N));
    for (const auto& p : prb) {
      auto& rank = rb_rank[static_cast<std::size_t>(p.rb)];
      for (std::size_t i = 0; i < p.entries.size(); ++i)
        rank[static_cast<std::size_t>(p.entries[i].k * L + p.entries[i].level)] = static_cast<int>(i);
      rb_alive[static_cast<std::size_t>(p.rb)].assign(p.entries.size(), 1);
    }
  }

  int rank(int n, int k, int l) const { return rb_rank[static_cast<std::size_t>(n)][static_cast<std::size_t>(k * L + l)]; }

  void drop_tx(int k, Resource r) {
    const int pos = tx_pos[static_cast<std::size_t>(k)][static_cast<std::size_t>(resource_index(r, L))];
    if (pos != kAbsent) tx_alive[static_cast<std::size_t>(k)][static_cast<std::size_t>(pos)] = 0;
  }

  // Position of k's best remaining entry, or -1.
  int top(int k) {
    auto& alive = tx_alive[static_cast<std::size_t>(k)];
    auto& head = tx_head[static_cast<std::size_t>(k)];
    while (head < alive.size() && !alive[head]) ++head;
    return head < alive.size() ? static_cast<int>(head) : -1;
  }
};

double rb_interference(const Network& net, int n, const std::vector<Pair>& held) {
  double sum = 0.0;
  for (const Pair& p : held) sum += net.interference_contribution(p.k, {n, p.level});
  return sum;
}

}  // namespace

Matching match_alignments(const std::vector<TxProfile>& profiles_tx, const std::vector<RbProfile>& profiles_rb,
                          const Network& net, MatchStats* stats) {
  const int K = net.num_transmitters();
  WorkingProfiles w(profiles_tx, profiles_rb, net);
  std::vector<const TxProfile*> by_k(static_cast<std::size_t>(K), nullptr);
  for (const auto& p : profiles_tx) by_k[static_cast<std::size_t>(p.k)] = &p;
  std::vector<const RbProfile*> by_n(static_cast<std::size_t>(net.num_rb()), nullptr);
  for (const auto& p : profiles_rb) by_n[static_cast<std::size_t>(p.rb)] = &p;

  Matching m{Allocation(K), std::vector<std::vector<Pair>>(static_cast<std::size_t>(net.num_rb()))};
  MatchStats local;

  while (true) {
    int k = -1;
    int pos = -1;
    for (int j = 0; j < K && k < 0; ++j) {
      if (m.allocation[j] || !by_k[static_cast<std::size_t>(j)]) continue;
      pos = w.top(j);
      if (pos >= 0) k = j;
    }
    if (k < 0) break;

    const Resource r = by_k[static_cast<std::size_t>(k)]->entries[static_cast<std::size_t>(pos)].res;
    ++local.proposals;
    const int rank = w.rank(r.rb, k, r.level);
    if (rank == kAbsent || !w.rb_alive[static_cast<std::size_t>(r.rb)][static_cast<std::size_t>(rank)]) {
      w.drop_tx(k, r);  // the RB does not list this pair
      continue;
    }
    auto& held = m.held[static_cast<std::size_t>(r.rb)];
    m.allocation.assign(k, r);
    held.push_back({k, r.level});

    while (!held.empty() && !(rb_interference(net, r.rb, held) < net.i_max(r.rb))) {
      auto worst = std::max_element(held.begin(), held.end(), [&](const Pair& a, const Pair& b) {
        return w.rank(r.rb, a.k, a.level) < w.rank(r.rb, b.k, b.level);
      });
      const int cut = w.rank(r.rb, worst->k, worst->level);
      m.allocation.clear(worst->k);
      held.erase(worst);
      ++local.revocations;
      // The revoked pair and every pair ranked below it leave P_n; each
      // affected transmitter loses (n, l) from its own profile as well.
      const auto& entries = by_n[static_cast<std::size_t>(r.rb)]->entries;
      auto& alive = w.rb_alive[static_cast<std::size_t>(r.rb)];
      for (std::size_t i = static_cast<std::size_t>(cut); i < entries.size(); ++i) {
        if (!alive[i]) continue;
        alive[i] = 0;
        w.drop_tx(entries[i].k, {r.rb, entries[i].level});
      }
    }
  }
  if (stats) *stats = local;
  return m;
}

std::optional<BlockingPair> find_blocking_pair(const Matching& matching, const std::vector<TxProfile>& profiles_tx,
                                               const std::vector<RbProfile>& profiles_rb) {
  auto rb_rank_of = [&](int n, int k, int l) -> int {
    for (const auto& p : profiles_rb) {
      if (p.rb != n) continue;
      for (std::size_t i = 0; i < p.entries.size(); ++i)
        if (p.entries[i].k == k && p.entries[i].level == l) return static_cast<int>(i);
      return kAbsent;
    }
    return kAbsent;
  };

  for (const auto& p : profiles_tx) {
    const auto& current = matching.allocation[p.k];
    for (const auto& e : p.entries) {
      if (current && e.res == *current) break;  // remaining entries are not preferred
      const int n = e.res.rb;
      if (n < 0 || n >= static_cast<int>(matching.held.size())) continue;
      const auto& held = matching.held[static_cast<std::size_t>(n)];
      if (held.empty()) continue;
      const int candidate = rb_rank_of(n, p.k, e.res.level);
      if (candidate == kAbsent) continue;
      for (const Pair& h : held) {
        const int held_rank = rb_rank_of(n, h.k, h.level);
        if (held_rank == kAbsent || candidate < held_rank) return BlockingPair{p.k, e.res};
      }
    }
  }
  return std::nullopt;
}

Result run_stable_matching(const Network& net, const Options& options) {
  if (options.t_max < 1) throw std::invalid_argument("run_stable_matching: t_max must be >= 1");
  Allocation prev = random_alignment(net, options.init_seed);
  Result result;
  std::optional<Allocation> best;
  double best_rate = 0.0;

  for (int t = 1; t <= options.t_max; ++t) {
    const auto ptx = build_transmitter_profiles(net, prev);
    const auto prb = build_rb_profiles(net, prev);
    MatchStats stats;
    const Matching m = match_alignments(ptx, prb, net, &stats);
    result.total_proposals += stats.proposals;
    result.iterations = t;
    if (options.observer) options.observer(InnerRound{t, &ptx, &prb, &m, stats});

    const double rate = sum_rate(net, m.allocation);
    if (!best || rate > best_rate) {
      best = m.allocation;
      best_rate = rate;
    }
    if (m.allocation == prev) {
      result.converged = true;
      result.allocation = m.allocation;
      return result;
    }
    prev = m.allocation;
  }
  result.allocation = *best;
  return result;
}

}  // namespace hetalloc::matching
