#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace hetalloc::matching {

struct TxEntry {
  Resource res;
  double utility = 0.0;
};

/// A transmitter's ranking of every (n, l), best first. Equal utilities are
/// ordered by n, then l.
struct TxProfile {
  int k = 0;
  std::vector<TxEntry> entries;
};

struct RbEntry {
  int k = 0;
  int level = 0;
  double utility = 0.0;
};

/// An RB's ranking of every (k, l), best first. Equal utilities are ordered by
/// l, then k.
struct RbProfile {
  int rb = 0;
  std::vector<RbEntry> entries;
};

TxProfile build_transmitter_profile(const Network& net, const Allocation& alloc_prev, int k);
RbProfile build_rb_profile(const Network& net, const Allocation& alloc_prev, int rb);

std::vector<TxProfile> build_transmitter_profiles(const Network& net, const Allocation& alloc_prev);
std::vector<RbProfile> build_rb_profiles(const Network& net, const Allocation& alloc_prev);

struct Pair {
  int k = 0;
  int level = 0;
  bool operator==(const Pair&) const = default;
};

struct Matching {
  Allocation allocation;            // mu(k)
  std::vector<std::vector<Pair>> held;  // mu(n), in acceptance order
};

struct MatchStats {
  std::uint64_t proposals = 0;
  std::uint64_t revocations = 0;
};

/// Deferred acceptance with interference-driven revocation. The lowest-index
/// unassigned transmitter with a non-empty profile proposes its top entry;
/// while the RB's aggregated interference is at or above I_max the RB revokes
/// its least-preferred held pair, deleting that pair and everything it ranks
/// below it from both sides' profiles.
Matching match_alignments(const std::vector<TxProfile>& profiles_tx, const std::vector<RbProfile>& profiles_rb,
                          const Network& net, MatchStats* stats = nullptr);

struct BlockingPair {
  int k = 0;
  Resource res;
  bool operator==(const BlockingPair&) const = default;
};

/// A (k, n, l) where k strictly prefers (n, l) to mu(k) (an idle k prefers any
/// listed entry) and n strictly prefers (k, l) to at least one pair it holds.
std::optional<BlockingPair> find_blocking_pair(const Matching& matching, const std::vector<TxProfile>& profiles_tx,
                                               const std::vector<RbProfile>& profiles_rb);

struct InnerRound {
  int t = 0;
  const std::vector<TxProfile>* profiles_tx = nullptr;
  const std::vector<RbProfile>* profiles_rb = nullptr;
  const Matching* matching = nullptr;
  MatchStats stats;
};

struct Options {
  int t_max = 100;
  std::uint64_t init_seed = 1;
  std::function<void(const InnerRound&)> observer;  // called after every inner matching
};

struct Result {
  Allocation allocation;
  int iterations = 0;
  bool converged = false;
  std::uint64_t total_proposals = 0;
};

/// Random initial alignment for every transmitter, then repeated profile
/// rebuild + match until X(t) == X(t-1) or t_max. Without convergence the
/// highest-sum-rate matching output is returned (earliest on ties).
Result run_stable_matching(const Network& net, const Options& options);

}  // namespace hetalloc::matching
