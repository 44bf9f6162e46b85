#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace hetalloc {

struct EvalReport {
  double sum_rate = 0.0;                    // bits/s
  std::vector<double> per_rb_interference;  // W, I^(n)
  bool feasible = true;                     // I^(n) < I_max^(n) for every n
  std::vector<int> violated_rbs;
};

/// Per-RB interference and the strict cap test. sum_rate is left at 0.
EvalReport is_feasible(const Network& net, const Allocation& alloc);

/// Sum over assigned transmitters of B_RB * log2(1 + gamma_{u_k}).
double sum_rate(const Network& net, const Allocation& alloc);

/// is_feasible plus sum_rate.
EvalReport evaluate(const Network& net, const Allocation& alloc);

/// (N*L)^K; the count of resource-only alignments. Throws std::overflow_error
/// when the result does not fit in 64 bits.
std::uint64_t search_space_size(int K, int N, int L);

/// (N*L + 1)^K; the count including the idle option, i.e. what the oracle visits.
std::uint64_t search_space_size_with_idle(int K, int N, int L);

class OracleBudgetExceeded : public std::runtime_error {
 public:
  OracleBudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

/// Reads ALLOC_ORACLE_BUDGET, falling back to kDefaultOracleBudget.
std::uint64_t oracle_budget_from_env();

struct OracleOptions {
  std::uint64_t budget = oracle_budget_from_env();
  int threads = 1;  // partitions of transmitter 0's choices
};

struct OracleResult {
  Allocation allocation;
  double sum_rate = 0.0;
  std::uint64_t candidates_visited = 0;
};

/// Exhaustive search over every transmitter choosing one of N*L resources or
/// staying idle. Returns the feasible maximizer of sum_rate; ties go to the
/// lexicographically smallest choice vector (idle < (0,0) < (0,1) < ...).
/// Throws OracleBudgetExceeded rather than truncating.
bool oracle_fits_budget(const Network& net, std::uint64_t budget);
OracleResult exhaustive_search(const Network& net, const OracleOptions& options = {});

}  // namespace hetalloc
