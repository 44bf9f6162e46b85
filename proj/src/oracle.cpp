#include "hetalloc/oracle.hpp"

#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "hetalloc/radio.hpp"

namespace hetalloc {

EvalReport is_feasible(const Network& net, const Allocation& alloc) {
  EvalReport report;
  report.per_rb_interference = interference_profile(net, alloc);
  for (int n = 0; n < net.num_rb(); ++n)
    if (!(report.per_rb_interference[static_cast<std::size_t>(n)] < net.i_max(n))) report.violated_rbs.push_back(n);
  report.feasible = report.violated_rbs.empty();
  return report;
}

double sum_rate(const Network& net, const Allocation& alloc) {
  double total = 0.0;
  for (int k = 0; k < alloc.size(); ++k)
    if (alloc[k]) total += shannon_rate(sinr_underlay(net, alloc, k, alloc[k]->rb), net.rb_bandwidth());
  return total;
}

EvalReport evaluate(const Network& net, const Allocation& alloc) {
  EvalReport report = is_feasible(net, alloc);
  report.sum_rate = sum_rate(net, alloc);
  return report;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("search space size overflows 64 bits");
    out *= base;
  }
  return out;
}

void check_dims(int K, int N, int L) {
  if (K < 0 || N < 1 || L < 1) throw std::invalid_argument("search_space_size: need K >= 0, N >= 1, L >= 1");
}

struct PartitionBest {
  std::vector<int> choice;  // empty: nothing feasible seen
  double value = -1.0;
  std::uint64_t visited = 0;
};

// Choice code c: 0 is idle, otherwise resource index c - 1.
void apply(Allocation& alloc, int k, int c, int L) {
  if (c == 0)
    alloc.clear(k);
  else
    alloc.assign(k, resource_at(c - 1, L));
}

bool strictly_feasible(const Network& net, const Allocation& alloc) {
  for (int n = 0; n < net.num_rb(); ++n)
    if (!(aggregated_interference(net, alloc, n) < net.i_max(n))) return false;
  return true;
}

// Enumerates every vector whose first entry is `first`, odometer style with
// the last transmitter varying fastest, so visiting order is lexicographic.
PartitionBest search_partition(const Network& net, int first) {
  const int K = net.num_transmitters();
  const int L = net.num_levels();
  const int choices = net.num_resources() + 1;
  PartitionBest best;
  std::vector<int> digits(static_cast<std::size_t>(K), 0);
  digits[0] = first;
  Allocation alloc(K);
  for (int k = 0; k < K; ++k) apply(alloc, k, digits[static_cast<std::size_t>(k)], L);

  while (true) {
    ++best.visited;
    if (strictly_feasible(net, alloc)) {
      const double value = sum_rate(net, alloc);
      if (best.choice.empty() || value > best.value) {
        best.value = value;
        best.choice = digits;
      }
    }
    int k = K - 1;
    while (k >= 1 && digits[static_cast<std::size_t>(k)] == choices - 1) {
      digits[static_cast<std::size_t>(k)] = 0;
      apply(alloc, k, 0, L);
      --k;
    }
    if (k < 1) break;
    apply(alloc, k, ++digits[static_cast<std::size_t>(k)], L);
  }
  return best;
}

}  // namespace

std::uint64_t search_space_size(int K, int N, int L) {
  check_dims(K, N, L);
  return checked_pow(static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(L), K);
}

std::uint64_t search_space_size_with_idle(int K, int N, int L) {
  check_dims(K, N, L);
  return checked_pow(static_cast<std::uint64_t>(N) * static_cast<std::uint64_t>(L) + 1, K);
}

OracleBudgetExceeded::OracleBudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("exhaustive search refused: " + std::to_string(required) +
                         " candidates exceed the enumeration budget of " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::uint64_t oracle_budget_from_env() {
  const char* raw = std::getenv("ALLOC_ORACLE_BUDGET");
  if (!raw || !*raw) return kDefaultOracleBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') throw std::invalid_argument("ALLOC_ORACLE_BUDGET must be a non-negative integer");
  return v;
}

bool oracle_fits_budget(const Network& net, std::uint64_t budget) {
  try {
    return search_space_size_with_idle(net.num_transmitters(), net.num_rb(), net.num_levels()) <= budget;
  } catch (const std::overflow_error&) {
    return false;
  }
}

OracleResult exhaustive_search(const Network& net, const OracleOptions& options) {
  const int K = net.num_transmitters();
  std::uint64_t required = 0;
  try {
    required = search_space_size_with_idle(K, net.num_rb(), net.num_levels());
  } catch (const std::overflow_error&) {
    throw OracleBudgetExceeded(std::numeric_limits<std::uint64_t>::max(), options.budget);
  }
  if (required > options.budget) throw OracleBudgetExceeded(required, options.budget);

  const int choices = net.num_resources() + 1;
  std::vector<PartitionBest> parts(static_cast<std::size_t>(choices));
  const int threads = std::max(1, std::min(options.threads, choices));
  if (threads == 1) {
    for (int c = 0; c < choices; ++c) parts[static_cast<std::size_t>(c)] = search_partition(net, c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int c = t; c < choices; c += threads) parts[static_cast<std::size_t>(c)] = search_partition(net, c);
      });
    for (auto& th : pool) th.join();
  }

  // Reduce in choice order with strict improvement, which reproduces the
  // serial lexicographic tie-break regardless of partitioning.
  OracleResult result{Allocation(K), 0.0, 0};
  const PartitionBest* best = nullptr;
  for (const auto& p : parts) {
    result.candidates_visited += p.visited;
    if (p.choice.empty()) continue;
    if (!best || p.value > best->value) best = &p;
  }
  if (best) {
    for (int k = 0; k < K; ++k) apply(result.allocation, k, best->choice[static_cast<std::size_t>(k)], net.num_levels());
    result.sum_rate = best->value;
  }
  return result;
}

}  // namespace hetalloc
