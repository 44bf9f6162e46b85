#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hetalloc/network.hpp"

namespace hetalloc {

enum class Algorithm { Auction, Matching, MsgPass, Oracle };

/// "auction", "matching", "msgpass", "oracle"
std::string algorithm_name(Algorithm a);
/// Comma-separated names; "all" selects the three distributed schemes.
std::vector<Algorithm> parse_algorithms(const std::string& list);

/// "1-20", "3", "1,2,5", "1-3,10-12"; order and duplicates are preserved.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

struct RunMetrics {
  std::string algorithm;
  std::uint64_t seed = 0;
  double sum_rate_bps = 0.0;
  double weighted_benefit = 0.0;  // w1 * sum_rate / B_RB
  std::uint64_t iterations = 0;
  bool converged = false;
  bool feasible = false;
  std::optional<double> oracle_gap;  // 1 - achieved / optimum
  double wall_time_ms = 0.0;
  std::uint64_t messages_exchanged = 0;
  std::uint64_t drop_checksum = 0;  // not written to CSV
};

struct ExperimentOptions {
  std::vector<Algorithm> algorithms{Algorithm::Matching, Algorithm::MsgPass, Algorithm::Auction};
  std::vector<std::uint64_t> seeds{1};
  bool with_oracle = false;
  int jobs = 1;
  std::uint64_t oracle_budget = 0;  // 0: ALLOC_ORACLE_BUDGET or the default
  int matching_t_max = 100;
  double omega = 0.5;
  int msgpass_t_max = 500;
  double epsilon = 0.0;  // <= 0: per-drop default
  int auction_t_max = 10000;
};

struct ExperimentReport {
  std::vector<RunMetrics> rows;  // sorted by seed, then algorithm name
  std::vector<std::uint64_t> oracle_skipped_seeds;  // budget refused the oracle
};

/// For each seed, builds one drop (config with seed replaced) and runs every
/// selected algorithm on it, plus the oracle when requested and affordable.
ExperimentReport run_experiment(const ScenarioConfig& config, const ExperimentOptions& options);

inline const char* kMetricsHeader =
    "algorithm,seed,sum_rate_bps,weighted_benefit,iterations,converged,feasible,oracle_gap,wall_time_ms,messages_exchanged";

/// CSV text: header line plus one line per row, "\n" line endings.
std::string format_metrics_csv(const std::vector<RunMetrics>& rows);

/// Writes format_metrics_csv to path; throws std::runtime_error on I/O failure.
void write_metrics_csv(const std::vector<RunMetrics>& rows, const std::string& path);

/// Seed used to draw an algorithm's random initial alignment for a drop.
std::uint64_t init_seed_for(std::uint64_t drop_seed, Algorithm a);

}  // namespace hetalloc
