#include "hetalloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hetalloc/auction.hpp"
#include "hetalloc/matching.hpp"
#include "hetalloc/message_passing.hpp"
#include "hetalloc/oracle.hpp"
#include "hetalloc/random.hpp"

namespace hetalloc {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Auction: return "auction";
    case Algorithm::Matching: return "matching";
    case Algorithm::MsgPass: return "msgpass";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  auto add = [&](Algorithm a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      add(Algorithm::Matching);
      add(Algorithm::MsgPass);
      add(Algorithm::Auction);
    } else if (item == "matching") {
      add(Algorithm::Matching);
    } else if (item == "msgpass") {
      add(Algorithm::MsgPass);
    } else if (item == "auction") {
      add(Algorithm::Auction);
    } else if (item == "oracle") {
      add(Algorithm::Oracle);
    } else {
      throw std::invalid_argument("unknown algorithm '" + item + "' (expected matching, msgpass, auction, oracle, all)");
    }
  }
  if (out.empty()) throw std::invalid_argument("no algorithm selected");
  return out;
}

namespace {

std::uint64_t parse_u64(const std::string& s, const std::string& text) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad seed list '" + text + "'");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("seed out of range in '" + text + "'");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SeedOutcome {
  std::vector<RunMetrics> rows;
  bool oracle_skipped = false;
};

SeedOutcome run_seed(const ScenarioConfig& base, std::uint64_t seed, const ExperimentOptions& opt) {
  ScenarioConfig config = base;
  config.seed = seed;
  const Network net = build_topology(config);
  const std::uint64_t checksum = net.checksum();
  const auto K = static_cast<std::uint64_t>(net.num_transmitters());
  const auto N = static_cast<std::uint64_t>(net.num_rb());
  const auto L = static_cast<std::uint64_t>(net.num_levels());

  SeedOutcome out;
  auto has = [&](Algorithm a) { return std::find(opt.algorithms.begin(), opt.algorithms.end(), a) != opt.algorithms.end(); };
  auto base_row = [&](Algorithm a, const Allocation& alloc) {
    RunMetrics m;
    m.algorithm = algorithm_name(a);
    m.seed = seed;
    m.sum_rate_bps = sum_rate(net, alloc);
    m.weighted_benefit = config.w1 * m.sum_rate_bps / config.rb_bandwidth;
    m.feasible = is_feasible(net, alloc).feasible;
    m.drop_checksum = net.checksum();
    return m;
  };

  std::optional<double> optimum;
  if (opt.with_oracle || has(Algorithm::Oracle)) {
    OracleOptions oo;
    if (opt.oracle_budget > 0) oo.budget = opt.oracle_budget;
    if (oracle_fits_budget(net, oo.budget)) {
      const auto start = Clock::now();
      const OracleResult r = exhaustive_search(net, oo);
      RunMetrics m = base_row(Algorithm::Oracle, r.allocation);
      m.wall_time_ms = elapsed_ms(start);
      m.iterations = 1;
      m.converged = true;
      // Centralized CSI collection: every transmitter node to every receiver node, per RB.
      m.messages_exchanged = (1 + K) * (static_cast<std::uint64_t>(net.num_mue()) + K) * N;
      optimum = r.sum_rate;
      if (has(Algorithm::Oracle)) out.rows.push_back(m);
    } else {
      out.oracle_skipped = true;
    }
  }

  if (has(Algorithm::Matching)) {
    const auto start = Clock::now();
    matching::Options mo;
    mo.t_max = opt.matching_t_max;
    mo.init_seed = init_seed_for(seed, Algorithm::Matching);
    const auto r = matching::run_stable_matching(net, mo);
    RunMetrics m = base_row(Algorithm::Matching, r.allocation);
    m.wall_time_ms = elapsed_ms(start);
    m.iterations = static_cast<std::uint64_t>(r.iterations);
    m.converged = r.converged;
    // Per iteration: K profiles of N*L entries, N profiles of K*L entries, K allocation notices.
    m.messages_exchanged = m.iterations * (2 * K * N * L + K);
    out.rows.push_back(m);
  }
  if (has(Algorithm::MsgPass)) {
    const auto start = Clock::now();
    msgpass::Options mo;
    mo.omega = opt.omega;
    mo.t_max = opt.msgpass_t_max;
    mo.init_seed = init_seed_for(seed, Algorithm::MsgPass);
    const auto r = msgpass::run_message_passing(net, mo);
    RunMetrics m = base_row(Algorithm::MsgPass, r.allocation);
    m.wall_time_ms = elapsed_ms(start);
    m.iterations = static_cast<std::uint64_t>(r.iterations);
    m.converged = r.converged;
    m.messages_exchanged = m.iterations * msgpass::messages_per_iteration(net.num_transmitters(), net.num_rb(), net.num_levels());
    out.rows.push_back(m);
  }
  if (has(Algorithm::Auction)) {
    const auto start = Clock::now();
    auction::Options ao;
    ao.epsilon = opt.epsilon;
    ao.t_max = opt.auction_t_max;
    ao.init_seed = init_seed_for(seed, Algorithm::Auction);
    const auto r = auction::run_auction(net, ao);
    RunMetrics m = base_row(Algorithm::Auction, r.allocation);
    m.wall_time_ms = elapsed_ms(start);
    m.iterations = static_cast<std::uint64_t>(r.iterations);
    m.converged = r.converged;
    // Per iteration every transmitter receives the (cost, bidder) view of all
    // N*L resources and reports its assignment.
    m.messages_exchanged = m.iterations * K * (N * L + 1);
    out.rows.push_back(m);
  }

  for (auto& m : out.rows) {
    if (m.drop_checksum != checksum) throw std::logic_error("algorithms saw different drops");
    if (optimum) m.oracle_gap = *optimum > 0.0 ? 1.0 - m.sum_rate_bps / *optimum : 0.0;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_u64(item, text));
      continue;
    }
    const std::uint64_t lo = parse_u64(item.substr(0, dash), text);
    const std::uint64_t hi = parse_u64(item.substr(dash + 1), text);
    if (hi < lo) throw std::invalid_argument("descending seed range in '" + text + "'");
    if (hi - lo >= 10'000'000) throw std::invalid_argument("seed range too large in '" + text + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw std::invalid_argument("empty seed list");
  return out;
}

std::uint64_t init_seed_for(std::uint64_t drop_seed, Algorithm a) {
  return mix_seed(drop_seed, static_cast<std::uint64_t>(a) + 1);
}

ExperimentReport run_experiment(const ScenarioConfig& config, const ExperimentOptions& options) {
  validate(config);
  if (options.algorithms.empty()) throw std::invalid_argument("run_experiment: no algorithms selected");
  std::vector<SeedOutcome> outcomes(options.seeds.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), options.seeds.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < options.seeds.size(); i = next++) {
      try {
        outcomes[i] = run_seed(config, options.seeds[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentReport report;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (auto& r : outcomes[i].rows) report.rows.push_back(std::move(r));
    if (outcomes[i].oracle_skipped) report.oracle_skipped_seeds.push_back(options.seeds[i]);
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const RunMetrics& a, const RunMetrics& b) {
    return a.seed != b.seed ? a.seed < b.seed : a.algorithm < b.algorithm;
  });
  return report;
}

std::string format_metrics_csv(const std::vector<RunMetrics>& rows) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const auto& m : rows) {
    out += quote(m.algorithm) + ',' + std::to_string(m.seed) + ',' + fmt(m.sum_rate_bps) + ',' + fmt(m.weighted_benefit) + ',' +
           std::to_string(m.iterations) + ',' + (m.converged ? "true" : "false") + ',' + (m.feasible ? "true" : "false") + ',' +
           (m.oracle_gap ? fmt(*m.oracle_gap) : std::string()) + ',' + fmt(m.wall_time_ms) + ',' +
           std::to_string(m.messages_exchanged) + "\n";
  }
  return out;
}

void write_metrics_csv(const std::vector<RunMetrics>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_metrics_csv(rows);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace hetalloc
