// alloc_cli: run the allocators on seeded drops and emit a metrics CSV.
//
//   alloc_cli run --scenario s.json --algorithms all --seeds 1-20 --oracle --out m.csv
//   alloc_cli validate --scenario s.json
//   alloc_cli size -K 5 -N 6 -L 3

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "hetalloc/experiment.hpp"
#include "hetalloc/oracle.hpp"
#include "hetalloc/scenario_io.hpp"

int main(int argc, char** argv) {
  using namespace hetalloc;
  CLI::App app{"Resource allocation for underlay small-cell / D2D transmitters"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string algorithms = "all";
  std::string seeds = "1";
  std::string out_path;
  bool with_oracle = false;
  ExperimentOptions opt;

  auto* run = app.add_subcommand("run", "run allocators on seeded drops and write metrics CSV");
  run->add_option("--scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--algorithms", algorithms, "comma list of matching,msgpass,auction,oracle or 'all'");
  run->add_option("--seeds", seeds, "seed list, e.g. 1-20 or 1,2,5");
  run->add_flag("--oracle", with_oracle, "also run exhaustive search and fill oracle_gap");
  run->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  run->add_option("--jobs", opt.jobs, "seeds processed in parallel")->check(CLI::PositiveNumber);
  run->add_option("--matching-t-max", opt.matching_t_max, "outer iterations of stable matching")->check(CLI::PositiveNumber);
  run->add_option("--omega", opt.omega, "message damping weight in (0, 1]")->check(CLI::Range(1e-9, 1.0));
  run->add_option("--msgpass-t-max", opt.msgpass_t_max, "message passing iterations")->check(CLI::PositiveNumber);
  run->add_option("--epsilon", opt.epsilon, "auction bid slack (default: 1% of the drop's benefit spread)");
  run->add_option("--auction-t-max", opt.auction_t_max, "auction iterations")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "check a scenario file");
  val->add_option("--scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);

  int K = 5, N = 6, L = 3;
  bool with_idle = false;
  auto* size = app.add_subcommand("size", "print the exhaustive search-space size (N*L)^K");
  size->add_option("-K,--transmitters", K, "underlay transmitters")->check(CLI::NonNegativeNumber);
  size->add_option("-N,--rbs", N, "resource blocks")->check(CLI::PositiveNumber);
  size->add_option("-L,--levels", L, "power levels")->check(CLI::PositiveNumber);
  size->add_flag("--with-idle", with_idle, "count the idle option too: (N*L + 1)^K");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*size) {
      const auto count = with_idle ? search_space_size_with_idle(K, N, L) : search_space_size(K, N, L);
      std::printf("%llu\n", static_cast<unsigned long long>(count));
      return 0;
    }

    const ScenarioConfig config = load_scenario(scenario_path);
    if (*val) {
      std::printf("ok: K=%d N=%d L=%d, search space %llu (with idle %llu)\n", config.num_transmitters(), config.num_rb,
                  config.num_levels(),
                  static_cast<unsigned long long>(search_space_size(config.num_transmitters(), config.num_rb, config.num_levels())),
                  static_cast<unsigned long long>(
                      search_space_size_with_idle(config.num_transmitters(), config.num_rb, config.num_levels())));
      return 0;
    }

    opt.algorithms = parse_algorithms(algorithms);
    opt.seeds = parse_seed_list(seeds);
    opt.with_oracle = with_oracle;
    const ExperimentReport report = run_experiment(config, opt);
    for (auto s : report.oracle_skipped_seeds)
      std::fprintf(stderr, "warning: oracle skipped for seed %llu (enumeration budget exceeded)\n",
                   static_cast<unsigned long long>(s));
    if (out_path.empty())
      std::cout << format_metrics_csv(report.rows);
    else
      write_metrics_csv(report.rows, out_path);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
