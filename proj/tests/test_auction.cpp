#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "hetalloc/auction.hpp"
#include "hetalloc/oracle.hpp"
#include "hetalloc/radio.hpp"
#include "hetalloc/random.hpp"

using namespace hetalloc;
using namespace hetalloc::auction;
using fixtures::alloc_of;

namespace {

ScenarioConfig tiny_family(std::uint64_t seed) {
  ScenarioConfig c;
  c.seed = seed;
  c.cell_radius = 300;
  c.num_mue = 3;
  c.num_sbs = 2;
  c.num_d2d = 2;
  c.num_rb = 4;
  c.power_levels = {0.1, 0.2};
  return c;
}

}  // namespace

TEST_CASE("resource_cost") {
  auto c = fixtures::small_config(1, 2, 0, 1, {1.0, 2.0});
  c.i_max = 2.0;
  c.w2 = 3.0;
  // contributions to the MUE: k = 0 -> 0.5 per W, k = 1 -> 1.0 per W
  const Network net = fixtures::hand_network(c, [](int tx, int rx, int) { return rx == 0 ? (tx == 1 ? 0.5 : 1.0) : 1.0; });
  // alone at 2 W: I = 1, cost 3 * (1/2 - 1)
  CHECK(resource_cost(net, Allocation(2), 0, {0, 1}) == -1.5);
  CHECK(clamped_cost(net, Allocation(2), 0, {0, 1}) == 0.0);
  // on top of k = 1 at 1 W: I = 1 + 1 = I_max exactly
  const Allocation other = alloc_of(2, {{1, {0, 0}}});
  CHECK(resource_cost(net, other, 0, {0, 1}) == 0.0);
  // k's own entry is ignored
  CHECK(resource_cost(net, alloc_of(2, {{0, {0, 1}}}), 0, {0, 0}) == resource_cost(net, Allocation(2), 0, {0, 0}));
  // over the cap: I = 2 + 1 = 3
  CHECK(resource_cost(net, alloc_of(2, {{1, {0, 1}}}), 0, {0, 1}) == 1.5);
  CHECK(clamped_cost(net, alloc_of(2, {{1, {0, 1}}}), 0, {0, 1}) == 1.5);
}

TEST_CASE("bid_increment") {
  CHECK(bid_increment({5.0, 3.0, 1.0}, 0, 0.1) == doctest::Approx(2.1).epsilon(1e-15));
  CHECK(bid_increment({4.0}, 0, 0.25) == 0.25);
  CHECK(bid_increment({2.0, 2.0, 2.0}, 1, 0.05) == 0.05);
  CHECK_THROWS_AS(bid_increment({}, 0, 0.1), std::invalid_argument);

  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(2 + rng.uniform_int(10)));
    for (double& x : v) x = 10.0 * rng.uniform() - 5.0;
    const int best = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
    std::vector<double> sorted = v;
    std::sort(sorted.rbegin(), sorted.rend());
    const double eps = 0.01 + rng.uniform();
    CHECK(bid_increment(v, best, eps) == doctest::Approx(sorted[0] - sorted[1] + eps).epsilon(1e-14));
    CHECK(bid_increment(v, best, eps) >= eps);
  }
}

TEST_CASE("merged view takes the max cost and its lowest-index bidder") {
  AuctionState s(3, 1, 2, 0.1);
  s.cost.at(0, 0) = 1.0;
  s.cost.at(1, 0) = 2.0;
  s.cost.at(2, 0) = 2.0;
  s.bidder.at(0, 0) = 0;
  s.bidder.at(1, 0) = 1;
  s.bidder.at(2, 0) = 2;
  s.cost.at(2, 1) = 0.5;
  s.bidder.at(2, 1) = 2;
  CHECK(s.merged_cost() == std::vector<double>{2.0, 0.5});
  CHECK(s.merged_bidder() == std::vector<int>{1, 2});
  CHECK(AuctionState(2, 1, 1, 0.1).merged_bidder() == std::vector<int>{kNoBidder});
}

TEST_CASE("local auction round") {
  auto c = fixtures::small_config(1, 2, 0, 2, {1.0});
  c.i_max = 1.0;
  c.noise_psd = 1.0;
  c.rb_bandwidth = 1.0;
  // direct gain 3 on RB 0, 1 on RB 1; MUE contributions 0.1 (k = 0), 0.95 (k = 1)
  const Network net = fixtures::hand_network(c, [](int tx, int rx, int rb) {
    if (rx == 0) return tx == 1 ? 0.1 : (tx == 2 ? 0.95 : 1.0);
    if (tx == rx) return rb == 0 ? 3.0 : 1.0;
    return tx == 0 ? 0.0 : 0.01;
  });
  const RoundOptions opt{0.1, true};

  SUBCASE("an unassigned transmitter bids on its best net value") {
    AuctionState s(2, 2, 1, 0.1);
    AuctionState out = s;
    const RoundOutcome r = local_auction_round(0, s, net, Allocation(2), opt, out);
    CHECK(r.triggered);
    CHECK(r.bid);
    CHECK(r.target == Resource{0, 0});
    CHECK(out.assignment[0] == Resource{0, 0});
    const double b0 = benefit(net, Allocation(2), 0, {0, 0});
    const double b1 = benefit(net, Allocation(2), 0, {1, 0});
    CHECK(out.cost.at(0, 0) == doctest::Approx(b0 - b1 + 0.1).epsilon(1e-14));
    CHECK(out.bidder.at(0, 0) == 0);
    // other rows untouched
    CHECK(out.cost.at(1, 0) == 0.0);
  }
  SUBCASE("the guard blocks a resource that would break the cap") {
    // k = 0 already on RB 0; k = 1 adds 0.95 on top of 0.1
    const Allocation prev = alloc_of(2, {{0, {0, 0}}});
    AuctionState s(2, 2, 1, 0.1);
    s.assignment = prev;
    AuctionState out = s;
    const RoundOutcome r = local_auction_round(1, s, net, prev, opt, out);
    CHECK(r.triggered);
    CHECK(r.target == Resource{0, 0});
    CHECK(r.guard_blocked);
    CHECK_FALSE(r.bid);
    CHECK_FALSE(out.assignment[1].has_value());
    CHECK_FALSE(passes_guard(net, prev, 1, {0, 0}));
    CHECK(passes_guard(net, prev, 1, {1, 0}));
  }
  SUBCASE("a happy recorded bidder stays put") {
    AuctionState s(2, 2, 1, 0.1);
    s.assignment = alloc_of(2, {{0, {0, 0}}});
    s.bidder.at(0, 0) = 0;
    s.cost.at(0, 0) = 0.01;
    AuctionState out = s;
    const RoundOutcome r = local_auction_round(0, s, net, s.assignment, opt, out);
    CHECK_FALSE(r.triggered);
    CHECK(out.assignment[0] == Resource{0, 0});
  }
  SUBCASE("an outbid transmitter bids again") {
    AuctionState s(2, 2, 1, 0.1);
    s.assignment = alloc_of(2, {{0, {0, 0}}});
    s.bidder.at(1, 0) = 1;
    s.cost.at(1, 0) = 5.0;  // k = 1 holds the record on (0,0) now
    AuctionState out = s;
    const RoundOutcome r = local_auction_round(0, s, net, s.assignment, opt, out);
    CHECK(r.triggered);
    CHECK(r.bid);
    CHECK(r.target == Resource{1, 0});
  }
}

TEST_CASE("one transmitter settles immediately on its best resource") {
  ScenarioConfig c;
  c.num_sbs = 1;
  c.num_d2d = 0;
  c.i_max = 1.0;  // nothing is ever blocked
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    c.seed = seed;
    const Network net = build_topology(c);
    Options opt;
    opt.init_seed = seed;
    const Result r = run_auction(net, opt);
    CHECK(r.converged);
    REQUIRE(r.allocation[0].has_value());
    // no competition: the interference-free benefit argmax
    const auto table = benefit_table(net, Allocation(1));
    const auto best = std::max_element(table.values().begin(), table.values().end()) - table.values().begin();
    CHECK(resource_index(*r.allocation[0], net.num_levels()) == best);
  }
}

TEST_CASE("two transmitters contending for one RB end up apart") {
  auto c = fixtures::small_config(1, 2, 0, 2, {1.0});
  c.i_max = 100.0;
  c.noise_psd = 1.0;
  c.rb_bandwidth = 1.0;
  // both prefer RB 0; sharing an RB costs a lot of SINR
  const Network net = fixtures::hand_network(c, [](int tx, int rx, int rb) {
    if (rx == 0) return tx == 0 ? 1.0 : 0.1;
    if (tx == 0) return 0.0;
    if (tx == rx) return rb == 0 ? 8.0 : 4.0;
    return 20.0;
  });
  // Only the outbid side moves. With the unhappy trigger both sides react to
  // the same stale X(t-1) and can move in lock-step from a shared start.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Options opt;
    opt.init_seed = seed;
    opt.epsilon = 0.01;
    opt.rebid_when_unhappy = false;
    const Result r = run_auction(net, opt);
    CHECK(r.converged);
    REQUIRE(r.allocation[0].has_value());
    REQUIRE(r.allocation[1].has_value());
    CHECK(r.allocation[0]->rb != r.allocation[1]->rb);
  }
}

TEST_CASE("merged costs never fall and outputs are feasible") {
  ScenarioConfig c;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    c.seed = seed;
    const Network net = build_topology(c);
    Options opt;
    opt.init_seed = seed;
    std::vector<double> last;
    opt.observer = [&](int, const AuctionState& s) {
      const auto now = s.merged_cost();
      if (!last.empty())
        for (std::size_t i = 0; i < now.size(); ++i) CHECK(now[i] >= last[i]);
      last = now;
      CHECK(is_feasible(net, s.assignment).feasible);
    };
    const Result r = run_auction(net, opt);
    CHECK(is_feasible(net, r.allocation).feasible);
    CHECK(r.final_cost == last);
    last.clear();
    const Result again = run_auction(net, opt);
    CHECK(again.allocation == r.allocation);
    CHECK(again.iterations == r.iterations);
  }
}

TEST_CASE("epsilon complementary slackness under loose budgets") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Network net = fixtures::with_loose_budget(tiny_family(seed));
    Options opt;
    opt.init_seed = seed;
    const Result r = run_auction(net, opt);
    CHECK(r.converged);
    CHECK(static_cast<std::uint64_t>(r.iterations) <= iteration_bound(net, r.epsilon));
    CHECK(check_epsilon_cs(net, r).empty());
  }
}

TEST_CASE("epsilon defaults and the iteration bound") {
  const Network net = build_topology(tiny_family(3));
  const auto table = benefit_table(net, Allocation(net.num_transmitters()));
  const auto [lo, hi] = std::minmax_element(table.values().begin(), table.values().end());
  CHECK(benefit_range(net) == *hi - *lo);
  CHECK(default_epsilon(net) == 0.01 * (*hi - *lo));
  const double eps = 0.3;
  CHECK(iteration_bound(net, eps) ==
        static_cast<std::uint64_t>(4 * 8) * static_cast<std::uint64_t>(std::ceil((*hi - *lo) / eps)));

  auto flat = fixtures::small_config(1, 1, 0, 1, {1.0});
  const Network one = fixtures::hand_network(flat, [](int, int, int) { return 1e-12; });
  CHECK(default_epsilon(one) == 0.01);
  CHECK(iteration_bound(one, 0.01) == 1);
}

TEST_CASE("weighted_benefit is w1 * sum_rate / B_RB") {
  ScenarioConfig c;
  c.w1 = 2.5;
  const Network net = build_topology(c);
  const Allocation a = random_alignment(net, 4);
  CHECK(weighted_benefit(net, a) == doctest::Approx(2.5 * sum_rate(net, a) / 180e3).epsilon(1e-14));
  double direct = 0.0;
  for (int k = 0; k < net.num_transmitters(); ++k)
    if (a[k]) direct += 2.5 * std::log2(1.0 + sinr_underlay(net, a, k, a[k]->rb));
  CHECK(weighted_benefit(net, a) == doctest::Approx(direct).epsilon(1e-12));
}
