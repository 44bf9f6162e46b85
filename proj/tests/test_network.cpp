#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hetalloc/network.hpp"
#include "hetalloc/random.hpp"

using namespace hetalloc;

TEST_CASE("channel_gain") {
  CHECK(channel_gain(1.0, 1.0, 3.0) == 1.0);
  CHECK(channel_gain(1.0, 2.0, 3.0) == 0.125);
  // 0.7 * 35^-3.5 evaluated to 40 digits with mpmath
  const double ref = 2.759687362378829640847733313847984628998e-6;
  CHECK(std::abs(channel_gain(0.7, 35.0, 3.5) - ref) / ref < 1e-12);

  CHECK_THROWS_AS(channel_gain(1.0, 0.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(channel_gain(1.0, -2.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(channel_gain(0.0, 2.0, 3.0), std::domain_error);
}

TEST_CASE("channel_gain is monotone in distance and fading") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double beta = 0.01 + 3 * rng.uniform();
    const double d = 1 + 400 * rng.uniform();
    const double alpha = 2.1 + 2 * rng.uniform();
    CHECK(channel_gain(beta, d * 1.01, alpha) < channel_gain(beta, d, alpha));
    CHECK(channel_gain(beta * 1.01, d, alpha) > channel_gain(beta, d, alpha));
  }
}

TEST_CASE("shannon_rate") {
  CHECK(shannon_rate(0.0, 180e3) == 0.0);
  CHECK(shannon_rate(1.0, 1.0) == 1.0);
  CHECK(shannon_rate(3.0, 180e3) == 360e3);
  CHECK_THROWS_AS(shannon_rate(-1e-9, 1.0), std::domain_error);
  double prev = -1.0;
  for (double s = 0.0; s < 50.0; s += 0.37) {
    CHECK(shannon_rate(s, 180e3) > prev);
    prev = shannon_rate(s, 180e3);
  }
}

TEST_CASE("build_topology is deterministic in the seed") {
  ScenarioConfig c;
  c.seed = 42;
  const Network a = build_topology(c);
  const Network b = build_topology(c);
  CHECK(a.gains().values() == b.gains().values());
  CHECK(a.geometry().mues == b.geometry().mues);
  CHECK(a.geometry().transmitters == b.geometry().transmitters);
  CHECK(a.geometry().receivers == b.geometry().receivers);
  CHECK(a.checksum() == b.checksum());

  c.seed = 43;
  CHECK(build_topology(c).checksum() != a.checksum());
}

TEST_CASE("num_d2d = 0 leaves only small cells") {
  ScenarioConfig c;
  c.num_sbs = 3;
  c.num_d2d = 0;
  const Network net = build_topology(c);
  CHECK(net.num_transmitters() == 3);
  for (int k = 0; k < 3; ++k) CHECK(net.kind(k) == TransmitterKind::SmallCell);
}

TEST_CASE("reference user is the argmax MUE of the stored gains") {
  ScenarioConfig c;
  c.num_mue = 3;
  c.num_sbs = 2;
  c.num_d2d = 1;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    c.seed = seed;
    const Network net = build_topology(c);
    REQUIRE(net.num_transmitters() == 3);
    for (int k = 0; k < 3; ++k)
      for (int n = 0; n < net.num_rb(); ++n) {
        const GainTable& g = net.gains();
        int best = 0;
        for (int m = 1; m < 3; ++m)
          if (g.at(1 + k, m, n) > g.at(1 + k, best, n)) best = m;
        CHECK(net.reference_user(k, n) == best);
        CHECK(net.reference_gain(k, n) == g.at(1 + k, best, n));
      }
  }
}

TEST_CASE("reference user ties go to the lowest MUE") {
  const auto c = fixtures::small_config(3, 1, 0, 1, {1.0});
  const Network net = fixtures::hand_network(c, [](int tx, int rx, int) { return tx == 1 && rx < 3 ? (rx == 0 ? 1.0 : 2.0) : 1.0; });
  CHECK(net.reference_user(0, 0) == 1);
}

TEST_CASE("noise power is N0 * B_RB") {
  ScenarioConfig c;
  const Network net = build_topology(c);
  CHECK(c.rb_bandwidth == 180000.0);
  CHECK(net.noise_power() == c.noise_psd * 180000.0);
  c.rb_bandwidth = 15000.0;
  CHECK(build_topology(c).noise_power() == c.noise_psd * 15000.0);
}

TEST_CASE("placement respects the disks and the minimum separation") {
  ScenarioConfig c;
  c.num_mue = 8;
  c.num_sbs = 4;
  c.num_d2d = 4;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    const Network net = build_topology(c);
    const Geometry& g = net.geometry();
    CHECK(g.mbs == Point{0, 0});
    std::vector<Point> all{g.mbs};
    for (const auto& p : g.mues) {
      CHECK(distance(p, g.mbs) <= c.cell_radius);
      all.push_back(p);
    }
    for (int k = 0; k < net.num_transmitters(); ++k) {
      const Point tx = g.transmitters[static_cast<std::size_t>(k)];
      const Point rx = g.receivers[static_cast<std::size_t>(k)];
      CHECK(distance(tx, g.mbs) <= c.cell_radius);
      CHECK(distance(tx, rx) <= (net.kind(k) == TransmitterKind::SmallCell ? c.sbs_ue_max_dist : c.d2d_max_dist));
      all.push_back(tx);
      all.push_back(rx);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(distance(all[i], all[j]) >= kMinNodeSeparation);
    for (double v : net.gains().values()) CHECK(v > 0.0);
  }
}

TEST_CASE("placement gives up after bounded retries") {
  ScenarioConfig c;
  c.cell_radius = 0.5;  // every point is within 1 m of the MBS
  CHECK_THROWS_AS(build_topology(c), std::runtime_error);
}

TEST_CASE("validate names the offending field") {
  auto message_of = [](ScenarioConfig c) -> std::string {
    try {
      validate(c);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  ScenarioConfig c;
  CHECK(message_of(c).empty());

  auto bad = c;
  bad.power_levels = {0.2, 0.1};
  CHECK(message_of(bad).rfind("power_levels", 0) == 0);
  bad = c;
  bad.power_levels = {0.1, 0.1};
  CHECK(message_of(bad).rfind("power_levels", 0) == 0);
  bad = c;
  bad.power_levels = {0.0, 0.1};
  CHECK(message_of(bad).rfind("power_levels", 0) == 0);
  bad = c;
  bad.pathloss_exp = 2.0;
  CHECK(message_of(bad).rfind("pathloss_exp", 0) == 0);
  bad = c;
  bad.i_max = 0.0;
  CHECK(message_of(bad).rfind("i_max", 0) == 0);
  bad = c;
  bad.rb_bandwidth = 0.0;
  CHECK(message_of(bad).rfind("rb_bandwidth", 0) == 0);
  bad = c;
  bad.num_rb = 0;
  CHECK(message_of(bad).rfind("num_rb", 0) == 0);
  bad = c;
  bad.num_mue = 0;
  CHECK(message_of(bad).rfind("num_mue", 0) == 0);
  bad = c;
  bad.num_sbs = 0;
  bad.num_d2d = 0;
  CHECK(message_of(bad).rfind("num_sbs", 0) == 0);
  bad = c;
  bad.i_max_per_rb = {1e-9};
  CHECK(message_of(bad).rfind("i_max_per_rb", 0) == 0);
  bad = c;
  bad.d2d_max_dist = -1;
  CHECK(message_of(bad).rfind("d2d_max_dist", 0) == 0);
}

TEST_CASE("per-RB budget override") {
  ScenarioConfig c;
  c.num_rb = 3;
  c.i_max_per_rb = {1e-10, 2e-10, 3e-10};
  const Network net = build_topology(c);
  CHECK(net.i_max(0) == 1e-10);
  CHECK(net.i_max(2) == 3e-10);
  c.i_max_per_rb.clear();
  CHECK(build_topology(c).i_max(1) == c.i_max);
}

TEST_CASE("Rng transforms") {
  Rng rng(11);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += rng.exponential();
  }
  // mean of Exp(1); standard error is 1/sqrt(n) ~ 0.0022
  CHECK(std::abs(sum / n - 1.0) < 0.01);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(7);
    REQUIRE(v >= 0);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) == mix_seed(1, 0));
}
