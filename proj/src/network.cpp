#include "hetalloc/network.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

#include "hetalloc/random.hpp"

namespace hetalloc {

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) reject(field, "must be a finite value > 0");
}

constexpr int kMaxPlacementRetries = 1000;

class Placer {
 public:
  explicit Placer(Rng& rng) : rng_(rng) {}

  void fix(Point p) { placed_.push_back(p); }

  // Uniform in the disk of `radius` around `center`, at least
  // kMinNodeSeparation away from everything placed so far.
  Point place(Point center, double radius, const char* what) {
    for (int attempt = 0; attempt < kMaxPlacementRetries; ++attempt) {
      const double r = radius * std::sqrt(rng_.uniform());
      const double theta = 2.0 * std::numbers::pi * rng_.uniform();
      const Point p{center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
      if (clear(p)) {
        placed_.push_back(p);
        return p;
      }
    }
    throw std::runtime_error(std::string("build_topology: could not place ") + what +
                             " away from other nodes after bounded retries");
  }

 private:
  bool clear(Point p) const {
    for (const Point& q : placed_)
      if (distance(p, q) < kMinNodeSeparation) return false;
    return true;
  }

  Rng& rng_;
  std::vector<Point> placed_;
};

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

template <class T>
void fnv_value(std::uint64_t& h, const T& v) {
  fnv_mix(h, &v, sizeof v);
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (c.num_mue < 1) reject("num_mue", "must be >= 1");
  if (c.num_sbs < 0) reject("num_sbs", "must be >= 0");
  if (c.num_d2d < 0) reject("num_d2d", "must be >= 0");
  if (c.num_sbs + c.num_d2d < 1) reject("num_sbs", "num_sbs + num_d2d must be >= 1");
  if (c.num_rb < 1) reject("num_rb", "must be >= 1");
  if (c.power_levels.empty()) reject("power_levels", "must list at least one level");
  for (std::size_t i = 0; i < c.power_levels.size(); ++i) {
    if (!(c.power_levels[i] > 0.0) || !std::isfinite(c.power_levels[i])) reject("power_levels", "levels must be finite and > 0");
    if (i > 0 && !(c.power_levels[i] > c.power_levels[i - 1])) reject("power_levels", "levels must be strictly increasing");
  }
  require_positive(c.cell_radius, "cell_radius");
  require_positive(c.mbs_power, "mbs_power");
  require_positive(c.noise_psd, "noise_psd");
  require_positive(c.rb_bandwidth, "rb_bandwidth");
  if (!(c.pathloss_exp > 2.0) || !std::isfinite(c.pathloss_exp)) reject("pathloss_exp", "must be > 2");
  require_positive(c.i_max, "i_max");
  if (!(c.w1 >= 0.0) || !std::isfinite(c.w1)) reject("w1", "must be finite and >= 0");
  if (!(c.w2 >= 0.0) || !std::isfinite(c.w2)) reject("w2", "must be finite and >= 0");
  require_positive(c.d2d_max_dist, "d2d_max_dist");
  require_positive(c.sbs_ue_max_dist, "sbs_ue_max_dist");
  if (!c.i_max_per_rb.empty()) {
    if (static_cast<int>(c.i_max_per_rb.size()) != c.num_rb) reject("i_max_per_rb", "must have num_rb entries");
    for (double v : c.i_max_per_rb) require_positive(v, "i_max_per_rb");
  }
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double channel_gain(double beta, double dist, double alpha) {
  if (!(dist > 0.0)) throw std::domain_error("channel_gain: distance must be > 0");
  if (!(beta > 0.0)) throw std::domain_error("channel_gain: fading power must be > 0");
  return beta * std::pow(dist, -alpha);
}

double shannon_rate(double sinr, double bandwidth) {
  if (!(sinr >= 0.0)) throw std::domain_error("shannon_rate: sinr must be >= 0");
  return bandwidth * std::log2(1.0 + sinr);
}

GainTable::GainTable(int num_mue, int num_transmitters, int num_rb)
    : num_mue_(num_mue),
      num_tx_(num_transmitters),
      num_rb_(num_rb),
      values_(static_cast<std::size_t>(1 + num_transmitters) * static_cast<std::size_t>(num_mue + num_transmitters) *
                  static_cast<std::size_t>(num_rb),
              0.0) {}

std::size_t GainTable::offset(int tx_node, int rx_node, int rb) const {
  const auto rx_count = static_cast<std::size_t>(num_mue_ + num_tx_);
  return (static_cast<std::size_t>(tx_node) * rx_count + static_cast<std::size_t>(rx_node)) * static_cast<std::size_t>(num_rb_) +
         static_cast<std::size_t>(rb);
}

double& GainTable::at(int tx_node, int rx_node, int rb) { return values_[offset(tx_node, rx_node, rb)]; }
double GainTable::at(int tx_node, int rx_node, int rb) const { return values_[offset(tx_node, rx_node, rb)]; }

Network::Network(ScenarioConfig config, Geometry geometry, GainTable gains)
    : config_(std::move(config)), geometry_(std::move(geometry)), gains_(std::move(gains)) {
  validate(config_);
  if (gains_.num_mue() != config_.num_mue || gains_.num_transmitters() != config_.num_transmitters() ||
      gains_.num_rb() != config_.num_rb)
    throw std::invalid_argument("Network: gain table dimensions do not match the config");
  // build_topology only produces strictly positive gains; hand-built fixtures
  // may zero a link to switch a term off.
  for (double g : gains_.values())
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("Network: every gain must be finite and >= 0");

  sigma2_ = config_.noise_psd * config_.rb_bandwidth;
  i_max_ = config_.i_max_per_rb.empty() ? std::vector<double>(static_cast<std::size_t>(config_.num_rb), config_.i_max)
                                        : config_.i_max_per_rb;

  const int K = num_transmitters();
  const int N = num_rb();
  reference_user_.assign(static_cast<std::size_t>(K * N), 0);
  for (int k = 0; k < K; ++k)
    for (int n = 0; n < N; ++n) {
      int best = 0;
      for (int m = 1; m < num_mue(); ++m)
        if (gain_to_mue(k, m, n) > gain_to_mue(k, best, n)) best = m;
      reference_user_[static_cast<std::size_t>(k * N + n)] = best;
    }
}

double Network::link_gain(int k, int j, int rb) const {
  return gains_.at(GainTable::tx_node(k), gains_.receiver_node(j), rb);
}
double Network::gain_to_mue(int k, int m, int rb) const {
  return gains_.at(GainTable::tx_node(k), gains_.mue_node(m), rb);
}
double Network::mbs_gain_to_receiver(int k, int rb) const {
  return gains_.at(GainTable::mbs_node(), gains_.receiver_node(k), rb);
}
double Network::mbs_gain_to_mue(int m, int rb) const { return gains_.at(GainTable::mbs_node(), gains_.mue_node(m), rb); }

int Network::reference_user(int k, int rb) const {
  return reference_user_[static_cast<std::size_t>(k * num_rb() + rb)];
}
double Network::reference_gain(int k, int rb) const { return gain_to_mue(k, reference_user(k, rb), rb); }

std::uint64_t Network::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_value(h, config_.seed);
  fnv_value(h, geometry_.mbs.x);
  fnv_value(h, geometry_.mbs.y);
  for (const auto* group : {&geometry_.mues, &geometry_.transmitters, &geometry_.receivers})
    for (const Point& p : *group) {
      fnv_value(h, p.x);
      fnv_value(h, p.y);
    }
  fnv_mix(h, gains_.values().data(), gains_.values().size() * sizeof(double));
  fnv_mix(h, config_.power_levels.data(), config_.power_levels.size() * sizeof(double));
  fnv_mix(h, i_max_.data(), i_max_.size() * sizeof(double));
  fnv_value(h, sigma2_);
  return h;
}

Network build_topology(const ScenarioConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const int C = config.num_mue;
  const int S = config.num_sbs;
  const int K = config.num_transmitters();
  const int N = config.num_rb;

  Geometry geo;
  Placer placer(rng);
  placer.fix(geo.mbs);
  const Point origin{};
  for (int m = 0; m < C; ++m) geo.mues.push_back(placer.place(origin, config.cell_radius, "MUE"));
  for (int k = 0; k < K; ++k)
    geo.transmitters.push_back(placer.place(origin, config.cell_radius, k < S ? "SBS" : "D2D transmitter"));
  for (int k = 0; k < K; ++k) {
    const bool sbs = k < S;
    geo.receivers.push_back(placer.place(geo.transmitters[static_cast<std::size_t>(k)],
                                         sbs ? config.sbs_ue_max_dist : config.d2d_max_dist,
                                         sbs ? "SUE" : "D2D receiver"));
  }

  GainTable gains(C, K, N);
  auto tx_point = [&](int node) { return node == 0 ? geo.mbs : geo.transmitters[static_cast<std::size_t>(node - 1)]; };
  auto rx_point = [&](int node) {
    return node < C ? geo.mues[static_cast<std::size_t>(node)] : geo.receivers[static_cast<std::size_t>(node - C)];
  };
  for (int i = 0; i < 1 + K; ++i)
    for (int j = 0; j < C + K; ++j) {
      const double d = distance(tx_point(i), rx_point(j));
      for (int n = 0; n < N; ++n) {
        // Exp(1) can underflow to exactly 0 only with u == 0; nudge it.
        double beta = rng.exponential();
        if (beta <= 0.0) beta = 0x1.0p-53;
        gains.at(i, j, n) = channel_gain(beta, d, config.pathloss_exp);
      }
    }

  return Network(config, std::move(geo), std::move(gains));
}

}  // namespace hetalloc
