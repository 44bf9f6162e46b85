#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetalloc {

/// Raised when a ScenarioConfig violates one of its invariants. The message
/// always starts with the offending field name.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A transmission alignment: one resource block paired with one power level.
/// Both indices are zero-based.
struct Resource {
  int rb = 0;
  int level = 0;

  friend auto operator<=>(const Resource&, const Resource&) = default;
};

/// Flat index of a resource in the N x L grid, rb-major.
inline int resource_index(Resource r, int num_levels) { return r.rb * num_levels + r.level; }
inline Resource resource_at(int index, int num_levels) { return {index / num_levels, index % num_levels}; }

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double cell_radius = 500.0;        // m
  int num_mue = 5;
  int num_sbs = 3;
  int num_d2d = 2;
  int num_rb = 6;
  std::vector<double> power_levels{0.05, 0.1, 0.2};  // W, strictly increasing
  double mbs_power = 1.0;            // W per RB
  double noise_psd = 3.981e-21;      // W/Hz (-174 dBm/Hz)
  double rb_bandwidth = 180e3;       // Hz, 12 subcarriers
  double pathloss_exp = 3.5;
  double i_max = 1e-9;               // W, per-RB interference cap
  double w1 = 1.0;
  double w2 = 1.0;
  double d2d_max_dist = 30.0;        // m
  double sbs_ue_max_dist = 50.0;     // m
  std::vector<double> i_max_per_rb;  // optional override, one entry per RB

  int num_transmitters() const { return num_sbs + num_d2d; }
  int num_levels() const { return static_cast<int>(power_levels.size()); }

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the first violated field.
void validate(const ScenarioConfig& config);

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

/// Node placement of one drop. Underlay transmitter k is SBS k for k < S and
/// D2D transmitter k - S otherwise; receivers[k] is the UE it serves.
struct Geometry {
  Point mbs;
  std::vector<Point> mues;
  std::vector<Point> transmitters;
  std::vector<Point> receivers;
};

/// Linear power gains for every (transmitter node, receiver node, RB).
/// Transmitter node 0 is the MBS, node 1 + k is underlay transmitter k.
/// Receiver nodes 0..C-1 are the MUEs, node C + k is the receiver u_k.
class GainTable {
 public:
  GainTable() = default;
  GainTable(int num_mue, int num_transmitters, int num_rb);

  double& at(int tx_node, int rx_node, int rb);
  double at(int tx_node, int rx_node, int rb) const;

  int num_mue() const { return num_mue_; }
  int num_transmitters() const { return num_tx_; }
  int num_rb() const { return num_rb_; }
  const std::vector<double>& values() const { return values_; }

  static int mbs_node() { return 0; }
  static int tx_node(int k) { return 1 + k; }
  int mue_node(int m) const { return m; }
  int receiver_node(int k) const { return num_mue_ + k; }

 private:
  std::size_t offset(int tx_node, int rx_node, int rb) const;

  int num_mue_ = 0;
  int num_tx_ = 0;
  int num_rb_ = 0;
  std::vector<double> values_;
};

enum class TransmitterKind { SmallCell, D2D };

/// One immutable network drop. Gains are frozen for its lifetime.
class Network {
 public:
  Network(ScenarioConfig config, Geometry geometry, GainTable gains);

  const ScenarioConfig& config() const { return config_; }
  const Geometry& geometry() const { return geometry_; }
  const GainTable& gains() const { return gains_; }

  int num_mue() const { return config_.num_mue; }
  int num_transmitters() const { return config_.num_transmitters(); }
  int num_rb() const { return config_.num_rb; }
  int num_levels() const { return config_.num_levels(); }
  int num_resources() const { return num_rb() * num_levels(); }

  TransmitterKind kind(int k) const { return k < config_.num_sbs ? TransmitterKind::SmallCell : TransmitterKind::D2D; }

  double power(int level) const { return config_.power_levels[static_cast<std::size_t>(level)]; }
  double power(Resource r) const { return power(r.level); }
  double mbs_power() const { return config_.mbs_power; }
  double noise_power() const { return sigma2_; }
  double rb_bandwidth() const { return config_.rb_bandwidth; }
  double i_max(int rb) const { return i_max_[static_cast<std::size_t>(rb)]; }

  /// g_{k, u_j}: underlay transmitter k to the receiver served by j.
  double link_gain(int k, int j, int rb) const;
  /// g_{k, m}: underlay transmitter k to MUE m.
  double gain_to_mue(int k, int m, int rb) const;
  /// g_{M, u_k}: MBS to the receiver served by k.
  double mbs_gain_to_receiver(int k, int rb) const;
  /// g_{M, m}
  double mbs_gain_to_mue(int m, int rb) const;

  /// m_k^*: the MUE with the largest gain from k on rb (lowest index on ties).
  int reference_user(int k, int rb) const;
  double reference_gain(int k, int rb) const;

  /// Interference k puts on the reference user when it uses r.
  double interference_contribution(int k, Resource r) const { return reference_gain(k, r.rb) * power(r); }

  /// FNV-1a over the config, geometry and gain table bytes.
  std::uint64_t checksum() const;

 private:
  ScenarioConfig config_;
  Geometry geometry_;
  GainTable gains_;
  double sigma2_ = 0.0;
  std::vector<double> i_max_;
  std::vector<int> reference_user_;  // [k * N + n]
};

/// g = beta * dist^-alpha. Throws std::domain_error for dist <= 0.
double channel_gain(double beta, double dist, double alpha);

/// bandwidth * log2(1 + sinr). Throws std::domain_error for sinr < 0.
double shannon_rate(double sinr, double bandwidth);

/// Places all nodes and draws Rayleigh block fading for every link and RB.
/// Deterministic in config.seed. Throws std::runtime_error when a node cannot
/// be placed at least 1 m from every other node after bounded retries.
Network build_topology(const ScenarioConfig& config);

inline constexpr double kMinNodeSeparation = 1.0;

}  // namespace hetalloc
