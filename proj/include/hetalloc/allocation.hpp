#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetalloc/network.hpp"

namespace hetalloc {

/// x_k^(n,l) as a map k -> optional (n, l). One resource per transmitter is
/// guaranteed by construction.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(int num_transmitters) : slots_(static_cast<std::size_t>(num_transmitters)) {}

  int size() const { return static_cast<int>(slots_.size()); }

  const std::optional<Resource>& operator[](int k) const { return slots_[static_cast<std::size_t>(k)]; }
  void assign(int k, Resource r) { slots_[static_cast<std::size_t>(k)] = r; }
  void clear(int k) { slots_[static_cast<std::size_t>(k)].reset(); }
  void set(int k, std::optional<Resource> r) { slots_[static_cast<std::size_t>(k)] = r; }

  bool on_rb(int k, int rb) const {
    const auto& s = slots_[static_cast<std::size_t>(k)];
    return s && s->rb == rb;
  }
  int assigned_count() const;

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::optional<Resource>> slots_;
};

/// "k:(n,l) ..." with "-" for idle transmitters; used in diagnostics.
std::string to_string(const Allocation& alloc);

/// One uniformly random resource per transmitter; the common starting point
/// of the iterative allocators.
Allocation random_alignment(const Network& net, std::uint64_t seed);

/// Dense K x N x L table indexed by (k, resource).
template <class T>
class TxResourceTable {
 public:
  TxResourceTable() = default;
  TxResourceTable(int num_transmitters, int num_rb, int num_levels, T init = T{})
      : k_(num_transmitters), n_(num_rb), l_(num_levels),
        data_(static_cast<std::size_t>(num_transmitters * num_rb * num_levels), init) {}

  int num_transmitters() const { return k_; }
  int num_rb() const { return n_; }
  int num_levels() const { return l_; }
  int num_resources() const { return n_ * l_; }

  T& operator()(int k, Resource r) { return data_[index(k, r)]; }
  const T& operator()(int k, Resource r) const { return data_[index(k, r)]; }
  T& at(int k, int res_index) { return data_[static_cast<std::size_t>(k * n_ * l_ + res_index)]; }
  const T& at(int k, int res_index) const { return data_[static_cast<std::size_t>(k * n_ * l_ + res_index)]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  bool operator==(const TxResourceTable&) const = default;

 private:
  std::size_t index(int k, Resource r) const { return static_cast<std::size_t>((k * n_ + r.rb) * l_ + r.level); }

  int k_ = 0;
  int n_ = 0;
  int l_ = 0;
  std::vector<T> data_;
};

template <class F>
void for_each_resource(int num_rb, int num_levels, F&& f) {
  for (int n = 0; n < num_rb; ++n)
    for (int l = 0; l < num_levels; ++l) f(Resource{n, l});
}

}  // namespace hetalloc
