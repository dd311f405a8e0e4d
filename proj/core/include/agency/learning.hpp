#pragma once

#include <cstdint>
#include <deque>
#include <optional>

namespace agency {

// What an observer can recover about the environment from one realized
// outcome: the residual after the effort level they know about.
inline double infer_theta_principal(double outcome_value, double incited_effort) {
  return outcome_value - incited_effort;
}

inline double infer_theta_agent(double outcome_value, double exerted_effort) {
  return outcome_value - exerted_effort;
}

// FIFO store of environment estimates with capacity m (or unlimited). The
// belief is the plain mean of whatever is retained; before anything is
// stored it falls back to a configurable prior (default 0, the true noise
// mean).
//
// The unlimited variant keeps a running sum instead of a buffer; adding in
// insertion order makes the sum bit-identical to a fresh left-to-right pass.
class BoundedMemory {
 public:
  static BoundedMemory bounded(std::size_t capacity, double initial_belief = 0.0);
  static BoundedMemory unbounded(double initial_belief = 0.0);

  void push(double estimate);
  double belief() const;

  std::size_t size() const;
  std::uint64_t count_seen() const { return count_seen_; }
  std::optional<std::size_t> capacity() const { return capacity_; }

 private:
  BoundedMemory(std::optional<std::size_t> capacity, double initial_belief)
      : capacity_(capacity), initial_belief_(initial_belief) {}

  std::optional<std::size_t> capacity_;  // nullopt = unlimited
  double initial_belief_ = 0.0;
  std::deque<double> window_;            // bounded storage, oldest first
  double running_sum_ = 0.0;             // unlimited storage
  std::uint64_t count_seen_ = 0;
};

}  // namespace agency
