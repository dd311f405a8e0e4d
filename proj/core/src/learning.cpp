#include "agency/learning.hpp"

#include <stdexcept>

namespace agency {

BoundedMemory BoundedMemory::bounded(std::size_t capacity, double initial_belief) {
  if (capacity == 0) throw std::invalid_argument("memory capacity must be >= 1");
  return BoundedMemory(capacity, initial_belief);
}

BoundedMemory BoundedMemory::unbounded(double initial_belief) {
  return BoundedMemory(std::nullopt, initial_belief);
}

void BoundedMemory::push(double estimate) {
  ++count_seen_;
  if (capacity_) {
    window_.push_back(estimate);
    if (window_.size() > *capacity_) window_.pop_front();
  } else {
    running_sum_ += estimate;
  }
}

double BoundedMemory::belief() const {
  if (count_seen_ == 0) return initial_belief_;
  if (!capacity_) return running_sum_ / static_cast<double>(count_seen_);
  double sum = 0.0;
  for (double v : window_) sum += v;  // oldest first, fixed order
  return sum / static_cast<double>(window_.size());
}

std::size_t BoundedMemory::size() const {
  if (capacity_) return window_.size();
  return static_cast<std::size_t>(count_seen_);
}

}  // namespace agency
