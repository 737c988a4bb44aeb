#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace gcds {

// Raised when a clocked call exceeds its step budget. The structure it
// interrupts may be logically mid-operation; callers are expected to restore
// from a checkpoint before using the backend again.
struct TimedOut : std::runtime_error {
  TimedOut() : std::runtime_error("step budget exceeded") {}
};

// Counts primitive steps: one tick per edge-map read/write, per tree
// rotation, per node visit, and per free-list emission. When a limit is set,
// crossing it aborts the current call with TimedOut.
class StepCounter {
 public:
  void tick(std::uint64_t n = 1) {
    count_ += n;
    if (limit_ && count_ > *limit_) {
      limit_.reset();
      throw TimedOut{};
    }
  }

  std::uint64_t count() const { return count_; }

  // Absolute cap; call sites usually want set_limit(count() + budget).
  void set_limit(std::uint64_t absolute_cap) { limit_ = absolute_cap; }
  void clear_limit() { limit_.reset(); }
  bool has_limit() const { return limit_.has_value(); }

 private:
  std::uint64_t count_ = 0;
  std::optional<std::uint64_t> limit_;
};

}  // namespace gcds
