#pragma once

#include <memory>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gcds/step_counter.hpp"
#include "gcds/types.hpp"

namespace gcds {

class BackendSnapshot {
 public:
  virtual ~BackendSnapshot() = default;
};

enum class CallOutcome : std::uint8_t { kCompleted, kTimedOut };

// The mutator-observer interface every collector implements: the backend
// watches a stream of pointer updates and must add regions to the free list
// once they are unreachable from the root. It may only emit unreachable
// nodes, never retracts an emission, and behaves deterministically for a
// given operation sequence. One instance is single-threaded; distinct
// instances are independent.
class GcdsBackend {
 public:
  virtual ~GcdsBackend();

  virtual std::string_view name() const = 0;

  virtual NodeId allocate() = 0;
  virtual void insert(NodeId a, NodeId b) = 0;
  virtual void remove(NodeId a, NodeId b) = 0;
  virtual void step() = 0;

  void apply(const MutOp& op);

  // Emissions since the last drain, in emission order. Draining is the
  // user's side of the contract; the backend only ever appends.
  std::vector<NodeId> drain_free_list();
  std::size_t pending_free_count() const { return pending_.size(); }
  bool ever_freed(NodeId v) const { return freed_.count(v) != 0; }
  std::size_t freed_total() const { return freed_.size(); }

  virtual void attach_counter(StepCounter* counter) { counter_ = counter; }
  StepCounter* counter() const { return counter_; }

  // Single-slot checkpointing. Restore returns the backend, including its
  // free-list state, to the snapshot; emissions since the checkpoint are
  // discarded.
  void checkpoint();
  void restore();
  bool has_checkpoint() const { return snapshot_ != nullptr; }

  // Canonical 64-bit hash over nodes, edges and backend metadata, so
  // checkpoint fidelity is checkable without exposing internals.
  std::uint64_t state_hash() const;

 protected:
  virtual std::unique_ptr<BackendSnapshot> make_snapshot() const = 0;
  virtual void apply_snapshot(const BackendSnapshot& snap) = 0;
  virtual void hash_state(Hasher& h) const = 0;

  void tick(std::uint64_t n = 1) {
    if (counter_) counter_->tick(n);
  }
  void emit_free(NodeId v);

 private:
  struct CheckpointState {
    std::vector<NodeId> pending;
    std::unordered_set<NodeId> freed;
    std::unique_ptr<BackendSnapshot> derived;
  };

  StepCounter* counter_ = nullptr;
  std::vector<NodeId> pending_;
  std::unordered_set<NodeId> freed_;
  std::unique_ptr<CheckpointState> snapshot_;
};

// Runs one mutator op against the backend under a step budget. A timed-out
// call leaves the pending checkpoint usable, so restore() is the way back to
// a consistent state.
CallOutcome call_with_timeout(GcdsBackend& backend, const MutOp& op,
                              std::uint64_t budget);

}  // namespace gcds
