#include "gcds/backend.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gcds {

GcdsBackend::~GcdsBackend() = default;

void GcdsBackend::apply(const MutOp& op) {
  switch (op.kind) {
    case OpKind::kAllocate:
      allocate();
      break;
    case OpKind::kInsert:
      insert(op.src, op.dst);
      break;
    case OpKind::kDelete:
      remove(op.src, op.dst);
      break;
    case OpKind::kStep:
      step();
      break;
  }
}

std::vector<NodeId> GcdsBackend::drain_free_list() {
  std::vector<NodeId> out;
  out.swap(pending_);
  return out;
}

void GcdsBackend::emit_free(NodeId v) {
  assert(!freed_.count(v) && "node emitted to the free list twice");
  tick();
  pending_.push_back(v);
  freed_.insert(v);
}

void GcdsBackend::checkpoint() {
  if (snapshot_) throw std::logic_error("checkpoint already active");
  auto cp = std::make_unique<CheckpointState>();
  cp->pending = pending_;
  cp->freed = freed_;
  cp->derived = make_snapshot();
  snapshot_ = std::move(cp);
}

void GcdsBackend::restore() {
  if (!snapshot_) throw std::logic_error("restore without checkpoint");
  pending_ = std::move(snapshot_->pending);
  freed_ = std::move(snapshot_->freed);
  apply_snapshot(*snapshot_->derived);
  snapshot_.reset();
}

std::uint64_t GcdsBackend::state_hash() const {
  Hasher h;
  h.mix(pending_.size());
  for (NodeId v : pending_) h.mix(v);
  std::vector<NodeId> freed(freed_.begin(), freed_.end());
  std::sort(freed.begin(), freed.end());
  h.mix(freed.size());
  for (NodeId v : freed) h.mix(v);
  hash_state(h);
  return h.digest();
}

CallOutcome call_with_timeout(GcdsBackend& backend, const MutOp& op,
                              std::uint64_t budget) {
  StepCounter* counter = backend.counter();
  if (!counter) throw std::logic_error("call_with_timeout needs a counter");
  counter->set_limit(counter->count() + budget);
  try {
    backend.apply(op);
  } catch (const TimedOut&) {
    return CallOutcome::kTimedOut;
  }
  counter->clear_limit();
  return CallOutcome::kCompleted;
}

}  // namespace gcds
