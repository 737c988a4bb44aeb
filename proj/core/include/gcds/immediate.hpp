#pragma once

#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "gcds/backend.hpp"
#include "gcds/ett.hpp"

namespace gcds {

struct ImmediateOptions {
  // Per-sweep memoization of the incoming-edge scan position, so dense heaps
  // only pay for edges that are actually dead.
  bool cursor_memo = true;
};

struct DeleteStats {
  std::uint32_t sweeps = 0;               // outer-loop iterations
  std::uint64_t edge_examinations = 0;    // live in-edge candidates examined
  std::uint64_t freed = 0;
};

// The eager collector: a spanning forest of the reachable heap kept in an
// Euler tour forest plus an edge-multiplicity map. Deleting a tree edge cuts
// the subtree and sweeps it in preorder, relinking each node that still has
// a usable incoming edge and freeing the remainder. Collection delay is one
// op; acyclic deletes settle in at most two sweeps.
class EttBackend : public GcdsBackend {
 public:
  explicit EttBackend(ImmediateOptions opts = {});

  std::string_view name() const override {
    return opts_.cursor_memo ? "ett" : "ett-nocursor";
  }

  NodeId allocate() override;
  void insert(NodeId a, NodeId b) override;
  void remove(NodeId a, NodeId b) override;
  void step() override;  // no-op; the collector is fully eager

  void attach_counter(StepCounter* counter) override;

  const DeleteStats& last_delete_stats() const { return last_stats_; }

  // Observers used by tests and the harness.
  bool is_live(NodeId v) const;
  std::uint32_t edge_multiplicity(NodeId a, NodeId b) const;
  std::optional<NodeId> tree_parent(NodeId v) const;
  const EttForest& forest() const { return s_.forest; }
  // Occurrence nodes plus edge-map entries; conserved across balanced
  // build/tear-down cycles.
  std::size_t metadata_units() const;

  // Drops every record of just-freed nodes: tour nodes, edge entries,
  // cursors. Called by remove() on the batch it emits; a no-op on the empty
  // set.
  void erase_freed(const std::vector<NodeId>& nodes);

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override;
  void apply_snapshot(const BackendSnapshot& snap) override;
  void hash_state(Hasher& h) const override;

 private:
  struct PerNode {
    std::map<NodeId, std::uint32_t> out;     // multiplicity by target
    std::map<NodeId, std::uint32_t> in_cnt;  // multiplicity by source
    std::vector<NodeId> in_order;  // distinct sources, insertion order;
                                   // may hold stale entries until compaction
    std::uint32_t in_stale = 0;
  };

  struct State {
    EttForest forest;
    std::vector<PerNode> nodes;
    std::vector<char> live;
    NodeId next_id = 1;
  };

  void edge_add(NodeId a, NodeId b);
  void edge_sub(NodeId a, NodeId b);
  void compact_in_order(NodeId v);
  std::optional<NodeId> find_new_parent(
      NodeId v, const std::unordered_set<NodeId>& dead);
  void sweep_from(NodeId b);

  State s_;
  ImmediateOptions opts_;
  DeleteStats last_stats_;

  // Scan-resume positions, valid only within one sweep (stamped); purely
  // transient, so excluded from snapshots and hashes.
  std::vector<std::uint32_t> cursor_;
  std::vector<std::uint64_t> cursor_stamp_;
  std::uint64_t sweep_serial_ = 0;
};

}  // namespace gcds
