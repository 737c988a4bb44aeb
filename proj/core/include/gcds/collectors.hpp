#pragma once

#include <map>
#include <set>
#include <vector>

#include "gcds/backend.hpp"

namespace gcds {

// Eager reference counting. Counts include the root edge added by allocate;
// a delete that drops a count to zero cascades through a LIFO worklist.
// Cycles detached from the root are never emitted.
class RefCountBackend : public GcdsBackend {
 public:
  RefCountBackend() {
    s_.ref_counts.resize(1, 0);
    s_.outgoing.resize(1);
  }

  std::string_view name() const override { return "rc"; }

  NodeId allocate() override;
  void insert(NodeId a, NodeId b) override;
  void remove(NodeId a, NodeId b) override;
  void step() override;  // no-op

  std::uint32_t ref_count(NodeId v) const;

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override;
  void apply_snapshot(const BackendSnapshot& snap) override;
  void hash_state(Hasher& h) const override;

 private:
  struct State {
    std::vector<std::uint32_t> ref_counts;
    std::vector<std::map<NodeId, std::uint32_t>> outgoing;
    NodeId next_id = 1;
  };

  void add_edge(NodeId a, NodeId b);

  State s_;
};

// Nonincremental mark-and-sweep: every delete (and every step) runs a full
// mark from the root over deduplicated out-edges and emits all minus marked.
class MarkSweepBackend : public GcdsBackend {
 public:
  MarkSweepBackend() { s_.outgoing.resize(1); }

  std::string_view name() const override { return "ms"; }

  NodeId allocate() override;
  void insert(NodeId a, NodeId b) override;
  void remove(NodeId a, NodeId b) override;
  void step() override;

  bool tracks(NodeId v) const { return s_.all.count(v) != 0; }

 protected:
  std::unique_ptr<BackendSnapshot> make_snapshot() const override;
  void apply_snapshot(const BackendSnapshot& snap) override;
  void hash_state(Hasher& h) const override;

 private:
  struct State {
    std::vector<std::map<NodeId, std::uint32_t>> outgoing;
    std::set<NodeId> all;
    NodeId next_id = 1;
  };

  State s_;
};

}  // namespace gcds
