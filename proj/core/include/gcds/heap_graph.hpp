#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gcds/types.hpp"

namespace gcds {

// The logical heap multigraph determined by a trace of mutator operations,
// independent of any collector. Nodes are only ever added (freeing is the
// collector's concern); edges carry multiplicities; the root has no incoming
// edges.
class HeapGraph {
 public:
  HeapGraph();

  NodeId root() const { return kRoot; }
  // Ids 0..next_id()-1 are the nodes; next_id() is the next fresh id.
  NodeId next_id() const { return next_id_; }
  std::size_t node_count() const { return next_id_; }
  bool has_node(NodeId v) const { return v < next_id_; }
  std::size_t edge_units() const { return edge_units_; }

  std::uint32_t multiplicity(NodeId a, NodeId b) const;
  const std::map<NodeId, std::uint32_t>& outgoing(NodeId v) const;
  const std::map<NodeId, std::uint32_t>& incoming(NodeId v) const;
  // Distinct out-edges of v, counted without multiplicity, root excluded by
  // callers that care about the sparsity measure.
  std::uint32_t outdegree_with_multiplicity(NodeId v) const;

  // True iff the op respects the caller promises: endpoints reachable from
  // the root, deletes of present edges only, no edge ending at the root.
  bool validate(const MutOp& op) const;

  // Applies the op per the inductive definition; throws InvalidOp when
  // validate(op) is false. Allocate returns the fresh id via apply_allocate.
  void apply(const MutOp& op);
  NodeId apply_allocate();

  // Exact set of nodes reachable from the root, ascending.
  std::vector<NodeId> reachable_set() const;
  // Flags indexed by id, size next_id().
  std::vector<char> reachable_flags() const;
  bool is_reachable(NodeId v) const;

  // True iff inserting a->b would close a directed cycle (a path b =>* a
  // already exists; a == b counts).
  bool would_cycle(NodeId a, NodeId b) const;

  // True iff removing one copy of a->b keeps every node reachable.
  bool delete_keeps_all_reachable(NodeId a, NodeId b) const;

  std::uint64_t content_hash() const;

 private:
  void add_edge(NodeId a, NodeId b);
  void remove_edge(NodeId a, NodeId b);

  NodeId next_id_ = 1;  // id 0 is the root, present from the start
  std::vector<std::map<NodeId, std::uint32_t>> out_;
  std::vector<std::map<NodeId, std::uint32_t>> in_;
  std::size_t edge_units_ = 0;
};

}  // namespace gcds
