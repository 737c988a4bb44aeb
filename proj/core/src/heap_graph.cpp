#include "gcds/heap_graph.hpp"

#include <queue>
#include <string>

namespace gcds {

namespace {
const std::map<NodeId, std::uint32_t> kEmptyAdj;
}

HeapGraph::HeapGraph() {
  out_.resize(1);
  in_.resize(1);
}

std::uint32_t HeapGraph::multiplicity(NodeId a, NodeId b) const {
  if (a >= next_id_) return 0;
  auto it = out_[a].find(b);
  return it == out_[a].end() ? 0u : it->second;
}

const std::map<NodeId, std::uint32_t>& HeapGraph::outgoing(NodeId v) const {
  return v < next_id_ ? out_[v] : kEmptyAdj;
}

const std::map<NodeId, std::uint32_t>& HeapGraph::incoming(NodeId v) const {
  return v < next_id_ ? in_[v] : kEmptyAdj;
}

std::uint32_t HeapGraph::outdegree_with_multiplicity(NodeId v) const {
  std::uint32_t d = 0;
  for (const auto& [to, mult] : outgoing(v)) {
    (void)to;
    d += mult;
  }
  return d;
}

bool HeapGraph::validate(const MutOp& op) const {
  switch (op.kind) {
    case OpKind::kAllocate:
    case OpKind::kStep:
      return true;
    case OpKind::kInsert: {
      if (op.dst == kRoot) return false;
      if (!has_node(op.src) || !has_node(op.dst)) return false;
      auto flags = reachable_flags();
      return flags[op.src] && flags[op.dst];
    }
    case OpKind::kDelete: {
      if (!has_node(op.src) || !has_node(op.dst)) return false;
      if (multiplicity(op.src, op.dst) == 0) return false;
      auto flags = reachable_flags();
      return flags[op.src] && flags[op.dst];
    }
  }
  return false;
}

void HeapGraph::add_edge(NodeId a, NodeId b) {
  ++out_[a][b];
  ++in_[b][a];
  ++edge_units_;
}

void HeapGraph::remove_edge(NodeId a, NodeId b) {
  auto it = out_[a].find(b);
  if (it->second == 1) {
    out_[a].erase(it);
    in_[b].erase(a);
  } else {
    --it->second;
    --in_[b][a];
  }
  --edge_units_;
}

NodeId HeapGraph::apply_allocate() {
  NodeId fresh = next_id_++;
  out_.emplace_back();
  in_.emplace_back();
  add_edge(kRoot, fresh);
  return fresh;
}

void HeapGraph::apply(const MutOp& op) {
  if (!validate(op)) {
    throw InvalidOp(std::string("invalid op: ") + op_kind_name(op.kind) + " " +
                    std::to_string(op.src) + " " + std::to_string(op.dst));
  }
  switch (op.kind) {
    case OpKind::kAllocate:
      apply_allocate();
      break;
    case OpKind::kInsert:
      add_edge(op.src, op.dst);
      break;
    case OpKind::kDelete:
      remove_edge(op.src, op.dst);
      break;
    case OpKind::kStep:
      break;
  }
}

std::vector<char> HeapGraph::reachable_flags() const {
  std::vector<char> seen(next_id_, 0);
  std::vector<NodeId> stack{kRoot};
  seen[kRoot] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const auto& [to, mult] : out_[v]) {
      (void)mult;
      if (!seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

std::vector<NodeId> HeapGraph::reachable_set() const {
  auto flags = reachable_flags();
  std::vector<NodeId> result;
  for (NodeId v = 0; v < next_id_; ++v) {
    if (flags[v]) result.push_back(v);
  }
  return result;
}

bool HeapGraph::is_reachable(NodeId v) const {
  if (!has_node(v)) return false;
  return reachable_flags()[v] != 0;
}

bool HeapGraph::would_cycle(NodeId a, NodeId b) const {
  if (a == b) return true;
  // Path b =>* a?
  std::vector<char> seen(next_id_, 0);
  std::vector<NodeId> stack{b};
  seen[b] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v == a) return true;
    for (const auto& [to, mult] : out_[v]) {
      (void)mult;
      if (!seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  return false;
}

bool HeapGraph::delete_keeps_all_reachable(NodeId a, NodeId b) const {
  if (multiplicity(a, b) > 1) return true;
  // With the single copy of a->b gone, b staying reachable is equivalent to
  // everything staying reachable: any path through a->b reroutes through b.
  std::vector<char> seen(next_id_, 0);
  std::vector<NodeId> stack{kRoot};
  seen[kRoot] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v == b) return true;
    for (const auto& [to, mult] : out_[v]) {
      if (v == a && to == b && mult == 1) continue;
      if (!seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  return seen[b] != 0;
}

std::uint64_t HeapGraph::content_hash() const {
  Hasher h;
  h.mix(next_id_);
  for (NodeId v = 0; v < next_id_; ++v) {
    for (const auto& [to, mult] : out_[v]) {
      h.mix(v);
      h.mix(to);
      h.mix(mult);
    }
  }
  return h.digest();
}

}  // namespace gcds
