#include "gcds/collectors.hpp"

#include <cassert>

namespace gcds {

namespace {
template <typename State>
struct Snap : BackendSnapshot {
  explicit Snap(State s) : state(std::move(s)) {}
  State state;
};
}  // namespace

// ---------------------------------------------------------------- refcount

void RefCountBackend::add_edge(NodeId a, NodeId b) {
  tick();
  ++s_.ref_counts[b];
  tick();
  ++s_.outgoing[a][b];
}

NodeId RefCountBackend::allocate() {
  tick();
  NodeId id = s_.next_id++;
  s_.ref_counts.resize(s_.next_id, 0);
  s_.outgoing.resize(s_.next_id);
  // The root edge counts like any other edge; allocation routes through the
  // same bookkeeping as insert.
  add_edge(kRoot, id);
  return id;
}

void RefCountBackend::insert(NodeId a, NodeId b) {
  tick();
  add_edge(a, b);
}

void RefCountBackend::remove(NodeId a, NodeId b) {
  tick();
  auto it = s_.outgoing[a].find(b);
  assert(it != s_.outgoing[a].end() && it->second > 0);
  tick();
  if (--it->second == 0) s_.outgoing[a].erase(it);
  tick();
  assert(s_.ref_counts[b] > 0);
  if (--s_.ref_counts[b] != 0) return;

  std::vector<NodeId> worklist{b};
  while (!worklist.empty()) {
    NodeId node = worklist.back();
    worklist.pop_back();
    tick();
    emit_free(node);
    for (const auto& [child, count] : s_.outgoing[node]) {
      tick();
      assert(s_.ref_counts[child] >= count);
      s_.ref_counts[child] -= count;
      if (s_.ref_counts[child] == 0) worklist.push_back(child);
    }
    tick();
    s_.outgoing[node].clear();
  }
}

void RefCountBackend::step() { tick(); }

std::uint32_t RefCountBackend::ref_count(NodeId v) const {
  return v < s_.ref_counts.size() ? s_.ref_counts[v] : 0;
}

std::unique_ptr<BackendSnapshot> RefCountBackend::make_snapshot() const {
  return std::make_unique<Snap<State>>(s_);
}

void RefCountBackend::apply_snapshot(const BackendSnapshot& snap) {
  s_ = static_cast<const Snap<State>&>(snap).state;
}

void RefCountBackend::hash_state(Hasher& h) const {
  h.mix(s_.next_id);
  for (NodeId v = 0; v < s_.next_id; ++v) {
    if (v < s_.ref_counts.size() && s_.ref_counts[v] != 0) {
      h.mix(v);
      h.mix(s_.ref_counts[v]);
    }
    for (const auto& [to, mult] : s_.outgoing[v]) {
      h.mix(v);
      h.mix(to);
      h.mix(mult);
    }
  }
}

// ------------------------------------------------------------- mark-sweep

NodeId MarkSweepBackend::allocate() {
  tick();
  NodeId id = s_.next_id++;
  s_.outgoing.resize(s_.next_id);
  tick();
  s_.all.insert(id);
  tick();
  ++s_.outgoing[kRoot][id];  // the root edge from the allocation itself
  return id;
}

void MarkSweepBackend::insert(NodeId a, NodeId b) {
  tick();
  tick();
  ++s_.outgoing[a][b];
}

void MarkSweepBackend::remove(NodeId a, NodeId b) {
  tick();
  auto it = s_.outgoing[a].find(b);
  assert(it != s_.outgoing[a].end() && it->second > 0);
  tick();
  if (--it->second == 0) s_.outgoing[a].erase(it);
  step();
}

void MarkSweepBackend::step() {
  tick();
  std::vector<char> marked(s_.next_id, 0);
  std::vector<NodeId> worklist{kRoot};
  while (!worklist.empty()) {
    NodeId node = worklist.back();
    worklist.pop_back();
    tick();
    if (marked[node]) continue;
    marked[node] = 1;
    for (const auto& [to, mult] : s_.outgoing[node]) {
      (void)mult;
      tick();
      worklist.push_back(to);
    }
  }
  std::vector<NodeId> swept;
  for (NodeId v : s_.all) {
    tick();
    if (!marked[v]) swept.push_back(v);
  }
  for (NodeId v : swept) {
    emit_free(v);
    tick();
    s_.all.erase(v);
    s_.outgoing[v].clear();
  }
}

std::unique_ptr<BackendSnapshot> MarkSweepBackend::make_snapshot() const {
  return std::make_unique<Snap<State>>(s_);
}

void MarkSweepBackend::apply_snapshot(const BackendSnapshot& snap) {
  s_ = static_cast<const Snap<State>&>(snap).state;
}

void MarkSweepBackend::hash_state(Hasher& h) const {
  h.mix(s_.next_id);
  for (NodeId v : s_.all) h.mix(v);
  for (NodeId v = 0; v < s_.next_id; ++v) {
    for (const auto& [to, mult] : s_.outgoing[v]) {
      h.mix(v);
      h.mix(to);
      h.mix(mult);
    }
  }
}

}  // namespace gcds
