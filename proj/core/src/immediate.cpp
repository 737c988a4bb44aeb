#include "gcds/immediate.hpp"

#include <cassert>

namespace gcds {

namespace {
struct EttStateSnap : BackendSnapshot {
  EttForest forest;
  std::vector<char> live;
  NodeId next_id;
  // PerNode is private; snapshot carries a rebuilt edge list instead.
  std::vector<std::tuple<NodeId, NodeId, std::uint32_t>> edges;
  std::vector<std::vector<NodeId>> in_orders;
};
}  // namespace

EttBackend::EttBackend(ImmediateOptions opts) : opts_(opts) {
  s_.nodes.resize(1);
  s_.live.assign(1, 1);
  cursor_.assign(1, 0);
  cursor_stamp_.assign(1, 0);
  s_.forest.make_singleton(kRoot);
}

void EttBackend::attach_counter(StepCounter* counter) {
  GcdsBackend::attach_counter(counter);
  s_.forest.attach_counter(counter);
}

bool EttBackend::is_live(NodeId v) const {
  return v < s_.live.size() && s_.live[v];
}

std::uint32_t EttBackend::edge_multiplicity(NodeId a, NodeId b) const {
  if (a >= s_.nodes.size()) return 0;
  auto it = s_.nodes[a].out.find(b);
  return it == s_.nodes[a].out.end() ? 0 : it->second;
}

std::optional<NodeId> EttBackend::tree_parent(NodeId v) const {
  return s_.forest.parent(v);
}

std::size_t EttBackend::metadata_units() const {
  std::size_t units = s_.forest.occurrence_count();
  for (const PerNode& pn : s_.nodes)
    units += pn.out.size() + pn.in_cnt.size() + pn.in_order.size();
  return units;
}

void EttBackend::edge_add(NodeId a, NodeId b) {
  tick();
  ++s_.nodes[a].out[b];
  tick();
  PerNode& pb = s_.nodes[b];
  if (++pb.in_cnt[a] == 1) pb.in_order.push_back(a);
}

void EttBackend::edge_sub(NodeId a, NodeId b) {
  tick();
  PerNode& pa = s_.nodes[a];
  auto out_it = pa.out.find(b);
  assert(out_it != pa.out.end() && out_it->second > 0);
  if (--out_it->second == 0) pa.out.erase(out_it);
  tick();
  PerNode& pb = s_.nodes[b];
  auto in_it = pb.in_cnt.find(a);
  assert(in_it != pb.in_cnt.end() && in_it->second > 0);
  if (--in_it->second == 0) {
    pb.in_cnt.erase(in_it);
    ++pb.in_stale;
  }
}

void EttBackend::compact_in_order(NodeId v) {
  PerNode& pn = s_.nodes[v];
  if (pn.in_stale <= 8 || pn.in_stale * 2 <= pn.in_order.size()) return;
  std::vector<NodeId> keep;
  keep.reserve(pn.in_cnt.size());
  std::unordered_set<NodeId> seen;
  for (NodeId m : pn.in_order) {
    if (pn.in_cnt.count(m) && seen.insert(m).second) keep.push_back(m);
  }
  pn.in_order = std::move(keep);
  pn.in_stale = 0;
}

NodeId EttBackend::allocate() {
  tick();
  NodeId id = s_.next_id++;
  s_.nodes.resize(s_.next_id);
  s_.live.resize(s_.next_id, 1);
  cursor_.resize(s_.next_id, 0);
  cursor_stamp_.resize(s_.next_id, 0);
  s_.forest.make_singleton(id);
  s_.forest.join(kRoot, id);
  edge_add(kRoot, id);
  return id;
}

void EttBackend::insert(NodeId a, NodeId b) {
  tick();
  edge_add(a, b);
  // Inserts never touch the forest: b was already reachable, hence already
  // spanned.
  compact_in_order(b);
}

void EttBackend::remove(NodeId a, NodeId b) {
  tick();
  edge_sub(a, b);
  tick();
  if (edge_multiplicity(a, b) > 0) return;
  auto par = s_.forest.parent(b);
  if (!par || *par != a) return;
  s_.forest.cut(b);
  sweep_from(b);
}

void EttBackend::step() { tick(); }

std::optional<NodeId> EttBackend::find_new_parent(
    NodeId v, const std::unordered_set<NodeId>& dead) {
  PerNode& pn = s_.nodes[v];
  std::uint32_t i = 0;
  if (opts_.cursor_memo && cursor_stamp_[v] == sweep_serial_) i = cursor_[v];
  auto save = [&](std::uint32_t pos) {
    if (opts_.cursor_memo) {
      cursor_[v] = pos;
      cursor_stamp_[v] = sweep_serial_;
    }
  };
  for (; i < pn.in_order.size(); ++i) {
    NodeId m = pn.in_order[i];
    tick();
    if (!pn.in_cnt.count(m)) continue;  // stale entry, not an edge
    ++last_stats_.edge_examinations;
    if (dead.count(m)) continue;
    if (s_.forest.path(v, m)) continue;  // m descends from v; would cycle
    save(i + 1);  // on a re-visit m is an ancestor in dead, skip it
    return m;
  }
  save(i);
  return std::nullopt;
}

void EttBackend::sweep_from(NodeId b) {
  last_stats_ = DeleteStats{};
  std::unordered_set<NodeId> dead;
  std::vector<NodeId> dead_order;
  while (true) {
    ++last_stats_.sweeps;
    ++sweep_serial_;  // invalidates all cursors from earlier sweeps
    dead.clear();
    dead_order.clear();
    bool relinked_to_root = false;
    std::optional<NodeId> prev;
    std::optional<NodeId> cur = b;
    while (cur) {
      NodeId v = *cur;
      tick();
      auto m = find_new_parent(v, dead);
      if (m) {
        if (s_.forest.parent(v)) s_.forest.cut(v);
        s_.forest.join(*m, v);
        if (v == b) return;  // the whole separated tree is attached again
        if (s_.forest.path(kRoot, v)) relinked_to_root = true;
        assert(prev && "only b can relink without a predecessor");
        cur = s_.forest.next(*prev);  // skip the moved subtree
      } else {
        dead.insert(v);
        dead_order.push_back(v);
        prev = v;
        cur = s_.forest.next(v);
      }
    }
    if (!relinked_to_root) {
      for (NodeId v : dead_order) emit_free(v);
      last_stats_.freed = dead_order.size();
      erase_freed(dead_order);
      return;
    }
  }
}

void EttBackend::erase_freed(const std::vector<NodeId>& nodes) {
  if (nodes.empty()) return;
  for (NodeId v : nodes) s_.live[v] = 0;
  for (NodeId v : nodes) {
    PerNode& pn = s_.nodes[v];
    tick(pn.out.size() + pn.in_cnt.size());
    for (const auto& [to, mult] : pn.out) {
      (void)mult;
      if (!s_.live[to]) continue;  // dies with its own record
      PerNode& pt = s_.nodes[to];
      if (pt.in_cnt.erase(v)) ++pt.in_stale;
    }
#ifndef NDEBUG
    for (const auto& [from, mult] : pn.in_cnt) {
      (void)mult;
      assert(!s_.live[from] && "live node still points into freed batch");
    }
#endif
    pn = PerNode{};
  }
  // The freed batch is exactly the remnant tree; drop its tours wholesale.
  for (NodeId v : nodes) {
    if (s_.forest.contains(v) && !s_.forest.parent(v)) {
      std::size_t erased = s_.forest.erase_tree(v);
      assert(erased == nodes.size());
      (void)erased;
    }
  }
}

std::unique_ptr<BackendSnapshot> EttBackend::make_snapshot() const {
  auto snap = std::make_unique<EttStateSnap>();
  snap->forest = s_.forest;
  snap->live = s_.live;
  snap->next_id = s_.next_id;
  for (NodeId v = 0; v < s_.nodes.size(); ++v) {
    for (const auto& [to, mult] : s_.nodes[v].out)
      snap->edges.push_back({v, to, mult});
  }
  snap->in_orders.reserve(s_.nodes.size());
  for (const PerNode& pn : s_.nodes) snap->in_orders.push_back(pn.in_order);
  return snap;
}

void EttBackend::apply_snapshot(const BackendSnapshot& snap) {
  const auto& st = static_cast<const EttStateSnap&>(snap);
  s_.forest = st.forest;
  s_.forest.attach_counter(counter());
  s_.live = st.live;
  s_.next_id = st.next_id;
  s_.nodes.assign(st.next_id, PerNode{});
  for (auto [a, b, mult] : st.edges) {
    s_.nodes[a].out[b] = mult;
    s_.nodes[b].in_cnt[a] = mult;
  }
  for (NodeId v = 0; v < st.in_orders.size(); ++v) {
    s_.nodes[v].in_order = st.in_orders[v];
    std::uint32_t stale = 0;
    for (NodeId m : s_.nodes[v].in_order)
      if (!s_.nodes[v].in_cnt.count(m)) ++stale;
    s_.nodes[v].in_stale = stale;
  }
  cursor_.assign(st.next_id, 0);
  cursor_stamp_.assign(st.next_id, 0);
}

void EttBackend::hash_state(Hasher& h) const {
  h.mix(s_.next_id);
  for (NodeId v = 0; v < s_.next_id; ++v) {
    if (!s_.live[v]) continue;
    h.mix(v);
    for (const auto& [to, mult] : s_.nodes[v].out) {
      h.mix(v);
      h.mix(to);
      h.mix(mult);
    }
    auto par = s_.forest.parent(v);
    h.mix(par ? *par + 1 : 0);
  }
}

}  // namespace gcds
